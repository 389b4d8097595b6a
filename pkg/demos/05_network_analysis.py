"""Read the interaction order a ReLU network induces on the Boolean cube.

Run: python3 demos/05_network_analysis.py
"""

import numpy as np

from cpwlmat import (Layer, MlpSpec, UniformMatroid, analyze_network, membership,
                     separation_witness)
from cpwlmat.lattice import format_mask

# max(x1, x2) = relu(x1 - x2) + relu(x2) - relu(-x2), ignoring x3
W1 = np.array([[1.0, -1.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]])
net = MlpSpec(3, (Layer(W1, np.zeros(3), "relu"),
                  Layer(np.array([[1.0, 1.0, -1.0]]), np.zeros(1), "identity")))

for k in (1, 2):
    rep = analyze_network(net, k)
    worst = ", ".join(f"{format_mask(S)}: {v:+.3g}" for S, v in rep.violations) or "none"
    print(f"k={k}: max order {rep.max_order}, conforming {rep.conforming}, violations {worst}")

print("\nseparating functions, one per (n, k):")
for n in range(2, 6):
    for k in range(n):
        F, S = separation_witness(n, k)
        assert not membership(F, UniformMatroid(n, k)).member
        print(f"  n={n} k={k}: nonzero coefficient at {format_mask(S)}")
