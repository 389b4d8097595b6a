from fractions import Fraction

import numpy as np
import pytest

from cpwlmat import Layer, MlpSpec, SetFunction

# F(0)=0; F1,F2,F3 = 1,2,3; F12,F13,F23 = 5,6,7; F123 = 12 (masks 0..7)
ANCHOR_VALUES = [0, 1, 2, 5, 3, 6, 7, 12]
ANCHOR_LOW_ORDER = {0: 0, 1: 1, 2: 2, 4: 3, 3: 5, 5: 6, 6: 7}

ACCEPTANCE_RESULTS = []


@pytest.fixture
def anchor_F():
    return SetFunction(3, ANCHOR_VALUES)


def affine_net(a, b, hidden=0, seed=0):
    """Identity-activation network computing ``a.x + b`` (optionally deep)."""
    rng = np.random.default_rng(seed)
    n = len(a)
    layers = []
    if hidden:
        assert hidden >= n, "need full column rank to undo the first layer"
        W1 = rng.normal(size=(hidden, n))
        c1 = rng.normal(size=hidden)
        # second layer undoes the first through a pseudo-inverse
        P = np.linalg.pinv(W1)
        W2 = np.asarray(a, dtype=float)[None, :] @ P
        layers.append(Layer(W1, c1, "identity"))
        layers.append(Layer(W2, np.array([b - float((W2 @ c1)[0])]), "identity"))
    else:
        layers.append(Layer(np.asarray([a], dtype=float), np.array([float(b)]), "identity"))
    return MlpSpec(n, tuple(layers))


def max2_net(n=3):
    """max(x1, x2) = relu(x1 - x2) + relu(x2) - relu(-x2)."""
    W1 = np.zeros((3, n))
    W1[0, 0], W1[0, 1] = 1, -1
    W1[1, 1] = 1
    W1[2, 1] = -1
    return MlpSpec(n, (Layer(W1, np.zeros(3), "relu"),
                       Layer(np.array([[1.0, 1.0, -1.0]]), np.zeros(1), "identity")))


def max3_net():
    """max(x1, x2, x3) built from two pairwise max gadgets."""
    W1 = np.array([[1, -1, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], dtype=float)
    # m = h0 + h1 - h2 = max(x1, x2); x3 = h3 - h4
    W2 = np.array([[1, 1, -1, -1, 1], [0, 0, 0, 1, -1], [0, 0, 0, -1, 1]], dtype=float)
    W3 = np.array([[1.0, 1.0, -1.0]])
    return MlpSpec(3, (Layer(W1, np.zeros(5), "relu"), Layer(W2, np.zeros(3), "relu"),
                       Layer(W3, np.zeros(1), "identity")))


def exact(values):
    return [Fraction(v) for v in values]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, seconds, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {name} ({seconds:.3f}s) {detail}")
