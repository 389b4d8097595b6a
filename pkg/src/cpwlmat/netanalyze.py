"""Interaction analysis of small feedforward ReLU networks.

A network ``f`` induces the set function ``F(S) = f(1_S)``.  Its Moebius
spectrum shows which interaction orders the network actually uses on the
vertices of the unit cube; the verdict for order ``k`` is whether every
coefficient of order above ``k`` vanishes (to tolerance).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SchemaError, check_n
from .lattice import (FLOAT, SetFunction, float_tolerance, format_mask,
                      interaction_spectrum, moebius_transform, popcounts)
from .matroid import UniformMatroid
from .structure import delta

ACTIVATIONS = ("relu", "identity")
MAX_VIOLATIONS = 32
_BATCH = 1 << 16


@dataclass(frozen=True)
class Layer:
    w: np.ndarray  # (out, in)
    b: np.ndarray  # (out,)
    act: str = "relu"


@dataclass(frozen=True)
class MlpSpec:
    n: int
    layers: tuple

    def __post_init__(self):
        check_n(self.n)
        layers = []
        width = self.n
        for i, layer in enumerate(self.layers):
            w = np.asarray(layer.w, dtype=np.float64)
            b = np.asarray(layer.b, dtype=np.float64)
            if w.ndim != 2 or w.shape[1] != width:
                raise ValueError(f"layers[{i}].w has shape {w.shape}, expected (*, {width})")
            if b.shape != (w.shape[0],):
                raise ValueError(f"layers[{i}].b has shape {b.shape}, expected ({w.shape[0]},)")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ValueError(f"layers[{i}] has non-finite entries")
            if layer.act not in ACTIVATIONS:
                raise ValueError(f"layers[{i}].act must be one of {ACTIVATIONS}, got {layer.act!r}")
            layers.append(Layer(w, b, layer.act))
            width = w.shape[0]
        if not layers:
            raise ValueError("network has no layers")
        if width != 1:
            raise ValueError(f"final layer has {width} outputs, expected 1")
        object.__setattr__(self, "layers", tuple(layers))

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise SchemaError("<root>", "expected a JSON object")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool):
            raise SchemaError("n", f"expected an integer, got {n!r}")
        raw = data.get("layers")
        if not isinstance(raw, list) or not raw:
            raise SchemaError("layers", "expected a non-empty list")
        layers = []
        for i, entry in enumerate(raw):
            if not isinstance(entry, dict):
                raise SchemaError(f"layers[{i}]", "expected an object")
            for key in ("w", "b"):
                if key not in entry:
                    raise SchemaError(f"layers[{i}].{key}", "missing")
            act = entry.get("act", "relu")
            try:
                w = np.array(entry["w"], dtype=np.float64)
                b = np.array(entry["b"], dtype=np.float64)
            except (TypeError, ValueError):
                raise SchemaError(f"layers[{i}]", "w and b must be numeric arrays") from None
            layers.append(Layer(w, b, act))
        try:
            return cls(n, tuple(layers))
        except ValueError as exc:
            msg = str(exc)
            fld = msg.split(" ", 1)[0] if msg.startswith("layers[") else "layers"
            raise SchemaError(fld, msg) from None

    def to_json(self):
        return {"n": self.n, "layers": [
            {"w": layer.w.tolist(), "b": layer.b.tolist(), "act": layer.act}
            for layer in self.layers]}

    def forward(self, X):
        """Batched forward pass; ``X`` has shape ``(batch, n)``."""
        h = np.asarray(X, dtype=np.float64)
        for layer in self.layers:
            h = h @ layer.w.T + layer.b
            if layer.act == "relu":
                h = np.maximum(h, 0.0)
        return h[:, 0]

    def __call__(self, x):
        return mlp_eval(self, x)


def mlp_eval(net, x):
    x = np.asarray([float(v) for v in x], dtype=np.float64)
    if x.shape != (net.n,):
        raise ValueError(f"input has {x.size} coordinates, expected {net.n}")
    return float(net.forward(x[None, :])[0])


def induced_set_function(net):
    """``F(S) = net(1_S)`` for every subset, evaluated in float64."""
    n = net.n
    size = 1 << n
    bits = np.arange(n, dtype=np.int64)
    out = np.empty(size)
    for start in range(0, size, _BATCH):
        masks = np.arange(start, min(start + _BATCH, size), dtype=np.int64)
        X = ((masks[:, None] >> bits) & 1).astype(np.float64)
        out[start:start + len(masks)] = net.forward(X)
    return SetFunction(n, out, FLOAT)


@dataclass
class ExpressivityReport:
    n: int
    k: int
    tol: float
    spectrum: list  # OrderNorm per order
    max_order: int
    conforming: bool
    violations: list = field(default_factory=list)  # (mask, coefficient), worst first
    function: SetFunction | None = field(default=None, repr=False)
    moebius: object = field(default=None, repr=False)

    def to_json(self):
        return {"n": self.n, "k": self.k, "tol": self.tol,
                "spectrum": [{"order": s.order, "max_abs": float(s.max_abs),
                              "sum_abs": float(s.sum_abs)} for s in self.spectrum],
                "max_order": self.max_order, "conforming": self.conforming,
                "violations": [{"mask": m, "set": format_mask(m), "coefficient": float(c)}
                               for m, c in self.violations]}


def analyze_network(net, k, tol=None):
    """Moebius spectrum of the induced set function and the order-``k`` verdict.

    ``tol`` defaults to 1e-9 relative to the largest ``|F(S)|`` with a
    1e-12 absolute floor.
    """
    if not 0 <= k <= net.n:
        raise ValueError(f"order k={k} outside [0, {net.n}]")
    F = induced_set_function(net)
    Fhat = moebius_transform(F)
    if tol is None:
        tol = float_tolerance(np.max(np.abs(F.values)))
    spec = interaction_spectrum(Fhat)
    max_order = max((s.order for s in spec if s.max_abs > tol), default=-1)
    absv = np.abs(Fhat.values)
    high = np.flatnonzero((popcounts(net.n) > k) & (absv > tol))
    worst = high[np.argsort(-absv[high], kind="stable")][:MAX_VIOLATIONS]
    violations = [(int(m), float(Fhat[m])) for m in worst]
    return ExpressivityReport(net.n, k, tol, spec, max_order, not len(high),
                              violations, F, Fhat)


def separation_witness(n, k):
    """A set function outside the rank-``k`` space: the point mass at ``[n]``.

    Its only nonzero Moebius coefficient sits on the full set, which is
    dependent whenever ``k < n``.
    """
    check_n(n)
    if k >= n:
        raise ValueError(f"no separation for k={k} >= n={n}: every set is independent")
    if k < 0:
        raise ValueError(f"order k={k} must be >= 0")
    full = (1 << n) - 1
    return delta(full, n), full


def collapse_dimension(n, k):
    """Degrees of freedom left by order-``k`` interactions: ``sum_{i<=k} C(n, i)``."""
    return UniformMatroid(n, k).count_independent()
