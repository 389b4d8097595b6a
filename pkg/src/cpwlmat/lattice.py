"""Set functions on the Boolean lattice and their zeta/Moebius transforms.

A set function on ``[n]`` is stored densely as ``2**n`` scalars indexed by
subset bitmask: element ``i`` (0-based) belongs to the subset ``mask`` iff
bit ``i`` of ``mask`` is set.  Two scalar backends are supported:

* ``"exact"``: :class:`fractions.Fraction` entries, used for every algebraic
  statement (zero tolerance).
* ``"float"``: IEEE doubles, used where data comes from network evaluation.

Transforms run as an in-place Yates sweep in ``O(n 2^n)``.  Exact inputs are
first scaled to a common denominator so the sweep runs on integers.
"""

from __future__ import annotations

import math
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from .errors import SchemaError, check_n

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

REL_TOL = 1e-9
ABS_TOL = 1e-12

_INT64_SAFE = 1 << 62

OrderNorm = namedtuple("OrderNorm", ["order", "max_abs", "sum_abs"])


def float_tolerance(scale):
    """Relative 1e-9 tolerance with a 1e-12 absolute floor."""
    return max(REL_TOL * float(scale), ABS_TOL)


def to_fraction(value):
    """Coerce an int, Fraction or rational string to a Fraction.

    Floats are refused: mixing backends is an error, not a conversion.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def popcount(mask):
    return bin(mask).count("1")


@lru_cache(maxsize=None)
def popcounts(n):
    """Read-only array of subset sizes for every mask of ``[n]``."""
    out = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        out[1 << i:1 << (i + 1)] = out[:1 << i] + 1
    out.flags.writeable = False
    return out


def elements(mask):
    """Sorted 0-based elements of ``mask``."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elems):
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def submasks(mask):
    """All submasks of ``mask``, in decreasing numeric order."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_mask(mask):
    """Human-readable 1-based subset, e.g. ``{1,3}``."""
    return "{" + ",".join(str(e + 1) for e in elements(mask)) + "}"


def indicator_vector(mask, n):
    """The 0/1 vector of length ``n`` with ones at the elements of ``mask``."""
    check_n(n)
    if not 0 <= mask < (1 << n):
        raise ValueError(f"mask {mask} out of range for n={n}")
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=np.int64)


def _coerce_values(n, values, mode):
    size = 1 << n
    if mode is None:
        mode = FLOAT if _looks_float(values) else EXACT
    if mode not in MODES:
        raise ValueError(f"unknown scalar mode {mode!r}")
    if mode == EXACT:
        vals = [to_fraction(v) for v in values]
        arr = np.empty(len(vals), dtype=object)
        arr[:] = vals
    else:
        if isinstance(values, np.ndarray) and values.dtype == object:
            if any(isinstance(v, Fraction) for v in values):
                raise TypeError("exact scalars in a float set function")
        arr = np.array(values, dtype=np.float64)
    if arr.shape != (size,):
        raise ValueError(f"expected {size} values for n={n}, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr, mode


def _looks_float(values):
    if isinstance(values, np.ndarray):
        return values.dtype.kind == "f"
    return any(isinstance(v, float) for v in values)


class _SubsetArray:
    """Shared storage for arrays indexed by subset mask."""

    __slots__ = ("n", "values", "mode")

    def __init__(self, n, values, mode=None):
        check_n(n)
        arr, mode = _coerce_values(n, values, mode)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __getitem__(self, mask):
        return self.values[mask]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.n == other.n and self.mode == other.mode
                and bool(np.array_equal(self.values, other.values)))

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.mode, tuple(self.values.tolist())))

    def __repr__(self):
        head = ", ".join(str(v) for v in self.values[:8])
        more = ", ..." if len(self.values) > 8 else ""
        return f"{type(self).__name__}(n={self.n}, mode={self.mode!r}, values=[{head}{more}])"

    @property
    def exact(self):
        return self.mode == EXACT

    def tolist(self):
        return self.values.tolist()

    def allclose(self, other, rel=REL_TOL, abs_=ABS_TOL):
        """Exact equality for exact pairs, tolerance comparison otherwise."""
        if self.n != other.n:
            return False
        if self.exact and other.exact:
            return bool(np.array_equal(self.values, other.values))
        a = self.values.astype(np.float64)
        b = other.values.astype(np.float64)
        return bool(np.allclose(a, b, rtol=rel, atol=abs_))

    def to_json(self):
        if self.exact:
            vals = {str(m): str(v) for m, v in enumerate(self.values)}
        else:
            vals = {str(m): float(v) for m, v in enumerate(self.values)}
        return {"n": self.n, "mode": self.mode, "values": vals}

    @classmethod
    def from_json(cls, data):
        n, mode, vals = _parse_table_json(data)
        size = 1 << n
        missing = [m for m in range(size) if m not in vals]
        if missing:
            raise SchemaError(f"values.{missing[0]}", f"missing key ({len(missing)} of {size} absent)")
        return cls(n, [vals[m] for m in range(size)], mode)


class SetFunction(_SubsetArray):
    """A map ``F : 2^[n] -> R`` stored as ``2**n`` scalars.

    >>> F = SetFunction.from_callable(2, lambda m: m)
    >>> F[3]
    Fraction(3, 1)
    """

    __slots__ = ()

    @classmethod
    def from_callable(cls, n, fn, mode=EXACT):
        check_n(n)
        return cls(n, [fn(m) for m in range(1 << n)], mode)

    @classmethod
    def zeros(cls, n, mode=EXACT):
        check_n(n)
        return cls(n, [0] * (1 << n) if mode == EXACT else np.zeros(1 << n), mode)

    def as_float(self):
        return SetFunction(self.n, self.values.astype(np.float64), FLOAT)


class MoebiusSpectrum(_SubsetArray):
    """Moebius coefficients ``F^(S)`` of a set function, one per subset."""

    __slots__ = ()

    @property
    def order_norms(self):
        return interaction_spectrum(self)

    def support(self, tol=None):
        """Masks whose coefficient is nonzero (beyond ``tol`` in float mode)."""
        if self.exact and not tol:
            return [m for m, v in enumerate(self.values) if v != 0]
        if tol is None:
            tol = float_tolerance(np.max(np.abs(self.values.astype(np.float64)), initial=0.0))
        return [m for m, v in enumerate(self.values) if abs(v) > tol]


def _parse_table_json(data):
    if not isinstance(data, dict):
        raise SchemaError("<root>", "expected a JSON object")
    if "n" not in data:
        raise SchemaError("n", "missing")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise SchemaError("n", f"expected an integer, got {n!r}")
    try:
        check_n(n)
    except ValueError as exc:
        if type(exc) is ValueError:
            raise SchemaError("n", str(exc)) from None
        raise
    mode = data.get("mode", EXACT)
    if mode not in MODES:
        raise SchemaError("mode", f"expected 'exact' or 'float', got {mode!r}")
    raw = data.get("values")
    if not isinstance(raw, dict):
        raise SchemaError("values", "expected an object keyed by decimal bitmask")
    vals = {}
    for key, v in raw.items():
        field = f"values.{key}"
        try:
            m = int(key)
        except ValueError:
            raise SchemaError(field, "key is not a decimal bitmask") from None
        if str(m) != key.strip() or not 0 <= m < (1 << n):
            raise SchemaError(field, f"mask out of range for n={n}")
        if mode == EXACT:
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise SchemaError(field, f"expected a 'p/q' rational string, got {v!r}")
            try:
                vals[m] = to_fraction(v)
            except (ValueError, ZeroDivisionError):
                raise SchemaError(field, f"not a rational: {v!r}") from None
        else:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise SchemaError(field, f"expected a JSON number, got {v!r}")
            if not math.isfinite(v):
                raise SchemaError(field, "non-finite value")
            vals[m] = float(v)
    return n, mode, vals


# -- transforms ---------------------------------------------------------------

def _sweep(arr, n, subtract):
    """In-place Yates sweep over the ``n`` bit axes of ``arr``."""
    cube = arr.reshape((2,) * n)
    full = [slice(None)] * n
    for axis in range(n):
        lo = list(full)
        hi = list(full)
        lo[axis] = 0
        hi[axis] = 1
        if subtract:
            cube[tuple(hi)] -= cube[tuple(lo)]
        else:
            cube[tuple(hi)] += cube[tuple(lo)]
    return arr


def _exact_sweep(values, n, subtract):
    den = math.lcm(*(v.denominator for v in values))
    nums = [v.numerator * (den // v.denominator) for v in values]
    bound = max(abs(x) for x in nums) << n
    if bound < _INT64_SAFE:
        arr = np.array(nums, dtype=np.int64)
    else:
        arr = np.empty(len(nums), dtype=object)
        arr[:] = nums
    _sweep(arr, n, subtract)
    if den == 1:
        return [Fraction(int(x)) for x in arr.tolist()]
    return [Fraction(int(x), den) for x in arr.tolist()]


def _transform(values, n, mode, subtract):
    if mode == EXACT:
        return _exact_sweep(values, n, subtract)
    return _sweep(values.astype(np.float64, copy=True), n, subtract)


def moebius_transform(F):
    """Moebius transform ``F^(S) = sum_{T <= S} (-1)^{|S|-|T|} F(T)``."""
    return MoebiusSpectrum(F.n, _transform(F.values, F.n, F.mode, True), F.mode)


def zeta_transform(Fhat):
    """Subset sums ``F(S) = sum_{T <= S} F^(T)``; inverse of :func:`moebius_transform`."""
    return SetFunction(Fhat.n, _transform(Fhat.values, Fhat.n, Fhat.mode, False), Fhat.mode)


# -- pointwise algebra --------------------------------------------------------

_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "scale": lambda a, b: a * b,
    "max": np.maximum,
}


def _scalar_for(mode, value):
    if mode == EXACT:
        return to_fraction(value)
    if isinstance(value, Fraction):
        raise TypeError("exact scalar used with a float set function")
    return float(value)


def pointwise(op, F1, other):
    """Componentwise ``add``, ``sub``, ``scale`` or ``max``.

    ``other`` is a SetFunction of matching ``n`` and mode, or a scalar
    (``scale`` takes only a scalar).
    """
    if op not in _OPS:
        raise ValueError(f"unknown pointwise op {op!r}")
    if isinstance(other, SetFunction):
        if op == "scale":
            raise TypeError("scale takes a scalar, not a set function")
        if other.n != F1.n:
            raise ValueError(f"size mismatch: n={F1.n} vs n={other.n}")
        if other.mode != F1.mode:
            raise ValueError(f"mode mismatch: {F1.mode} vs {other.mode}")
        rhs = other.values
    else:
        rhs = _scalar_for(F1.mode, other)
    out = _OPS[op](F1.values, rhs)
    if F1.mode == EXACT:
        # np.maximum on object arrays keeps Fraction entries
        out = np.asarray(out, dtype=object)
    return SetFunction(F1.n, out, F1.mode)


# -- interaction spectrum -----------------------------------------------------

def interaction_spectrum(Fhat):
    """Per-order ``(d, max |F^(S)|, sum |F^(S)|)`` over subsets of size ``d``."""
    sizes = popcounts(Fhat.n)
    out = []
    if Fhat.exact:
        buckets = [[] for _ in range(Fhat.n + 1)]
        for m, v in enumerate(Fhat.values):
            buckets[sizes[m]].append(abs(v))
        for d, b in enumerate(buckets):
            out.append(OrderNorm(d, max(b), sum(b, Fraction(0))))
    else:
        absv = np.abs(Fhat.values)
        for d in range(Fhat.n + 1):
            sel = absv[sizes == d]
            out.append(OrderNorm(d, float(sel.max()), float(sel.sum())))
    return out


def max_interaction_order(Fhat, tol=None):
    """Largest order with a coefficient above ``tol``; -1 for the zero spectrum.

    ``tol`` defaults to 0 for exact spectra and to the float tolerance scaled
    by the largest coefficient otherwise.
    """
    spec = interaction_spectrum(Fhat)
    if tol is None:
        tol = 0 if Fhat.exact else float_tolerance(max(s.max_abs for s in spec))
    best = -1
    for s in spec:
        if s.max_abs > tol:
            best = s.order
    return best
