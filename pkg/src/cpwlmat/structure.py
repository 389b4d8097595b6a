"""Independent-set coordinates and low-order extension.

A member of the constrained space is a set function whose Moebius
transform is supported on independent sets; its coordinates are those
Moebius coefficients.  ``phi(T)`` (the indicator of ``T <= S``) is the
basis vector for the independent set ``T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import SchemaError
from .lattice import (EXACT, FLOAT, MoebiusSpectrum, SetFunction, _parse_table_json,
                      float_tolerance, format_mask, moebius_transform, popcount,
                      popcounts, to_fraction, zeta_transform)
from .matroid import UniformMatroid, matroid_from_json


def phi(T, n, mode=EXACT):
    """Basis function ``phi_T(S) = [T <= S]``."""
    if not 0 <= T < (1 << n):
        raise ValueError(f"mask {T} out of range for n={n}")
    return SetFunction.from_callable(n, lambda S: 1 if S & T == T else 0, mode)


def delta(S, n, mode=EXACT):
    """Point mass at ``S``."""
    if not 0 <= S < (1 << n):
        raise ValueError(f"mask {S} out of range for n={n}")
    return SetFunction.from_callable(n, lambda m: 1 if m == S else 0, mode)


@dataclass(frozen=True)
class BasisCoefficients:
    """Coordinates ``c_T`` over the independent sets of ``matroid``.

    Keys absent from the input are read as zero; after construction every
    independent set has an entry and nothing else does.
    """

    matroid: object
    coeffs: dict
    mode: str = EXACT

    def __post_init__(self):
        M = self.matroid
        for T in self.coeffs:
            if not 0 <= T < (1 << M.n) or not M.is_independent(T):
                raise ValueError(f"coefficient key {format_mask(T)} is not an independent set")
        if self.mode == EXACT:
            conv, zero = to_fraction, Fraction(0)
        else:
            conv, zero = float, 0.0
        full = {T: conv(self.coeffs.get(T, zero)) for T in M.independent_sets()}
        object.__setattr__(self, "coeffs", full)

    def __getitem__(self, T):
        return self.coeffs[T]

    def nonzero(self):
        return {T: c for T, c in self.coeffs.items() if c != 0}

    def to_json(self):
        fmt = str if self.mode == EXACT else float
        return {"matroid": self.matroid.to_json(),
                "coeffs": {str(T): fmt(c) for T, c in self.coeffs.items()}}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise SchemaError("<root>", "expected a JSON object")
        M = matroid_from_json(data.get("matroid"))
        raw = data.get("coeffs")
        if not isinstance(raw, dict):
            raise SchemaError("coeffs", "expected an object keyed by decimal bitmask")
        coeffs = {}
        for key, v in raw.items():
            try:
                T = int(key)
                coeffs[T] = to_fraction(v)
            except (ValueError, TypeError, ZeroDivisionError):
                raise SchemaError(f"coeffs.{key}", f"bad entry {v!r}") from None
        try:
            return cls(M, coeffs)
        except ValueError as exc:
            raise SchemaError("coeffs", str(exc)) from None


def decompose(F, M):
    """Split the Moebius spectrum of ``F`` into basis coordinates and residual.

    The residual lists ``(mask, F^(mask))`` for dependent masks with a
    nonzero coefficient; it is empty exactly when ``F`` is in the space.
    """
    if F.n != M.n:
        raise ValueError(f"size mismatch: function n={F.n}, matroid n={M.n}")
    Fhat = moebius_transform(F)
    indep = M.independent_sets()
    coeffs = {T: Fhat[T] for T in indep}
    if F.exact:
        residual = [(S, Fhat[S]) for S in M.dependent_sets() if Fhat[S] != 0]
    else:
        tol = float_tolerance(np.max(np.abs(F.values)))
        residual = [(S, Fhat[S]) for S in M.dependent_sets() if abs(Fhat[S]) > tol]
    return BasisCoefficients(M, coeffs, F.mode), residual


def reconstruct(c):
    """``F(S) = sum of c_T over independent T <= S``."""
    n = c.matroid.n
    if c.mode == EXACT:
        spec = [Fraction(0)] * (1 << n)
    else:
        spec = np.zeros(1 << n)
    for T, v in c.coeffs.items():
        spec[T] = v
    return zeta_transform(MoebiusSpectrum(n, spec, c.mode))


def project(F, M):
    """Truncate the Moebius spectrum of ``F`` to the independent sets of ``M``."""
    coeffs, _ = decompose(F, M)
    return reconstruct(coeffs)


@dataclass(frozen=True)
class LowOrderTable:
    """Values of a set function on every mask of size at most ``k``."""

    n: int
    k: int
    values: dict

    def __post_init__(self):
        missing = [m for m in range(1 << self.n)
                   if popcount(m) <= self.k and m not in self.values]
        if missing:
            raise ValueError(f"incomplete table: no value for {format_mask(missing[0])} "
                             f"({len(missing)} missing)")
        extra = [m for m in self.values if not 0 <= m < (1 << self.n) or popcount(m) > self.k]
        if extra:
            raise ValueError(f"table entry {extra[0]} is not a mask of size <= {self.k}")

    @classmethod
    def from_function(cls, F, k):
        return cls(F.n, k, {m: F[m] for m in range(1 << F.n) if popcount(m) <= k})

    @property
    def mode(self):
        return FLOAT if any(isinstance(v, float) for v in self.values.values()) else EXACT

    def to_json(self):
        fmt = str if self.mode == EXACT else float
        return {"n": self.n, "k": self.k, "mode": self.mode,
                "values": {str(m): fmt(self.values[m]) for m in sorted(self.values)}}

    @classmethod
    def from_json(cls, data, k=None):
        n, mode, vals = _parse_table_json(data)
        if k is None:
            k = data.get("k")
        if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= n:
            raise SchemaError("k", f"expected an integer in [0, {n}], got {k!r}")
        if "k" in data and data["k"] != k:
            raise SchemaError("k", f"table says k={data['k']} but k={k} was requested")
        try:
            return cls(n, k, vals)
        except ValueError as exc:
            raise SchemaError("values", str(exc)) from None


def extend_from_low_order(t, M=None):
    """The unique member of the rank-``k`` space agreeing with ``t``.

    Moebius coefficients of small sets only read values on their own
    subsets, so the table is transformed as-is (large masks padded with
    zero), coefficients on dependent sets are dropped, and the result is
    summed back up.
    """
    if M is None:
        M = UniformMatroid(t.n, t.k)
    if not isinstance(M, UniformMatroid):
        raise TypeError("low-order extension is defined for uniform matroids only")
    if (M.n, M.k) != (t.n, t.k):
        raise ValueError(f"table is for (n={t.n}, k={t.k}), matroid is (n={M.n}, k={M.k})")
    mode = t.mode
    zero = Fraction(0) if mode == EXACT else 0.0
    padded = SetFunction(t.n, [t.values.get(m, zero) for m in range(1 << t.n)], mode)
    Fhat = moebius_transform(padded)
    keep = popcounts(t.n) <= t.k
    if mode == EXACT:
        vals = [v if keep[m] else zero for m, v in enumerate(Fhat.values)]
    else:
        vals = np.where(keep, Fhat.values, 0.0)
    return zeta_transform(MoebiusSpectrum(t.n, vals, mode))


def triple_relation_check(F, tol=None):
    """Residuals of the three-element inclusion-exclusion identities.

    For each triple ``{i,j,l}`` the residual is
    ``F(ijl) - F(ij) - F(il) - F(jl) + F(i) + F(j) + F(l) - F(0)``.
    Returns ``[((i, j, l), residual), ...]`` (0-based) for nonzero residuals.
    """
    if tol is None:
        tol = 0 if F.exact else float_tolerance(np.max(np.abs(F.values)))
    out = []
    for i, j, l in combinations(range(F.n), 3):
        a, b, c = 1 << i, 1 << j, 1 << l
        r = (F[a | b | c] - F[a | b] - F[a | c] - F[b | c]
             + F[a] + F[b] + F[c] - F[0])
        if abs(r) > tol:
            out.append(((i, j, l), r))
    return out
