"""Circuit functionals, the constraint map and exact dimension counts.

Two membership models are kept side by side:

``circuit_only``
    every circuit functional vanishes, ``alpha_C(F) = 0``;
``moebius_support``
    the Moebius transform vanishes on *every* dependent set.

They agree exactly when every dependent set is a circuit.  Otherwise the
second is a proper subspace of the first, and :func:`kernel_dimension`
reports the gap.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .errors import SizeCapError
from .lattice import (EXACT, float_tolerance, format_mask, moebius_transform,
                      popcount, submasks)
from .matroid import UniformMatroid

CIRCUIT_ONLY = "circuit_only"
MOEBIUS_SUPPORT = "moebius_support"
KERNEL_MAX_N = 14


def normalize_model(model):
    m = model.replace("-", "_")
    if m not in (CIRCUIT_ONLY, MOEBIUS_SUPPORT):
        raise ValueError(f"unknown membership model {model!r}")
    return m


def alpha(C, F):
    """Inclusion-exclusion sum of ``F`` over the subsets of ``C``."""
    if not 0 <= C < (1 << F.n):
        raise ValueError(f"mask {C} out of range for n={F.n}")
    top = popcount(C)
    total = Fraction(0) if F.exact else 0.0
    for S in submasks(C):
        v = F[S]
        if (top - popcount(S)) & 1:
            total -= v
        else:
            total += v
    return total


@dataclass(frozen=True)
class ConstraintMatrix:
    """Sparse rows of the map ``F -> (alpha_C(F))_C``, one row per circuit."""

    n: int
    row_index: tuple
    rows: tuple  # per row: tuple of (column mask, +-1), columns increasing

    @property
    def shape(self):
        return (len(self.rows), 1 << self.n)

    def apply(self, F):
        if F.n != self.n:
            raise ValueError(f"size mismatch: n={F.n} vs n={self.n}")
        zero = Fraction(0) if F.exact else 0.0
        out = []
        for row in self.rows:
            acc = zero
            for col, sign in row:
                acc = acc + F[col] if sign > 0 else acc - F[col]
            out.append(acc)
        return out

    def dense(self):
        width = 1 << self.n
        out = []
        for row in self.rows:
            line = [0] * width
            for col, sign in row:
                line[col] = sign
            out.append(line)
        return out


def build_constraint_matrix(M):
    rows = []
    index = []
    for C in M.circuits():
        top = popcount(C)
        row = tuple(sorted((S, -1 if (top - popcount(S)) & 1 else 1) for S in submasks(C)))
        rows.append(row)
        index.append(C)
    return ConstraintMatrix(M.n, tuple(index), tuple(rows))


def _int_row(raw):
    if isinstance(raw, np.ndarray):
        raw = raw.tolist()
    if isinstance(raw, dict):
        items = raw.items()
    elif raw and isinstance(raw[0], tuple):
        items = raw
    else:
        items = enumerate(raw)
    row = {}
    for c, v in items:
        if v:
            row[c] = Fraction(v)
    if not row:
        return row
    den = lcm(*(v.denominator for v in row.values()))
    return _primitive({c: int(v * den) for c, v in row.items()})


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()}


def rank_exact(A):
    """Rank over the rationals by fraction-free elimination.

    Rows may be dense sequences, ``{column: value}`` dicts, or sequences of
    ``(column, value)`` pairs; entries are ints or Fractions.  Each incoming
    row is reduced against the stored pivots on its highest nonzero column
    by integer cross-multiplication, with content removed after each step,
    so no division ever leaves the integers.
    """
    pivots = {}
    for raw in A:
        row = _int_row(raw)
        while row:
            lead = max(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = row
                break
            a, b = p[lead], row[lead]
            new = {c: a * v for c, v in row.items()}
            for c, v in p.items():
                new[c] = new.get(c, 0) - b * v
            row = _primitive({c: v for c, v in new.items() if v})
    return len(pivots)


@dataclass
class DimensionReport:
    n: int
    k: int | None
    circuit_count: int
    rank_T: int
    kernel_dim: int
    independent_count: int
    discrepancy: int

    def to_json(self):
        return asdict(self)


def kernel_dimension(M, cap=KERNEL_MAX_N):
    """Exact ``dim ker T`` next to the independent-set count of ``M``."""
    if M.n > cap:
        raise SizeCapError(f"exact kernel computation is limited to n <= {cap} (n={M.n})")
    T = build_constraint_matrix(M)
    r = rank_exact(T.rows)
    kernel = (1 << M.n) - r
    indep = M.count_independent()
    return DimensionReport(
        n=M.n,
        k=M.k if isinstance(M, UniformMatroid) else None,
        circuit_count=len(T.rows),
        rank_T=r,
        kernel_dim=kernel,
        independent_count=indep,
        discrepancy=kernel - indep,
    )


@dataclass
class Verdict:
    model: str
    member: bool
    violations: list = field(default_factory=list)  # (mask, residual)

    def to_json(self):
        def fmt(v):
            return str(v) if isinstance(v, Fraction) else float(v)
        return {"model": self.model, "member": self.member,
                "violations": [{"mask": m, "set": format_mask(m), "residual": fmt(r)}
                               for m, r in self.violations]}


def _resolve_tol(F, tol):
    if F.mode == EXACT:
        if tol:
            raise ValueError("exact membership checks take tol=0")
        return 0
    if tol is None:
        return float_tolerance(np.max(np.abs(F.values)))
    return tol


def membership(F, M, model=MOEBIUS_SUPPORT, tol=None):
    """Decide whether ``F`` lies in the constrained space of ``M``."""
    model = normalize_model(model)
    if F.n != M.n:
        raise ValueError(f"size mismatch: function n={F.n}, matroid n={M.n}")
    tol = _resolve_tol(F, tol)
    if model == CIRCUIT_ONLY:
        cands = ((C, alpha(C, F)) for C in M.circuits())
    else:
        Fhat = moebius_transform(F)
        cands = ((S, Fhat[S]) for S in M.dependent_sets())
    violations = [(m, r) for m, r in cands if abs(r) > tol]
    return Verdict(model, not violations, violations)
