"""Piecewise-linear realization of set functions on the braid fan.

The braid fan has one maximal cone per permutation ``w`` of ``[n]``:
``x[w[0]] >= x[w[1]] >= ... >= x[w[n-1]]``.  On that cone the chain
``0 = S_0 < S_1 < ... < S_n = [n]`` with ``S_i = {w[0], ..., w[i-1]}``
contains ``n + 1`` affinely independent indicator vectors, so a set function
``F`` fixes exactly one affine piece per cone:

    f(x) = F(0) + sum_i x[w[i]] * (F(S_{i+1}) - F(S_i)).

Elements are 0-based throughout; reports print cones 1-based.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from numbers import Rational

import numpy as np

from .lattice import float_tolerance

FULL_MATERIALIZATION_MAX_N = 8


def _as_scalar(v):
    if isinstance(v, (Fraction, float)):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(v, Rational):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.integer):
        return Fraction(int(v))
    raise TypeError(f"cannot use {type(v).__name__} as a coordinate")


def _point(x, n):
    pt = [_as_scalar(v) for v in x]
    if len(pt) != n:
        raise ValueError(f"point has {len(pt)} coordinates, expected {n}")
    return pt


def chain_order(x):
    """Coordinates sorted descending, ties broken by smallest index."""
    return sorted(range(len(x)), key=lambda i: (-x[i], i))


def is_tie_compatible(x, order):
    return sorted(order) == list(range(len(x))) and all(
        x[order[i]] >= x[order[i + 1]] for i in range(len(order) - 1))


def lovasz_eval(F, x, order=None):
    """Evaluate the braid-fan interpolant of ``F`` at ``x``.

    ``order`` may name any permutation compatible with ``x`` (coordinates
    non-increasing along it); by default the smallest-index tie break is used.
    All tie-compatible orders give the same value.
    """
    x = _point(x, F.n)
    if order is None:
        order = chain_order(x)
    elif not is_tie_compatible(x, order):
        raise ValueError(f"order {tuple(order)} does not sort the point descending")
    S = 0
    prev = F[0]
    total = prev
    for i in order:
        S |= 1 << i
        cur = F[S]
        total = total + x[i] * (cur - prev)
        prev = cur
    return total


@dataclass(frozen=True)
class BraidCone:
    """The cone ``x[perm[0]] >= ... >= x[perm[-1]]``."""

    perm: tuple

    def __post_init__(self):
        p = tuple(int(i) for i in self.perm)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"{p} is not a permutation of range({len(p)})")
        object.__setattr__(self, "perm", p)

    @property
    def n(self):
        return len(self.perm)

    def chain(self):
        """Masks ``S_0 = 0, S_1, ..., S_n``."""
        out = [0]
        for i in self.perm:
            out.append(out[-1] | (1 << i))
        return out

    def contains(self, x):
        return is_tie_compatible(x, self.perm)

    def swap(self, i):
        """Neighbour across the facet ``x[perm[i]] == x[perm[i+1]]``."""
        p = list(self.perm)
        p[i], p[i + 1] = p[i + 1], p[i]
        return BraidCone(tuple(p))

    def label(self):
        return [i + 1 for i in self.perm]


@dataclass(frozen=True)
class PerConeAffine:
    cone: BraidCone
    gradient: tuple
    offset: object

    def __call__(self, x):
        x = _point(x, len(self.gradient))
        return self.offset + sum((g * v for g, v in zip(self.gradient, x)), 0 * self.offset)


def affine_piece(F, cone):
    if cone.n != F.n:
        raise ValueError(f"cone has n={cone.n}, function has n={F.n}")
    chain = cone.chain()
    grad = [None] * F.n
    for step, i in enumerate(cone.perm):
        grad[i] = F[chain[step + 1]] - F[chain[step]]
    return PerConeAffine(cone, tuple(grad), F[0])


class CompatiblePL:
    """Continuous function affine on every braid cone, interpolating ``F``.

    Affine pieces are built on demand and cached; concurrent callers may
    race to build the same piece, and ``setdefault`` keeps one of the two
    identical results.
    """

    def __init__(self, F):
        self.F = F
        self._pieces = {}
        self._lock = threading.Lock()

    @property
    def n(self):
        return self.F.n

    def piece(self, cone):
        if not isinstance(cone, BraidCone):
            cone = BraidCone(cone)
        hit = self._pieces.get(cone.perm)
        if hit is not None:
            return hit
        built = affine_piece(self.F, cone)
        with self._lock:
            return self._pieces.setdefault(cone.perm, built)

    def __call__(self, x):
        return lovasz_eval(self.F, x)

    def __len__(self):
        return len(self._pieces)


@dataclass
class ContinuityCertificate:
    n: int
    cones_checked: int
    facet_checks: int
    exhaustive: bool
    failures: list = field(default_factory=list)  # (perm, position)

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {"n": self.n, "cones_checked": self.cones_checked,
                "facet_checks": self.facet_checks, "exhaustive": self.exhaustive,
                "passed": self.passed,
                "failures": [{"cone": [i + 1 for i in p], "position": pos + 1}
                             for p, pos in self.failures]}


def facet_agrees(p, q, a, b):
    """Two affine pieces agree on the hyperplane ``x[a] == x[b]``.

    That holds iff the offsets match and the gradient difference is a
    multiple of ``e_a - e_b``.
    """
    if p.offset != q.offset:
        return False
    for c, (gp, gq) in enumerate(zip(p.gradient, q.gradient)):
        if c not in (a, b) and gp != gq:
            return False
    return (p.gradient[a] - q.gradient[a]) + (p.gradient[b] - q.gradient[b]) == 0


def realize_braid(F, cones=None):
    """Build the per-cone pieces of ``F`` and certify continuity across facets.

    With ``cones=None`` all ``n!`` cones are materialized when
    ``n <= 8``; above that nothing is materialized and the returned
    certificate covers no cones (``exhaustive=False``).  Passing an explicit
    iterable of cones (permutations) checks every facet of each of them.
    """
    pl = CompatiblePL(F)
    if cones is None:
        if F.n > FULL_MATERIALIZATION_MAX_N:
            return pl, ContinuityCertificate(F.n, 0, 0, False)
        cones = permutations(range(F.n))
        exhaustive = True
    else:
        exhaustive = False
    seen = set()
    failures = []
    count = 0
    for c in cones:
        cone = c if isinstance(c, BraidCone) else BraidCone(c)
        if cone.perm in seen:
            continue
        seen.add(cone.perm)
        p = pl.piece(cone)
        for pos in range(F.n - 1):
            other = cone.swap(pos)
            # each facet once when both sides are in the requested set
            if exhaustive and other.perm < cone.perm:
                continue
            count += 1
            q = pl.piece(other)
            if not facet_agrees(p, q, cone.perm[pos], cone.perm[pos + 1]):
                failures.append((cone.perm, pos))
    return pl, ContinuityCertificate(F.n, len(seen), count, exhaustive, failures)


# -- composition and probing --------------------------------------------------

class PLFunction:
    """An evaluable function of ``n`` real variables."""

    def __init__(self, n, fn, label="pl"):
        self.n = n
        self._fn = fn
        self.label = label

    def __call__(self, x):
        return self._fn(_point(x, self.n))

    def __repr__(self):
        return f"PLFunction(n={self.n}, {self.label})"


def _arity(f):
    n = getattr(f, "n", None)
    if n is None:
        raise TypeError("composed functions need an 'n' attribute")
    return n


def compose_pl(op, f1, f2=None, a=1, b=0):
    """Pointwise ``max(f1, f2)`` or ``a * f1 + b``.

    The result is only an evaluable function; nothing is claimed about
    whether it is affine on braid cones (see :func:`compatibility_probe`).
    """
    n = _arity(f1)
    if op == "max":
        if f2 is None:
            raise TypeError("max needs two functions")
        if _arity(f2) != n:
            raise ValueError(f"arity mismatch: {n} vs {_arity(f2)}")
        return PLFunction(n, lambda x: max(f1(x), f2(x)), "max")
    if op == "affine":
        if f2 is not None:
            raise TypeError("affine takes a single function")
        return PLFunction(n, lambda x: a * f1(x) + b, f"affine({a}, {b})")
    raise ValueError(f"unknown composition {op!r}")


def solve_exact(A, y):
    """Solve a square rational system; ``None`` when singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(t)] for row, t in zip(A, y)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [u - f * v for u, v in zip(M[r], M[col])]
    return [row[n] for row in M]


@dataclass
class ProbeReport:
    n: int
    trials: int
    seed: int
    trials_run: int
    conforming: bool
    witness: dict | None = None

    def to_json(self):
        return {"n": self.n, "trials": self.trials, "seed": self.seed,
                "trials_run": self.trials_run, "conforming": self.conforming,
                "witness": self.witness}


def _fmt(v):
    return str(v) if isinstance(v, Fraction) else float(v)


def _sample_cone_points(rng, perm, count, denom, span):
    n = len(perm)
    pts = []
    for _ in range(count):
        nums = sorted(rng.sample(range(-span * denom, span * denom + 1), n), reverse=True)
        x = [None] * n
        for rank, i in enumerate(perm):
            x[i] = Fraction(nums[rank], denom)
        pts.append(x)
    return pts


def compatibility_probe(g, n, trials=100, seed=0, denom=12, span=10):
    """Search for a braid cone on which ``g`` is not affine.

    Each trial picks a random cone, draws ``n + 2`` rational points in its
    interior, fits the affine map through the first ``n + 1`` and tests the
    last one: exactly when ``g`` returns rationals, within the float
    tolerance otherwise.  Stops at the first violation.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    for t in range(trials):
        perm = tuple(rng.sample(range(n), n))
        while True:
            pts = _sample_cone_points(rng, perm, n + 2, denom, span)
            vals = [g(p) for p in pts]
            exact = all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in vals)
            A = [p + [1] for p in pts[:n + 1]]
            if exact:
                coef = solve_exact(A, vals[:n + 1])
                if coef is None:
                    continue
                predicted = sum((c * v for c, v in zip(coef, pts[-1] + [1])), Fraction(0))
                residual = Fraction(vals[-1]) - predicted
                bad = residual != 0
            else:
                Af = np.array(A, dtype=np.float64)
                if abs(np.linalg.det(Af)) < 1e-9:
                    continue
                coef = np.linalg.solve(Af, np.array(vals[:n + 1], dtype=np.float64))
                predicted = float(np.dot(coef, [float(v) for v in pts[-1]] + [1.0]))
                residual = float(vals[-1]) - predicted
                scale = max(abs(float(v)) for v in vals)
                bad = abs(residual) > float_tolerance(scale)
            break
        if bad:
            witness = {"trial": t, "cone": [i + 1 for i in perm],
                       "points": [[str(v) for v in p] for p in pts],
                       "values": [_fmt(v) for v in vals],
                       "residual": _fmt(residual)}
            return ProbeReport(n, trials, seed, t + 1, False, witness)
    return ProbeReport(n, trials, seed, trials, True)
