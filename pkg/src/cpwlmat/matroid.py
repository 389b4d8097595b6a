"""Uniform and circuit-defined matroids on ``[n]``.

Subsets are bitmasks (element ``i`` is bit ``i``, 0-based).  JSON uses
1-based element lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from .errors import SchemaError, check_n
from .lattice import elements, format_mask, mask_of, popcount, popcounts


def _check_mask(n, mask):
    if not 0 <= mask < (1 << n):
        raise ValueError(f"mask {mask} out of range for n={n}")


def masks_of_size(n, size):
    """All masks of popcount ``size`` in increasing numeric order."""
    if size < 0 or size > n:
        return []
    return sorted(mask_of(c) for c in combinations(range(n), size))


class Matroid:
    """Common interface: subclasses supply ``circuits`` and ``is_independent``."""

    n: int

    def is_dependent(self, mask):
        return not self.is_independent(mask)

    def is_circuit(self, mask):
        return mask in self._circuit_set

    @cached_property
    def _circuit_set(self):
        return frozenset(self.circuits())

    def independent_sets(self):
        """Independent masks in increasing numeric order."""
        return [m for m in range(1 << self.n) if self.is_independent(m)]

    def dependent_sets(self):
        return [m for m in range(1 << self.n) if not self.is_independent(m)]


@dataclass(frozen=True)
class UniformMatroid(Matroid):
    """The rank-``k`` uniform matroid: independent sets are those of size <= k."""

    n: int
    k: int

    def __post_init__(self):
        check_n(self.n)
        if not 0 <= self.k <= self.n:
            raise ValueError(f"rank k={self.k} outside [0, n={self.n}]")

    def is_independent(self, mask):
        _check_mask(self.n, mask)
        return popcount(mask) <= self.k

    def circuits(self):
        return iter(masks_of_size(self.n, self.k + 1))

    def rank(self, mask):
        _check_mask(self.n, mask)
        return min(popcount(mask), self.k)

    def count_independent(self):
        return sum(comb(self.n, i) for i in range(self.k + 1))

    def independent_sets(self):
        sizes = popcounts(self.n)
        return [int(m) for m in np.flatnonzero(sizes <= self.k)]

    def to_json(self):
        return {"type": "uniform", "n": self.n, "k": self.k}


@dataclass(frozen=True)
class CircuitMatroid(Matroid):
    """Matroid given by an explicit circuit family.

    The family is deduplicated and sorted.  Empty circuits are rejected; with
    ``strict=True`` (the default) a family that is not an antichain is also
    rejected.  Pass ``strict=False`` to hold an arbitrary family for
    :func:`validate_circuit_axioms`.  The elimination axiom is never enforced:
    downstream code only relies on "dependent iff it contains a circuit".
    """

    n: int
    circuit_masks: tuple = field(default=())
    strict: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        check_n(self.n)
        cs = sorted(set(int(c) for c in self.circuit_masks))
        for c in cs:
            _check_mask(self.n, c)
            if c == 0:
                raise ValueError("the empty set cannot be a circuit")
        object.__setattr__(self, "circuit_masks", tuple(cs))
        if self.strict:
            pair = _antichain_witness(cs)
            if pair is not None:
                a, b = pair
                raise ValueError(
                    f"circuits are not an antichain: {format_mask(a)} is inside {format_mask(b)}")

    def circuits(self):
        return iter(self.circuit_masks)

    @cached_property
    def _dependent(self):
        # upward closure of the circuit family, one bit at a time
        dep = np.zeros(1 << self.n, dtype=bool)
        dep[list(self.circuit_masks)] = True
        cube = dep.reshape((2,) * self.n)
        for axis in range(self.n):
            lo = [slice(None)] * self.n
            hi = [slice(None)] * self.n
            lo[axis], hi[axis] = 0, 1
            cube[tuple(hi)] |= cube[tuple(lo)]
        dep.flags.writeable = False
        return dep

    @cached_property
    def _rank_table(self):
        # rank(S) = |S| if S independent, else max over single deletions
        size = 1 << self.n
        dep = self._dependent
        sizes = popcounts(self.n)
        r = [0] * size
        for m in range(1, size):
            if not dep[m]:
                r[m] = int(sizes[m])
                continue
            best = 0
            sub = m
            while sub:
                low = sub & -sub
                best = max(best, r[m ^ low])
                sub ^= low
            r[m] = best
        return r

    def is_independent(self, mask):
        _check_mask(self.n, mask)
        return not self._dependent[mask]

    def rank(self, mask):
        _check_mask(self.n, mask)
        return self._rank_table[mask]

    def count_independent(self):
        return int((~self._dependent).sum())

    def independent_sets(self):
        return [int(m) for m in np.flatnonzero(~self._dependent)]

    def dependent_sets(self):
        return [int(m) for m in np.flatnonzero(self._dependent)]

    def to_json(self):
        return {"type": "circuits", "n": self.n,
                "circuits": [[e + 1 for e in elements(c)] for c in self.circuit_masks]}


def _antichain_witness(cs):
    for a in cs:
        for b in cs:
            if a != b and a & b == a:
                return a, b
    return None


@dataclass
class AxiomReport:
    antichain: bool
    elimination: bool
    antichain_witness: tuple | None = None
    elimination_witness: tuple | None = None

    def to_json(self):
        anti = elim = None
        if self.antichain_witness is not None:
            anti = [format_mask(m) for m in self.antichain_witness]
        if self.elimination_witness is not None:
            c1, c2, e = self.elimination_witness
            elim = {"c1": format_mask(c1), "c2": format_mask(c2), "element": e + 1}
        return {"antichain": self.antichain, "elimination": self.elimination,
                "antichain_witness": anti, "elimination_witness": elim}


def validate_circuit_axioms(M):
    """Check the antichain and circuit-elimination axioms exhaustively.

    Elimination: for circuits ``C1 != C2`` and ``e`` in both, some stored
    circuit lies inside ``(C1 | C2) - {e}``.  Failures are reported with the
    first witness found, ``(C1, C2, e)`` with ``e`` 0-based.
    """
    if M.n > 12:
        raise ValueError(f"exhaustive axiom check is limited to n <= 12 (n={M.n})")
    cs = list(M.circuits())
    anti = _antichain_witness(cs)
    elim = None
    for c1, c2 in combinations(cs, 2):
        common = c1 & c2
        union = c1 | c2
        for e in elements(common):
            target = union & ~(1 << e)
            if not any(c & target == c for c in cs):
                elim = (c1, c2, e)
                break
        if elim is not None:
            break
    return AxiomReport(anti is None, elim is None, anti, elim)


def matroid_from_json(data, strict=True):
    if not isinstance(data, dict):
        raise SchemaError("matroid", "expected a JSON object")
    kind = data.get("type")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise SchemaError("matroid.n", f"expected an integer, got {n!r}")
    try:
        check_n(n)
    except ValueError as exc:
        if type(exc) is ValueError:
            raise SchemaError("matroid.n", str(exc)) from None
        raise
    if kind == "uniform":
        k = data.get("k")
        if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= n:
            raise SchemaError("matroid.k", f"expected an integer in [0, {n}], got {k!r}")
        return UniformMatroid(n, k)
    if kind == "circuits":
        raw = data.get("circuits")
        if not isinstance(raw, list):
            raise SchemaError("matroid.circuits", "expected a list of element lists")
        masks = []
        for i, c in enumerate(raw):
            fld = f"matroid.circuits[{i}]"
            if not isinstance(c, list) or not c:
                raise SchemaError(fld, "expected a non-empty list of 1-based elements")
            for e in c:
                if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
                    raise SchemaError(fld, f"element {e!r} outside 1..{n}")
            masks.append(mask_of(e - 1 for e in c))
        try:
            return CircuitMatroid(n, tuple(masks), strict=strict)
        except ValueError as exc:
            raise SchemaError("matroid.circuits", str(exc)) from None
    raise SchemaError("matroid.type", f"expected 'uniform' or 'circuits', got {kind!r}")
