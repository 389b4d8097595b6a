import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cpwlmat import (BasisCoefficients, CircuitMatroid, LowOrderTable, MoebiusSpectrum,
                     SchemaError, SetFunction, UniformMatroid, decompose,
                     extend_from_low_order, membership, phi, project, reconstruct,
                     triple_relation_check, zeta_transform)
from cpwlmat.lattice import mask_of

from conftest import ANCHOR_LOW_ORDER, ANCHOR_VALUES
from oracles import (bits, is_subset, members_of, recursive_extension,
                     rank_gauss)

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=7)


def random_member(rng, M):
    """Brute-force subset sums of random coefficients on independent sets."""
    n = M.n
    c = {T: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for T in M.independent_sets()}
    vals = [sum((v for T, v in c.items() if is_subset(T, S)), Fraction(0))
            for S in range(1 << n)]
    return SetFunction(n, vals), c


class TestDecompose:
    def test_anchor_function(self, anchor_F):
        coeffs, residual = decompose(anchor_F, UniformMatroid(3, 2))
        assert residual == []
        assert coeffs.coeffs == {0: 0, 1: 1, 2: 2, 4: 3, 3: 2, 5: 2, 6: 2}

    @pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (5, 3)])
    def test_phi_independent(self, n, k):
        M = UniformMatroid(n, k)
        for T in M.independent_sets():
            coeffs, residual = decompose(phi(T, n), M)
            assert residual == []
            assert coeffs.nonzero() == {T: 1}

    def test_dependent_unit(self):
        M = UniformMatroid(4, 2)
        F = zeta_transform(MoebiusSpectrum(4, [1 if S == 0b0111 else 0 for S in range(16)]))
        coeffs, residual = decompose(F, M)
        assert coeffs.nonzero() == {}
        assert residual == [(0b0111, 1)]

    def test_size_mismatch(self, anchor_F):
        with pytest.raises(ValueError):
            decompose(anchor_F, UniformMatroid(4, 2))


class TestReconstruct:
    def test_anchor_coefficients(self):
        c = BasisCoefficients(UniformMatroid(3, 2), {1: 1, 2: 2, 4: 3, 3: 2, 5: 2, 6: 2})
        F = reconstruct(c)
        assert F.tolist() == ANCHOR_VALUES
        assert F[7] == 12

    def test_unit(self):
        M = UniformMatroid(4, 2)
        for T in M.independent_sets():
            assert reconstruct(BasisCoefficients(M, {T: 1})) == phi(T, 4)

    def test_zero(self):
        assert reconstruct(BasisCoefficients(UniformMatroid(3, 1), {})) == SetFunction.zeros(3)

    def test_rejects_dependent_key(self):
        with pytest.raises(ValueError):
            BasisCoefficients(UniformMatroid(3, 1), {0b11: 1})

    @pytest.mark.parametrize("n", range(3, 9))
    def test_round_trip_members(self, n):
        rng = random.Random(n)
        M = UniformMatroid(n, 2)
        for _ in range(5):
            F, c = random_member(rng, M)
            coeffs, residual = decompose(F, M)
            assert residual == []
            assert coeffs.coeffs == c
            assert reconstruct(coeffs) == F

    def test_circuit_matroid_round_trip(self):
        rng = random.Random(7)
        M = CircuitMatroid(5, (mask_of([0, 1, 2]), mask_of([2, 3]), mask_of([0, 3, 4])))
        for _ in range(5):
            F, c = random_member(rng, M)
            coeffs, residual = decompose(F, M)
            assert residual == [] and reconstruct(coeffs) == F

    def test_json(self, anchor_F):
        coeffs, _ = decompose(anchor_F, UniformMatroid(3, 2))
        back = BasisCoefficients.from_json(coeffs.to_json())
        assert back.coeffs == coeffs.coeffs and back.matroid == coeffs.matroid
        with pytest.raises(SchemaError):
            BasisCoefficients.from_json({"matroid": {"type": "uniform", "n": 3, "k": 2},
                                         "coeffs": {"7": "1"}})


class TestProject:
    def test_fixes_members(self, anchor_F):
        assert project(anchor_F, UniformMatroid(3, 2)) == anchor_F

    def test_kills_dependent_unit(self):
        F = zeta_transform(MoebiusSpectrum(3, [0] * 7 + [5]))
        assert project(F, UniformMatroid(3, 2)) == SetFunction.zeros(3)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 8).flatmap(lambda n: st.tuples(
        st.integers(0, n), st.lists(rationals, min_size=1 << n, max_size=1 << n))))
    def test_idempotent(self, args):
        k, vals = args
        n = len(vals).bit_length() - 1
        M = UniformMatroid(n, k)
        P = project(SetFunction(n, vals), M)
        assert project(P, M) == P
        assert membership(P, M, "moebius_support").member


def low_order_table(rng, n, k):
    return {S: Fraction(rng.randint(-20, 20), rng.randint(1, 5))
            for S in range(1 << n) if bits(S) <= k}


class TestExtension:
    def test_anchor_table(self):
        F = extend_from_low_order(LowOrderTable(3, 2, ANCHOR_LOW_ORDER))
        assert F[0b111] == 12
        assert F.tolist() == ANCHOR_VALUES

    def test_zero_table(self):
        t = LowOrderTable(4, 2, {S: 0 for S in range(16) if bits(S) <= 2})
        assert extend_from_low_order(t) == SetFunction.zeros(4)

    def test_incomplete(self):
        vals = dict(ANCHOR_LOW_ORDER)
        del vals[5]
        with pytest.raises(ValueError):
            LowOrderTable(3, 2, vals)

    def test_wrong_matroid(self):
        t = LowOrderTable(3, 2, ANCHOR_LOW_ORDER)
        with pytest.raises(ValueError):
            extend_from_low_order(t, UniformMatroid(3, 1))
        with pytest.raises(TypeError):
            extend_from_low_order(t, CircuitMatroid(3, (7,)))

    def test_n4_all_orderings(self):
        rng = random.Random(4)
        n = 4
        table = low_order_table(rng, n, 2)
        F = extend_from_low_order(LowOrderTable(n, 2, table))
        assert all(F[S] == v for S, v in table.items())
        assert triple_relation_check(F) == []
        # every triple choice at every level of the recursion
        big = [S for S in range(1 << n) if bits(S) >= 3]
        choices = {S: list(combinations(members_of(S, n), 3)) for S in big}
        for pick3 in choices[0b0111] or [None]:
            for pick4 in choices[0b1111]:
                def choose(S, triples, _p3=pick3, _p4=pick4):
                    if S == 0b1111:
                        return _p4
                    if S == 0b0111:
                        return _p3
                    return triples[0]
                assert recursive_extension(table, n, choose) == F.tolist()
        assert membership(F, UniformMatroid(n, 2), "moebius_support").member

    @pytest.mark.parametrize("n", range(3, 8))
    def test_path_independence_random_choices(self, n):
        rng = random.Random(100 + n)
        table = low_order_table(rng, n, 2)
        F = extend_from_low_order(LowOrderTable(n, 2, table)).tolist()
        for strategy in range(4):
            pick = random.Random(strategy)
            assert recursive_extension(table, n, lambda S, ts: pick.choice(ts)) == F

    @pytest.mark.parametrize("n,k", [(4, 1), (5, 3), (6, 2)])
    def test_general_k(self, n, k):
        rng = random.Random(n + k)
        table = low_order_table(rng, n, k)
        F = extend_from_low_order(LowOrderTable(n, k, table))
        assert all(F[S] == v for S, v in table.items())
        assert membership(F, UniformMatroid(n, k)).member

    @pytest.mark.parametrize("n", [4, 5])
    def test_dimension_by_full_dependent_system(self, n):
        # kernel of the constraints F^(S) = 0 for every dependent S, by Gauss
        for k in range(n + 1):
            M = UniformMatroid(n, k)
            rows = []
            for S in M.dependent_sets():
                rows.append([(-1) ** (bits(S) - bits(T)) if is_subset(T, S) else 0
                             for T in range(1 << n)])
            assert (1 << n) - rank_gauss(rows) == M.count_independent()

    def test_interval_identity(self):
        rng = random.Random(9)
        n = 6
        F = extend_from_low_order(LowOrderTable(n, 2, low_order_table(rng, n, 2)))
        for S in range(1 << n):
            for trip in combinations(members_of(S, n), 3):
                U = mask_of(trip)
                total = sum((-1) ** bits(W) * F[S & ~W] for W in range(1 << n)
                            if is_subset(W, U))
                assert total == 0

    def test_json_round_trip(self):
        t = LowOrderTable(3, 2, ANCHOR_LOW_ORDER)
        back = LowOrderTable.from_json(t.to_json())
        assert back == LowOrderTable(3, 2, {S: Fraction(v) for S, v in ANCHOR_LOW_ORDER.items()})
        data = t.to_json()
        del data["k"]
        assert LowOrderTable.from_json(data, k=2).k == 2
        with pytest.raises(SchemaError):
            LowOrderTable.from_json(data)


class TestTriples:
    def test_anchor(self, anchor_F):
        assert triple_relation_check(anchor_F) == []

    def test_perturbed(self):
        F = SetFunction(3, ANCHOR_VALUES[:7] + [13])
        assert triple_relation_check(F) == [((0, 1, 2), 1)]

    def test_small_n(self):
        assert triple_relation_check(SetFunction(2, [1, 2, 3, 9])) == []
