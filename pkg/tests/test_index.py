"""Commutation index: bounds, witnesses, see-saw heuristics."""

from fractions import Fraction

import numpy as np
import pytest

from fermitheta.algebra import OperatorSet, PauliString, enumerate_set
from fermitheta.index import (
    index_estimate,
    index_lower_family,
    index_lower_majorana,
    index_pauli_product,
    index_seesaw,
    index_upper,
    offdiag_index_check,
    pauli_index_weak_bound,
)
from fermitheta.kernel import InputError, RandomStream, random_state


def xyz():
    return OperatorSet("pauli", 1, 1, tuple(PauliString.from_label(c) for c in "XYZ"))


def product_state(seed, n):
    return [random_state(RandomStream(seed, j), 2) for j in range(n)]


class TestUpper:
    def test_s62(self):
        assert index_upper(enumerate_set("majorana", 6, 2)) == Fraction(1, 5)

    def test_s84(self):
        assert index_upper(enumerate_set("majorana", 8, 4)) == Fraction(1, 5)

    def test_xyz_triangle(self):
        assert abs(float(index_upper(xyz())) - 1 / 3) <= 1e-6


class TestLower:
    def test_62(self):
        value, witness = index_lower_majorana(6, 2)
        assert value == Fraction(3, 15)
        assert witness >= float(value) - 1e-9

    def test_84_binomial(self):
        value, witness = index_lower_majorana(8, 4)
        assert value == Fraction(6, 70)
        assert witness >= float(value) - 1e-9

    def test_124_witness(self):
        value, witness = index_lower_majorana(12, 4)
        assert value == Fraction(15, 495)
        assert witness is not None and witness >= float(value) - 1e-9

    def test_84_family_closes_sandwich(self):
        value, witness = index_lower_family(8, 4)
        assert value == Fraction(1, 5)
        assert abs(witness - 0.2) <= 1e-9


class TestPauliProduct:
    def test_00(self):
        v = index_pauli_product(2, 1, [np.array([1.0, 0]), np.array([1.0, 0])])
        assert abs(v - 1 / 3) <= 1e-12

    def test_000(self):
        v = index_pauli_product(3, 2, [np.array([1.0, 0])] * 3)
        assert abs(v - 1 / 9) <= 1e-12

    def test_random_product_states(self):
        for seed in range(5):
            v = index_pauli_product(4, 2, product_state(seed, 4))
            assert abs(v - 1 / 9) <= 1e-12

    def test_rejects_unnormalized(self):
        with pytest.raises(InputError):
            index_pauli_product(2, 1, [np.array([1.0, 1.0]), np.array([1.0, 0])])


class TestWeakBound:
    def test_values(self):
        assert pauli_index_weak_bound(5, 1) == Fraction(2, 3)
        assert pauli_index_weak_bound(5, 2) == Fraction(4, 9)

    def test_dominates_exact_value(self):
        assert pauli_index_weak_bound(2, 1) >= Fraction(1, 3)
        assert pauli_index_weak_bound(3, 2) >= Fraction(1, 9)

    def test_dominates_seesaw_at_k3(self):
        ops = enumerate_set("pauli", 3, 3)
        res = index_seesaw(ops, restarts=4, iters=100, seed=5)
        assert res.value <= float(pauli_index_weak_bound(3, 3)) + 1e-9


class TestSeesaw:
    def test_commuting_pair_reaches_one(self):
        ops = OperatorSet(
            "pauli",
            2,
            1,
            (PauliString.from_label("ZI"), PauliString.from_label("IZ")),
        )
        assert abs(index_seesaw(ops, restarts=2, iters=50, seed=1).value - 1.0) <= 1e-9

    def test_xyz_reaches_third(self):
        assert abs(index_seesaw(xyz(), restarts=4, iters=100, seed=2).value - 1 / 3) <= 1e-9

    def test_s62_closes(self):
        res = index_seesaw(enumerate_set("majorana", 6, 2), seed=7)
        assert abs(res.value - 0.2) <= 1e-6

    def test_monotone_history(self):
        res = index_seesaw(enumerate_set("majorana", 6, 2), restarts=2, iters=60, seed=3)
        assert all(b >= a - 1e-12 for a, b in zip(res.history, res.history[1:]))


class TestSandwich:
    @pytest.mark.parametrize("n,q", [(6, 2), (8, 4)])
    def test_ordering(self, n, q):
        est = index_estimate(enumerate_set("majorana", n, q), seed=7)
        assert float(est.lower) <= est.heuristic <= float(est.upper) + 1e-9

    def test_exact_closure(self):
        est = index_estimate(enumerate_set("majorana", 6, 2), seed=7)
        assert est.exact == Fraction(1, 5)

    def test_json(self):
        import json

        est = index_estimate(enumerate_set("majorana", 6, 2), seed=7)
        payload = json.loads(est.to_json())
        assert payload["upper"]["rational"] == "1/5"


class TestOffdiag:
    def test_singleton_z(self):
        ops = OperatorSet("pauli", 1, 1, (PauliString.from_label("Z"),))
        report = offdiag_index_check(ops, trials=4, seed=1, upper=1.0)
        assert report["passed"]
        assert report["estimate"] >= 1 - 1e-9

    def test_xyz_off_diagonal(self):
        report = offdiag_index_check(xyz(), trials=8, seed=2)
        # |<0|X|1>|^2 + |<0|Y|1>|^2 + |<0|Z|1>|^2 = 2, so the mean is 2/3
        assert report["estimate"] >= 2 / 3 - 1e-9
        assert report["estimate"] <= 16 / 3 + 1e-9

    def test_s62(self):
        report = offdiag_index_check(
            enumerate_set("majorana", 6, 2), trials=16, seed=3
        )
        assert report["estimate"] <= 16 / 5 + 1e-9


class TestPauliUpperSmall:
    def test_p21_upper_is_third(self):
        # two disjoint single-qubit triangles: theta = 2, so the mean is 1/3
        upper = index_upper(enumerate_set("pauli", 2, 1))
        assert abs(float(upper) - 1 / 3) <= 1e-3
