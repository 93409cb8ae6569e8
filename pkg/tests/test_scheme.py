"""Johnson scheme: exact eigenvalue tables against brute-force spectra."""

from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermitheta.kernel import InputError
from fermitheta.scheme import (
    HahnTable,
    dual_hahn,
    johnson_adjacency,
    verify_scheme_spectrum,
)


class TestDualHahn:
    def test_all_ones_eigenvalue(self):
        # eigenvalue on the constant eigenspace equals the regular degree
        assert dual_hahn(8, 4, 1, 0) == comb(4, 1) * comb(4, 1) == 16

    def test_identity_class(self):
        for m, r in [(6, 2), (9, 3), (10, 4)]:
            for x in range(r + 1):
                assert dual_hahn(m, r, 0, x) == 1

    def test_triangular_graph_spectrum(self):
        assert dual_hahn(6, 2, 1, 0) == 8
        assert dual_hahn(6, 2, 1, 1) == 2
        assert dual_hahn(6, 2, 1, 2) == -2

    def test_degree_formula(self):
        for m, r in [(6, 2), (8, 3), (10, 4)]:
            for d in range(r + 1):
                assert dual_hahn(m, r, d, 0) == comb(m - r, d) * comb(r, d)

    @given(st.integers(2, 12), st.data())
    @settings(max_examples=60, deadline=None)
    def test_row_sums(self, m, data):
        r = data.draw(st.integers(1, min(4, m)))
        x = data.draw(st.integers(0, r))
        total = sum(dual_hahn(m, r, d, x) for d in range(r + 1))
        assert total == (comb(m, r) if x == 0 else 0)

    def test_bounds_checked(self):
        with pytest.raises(InputError):
            dual_hahn(4, 5, 1, 0)
        with pytest.raises(InputError):
            dual_hahn(6, 2, 1, 3)


class TestHahnTable:
    def test_invariants(self):
        t = HahnTable(8, 4)
        assert all(t[0, x] == 1 for x in range(5))
        assert all(t[d, 0] == comb(4, d) * comb(4, d) for d in range(5))

    def test_csv_shape(self):
        text = HahnTable(6, 2).to_csv()
        lines = text.strip().splitlines()
        assert len(lines) == 4  # header + 3 distance rows


class TestJohnsonAdjacency:
    def test_perfect_matching(self):
        A = johnson_adjacency(4, 2, 2).entries
        assert np.array_equal(A.sum(axis=0), np.ones(6))
        assert np.array_equal(A, A.T)

    def test_distance_one_regular(self):
        A = johnson_adjacency(6, 2, 1).entries
        assert set(A.sum(axis=0).real.astype(int)) == {comb(2, 1) * comb(4, 1)}

    def test_distance_zero_identity(self):
        A = johnson_adjacency(5, 2, 0).entries
        assert np.array_equal(A, np.eye(10))


class TestVerifySpectrum:
    def test_complete_graph_case(self):
        # single-distance scheme on singletons: distance-1 graph is complete
        report = verify_scheme_spectrum(5, 1)
        assert report.ok
        assert dual_hahn(5, 1, 1, 0) == 4 and dual_hahn(5, 1, 1, 1) == -1

    @pytest.mark.parametrize("m,r", [(6, 2), (8, 3)])
    def test_examples(self, m, r):
        report = verify_scheme_spectrum(m, r)
        assert report.ok, report.notes

    def test_multiplicities_johnson_62(self):
        report = verify_scheme_spectrum(6, 2)
        assert report.multiplicities == {0: 1, 1: 5, 2: 9}

    def test_report_json(self):
        import json

        payload = json.loads(verify_scheme_spectrum(6, 2).to_json())
        assert payload["ok"] is True
        assert payload["m"] == 6
