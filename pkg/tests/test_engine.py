"""Ideal slices, standard monomials and Hilbert-Mumford indices.

Expected values are frozen from hand computations on the rosary families:
spot values were recomputed independently from the closed formulas
(standard-monomial counts 7r and 11r, weight sums 28r etc.) before being
asserted here.
"""

from fractions import Fraction

import pytest

from gitcurves.engine import (
    EngineError,
    chow_index_sign,
    evaluate_slice,
    extrapolate_index,
    hilbert_index,
    hilbert_polynomial,
    index_suite,
    point_index,
)
from gitcurves.families import (
    OneParamSubgroup,
    build_broken_bead_config,
    build_closed_rosary_config,
    build_open_rosary_config,
    canonical_1ps,
)
from gitcurves.monomials import MonomialOrder, monomial_count, pair_monomial


def closed_rosary_initial_degree2(r):
    """Hand-expanded degree-two leading monomials of the closed rosary.

    Hand tabulations easily overlook x0*x4, the leading term of
    x0*x4 - x2*x3 (a weight tie broken by the lex precedence); with it the
    cardinality is (9r^2-11r)/2 and the standard weight sum comes out at 28r.
    """
    n = 3 * r
    pm = lambda i, j: pair_monomial(n, i, j)
    s = {pm(0, 0), pm(0, 4)}
    for j in range(5, n):
        s.add(pm(0, j))
    for j in range(5, n - 3):
        s.add(pm(1, j))
    s.add(pm(1, n - 2))
    for i in range(2, n - 5):
        for j in range(i + 5, n):
            s.add(pm(i, j))
    for j in range(1, r):
        s |= {
            pm(3 * j - 3, 3 * j - 1),
            pm(3 * j - 3, 3 * j),
            pm(3 * j - 2, 3 * j + 1),
            pm(3 * j - 2, 3 * j + 2),
            pm(3 * j - 1, 3 * j + 1),
            pm(3 * j - 1, 3 * j + 2),
        }
    for j in range(1, r - 1):
        s |= {pm(3 * j - 1, 3 * j + 3), pm(3 * j, 3 * j + 4)}
    return s


def broken_bead_initial_degree2(r):
    """Hand-expanded degree-two leading monomials of the broken-bead rosary."""
    n = 3 * r
    pm = lambda i, j: pair_monomial(n, i, j)
    s = {pm(0, 0)}
    for j in range(3, n):
        s.add(pm(0, j))
    for j in range(3, n - 3):
        s.add(pm(1, j))
    s.add(pm(1, n - 2))
    for j in range(4, n):
        s.add(pm(2, j))
    for j in range(1, r - 1):
        for k in range(3 * j + 2, n):
            s.add(pm(3 * j, k))
        for k in range(3 * j + 4, n):
            s.add(pm(3 * j + 1, k))
            s.add(pm(3 * j + 2, k))
    return s


class TestSlices:
    @pytest.mark.parametrize("r", [4, 6])
    def test_closed_rosary_counts(self, r):
        c = build_closed_rosary_config(r)
        order = MonomialOrder(canonical_1ps(c))
        s2 = evaluate_slice(c, 2, order)
        s3 = evaluate_slice(c, 3, order)
        assert s2.standard_count == 7 * r
        assert s3.standard_count == 11 * r
        assert len(s2.initial_monomials()) == (9 * r * r - 11 * r) // 2

    @pytest.mark.parametrize("r", [4, 6])
    def test_closed_rosary_initial_set(self, r):
        c = build_closed_rosary_config(r)
        s2 = evaluate_slice(c, 2, MonomialOrder(canonical_1ps(c)))
        assert set(s2.initial_monomials()) == closed_rosary_initial_degree2(r)

    @pytest.mark.parametrize("r", [3, 5])
    def test_broken_bead_initial_set(self, r):
        c = build_broken_bead_config(r)
        s2 = evaluate_slice(c, 2, MonomialOrder(canonical_1ps(c)))
        assert set(s2.initial_monomials()) == broken_bead_initial_degree2(r)

    def test_degree_one_no_relations(self):
        c = build_closed_rosary_config(4)
        s1 = evaluate_slice(c, 1, MonomialOrder(canonical_1ps(c)))
        assert s1.standard_count == 12 == 3 * c.genus - 3
        assert s1.initial_monomials() == []

    def test_partition_of_monomials(self):
        c = build_broken_bead_config(3)
        s2 = evaluate_slice(c, 2, MonomialOrder(canonical_1ps(c)))
        n = c.num_coordinates
        assert len(s2.monomials) == monomial_count(n, 2)
        assert s2.standard_count + len(s2.initial_monomials()) == len(s2.monomials)

    def test_degree_cap(self):
        c = build_broken_bead_config(3)
        with pytest.raises(EngineError):
            evaluate_slice(c, 6, MonomialOrder(canonical_1ps(c)))
        # explicit cap overrides the default
        evaluate_slice(c, 2, MonomialOrder(canonical_1ps(c)), cap=2)
        with pytest.raises(EngineError):
            evaluate_slice(c, 3, MonomialOrder(canonical_1ps(c)), cap=2)

    def test_env_cap(self, monkeypatch):
        c = build_broken_bead_config(3)
        monkeypatch.setenv("GIT_CURVE_MAX_DEGREE", "2")
        with pytest.raises(EngineError):
            evaluate_slice(c, 3, MonomialOrder(canonical_1ps(c)))

    def test_certificates_are_ideal_members(self):
        c = build_broken_bead_config(3)
        order = MonomialOrder(canonical_1ps(c))
        s2 = evaluate_slice(c, 2, order, with_certificates=True)
        assert s2.basis is not None
        assert len(s2.basis) == len(s2.initial_monomials())
        stds = {i for i, flag in enumerate(s2.standard) if flag}
        par = c.parametrization
        for lead, tail in s2.basis:
            assert not s2.standard[lead]
            assert all(k in stds and k < lead for k, _ in tail)
            # evaluate the certificate polynomial on every component: must vanish
            for cm in par.maps:
                table = {t.coord: (t.s_exp, t.t_exp) for t in cm.terms}
                acc = {}
                for idx, coeff in [(lead, Fraction(1))] + [(k, -v) for k, v in tail]:
                    mono = s2.monomials[idx]
                    if any(e and i not in table for i, e in enumerate(mono)):
                        continue
                    se = sum(table[i][0] * e for i, e in enumerate(mono) if e)
                    te = sum(table[i][1] * e for i, e in enumerate(mono) if e)
                    acc[(se, te)] = acc.get((se, te), Fraction(0)) + coeff
                assert all(v == 0 for v in acc.values())


class TestIndices:
    @pytest.mark.parametrize(
        "g,r", [(5, 2), (6, 2), (6, 3), (7, 4), (8, 5)]
    )
    def test_open_rosary(self, g, r):
        cfg = build_open_rosary_config(g, r)
        rho = canonical_1ps(cfg)
        r2 = hilbert_index(cfg, rho, 2)
        r3 = hilbert_index(cfg, rho, 3)
        if r % 2 == 0:
            assert (r2.weight_sum, r2.average, r2.mu) == (28 * g - 28, 28 * g - 28, 0)
            assert (r3.weight_sum, r3.average, r3.mu) == (66 * g - 66, 66 * g - 66, 0)
        else:
            assert (r2.weight_sum, r2.average, r2.mu) == (28 * g - 41, 28 * g - 42, -1)
            assert (r3.weight_sum, r3.average, r3.mu) == (66 * g - 97, 66 * g - 99, -2)
        assert r2.count_matches_hilbert and r3.count_matches_hilbert

    @pytest.mark.parametrize("r", [4, 6, 8])
    def test_closed_rosary(self, r):
        cfg = build_closed_rosary_config(r)
        rho = canonical_1ps(cfg)
        r2 = hilbert_index(cfg, rho, 2)
        r3 = hilbert_index(cfg, rho, 3)
        assert r2.mu == 0 and r3.mu == 0
        assert r2.weight_sum == 28 * r
        assert r2.standard_count == 7 * r and r3.standard_count == 11 * r

    @pytest.mark.parametrize("r", [3, 5, 7])
    def test_broken_bead(self, r):
        cfg = build_broken_bead_config(r)
        rho = canonical_1ps(cfg)
        r2 = hilbert_index(cfg, rho, 2)
        r3 = hilbert_index(cfg, rho, 3)
        assert (r2.weight_sum, r2.average, r2.mu) == (28 * r - 13, 28 * r - 14, -1)
        assert (r3.weight_sum, r3.average, r3.mu) == (66 * r - 31, 66 * r - 33, -2)

    def test_standard_counts_match_hilbert_polynomial(self):
        for cfg in (build_closed_rosary_config(4), build_broken_bead_config(5)):
            rho = canonical_1ps(cfg)
            for m in (2, 3, 4):
                rep = hilbert_index(cfg, rho, m)
                assert rep.standard_count == hilbert_polynomial(cfg.genus, m)

    def test_interpolation_identity_degree_4(self):
        for cfg in (
            build_closed_rosary_config(4),
            build_broken_bead_config(3),
            build_broken_bead_config(5),
        ):
            rho = canonical_1ps(cfg)
            r2 = hilbert_index(cfg, rho, 2)
            r3 = hilbert_index(cfg, rho, 3)
            r4 = hilbert_index(cfg, rho, 4)
            assert extrapolate_index(r2.mu, r3.mu, 4) == r4.mu

    def test_weight_shift_invariance(self):
        cfg = build_broken_bead_config(3)
        rho = canonical_1ps(cfg)
        for m in (2, 3):
            base = hilbert_index(cfg, rho, m).mu
            shifted = hilbert_index(cfg, rho.shifted(5), m).mu
            assert base == shifted

    def test_split_requires_constant_d_weights(self):
        cfg = build_open_rosary_config(5, 2)
        w = list(canonical_1ps(cfg).weights)
        w[-1] = 7
        with pytest.raises(EngineError):
            hilbert_index(cfg, OneParamSubgroup(tuple(w)), 2)

    def test_degree_below_two_rejected(self):
        cfg = build_closed_rosary_config(4)
        with pytest.raises(EngineError):
            hilbert_index(cfg, canonical_1ps(cfg), 1)


class TestFormulas:
    def test_extrapolate_trivial(self):
        assert extrapolate_index(0, 0, 17) == 0

    def test_extrapolate_broken_bead_values(self):
        for m in range(2, 7):
            assert extrapolate_index(-1, -2, m) == 1 - m

    def test_extrapolate_endpoints(self):
        mu2, mu3 = Fraction(5, 3), Fraction(-7, 2)
        assert extrapolate_index(mu2, mu3, 2) == mu2
        assert extrapolate_index(mu2, mu3, 3) == mu3

    def test_chow_sign(self):
        assert chow_index_sign(0, 0) == 0
        assert chow_index_sign(-1, -2) == 0
        assert chow_index_sign(1, 3) == 1
        assert chow_index_sign(1, 1) == -1

    def test_point_index(self):
        assert point_index([0], OneParamSubgroup((3, 0, 0))) == -2
        assert point_index([2], OneParamSubgroup((5, 3, 1, 0))) == Fraction(5, 4)
        rho = OneParamSubgroup((4, 2, 1))
        full = point_index([0, 1, 2], rho)
        assert full == -1 + Fraction(7, 3)
        with pytest.raises(EngineError):
            point_index([], rho)

    def test_suite_chow_sign(self):
        cfg = build_broken_bead_config(3)
        suite = index_suite(cfg, canonical_1ps(cfg), [2, 3])
        assert suite.chow_sign == 0
        only2 = index_suite(cfg, canonical_1ps(cfg), [2])
        assert only2.chow_sign is None


class TestOpenRosaryBlock:
    """The rosary block of a split configuration, on its own coordinates."""

    @pytest.mark.parametrize("g,r", [(4, 1), (5, 2), (6, 3), (7, 4), (8, 5)])
    def test_block_counts_and_sums(self, g, r):
        cfg = build_open_rosary_config(g, r)
        rho = canonical_1ps(cfg).restrict(3 * r + 1)
        s2 = evaluate_slice(cfg, 2, MonomialOrder(rho))
        s3 = evaluate_slice(cfg, 3, MonomialOrder(rho))
        assert s2.standard_count == 7 * r + 1
        assert s3.standard_count == 11 * r + 1
        assert len(s2.initial_monomials()) == (9 * r * r - 5 * r) // 2
        if r % 2 == 0:
            assert s2.standard_weight_sum() == 28 * r + 4
            assert s3.standard_weight_sum() == 66 * r + 6
        else:
            assert s2.standard_weight_sum() == 28 * r - 9
            assert s3.standard_weight_sum() == 66 * r - 25


class TestDegreeThreeStructure:
    """Degree-3 leading terms are the degree-2 multiples plus one syzygy
    leading term per bead junction."""

    @pytest.mark.parametrize("r", [4, 6])
    def test_closed_rosary_degree3(self, r):
        c = build_closed_rosary_config(r)
        order = MonomialOrder(canonical_1ps(c))
        n = 3 * r
        s2 = evaluate_slice(c, 2, order)
        s3 = evaluate_slice(c, 3, order)

        def cube(i, j, k):
            m = [0] * n
            m[i] += 1
            m[j] += 1
            m[k] += 1
            return tuple(m)

        predicted = {cube(3 * r - 3, 3 * r - 3, 3 * r - 1), cube(1, 3 * r - 3, 3 * r - 3)}
        predicted |= {cube(3 * j - 2, 3 * j, 3 * j) for j in range(1, r)}
        for m2 in s2.initial_monomials():
            for v in range(n):
                m3 = list(m2)
                m3[v] += 1
                predicted.add(tuple(m3))
        assert set(s3.initial_monomials()) == predicted
