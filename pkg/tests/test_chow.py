"""Hilbert-Samuel multiplicity bounds and instability certificates."""

from fractions import Fraction

import pytest

from gitcurves.chow import (
    CASES,
    GENUS_ONE_TACNODE_TAIL,
    HIGHER_TACNODE,
    MULTIPLE_COMPONENT,
    NON_ORDINARY_CUSP,
    BranchData,
    ChowError,
    MultiplicityCertificate,
    branch_multiplicity_bound,
    certify_unstable,
    chow_threshold,
    degenerate_multiplicity,
)
from gitcurves.families import OneParamSubgroup


class TestBranchBound:
    def test_non_ordinary_cusp_branch(self):
        b = BranchData("cusp", (0, 2, 4), tail_order=5)
        assert branch_multiplicity_bound(b, OneParamSubgroup((5, 3, 1, 0))) == 25

    def test_tacnode_branch_pair(self):
        b = BranchData("branch", (0, 1, 2), tail_order=3)
        rho = OneParamSubgroup((3, 2, 1, 0))
        assert 2 * branch_multiplicity_bound(b, rho) == 18

    def test_zero_weights(self):
        b = BranchData("p", (0, 1, 2))
        assert branch_multiplicity_bound(b, OneParamSubgroup((0, 0, 0))) == 0

    def test_monotone_in_orders_and_weights(self):
        rho = OneParamSubgroup((4, 2, 1, 0))
        base = branch_multiplicity_bound(BranchData("p", (0, 1, 2, 5)), rho)
        bumped = branch_multiplicity_bound(BranchData("p", (0, 2, 2, 5)), rho)
        heavier = branch_multiplicity_bound(
            BranchData("p", (0, 1, 2, 5)), OneParamSubgroup((5, 3, 2, 1))
        )
        assert bumped >= base and heavier >= base

    def test_permutation_invariance(self):
        rho = OneParamSubgroup((4, 2, 1, 0))
        b = BranchData("p", (0, 3, 1, 2))
        perm = [2, 0, 3, 1]
        rho_p = OneParamSubgroup(tuple(rho.weights[i] for i in perm))
        b_p = BranchData("p", tuple(b.orders[i] for i in perm))
        assert branch_multiplicity_bound(b, rho) == branch_multiplicity_bound(b_p, rho_p)

    def test_branch_must_hit_some_coordinate(self):
        with pytest.raises(ChowError):
            BranchData("p", (1, 2, 3), tail_order=None)
        with pytest.raises(ChowError):
            branch_multiplicity_bound(
                BranchData("p", (None, None), tail_order=None),
                OneParamSubgroup((1, 0)),
            )


class TestThresholds:
    def test_bicanonical_cusp_threshold(self):
        # 2 * (4g-4)/(3g-3) * 9 = 24, independent of g
        assert chow_threshold(1, 3 * 7 - 4, 4 * 7 - 4, 9) == 24
        assert chow_threshold(1, 3 * 11 - 4, 4 * 11 - 4, 9) == 24

    def test_tacnode_threshold(self):
        assert chow_threshold(1, 3 * 5 - 4, 4 * 5 - 4, 6) == 16

    def test_zero_weight_sum(self):
        assert chow_threshold(1, 10, 12, 0) == 0

    def test_degenerate_multiplicity(self):
        g = 6
        assert degenerate_multiplicity(1, 2, 4 * g - 10) == 4 * (4 * g - 10)
        assert degenerate_multiplicity(1, 0, 100) == 0
        assert degenerate_multiplicity(1, 3, 4) == 24
        with pytest.raises(ChowError):
            degenerate_multiplicity(1, -1, 4)


class TestCertificates:
    def test_non_ordinary_cusp(self):
        c = certify_unstable(NON_ORDINARY_CUSP)
        assert (c.lower_bound, c.threshold) == (25, 24)
        assert c.unstable

    def test_higher_tacnode(self):
        c = certify_unstable(HIGHER_TACNODE)
        assert (c.lower_bound, c.threshold) == (18, 16)
        assert c.unstable

    def test_multiple_component(self):
        c = certify_unstable(MULTIPLE_COMPONENT)
        assert (c.lower_bound, c.threshold) == (18, 16)
        assert c.unstable

    @pytest.mark.parametrize("g", range(4, 21))
    def test_genus_one_tacnode_tail(self, g):
        c = certify_unstable(GENUS_ONE_TACNODE_TAIL, g)
        assert c.lower_bound == 36 + 16 * g - 40
        assert c.threshold == Fraction(16 * g) - Fraction(40, 3)
        assert c.unstable

    def test_tail_case_needs_genus(self):
        with pytest.raises(ChowError):
            certify_unstable(GENUS_ONE_TACNODE_TAIL)
        with pytest.raises(ChowError):
            certify_unstable(GENUS_ONE_TACNODE_TAIL, 3)

    def test_unknown_case(self):
        with pytest.raises(ChowError):
            certify_unstable("smooth-point")

    def test_all_cases_are_certified_unstable(self):
        for case in CASES:
            c = certify_unstable(case, 7 if case == GENUS_ONE_TACNODE_TAIL else None)
            assert isinstance(c, MultiplicityCertificate)
            assert c.verdict == "Unstable"
