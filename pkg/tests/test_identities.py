import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ninionics.errors import DomainError
from ninionics.identities import (
    GAMMA_FLOOR,
    boson_identity_residual,
    boson_identity_rhs,
    boson_phase_sum,
    check_boson_identity,
    check_fermion_identity,
    coprime_fractions,
    fermion_identity_residual,
    fermion_identity_rhs,
    fermion_phase_sum,
    regularized_count_limit,
    regularized_count_ratio,
    scan_identity_residuals,
)


def direct_complex_sum(p, q, gamma, fermionic):
    """Independent oracle: plain double loop over c and m with cmath."""
    total = 0j
    sign = 1.0 if fermionic else -1.0
    offset = 0.5 if fermionic else 0.0
    for c in (1, -1):
        for m in range(q):
            phase = 2.0 * math.pi * c * (m + offset) * p / q
            total += cmath.log(1.0 + sign * cmath.exp(-gamma + 1j * phase))
    return 0.5 * total


class TestBosonIdentity:
    def test_single_term(self):
        assert boson_phase_sum(1, 1, 1.0) == pytest.approx(
            math.log(1.0 - math.exp(-1.0)), abs=1e-15)

    def test_q_two_hand_expansion(self):
        # (1/2)[2 ln(1 - e^-1) + 2 ln(1 + e^-1)] = ln(1 - e^-2)
        got = boson_phase_sum(1, 2, 1.0)
        hand = math.log(1.0 - math.exp(-1.0)) + math.log(1.0 + math.exp(-1.0))
        assert got == pytest.approx(hand, abs=1e-14)
        assert got == pytest.approx(math.log(1.0 - math.exp(-2.0)), abs=1e-14)
        oracle = direct_complex_sum(1, 2, 1.0, fermionic=False)
        assert got == pytest.approx(oracle.real, abs=1e-13)

    def test_three_sevenths(self):
        assert abs(boson_phase_sum(3, 7, 0.5) - math.log1p(-math.exp(-3.5))) < 1e-12

    def test_residual_examples(self):
        # q = 1 is an algebraic triviality; lhs and rhs still travel separate
        # float paths (complex log vs log1p), so "exact" means a last-ulp match
        assert boson_identity_residual(1, 1, 1.0) < 1e-15
        assert boson_identity_residual(1, 2, 1.0) < 1e-12
        assert boson_identity_residual(5, 8, 2.0) < 1e-12

    @pytest.mark.parametrize("p,q", [(1, 3), (2, 5), (4, 9), (7, 16), (5, 12)])
    @pytest.mark.parametrize("gamma", [0.1, 0.7, 3.0, 10.0])
    def test_matches_direct_oracle(self, p, q, gamma):
        oracle = direct_complex_sum(p, q, gamma, fermionic=False)
        assert abs(oracle.imag) < 1e-13  # conjugate-pair cancellation
        assert boson_phase_sum(p, q, gamma) == pytest.approx(oracle.real, abs=1e-12)

    def test_grid_residuals(self):
        for gamma in (0.1, 1.0, 10.0):
            for check in scan_identity_residuals("bose", 16, gamma):
                assert check.residual < 1e-12

    def test_numerator_independence(self):
        for q in (5, 7, 12, 16):
            values = [boson_phase_sum(p, q, 0.3)
                      for p in range(1, q + 1) if math.gcd(p, q) == 1]
            assert max(values) - min(values) < 1e-12

    def test_non_coprime_rejected(self):
        with pytest.raises(DomainError, match="irreducible"):
            boson_phase_sum(2, 4, 1.0)

    def test_gamma_floor(self):
        with pytest.raises(DomainError):
            boson_phase_sum(1, 2, 0.0)
        with pytest.raises(DomainError):
            boson_phase_sum(1, 2, GAMMA_FLOOR / 10)
        # configurable floor
        assert math.isfinite(boson_phase_sum(1, 2, 1e-8, gamma_floor=1e-9))


class TestFermionIdentity:
    def test_full_turn_equals_boson_form(self):
        # single term: ln(1 + e^{-gamma + i pi}) = ln(1 - e^{-gamma}); sign (+1)^2
        got = check_fermion_identity(1, 1, 1.0)
        assert got.lhs == pytest.approx(math.log(1.0 - math.exp(-1.0)), abs=1e-14)
        assert got.rhs == pytest.approx(got.lhs, abs=1e-13)

    def test_half_turn(self):
        check = check_fermion_identity(1, 2, 1.0)
        assert check.rhs == pytest.approx(math.log1p(math.exp(-2.0)), abs=1e-15)
        assert check.residual < 1e-12

    def test_two_thirds(self):
        assert fermion_identity_residual(2, 3, 0.7) < 1e-12

    @pytest.mark.parametrize("p,q", [(1, 2), (1, 3), (3, 4), (2, 7), (5, 8)])
    @pytest.mark.parametrize("gamma", [0.1, 0.7, 3.0])
    def test_matches_direct_oracle(self, p, q, gamma):
        oracle = direct_complex_sum(p, q, gamma, fermionic=True)
        assert abs(oracle.imag) < 1e-13
        assert fermion_phase_sum(p, q, gamma) == pytest.approx(oracle.real, abs=1e-12)

    def test_grid_residuals(self):
        for gamma in (0.1, 1.0, 10.0):
            for check in scan_identity_residuals("fermi", 16, gamma):
                assert check.residual < 1e-12

    def test_sign_factor_parity(self):
        # p + q odd keeps the fermionic form, even flips it to the bosonic one
        assert fermion_identity_rhs(1, 2, 1.0) == pytest.approx(
            math.log1p(math.exp(-2.0)))
        assert fermion_identity_rhs(1, 3, 1.0) == pytest.approx(
            math.log1p(-math.exp(-3.0)))

    def test_mutation_flipped_sign_detected(self):
        # The wrong sign choice must be loudly wrong where e^{-q gamma} is
        # appreciable; gamma = 1/q makes the flipped residual ~0.77 for all q.
        for p, q in [(1, 1), (1, 2), (2, 3), (5, 8), (7, 16), (9, 64)]:
            gamma = 1.0 / q
            lhs = fermion_phase_sum(p, q, gamma)
            sign = 1.0 if (p + q) % 2 == 0 else -1.0
            wrong = math.log1p(+sign * math.exp(-q * gamma))
            assert abs(lhs - wrong) > 0.1
            assert abs(lhs - fermion_identity_rhs(p, q, gamma)) < 1e-12


class TestCoprimeFractions:
    def test_small(self):
        assert list(coprime_fractions(3)) == [(1, 1), (1, 2), (1, 3), (2, 3)]

    def test_count_totient(self):
        # sum of Euler totients up to 64
        def phi(n):
            return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)

        assert len(list(coprime_fractions(64))) == sum(phi(q) for q in range(1, 65))


class TestRegularizedCount:
    def test_q_one_exact(self):
        for eps in (1e-4, 0.3, 2.0, 50.0):
            assert regularized_count_ratio(1, eps) == 1.0

    def test_closed_form_value(self):
        eps = 1.0
        s = lambda e: (1.0 + math.exp(-e)) / (1.0 - math.exp(-e))
        assert regularized_count_ratio(2, eps) == pytest.approx(s(2.0) / s(1.0), rel=1e-15)

    @pytest.mark.parametrize("q", [2, 3, 5, 7])
    def test_limit(self, q):
        assert regularized_count_limit(q) == pytest.approx(1.0 / q, abs=1e-6)

    def test_limit_oracle_direct_sum(self):
        # brute-force partial sums reproduce the closed form
        eps = 0.01
        m_cut = 20_000
        direct = sum(math.exp(-eps * abs(m)) for m in range(-m_cut, m_cut + 1))
        closed = (1.0 + math.exp(-eps)) / (1.0 - math.exp(-eps))
        assert direct == pytest.approx(closed, rel=1e-12)

    def test_bad_eps(self):
        with pytest.raises(DomainError):
            regularized_count_ratio(2, 0.0)
        with pytest.raises(DomainError):
            regularized_count_ratio(2, -1.0)

    def test_non_geometric_ladder_rejected(self):
        with pytest.raises(DomainError):
            regularized_count_limit(2, (1e-2, 1e-3, 1e-3))


@given(st.integers(1, 40), st.floats(0.05, 8.0))
def test_identity_residuals_property(q, gamma):
    p = next(k for k in range(1, q + 1) if math.gcd(k, q) == 1)
    assert boson_identity_residual(p, q, gamma) < 1e-12
    assert fermion_identity_residual(p, q, gamma) < 1e-12


def test_check_dataclass_residual():
    chk = check_boson_identity(2, 5, 0.4)
    assert chk.residual == abs(chk.lhs - chk.rhs)
    assert chk.rhs == boson_identity_rhs(5, 0.4)
