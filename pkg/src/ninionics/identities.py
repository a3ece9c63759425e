"""Finite phase sums over roots of unity and their closed forms.

These sums are what turns a rotation phase into a temperature rescaling: the
bosonic sum collapses q phase-shifted logarithms onto a single logarithm at
q-fold argument, and the fermionic one does the same up to a parity sign.
The conjugate c = +/-1 branches cancel imaginary parts, so every sum is real
up to rounding; that cancellation is asserted, not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError
from .numerics import geometric_regulators, richardson_limit

__all__ = [
    "GAMMA_FLOOR",
    "IdentityCheck",
    "boson_phase_sum",
    "boson_identity_rhs",
    "boson_identity_residual",
    "check_boson_identity",
    "fermion_phase_sum",
    "fermion_identity_rhs",
    "fermion_identity_residual",
    "check_fermion_identity",
    "coprime_fractions",
    "scan_identity_residuals",
    "regularized_count_ratio",
    "regularized_count_limit",
]

# Smallest accepted decay rate; the m = 0, c = +/-1 term diverges at gamma = 0.
GAMMA_FLOOR = 1e-6

_IMAG_TOL = 1e-13


@dataclass(frozen=True)
class IdentityCheck:
    """One evaluation of a phase-sum identity at (p, q, gamma)."""

    p: int
    q: int
    gamma: float
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def _validate(p: int, q: int, gamma: float, gamma_floor: float) -> None:
    if q < 1:
        raise DomainError("q must be a positive integer")
    if math.gcd(p, q) != 1:
        raise DomainError(f"{p}/{q} is not an irreducible fraction")
    if gamma < gamma_floor:
        raise DomainError(
            f"gamma must be at least {gamma_floor:g}; the m = 0 term diverges at gamma = 0")


def _real_part(terms: np.ndarray) -> float:
    total = 0.5 * complex(terms.sum())
    # Conjugate pairing cancels the imaginary parts exactly up to rounding.
    assert abs(total.imag) < _IMAG_TOL
    return float(total.real)


def boson_phase_sum(p: int, q: int, gamma: float, *,
                    gamma_floor: float = GAMMA_FLOOR) -> float:
    """(1/2) sum over c = +/-1 and m = 0..q-1 of ln(1 - e^{-gamma + 2 pi i c m p/q}).

    Principal-branch complex logarithms; safe because e^{-gamma} < 1 keeps
    every argument in the right half plane (asserted).
    """
    _validate(p, q, gamma, gamma_floor)
    z = math.exp(-gamma)
    assert 0.0 < z < 1.0
    k = (np.arange(q) * p) % q
    phases = np.exp(2j * np.pi * k / q)
    terms = np.log(1.0 - z * phases)
    return _real_part(np.concatenate([terms, terms.conj()]))


def boson_identity_rhs(q: int, gamma: float) -> float:
    """Closed form ln(1 - e^{-q gamma})."""
    return math.log1p(-math.exp(-q * gamma))


def boson_identity_residual(p: int, q: int, gamma: float) -> float:
    return abs(boson_phase_sum(p, q, gamma) - boson_identity_rhs(q, gamma))


def check_boson_identity(p: int, q: int, gamma: float) -> IdentityCheck:
    return IdentityCheck(p, q, gamma, boson_phase_sum(p, q, gamma),
                         boson_identity_rhs(q, gamma))


def fermion_phase_sum(p: int, q: int, gamma: float, *,
                      gamma_floor: float = GAMMA_FLOOR) -> float:
    """(1/2) sum over c = +/-1 and m = 0..q-1 of ln(1 + e^{-gamma + 2 pi i c (m + 1/2) p/q})."""
    _validate(p, q, gamma, gamma_floor)
    z = math.exp(-gamma)
    assert 0.0 < z < 1.0
    k = ((2 * np.arange(q) + 1) * p) % (2 * q)
    phases = np.exp(1j * np.pi * k / q)
    terms = np.log(1.0 + z * phases)
    return _real_part(np.concatenate([terms, terms.conj()]))


def fermion_identity_rhs(p: int, q: int, gamma: float) -> float:
    """Closed form ln(1 - (-1)^{p+q} e^{-q gamma})."""
    sign = 1.0 if (p + q) % 2 == 0 else -1.0
    return math.log1p(-sign * math.exp(-q * gamma))


def fermion_identity_residual(p: int, q: int, gamma: float) -> float:
    return abs(fermion_phase_sum(p, q, gamma) - fermion_identity_rhs(p, q, gamma))


def check_fermion_identity(p: int, q: int, gamma: float) -> IdentityCheck:
    return IdentityCheck(p, q, gamma, fermion_phase_sum(p, q, gamma),
                         fermion_identity_rhs(p, q, gamma))


def coprime_fractions(q_max: int) -> Iterator[tuple[int, int]]:
    """All irreducible (p, q) with 1 <= p <= q <= q_max; includes (1, 1)."""
    if q_max < 1:
        raise DomainError("q_max must be >= 1")
    for q in range(1, q_max + 1):
        for p in range(1, q + 1):
            if math.gcd(p, q) == 1:
                yield p, q


def scan_identity_residuals(family: str, q_max: int, gamma: float) -> list[IdentityCheck]:
    """Evaluate one identity over every irreducible p/q with q <= q_max."""
    if family == "bose":
        return [check_boson_identity(p, q, gamma) for p, q in coprime_fractions(q_max)]
    if family == "fermi":
        return [check_fermion_identity(p, q, gamma) for p, q in coprime_fractions(q_max)]
    raise DomainError(f"unknown family {family!r}")


def regularized_count_ratio(q: int, eps: float) -> float:
    """S(q eps) / S(eps) for S(eps) = sum over all integers m of e^{-eps |m|}.

    S has the closed form (1 + e^{-eps}) / (1 - e^{-eps}); the eps -> 0 limit
    of the ratio is 1/q, the regularized relative count of an arithmetic
    subsequence of angular momenta with step q.
    """
    if q < 1:
        raise DomainError("q must be a positive integer")
    if eps <= 0.0:
        raise DomainError("regulator eps must be positive")

    def geometric_total(e: float) -> float:
        x = math.exp(-e)
        return (1.0 + x) / (1.0 - x)

    return geometric_total(q * eps) / geometric_total(eps)


def regularized_count_limit(q: int, eps_values: Sequence[float] = (1e-2, 1e-3, 1e-4)) -> float:
    """Richardson-extrapolated eps -> 0 limit of S(q eps)/S(eps); equals 1/q."""
    ratio = geometric_regulators(eps_values)
    samples = [regularized_count_ratio(q, e) for e in eps_values]
    return richardson_limit(samples, ratio)
