"""Stečkin differences.

A Stečkin difference compares an expression at s = sigma + it with the same
expression at s1 = sigma1 + it, weighted by 1/sqrt(5), where the coupled
abscissa is sigma1 = 1/2 + sqrt(1 + 4 sigma^2)/2. This module covers four
things:

* the coupled pair itself;
* the pair function F(s, z) = Re(1/(s - z) + 1/(s - 1 + conj(z)));
* the three zero-isolation inequalities built from F;
* the digamma bound used for every gamma factor, together with its
  main/error split M(a, m, t) + C(a, m, t).

Scalar functions validate their preconditions and raise `DomainError`.
Functions with an `_array` suffix evaluate many points at once for sweeps
and assume already validated inputs.
"""

import enum
import math
from typing import NamedTuple

import numpy as np

from .numerics import (CPoint, DEFAULT_POLICY, DomainError, SingularityError,
                       TolerancePolicy, Verdict, digamma_array, digamma_ref,
                       geq_with_policy)

SQRT5 = math.sqrt(5)
PHI = (1 + SQRT5) / 2
KAPPA = 1 - 1 / SQRT5

# Lower bound of the triple-height difference: -(phi/sqrt5 + 2/5).
TRIPLE_FLOOR = -(PHI / SQRT5 + 2 / 5)
REAL_FLOOR = -0.6


class FixedConstants(NamedTuple):
    kappa: float = KAPPA
    phi: float = PHI


FIXED = FixedConstants()


def coupled_abscissa(sigma):
    """sigma1 = 1/2 + sqrt(1 + 4 sigma^2) / 2; works on arrays too."""
    return 0.5 + 0.5 * np.sqrt(1 + 4 * np.square(sigma))


class SigmaPair(NamedTuple):
    sigma: float
    sigma1: float

    @classmethod
    def from_sigma(cls, sigma: float) -> 'SigmaPair':
        sigma = float(sigma)
        if not math.isfinite(sigma) or sigma <= 0:
            raise DomainError('Unexpected abscissa: {}'.format(sigma))
        return cls(sigma, float(coupled_abscissa(sigma)))


def validate_pair(pair: SigmaPair, upper: float = PHI):
    """Raises DomainError unless pair is coupled and 1 < sigma < upper."""
    sigma, sigma1 = pair
    if not 1 < sigma < upper:
        raise DomainError('sigma must lie in (1, {}), got {}'.format(
            upper, sigma))
    expected = float(coupled_abscissa(sigma))
    if abs(sigma1 - expected) > 1e-15 * max(1.0, expected):
        raise DomainError('sigma1 = {} is not coupled to sigma = {}'.format(
            sigma1, sigma))


def f_pair(s: CPoint, z: CPoint) -> float:
    """F(s, z) = Re(1/(s - z) + 1/(s - 1 + conj(z)))."""
    s = complex(s)
    z = complex(z)
    direct = s - z
    reflected = s - 1 + z.conjugate()
    if direct == 0 or reflected == 0:
        raise SingularityError('F(s, z) is singular at s={}, z={}'.format(
            s, z))
    return (1 / direct + 1 / reflected).real


def f_pair_array(s, z) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    z = np.asarray(z, dtype=complex)
    return np.real(1 / (s - z) + 1 / (s - 1 + np.conj(z)))


def pair_difference(pair: SigmaPair, t: float, z: CPoint) -> float:
    """F(s, z) - F(s1, z)/sqrt(5) for s = sigma + it, s1 = sigma1 + it."""
    return (f_pair(complex(pair.sigma, t), z) -
            f_pair(complex(pair.sigma1, t), z) / SQRT5)


def pair_difference_array(sigma, t, z) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=float)
    sigma1 = coupled_abscissa(sigma)
    return (f_pair_array(sigma + 1j * np.asarray(t), z) -
            f_pair_array(sigma1 + 1j * np.asarray(t), z) / SQRT5)


def check_pair_difference(pair: SigmaPair, t: float, z: CPoint,
                          policy: TolerancePolicy = DEFAULT_POLICY) -> Verdict:
    """Checks F(s, z) - F(s1, z)/sqrt(5) >= 0 for a zero z in the strip.

    Requires 0 < Re(z) < 1 and sigma in (1, phi).
    """
    validate_pair(pair)
    z = complex(z)
    if not 0 < z.real < 1:
        raise DomainError('Expected 0 < Re(z) < 1, got {}'.format(z))
    return geq_with_policy(pair_difference(pair, t, z), 0.0, policy)


def reflected_difference(pair: SigmaPair, z: CPoint, height: float) -> float:
    """Re(1/(s - 1 + conj(z))) - F(s1, z)/sqrt(5) at Im(s) = Im(s1) = height.
    """
    z = complex(z)
    s = complex(pair.sigma, height)
    reflected = s - 1 + z.conjugate()
    if reflected == 0:
        raise SingularityError('Singular reflected term at s={}, z={}'.format(
            s, z))
    return ((1 / reflected).real -
            f_pair(complex(pair.sigma1, height), z) / SQRT5)


def reflected_difference_array(sigma, z, height) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=float)
    z = np.asarray(z, dtype=complex)
    height = np.asarray(height, dtype=float)
    s = sigma + 1j * height
    s1 = coupled_abscissa(sigma) + 1j * height
    return np.real(1 / (s - 1 + np.conj(z))) - f_pair_array(s1, z) / SQRT5


def check_reflected_difference(pair: SigmaPair, t: float, z: CPoint,
                               policy: TolerancePolicy = DEFAULT_POLICY
                               ) -> Verdict:
    """Checks the reflected difference is >= 0 for a zero at the same height.

    Requires 1/2 <= Re(z) < 1 and Im(z) = t.
    """
    validate_pair(pair)
    z = complex(z)
    if not 0.5 <= z.real < 1:
        raise DomainError('Expected 1/2 <= Re(z) < 1, got {}'.format(z))
    if abs(z.imag - t) > 1e-12 * max(1.0, abs(t)):
        raise DomainError('Expected Im(z) = t, got z={}, t={}'.format(z, t))
    return geq_with_policy(reflected_difference(pair, z, t), 0.0, policy)


def reflected_difference_real(pair: SigmaPair, z: CPoint) -> float:
    """The reflected difference at real s = sigma; bounded below by -0.6.

    Requires 1/2 <= Re(z) <= 1 and |Im(z)| < 1.
    """
    validate_pair(pair)
    z = complex(z)
    if not 0.5 <= z.real <= 1 or abs(z.imag) >= 1:
        raise DomainError(
            'Expected 1/2 <= Re(z) <= 1 and |Im(z)| < 1, got {}'.format(z))
    return reflected_difference(pair, z, 0.0)


def reflected_difference_triple(pair: SigmaPair, z: CPoint) -> float:
    """The reflected difference at Im(s) = 3 Im(z).

    Bounded below by -(phi/sqrt5 + 2/5) = -1.1236068 for 1/2 <= Re(z) < 1.
    """
    validate_pair(pair)
    z = complex(z)
    if not 0.5 <= z.real < 1:
        raise DomainError('Expected 1/2 <= Re(z) < 1, got {}'.format(z))
    return reflected_difference(pair, z, 3 * z.imag)


def _check_shift(a: float, m: int):
    if a < 0 or not math.isfinite(a):
        raise DomainError('Unexpected shift: {}'.format(a))
    if m < 0 or int(m) != m:
        raise DomainError('Unexpected multiplier: {}'.format(m))


def gamma_steckin_bound(a: float, m: int, t: float, pair: SigmaPair) -> float:
    """Upper bound for Re(psi(s + a) - psi(s1 + a)/sqrt(5)), s = sigma + imt.

    The bound depends on pair only through the hypothesis sigma in (1, phi)
    and is one of three closed forms, chosen by m == 0 and |t| >= 1.
    """
    validate_pair(pair)
    _check_shift(a, m)
    return float(gamma_bound_array(a, m, t))


def gamma_bound_array(a, m, t):
    shifted = PHI + np.asarray(a, dtype=float)
    t = np.abs(np.asarray(t, dtype=float))
    common = 1 / (2 * (1 + np.asarray(a))) + 1 / (2 * SQRT5 * shifted)
    if m == 0:
        return KAPPA * np.log(shifted) + 1 / (SQRT5 * shifted)
    near = (KAPPA / 2 * np.log(shifted ** 2 + m ** 2) -
            KAPPA * 2 * shifted / (4 * shifted ** 2 + 4 * m ** 2) + common)
    with np.errstate(divide='ignore', invalid='ignore'):
        far = (KAPPA * np.log(m * t) +
               KAPPA / 2 * np.log1p((shifted / (m * t)) ** 2) + common)
    return np.where(t >= 1, far, near)


def gamma_steckin_array(a: float, m: int, t, sigma) -> np.ndarray:
    """Oracle side of the bound: Re(psi(s + a) - psi(s1 + a)/sqrt(5))."""
    sigma = np.asarray(sigma, dtype=float)
    height = m * np.asarray(t, dtype=float)
    s = sigma + a + 1j * height
    s1 = coupled_abscissa(sigma) + a + 1j * height
    return np.real(digamma_array(s) - digamma_array(s1) / SQRT5)


def gamma_steckin_difference(a: float, m: int, t: float,
                             pair: SigmaPair) -> float:
    """Scalar oracle value computed with `digamma_ref`."""
    height = m * t
    return (digamma_ref(complex(pair.sigma + a, height)) -
            digamma_ref(complex(pair.sigma1 + a, height)) / SQRT5).real


class MCCase(enum.Enum):
    """Rows of the M/C case table."""
    M0_A0 = 'm=0,a=0'
    M0_A = 'm=0,a!=0'
    M_A0_FAR = 'm!=0,a=0,|t|>=1'
    M_A_FAR = 'm!=0,a!=0,|t|>=1'
    M_A0_NEAR = 'm!=0,a=0,|t|<1'
    M_A_NEAR = 'm!=0,a!=0,|t|<1'


class MCValue(NamedTuple):
    M: float
    C: float
    case_id: MCCase


def _admissible_shift(a: float, k: int) -> bool:
    if a == 0:
        return True
    return any(math.isclose(a, shift, rel_tol=1e-12, abs_tol=1e-12)
               for shift in ((k - 1) / 2, k - 1, 3 * (k - 1) / 2, 2 * (k - 1)))


def classify(a: float, m: int, t: float) -> MCCase:
    if m == 0:
        return MCCase.M0_A0 if a == 0 else MCCase.M0_A
    if abs(t) >= 1:
        return MCCase.M_A0_FAR if a == 0 else MCCase.M_A_FAR
    return MCCase.M_A0_NEAR if a == 0 else MCCase.M_A_NEAR


def mc_table(a: float, m: int, t: float, k: int) -> MCValue:
    """Splits the digamma bound into a main term M and an error term C.

    M collects kappa log k and kappa log|t|. The constant C keeps everything
    else. The split is only defined for a = 0 or a shift linear in the even
    weight k.

    Raises:
        DomainError: for an odd or small weight or an unsupported shift.
    """
    if k < 2 or k % 2:
        raise DomainError('Expected an even weight k >= 2, got {}'.format(k))
    _check_shift(a, m)
    if not _admissible_shift(a, k):
        raise DomainError('Unexpected shift {} for weight {}'.format(a, k))
    case = classify(a, m, t)
    shifted = PHI + a
    log_k = KAPPA * math.log(k)
    if case is MCCase.M0_A0:
        return MCValue(0.0, 1 / (SQRT5 * PHI) + KAPPA * math.log(PHI), case)
    if case is MCCase.M0_A:
        return MCValue(log_k, 1 / (SQRT5 * shifted) +
                       KAPPA * math.log(shifted / k), case)
    common = 1 / (2 * (1 + a)) + 1 / (2 * SQRT5 * shifted)
    t = abs(t)
    if case is MCCase.M_A0_FAR:
        return MCValue(KAPPA * math.log(t),
                       common + KAPPA * math.log(m) +
                       KAPPA / 2 * math.log1p((PHI / (m * t)) ** 2), case)
    if case is MCCase.M_A_FAR:
        return MCValue(KAPPA * math.log(t) + log_k,
                       common + KAPPA * math.log(m) +
                       KAPPA / 2 * math.log(1 / k ** 2 +
                                            (shifted / (k * m * t)) ** 2),
                       case)
    near = -KAPPA * 2 * shifted / (4 * shifted ** 2 + 4 * m ** 2) + common
    if case is MCCase.M_A0_NEAR:
        return MCValue(0.0, near + KAPPA / 2 * math.log(PHI ** 2 + m ** 2),
                       case)
    return MCValue(log_k, near + KAPPA / 2 * math.log(
        (shifted ** 2 + m ** 2) / k ** 2), case)
