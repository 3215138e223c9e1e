"""Sums over primes: ramified-prime corrections, the A_p ledger and the
truncated zeta log-derivative."""

import logging
import math
from typing import Iterable, List, NamedTuple, Tuple

import numpy as np

from .numerics import (DEFAULT_POLICY, DomainError, ResourceLimitError,
                       TolerancePolicy, Verdict, leq_with_policy, prime_array)
from .steckin import KAPPA, SQRT5, SigmaPair
from .trigpoly import CosCoeffs

logger = logging.getLogger(__name__)

LEVEL_CAP = 10 ** 12

PROFILE_KINDS = ('sN', 's1N', 'TN1', 'RN', 'RN1')


def prime_factors(n: int) -> List[int]:
    """Prime divisors of n with multiplicity, by trial division."""
    n = int(n)
    if n < 1:
        raise DomainError('Expected a positive integer, got {}'.format(n))
    if n > LEVEL_CAP:
        raise ResourceLimitError('Level {} exceeds the cap {}'.format(
            n, LEVEL_CAP))
    factors = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors.append(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


def squarefree_primes(level: int) -> List[int]:
    """The prime divisors of a squarefree level.

    Raises:
        DomainError: if the level has a repeated prime factor.
    """
    factors = prime_factors(level)
    if len(set(factors)) != len(factors):
        raise DomainError('Level {} is not squarefree'.format(level))
    return factors


class PrimeSumProfile(NamedTuple):
    N: int
    pair: SigmaPair
    sN: float
    s1N: float
    TN1: float
    RN: float
    RN1: float


def _pair_terms(primes: np.ndarray, sigma: float, sigma1: float,
                shift: float) -> Tuple[np.ndarray, np.ndarray]:
    """1/(p^(sigma+shift) - 1) and 1/(sqrt5 (p^(sigma1+shift) - 1))."""
    primes = primes.astype(float)
    return (1 / np.expm1((sigma + shift) * np.log(primes)),
            1 / (SQRT5 * np.expm1((sigma1 + shift) * np.log(primes))))


def prime_sum_profile(N: int, pair: SigmaPair) -> PrimeSumProfile:
    """The five sums over primes p | N that correct the j-bounds at
    ramified primes.

        s(N)   = sum log p (1/(p^sigma - 1) - 1/(sqrt5 (p^sigma1 - 1)))
        T(N,1) = the same with a plus sign
        R(N)   = sum 2 log p (1/(p^(sigma+1/2) - 1)
                              + 1/(sqrt5 (p^(sigma1+1/2) - 1)))
        s1(N)  = sum 3 log p (1/(p^(sigma+1) - 1)
                              - 1/(sqrt5 (p^(sigma1+1) - 1)))
        R(N,1) = s1(N) with a plus sign
    """
    primes = np.array(squarefree_primes(N), dtype=np.int64)
    if not len(primes):
        return PrimeSumProfile(int(N), pair, 0.0, 0.0, 0.0, 0.0, 0.0)
    sigma, sigma1 = pair
    logs = np.log(primes)
    direct, coupled = _pair_terms(primes, sigma, sigma1, 0.0)
    half_direct, half_coupled = _pair_terms(primes, sigma, sigma1, 0.5)
    one_direct, one_coupled = _pair_terms(primes, sigma, sigma1, 1.0)
    return PrimeSumProfile(
        N=int(N), pair=pair,
        sN=float(np.sum(logs * (direct - coupled))),
        s1N=float(np.sum(3 * logs * (one_direct - one_coupled))),
        TN1=float(np.sum(logs * (direct + coupled))),
        RN=float(np.sum(2 * logs * (half_direct + half_coupled))),
        RN1=float(np.sum(3 * logs * (one_direct + one_coupled))))


class ApValue(NamedTuple):
    p: int
    sigma: float
    value: float


def _ap_terms(primes, sigma, coeffs: CosCoeffs):
    """Leading constant and the four prime-dependent terms of A_p."""
    sigma1 = 0.5 + 0.5 * math.sqrt(1 + 4 * sigma ** 2)
    _, a1, a2, a3, _ = coeffs
    primes = np.asarray(primes, dtype=float)
    logs = np.log(primes)
    lead = -KAPPA * (a1 + 9 * a3) / 2
    return (lead,
            (4 * a3 * math.sqrt(2) + 23 / 2) / np.expm1(sigma * logs),
            (4 * a3 * math.sqrt(2) + 2 * a2 + 31 / 2) /
            (SQRT5 * np.expm1(sigma1 * logs)),
            -9 / np.expm1((sigma + 1) * logs),
            9 / (SQRT5 * np.expm1((sigma1 + 1) * logs)))


def a_p_array(primes, sigma: float, coeffs: CosCoeffs) -> np.ndarray:
    lead, first, second, third, fourth = _ap_terms(primes, sigma, coeffs)
    return lead + first + second + third + fourth


def a_p(p: int, pair: SigmaPair, coeffs: CosCoeffs) -> ApValue:
    """The per-prime coefficient A_p that collects every ramified-prime
    correction in the final inequality."""
    if prime_factors(p) != [p]:
        raise DomainError('Expected a prime, got {}'.format(p))
    value = float(a_p_array([p], pair.sigma, coeffs)[0])
    return ApValue(int(p), pair.sigma, value)


def small_prime_ap_sum(sigma: float, coeffs: CosCoeffs) -> float:
    """A_2 log 2 + A_3 log 3, the part of the ledger that stays positive."""
    values = a_p_array([2, 3], sigma, coeffs)
    return float(values[0] * math.log(2) + values[1] * math.log(3))


def zeta_logderiv_prime_sum(sigma1: float, cutoff: int) -> float:
    """-(1/sqrt5) sum_{p <= cutoff} log p / (p^sigma1 - 1).

    This is an upper bound for zeta'/zeta(sigma1)/sqrt(5).
    """
    if not sigma1 > 1:
        raise DomainError('Expected sigma1 > 1, got {}'.format(sigma1))
    if cutoff < 2:
        raise DomainError('Expected cutoff >= 2, got {}'.format(cutoff))
    logs = np.log(prime_array(cutoff).astype(float))
    return float(-np.sum(logs / np.expm1(sigma1 * logs)) / SQRT5)


def verify_ap_negative(p_max: int, sigma_grid: Iterable[float],
                       coeffs: CosCoeffs,
                       policy: TolerancePolicy = DEFAULT_POLICY) -> Verdict:
    """Checks A_p < 0 for primes 5 <= p <= p_max over a grid of sigma.

    Beyond p_max the positive prime-dependent terms of A_p must be
    decreasing in p, and the lead constant plus those terms at p_max must
    already be negative. The verdict's left-hand side is the largest value
    seen, including that tail bound.
    """
    if p_max < 5:
        raise DomainError('Expected p_max >= 5, got {}'.format(p_max))
    sigma_grid = list(sigma_grid)
    if not sigma_grid:
        raise DomainError('Empty sigma grid')
    primes = prime_array(p_max)
    primes = primes[primes >= 5]
    worst = ApValue(0, float('nan'), -math.inf)
    monotone = True
    for sigma in sigma_grid:
        lead, first, second, third, fourth = _ap_terms(primes, sigma, coeffs)
        values = lead + first + second + third + fourth
        i = int(np.argmax(values))
        if values[i] > worst.value:
            worst = ApValue(int(primes[i]), float(sigma), float(values[i]))
        for positive in (first, second, fourth):
            monotone = monotone and bool(np.all(np.diff(positive) < 0))
        tail = lead + first[-1] + second[-1] + fourth[-1]
        if tail > worst.value:
            worst = ApValue(int(primes[-1]), float(sigma), float(tail))
    logger.info('Largest A_p for 5 <= p <= %d: %.6f at p=%d, sigma=%.4f',
                p_max, worst.value, worst.p, worst.sigma)
    verdict = leq_with_policy(worst.value, 0.0, policy)
    if not monotone:
        logger.warning('Positive A_p terms are not decreasing in p')
        verdict = verdict._replace(passed=False)
    return verdict
