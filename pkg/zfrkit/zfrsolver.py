"""Turns the weighted j-bounds into the three zero-free-region constants.

For |t| >= 1 the combination gives A/(sigma - beta) <= B/(sigma - 1)
+ C kappa log(Nk|t|) + (negative terms). Setting sigma = 1 + r/log(Nk|t|)
and maximizing over r gives the large-t constant. For |t| < 1 the zero
and pole terms become Lorentzians. Near t = 0 a separate argument with a
quadratic in r1 + c gives the tiny-t constant. In between, the
Lorentzians are absorbed into delta log(Nk), which gives the mid-t
constant.
"""

import dataclasses
import enum
import logging
import math
from typing import Dict, Iterable, List, Mapping, Optional

import numpy as np

from .jbounds import Regime, weighted_combination
from .numerics import (DEFAULT_POLICY, DomainError, TolerancePolicy, Verdict,
                       geq_with_policy, leq_with_policy, within)
from .primesums import (small_prime_ap_sum, squarefree_primes,
                        verify_ap_negative)
from .steckin import KAPPA, PHI, SQRT5, SigmaPair, validate_pair
from .trigpoly import (PUBLISHED_PARAMS, AbcTriple, CosCoeffs, PolyParams,
                       SatakeParams, cos_coeffs, lambda_power)

logger = logging.getLogger(__name__)

PUBLISHED_GAMMA_CUT = 0.30992
PUBLISHED_R1 = 0.675015
PUBLISHED_DELTA = 1.62622

PUBLISHED_LARGE_T = 16.7053
PUBLISHED_MID_T = 16.9309

# Upper bounds quoted for the small-prime part of the A_p ledger.
LARGE_T_SMALL_PRIME_SLACK = 105.9932431
MID_T_SMALL_PRIME_CAP = 37.5815

# Nk for the smallest admissible level and weight (N = 2, k = 2).
MIN_LOG_NK = math.log(4)

SIGMA_CEILING = 1.15

BASELINE_CONSTANT = 64 / (2 * (2 - math.sqrt(3)) ** 2)
BASELINE_QUOTED = 445.994

# sigma in (1, 1.15), dense near the pole.
_LEDGER_SIGMAS = np.concatenate(([1 + 1e-9, 1 + 1e-6, 1 + 1e-3],
                                 np.linspace(1.005, 1.149, 25)))


class PreconditionFailure(DomainError):
    """A display the derivation relies on does not hold numerically.

    Attributes:
        display: name of the violated check.
        terms: the values the check was assembled from.
    """

    def __init__(self, display: str, terms: Mapping[str, float]):
        self.display = display
        self.terms = dict(terms)
        super().__init__('Check {} failed: {}'.format(display, ', '.join(
            '{}={:.10g}'.format(name, value)
            for name, value in self.terms.items())))


class RegionRegime(enum.Enum):
    T_GE_1 = 't_ge_1'
    T_TINY = 't_tiny'
    T_MID = 't_mid'


@dataclasses.dataclass(frozen=True)
class RegionResult(object):
    """A zero-free-region constant: no zero with beta > 1/2 has
    beta > 1 - 1/(constant log(...)) in the regime."""
    regime: RegionRegime
    radius: float
    c_lower: float
    constant: float
    gamma_cut: Optional[float] = None
    delta: Optional[float] = None
    checks: Dict[str, Verdict] = dataclasses.field(default_factory=dict)
    extras: Dict[str, float] = dataclasses.field(default_factory=dict)


def radius_gain(abc: AbcTriple, r, extra: float = 0.0):
    """((A - B) r - K r^2) / (B + K r) with K = C kappa + extra.

    This is the lower bound for c obtained with sigma - 1 = r/log(...).
    """
    A, B, C = abc
    K = C * KAPPA + extra
    r = np.asarray(r, dtype=float)
    return ((A - B) * r - K * r ** 2) / (B + K * r)


def optimal_radius(abc: AbcTriple, extra: float = 0.0) -> float:
    A, B, C = abc
    return (math.sqrt(A * B) - B) / (C * KAPPA + extra)


def _check_abc(abc: AbcTriple):
    A, B, _ = abc
    if not A * B > 0:
        raise DomainError('Expected AB > 0, got A={}, B={}'.format(A, B))
    if not math.sqrt(A * B) > B:
        raise DomainError(
            'Expected sqrt(AB) > B, got A={}, B={}'.format(A, B))


def _require(checks: Dict[str, Verdict], name: str, verdict: Verdict,
             terms: Mapping[str, float]):
    checks[name] = verdict
    if not verdict.passed:
        raise PreconditionFailure(name, terms)


def _combination_abc(coeffs: CosCoeffs) -> AbcTriple:
    """A, B, C read off the summed j-bounds for |t| >= 1."""
    combined = weighted_combination(coeffs, Regime.T_GE_1)
    return AbcTriple(A=combined.reciprocal_zero_coef, B=combined.pole_coef,
                     C=combined.log_weight_coef)


def large_t_constant(coeffs: CosCoeffs, ap_prime_max: int = 10 ** 6,
                     policy: TolerancePolicy = DEFAULT_POLICY
                     ) -> RegionResult:
    """The constant for |t| >= 1.

    Also verifies what the derivation uses:
    * A, B, C read from the summed bounds match the closed forms;
    * A_p < 0 for 5 <= p <= ap_prime_max and beyond;
    * A_2 log 2 + A_3 log 3 + C(a, b) < 0 over sigma in (1, 1.15);
    * sigma = 1 + r/log(Nk|t|) < 1.15 at the smallest admissible Nk|t|.

    Raises:
        DomainError: if AB <= 0 or sqrt(AB) <= B.
        PreconditionFailure: if one of the checks fails.
    """
    abc = AbcTriple.from_coeffs(coeffs)
    _check_abc(abc)
    checks = {}
    combined_abc = _combination_abc(coeffs)
    for name, closed, summed in zip(('A', 'B', 'C'), abc, combined_abc):
        _require(checks, 'combination_' + name,
                 within(summed, closed, 1e-9 * max(1.0, abs(closed))),
                 {'summed': summed, 'closed_form': closed})

    A, B, C = abc
    r = optimal_radius(abc)
    c = (A + B - 2 * math.sqrt(A * B)) / (C * KAPPA)

    _require(checks, 'ap_ledger',
             verify_ap_negative(ap_prime_max, _LEDGER_SIGMAS, coeffs, policy),
             {'p_max': ap_prime_max})

    error_const = weighted_combination(coeffs, Regime.T_GE_1).error_const
    small = max(small_prime_ap_sum(sigma, coeffs) for sigma in _LEDGER_SIGMAS)
    _require(checks, 'small_prime_sum',
             leq_with_policy(small + error_const, 0.0, policy),
             {'small_prime_sum': small, 'error_constant': error_const})

    sigma = 1 + r / MIN_LOG_NK
    _require(checks, 'sigma_range',
             leq_with_policy(sigma, SIGMA_CEILING, policy),
             {'sigma': sigma, 'ceiling': SIGMA_CEILING})

    logger.info('Large-t: r=%.7f, c=%.10f, constant=%.6f', r, c, 1 / c)
    return RegionResult(RegionRegime.T_GE_1, radius=r, c_lower=c,
                        constant=1 / c, checks=checks,
                        extras={'error_constant': error_const,
                                'small_prime_sum': small})


def tiny_t_roots(gamma_cut: float, r1: float):
    """Implemented and printed lower bounds for c in the tiny-t regime.

    The implemented bound is the larger root x of
    (2/r1 + 3 kappa) x^2 - 4x + (2/r1 + 3 kappa) gamma^2 = 0, minus r1.
    Expanded, that is
        (-3 r1^2 kappa + sqrt(4 r1^2 - 4 gamma^2 - 12 r1 gamma^2 kappa
                              - 9 r1^2 gamma^2 kappa^2)) / (2 + 3 r1 kappa).
    The printed variant has -3 r1 kappa in the numerator and kappa instead
    of kappa^2 under the root. It is kept for comparison.
    """
    if r1 <= 0:
        raise DomainError('Expected r1 > 0, got {}'.format(r1))
    K = 2 / r1 + 3 * KAPPA
    discriminant = 16 - 4 * K ** 2 * gamma_cut ** 2
    if discriminant < -1e-12:
        raise DomainError('Nonpositive discriminant {} for gamma={}, '
                          'r1={}'.format(discriminant, gamma_cut, r1))
    implemented = (2 + math.sqrt(max(discriminant, 0.0)) / 2) / K - r1
    printed_radicand = (4 * r1 ** 2 - 4 * gamma_cut ** 2 -
                        12 * r1 * gamma_cut ** 2 * KAPPA -
                        9 * r1 ** 2 * gamma_cut ** 2 * KAPPA)
    printed = ((-3 * r1 * KAPPA + math.sqrt(max(printed_radicand, 0.0))) /
               (2 + 3 * r1 * KAPPA))
    return implemented, printed


def tiny_t_constant(gamma_cut: float = PUBLISHED_GAMMA_CUT,
                    r1: float = PUBLISHED_R1,
                    policy: TolerancePolicy = DEFAULT_POLICY
                    ) -> RegionResult:
    """The constant for |t| <= gamma/log(kN).

    Raises:
        DomainError: if the quadratic has no real root.
        PreconditionFailure: if 1 + r1/log(Nk) >= phi at Nk = 4.
    """
    implemented, printed = tiny_t_roots(gamma_cut, r1)
    checks = {}
    sigma = 1 + r1 / MIN_LOG_NK
    _require(checks, 'sigma_range', leq_with_policy(sigma, PHI, policy),
             {'sigma': sigma, 'ceiling': PHI})
    if printed <= 0:
        logger.warning('Printed tiny-t formula gives c=%.6f', printed)
    logger.info('Tiny-t: c=%.10f (printed formula %.10f)', implemented,
                printed)
    constant = 1 / implemented if implemented else math.inf
    return RegionResult(RegionRegime.T_TINY, radius=r1, c_lower=implemented,
                        constant=constant, gamma_cut=gamma_cut,
                        checks=checks, extras={'printed_c': printed})


def mid_t_terms(coeffs: CosCoeffs, gamma_cut: float, delta: float
                ) -> Dict[str, float]:
    """The four terms of the inequality that lets delta log(Nk) absorb the
    Lorentzian pole and zero terms at r2 and r2 + c."""
    A, B, C = AbcTriple.from_coeffs(coeffs)
    K = C * KAPPA + delta
    r2 = (math.sqrt(A * B) - B) / K
    zero_gap = (A - math.sqrt(A * B)) / K
    combined = weighted_combination(coeffs, Regime.T_LT_1)
    terms = {}
    for mult, coef in sorted(combined.lorentz_poles.items()):
        terms['pole_{}t'.format(mult)] = (
            coef * r2 / (r2 ** 2 + (mult * gamma_cut) ** 2))
    for mult, coef in sorted(combined.lorentz_zeros.items()):
        terms['zero_{}t'.format(mult)] = (
            -coef * zero_gap / (zero_gap ** 2 + (mult * gamma_cut) ** 2))
    terms['delta'] = -delta
    return terms


def mid_t_aggregate(coeffs: CosCoeffs, pair: SigmaPair) -> float:
    """D(a, b) + A_2 log 2 + A_3 log 3, which must be negative."""
    validate_pair(pair)
    error_const = weighted_combination(coeffs, Regime.T_LT_1).error_const
    return error_const + small_prime_ap_sum(pair.sigma, coeffs)


def mid_t_constant(coeffs: CosCoeffs,
                   gamma_cut: float = PUBLISHED_GAMMA_CUT,
                   delta: float = PUBLISHED_DELTA,
                   policy: TolerancePolicy = DEFAULT_POLICY) -> RegionResult:
    """The constant for gamma/log(kN) < |t| < 1.

    Raises:
        DomainError: if delta <= 0.
        PreconditionFailure: if the delta inequality fails. The failure
            carries each of its four terms.
    """
    if not delta > 0:
        raise DomainError('Expected delta > 0, got {}'.format(delta))
    abc = AbcTriple.from_coeffs(coeffs)
    _check_abc(abc)
    A, B, C = abc
    checks = {}
    terms = mid_t_terms(coeffs, gamma_cut, delta)
    lhs = sum(terms.values())
    # Strict: the inequality is used with < 0.
    checks['delta_inequality'] = leq_with_policy(
        lhs, 0.0, TolerancePolicy(0.0, 0.0, policy.slack_mode))
    if not lhs < 0:
        raise PreconditionFailure('delta_inequality', terms)

    small = max(small_prime_ap_sum(sigma, coeffs) for sigma in _LEDGER_SIGMAS)
    _require(checks, 'small_prime_sum',
             leq_with_policy(small, MID_T_SMALL_PRIME_CAP, policy),
             {'small_prime_sum': small, 'cap': MID_T_SMALL_PRIME_CAP})
    aggregate = (weighted_combination(coeffs, Regime.T_LT_1).error_const +
                 small)
    _require(checks, 'aggregate', leq_with_policy(aggregate, 0.0, policy),
             {'aggregate': aggregate})

    K = C * KAPPA + delta
    r2 = optimal_radius(abc, delta)
    c = (A + B - 2 * math.sqrt(A * B)) / K
    sigma = 1 + r2 / MIN_LOG_NK
    _require(checks, 'sigma_range',
             leq_with_policy(sigma, SIGMA_CEILING, policy),
             {'sigma': sigma, 'ceiling': SIGMA_CEILING})

    logger.info('Mid-t: r2=%.7f, c=%.10f, constant=%.6f', r2, c, 1 / c)
    return RegionResult(RegionRegime.T_MID, radius=r2, c_lower=c,
                        constant=1 / c, gamma_cut=gamma_cut, delta=delta,
                        checks=checks,
                        extras=dict(terms, aggregate=aggregate,
                                    inequality_lhs=lhs))


def check_small_t_positivity(sample_satake: Iterable[SatakeParams],
                             sigma: float, cutoff: int,
                             policy: TolerancePolicy = DEFAULT_POLICY
                             ) -> Verdict:
    """Termwise check of the series behind the small-t argument.

    Each prime power n = p^l <= cutoff of the sampled primes contributes
        (1 - 1/(sqrt5 n^(sigma1 - sigma))) log p / n^sigma
            * (1 + 2 lam_1(n) + lam_2(n)),
    and 1 + 2 lam_1 + lam_2 must equal (1 + lam_1)^2. The verdict compares
    the smallest term with zero and fails if the identity breaks anywhere.
    """
    pair = SigmaPair.from_sigma(sigma)
    validate_pair(pair)
    if cutoff < 2:
        raise DomainError('Expected cutoff >= 2, got {}'.format(cutoff))
    smallest = math.inf
    worst_residual = 0.0
    for sp in sample_satake:
        n, l = sp.prime, 1
        while n <= cutoff:
            lam1 = lambda_power(sp, l, 1)
            lam2 = lambda_power(sp, l, 2)
            combined = 1 + 2 * lam1 + lam2
            worst_residual = max(worst_residual,
                                 abs(combined - (1 + lam1) ** 2))
            weight = ((1 - 1 / (SQRT5 * n ** (pair.sigma1 - pair.sigma))) *
                      math.log(sp.prime) / n ** pair.sigma)
            smallest = min(smallest, weight * combined)
            n *= sp.prime
            l += 1
    if smallest == math.inf:
        raise DomainError('No prime power of the sample is <= {}'.format(
            cutoff))
    verdict = geq_with_policy(smallest, 0.0, policy)
    if worst_residual > 1e-9:
        logger.warning('1 + 2 lam_1 + lam_2 differs from (1 + lam_1)^2 by %g',
                       worst_residual)
        verdict = verdict._replace(passed=False)
    return verdict


def theorem_summary(params: PolyParams = PUBLISHED_PARAMS,
                    gamma_cut: float = PUBLISHED_GAMMA_CUT,
                    r1: float = PUBLISHED_R1,
                    delta: float = PUBLISHED_DELTA,
                    ap_prime_max: int = 10 ** 6,
                    policy: TolerancePolicy = DEFAULT_POLICY
                    ) -> List[RegionResult]:
    """Large-t, tiny-t and mid-t results, in that order.

    Raises:
        PreconditionFailure: if the large-t and tiny-t constants differ by
            more than 2e-3 relative.
    """
    coeffs = cos_coeffs(params)
    large = large_t_constant(coeffs, ap_prime_max, policy)
    tiny = tiny_t_constant(gamma_cut, r1, policy)
    mid = mid_t_constant(coeffs, gamma_cut, delta, policy)
    gap = abs(tiny.constant - large.constant) / large.constant
    if gap > 2e-3:
        raise PreconditionFailure('small_t_agreement', {
            'large_t': large.constant, 'tiny_t': tiny.constant,
            'relative_gap': gap})
    return [large, tiny, mid]


def _regime_for(results: Iterable[RegionResult]
                ) -> Dict[RegionRegime, RegionResult]:
    by_regime = {result.regime: result for result in results}
    missing = set(RegionRegime) - set(by_regime)
    if missing:
        raise DomainError('Missing regimes: {}'.format(
            sorted(regime.value for regime in missing)))
    return by_regime


def _check_form(N: int, k: int):
    if k < 2 or k % 2:
        raise DomainError('Expected an even weight k >= 2, got {}'.format(k))
    squarefree_primes(N)
    if N * k < 4:
        raise DomainError('No newform of level {} and weight {}'.format(N, k))


def zero_free_bound(N: int, k: int, t: float,
                    results: Iterable[RegionResult]) -> float:
    """Upper bound for the real part beta > 1/2 of a zero at height t.

    Args:
        N: squarefree level.
        k: even weight.
        t: height of the zero.
        results: one `RegionResult` per regime, as from `theorem_summary`.
    """
    _check_form(N, k)
    by_regime = _regime_for(results)
    t = abs(t)
    log_nk = math.log(N * k)
    if t >= 1:
        return 1 - 1 / (by_regime[RegionRegime.T_GE_1].constant *
                        math.log(N * k * t))
    mid = by_regime[RegionRegime.T_MID]
    if t > mid.gamma_cut / log_nk:
        return 1 - 1 / (mid.constant * log_nk)
    return 1 - 1 / (by_regime[RegionRegime.T_TINY].constant * log_nk)


def baseline_zero_free_bound(N: int, k: int, t: float) -> float:
    """The earlier region 1 - 1/(C0 log(9.712 N (k - 1) sqrt(1 + t^2)))."""
    _check_form(N, k)
    return 1 - 1 / (BASELINE_CONSTANT * math.log(
        9.712 * N * (k - 1) * math.sqrt(1 + t ** 2)))
