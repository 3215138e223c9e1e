"""Main/error bounds for the Stečkin differences j_n(sigma, mult * t).

For n = 0..4, j_n is the Stečkin difference of the logarithmic derivative of
the n-th power L-function of the form f. Each bound is stored symbolically as
a `BoundExpr`. The main part is a sum of pole, log-conductor and zero terms.
The error part is a constant plus multiples of the ramified-prime sums from
`primesums`.

`rederive_error_constant` recomputes each quoted error constant from its
ingredients. Those ingredients are the digamma main/error split, the
literature constants in `LITERATURE_CONSTANTS`, and the lower bounds of the
reflected differences. The recomputation takes the supremum over even
weights k.
"""

import dataclasses
import enum
import logging
import math
from typing import (Callable, Dict, List, NamedTuple, Optional, Tuple,
                    Union)

import numpy as np

from .numerics import DomainError, digamma_linear_upper
from .primesums import (PROFILE_KINDS, prime_sum_profile,
                        zeta_logderiv_prime_sum)
from .steckin import (KAPPA, PHI, REAL_FLOOR, TRIPLE_FLOOR, SigmaPair,
                      coupled_abscissa, mc_table)
from .trigpoly import CosCoeffs

logger = logging.getLogger(__name__)

SIGMA_WIDE = (1.0, PHI)
SIGMA_NARROW = (1.0, 1.15)

_LOG_PI = math.log(math.pi)
_LOG_2PI = math.log(2 * math.pi)


class Regime(enum.Enum):
    """Height regime of a bound."""
    T_GE_1 = 't_ge_1'
    T_LT_1 = 't_lt_1'
    T_EQ_0 = 't_eq_0'


class ZeroTermKind(enum.Enum):
    NONE = 'none'
    RECIPROCAL = 'reciprocal'
    LORENTZIAN = 'lorentzian'


class ZeroTerm(NamedTuple):
    """The contribution of an isolated zero beta0 + it0.

    RECIPROCAL(n) is -n/(sigma - beta0). LORENTZIAN(n, mult) is
    -n (sigma - beta0) / ((sigma - beta0)^2 + (mult t)^2).
    """
    kind: ZeroTermKind = ZeroTermKind.NONE
    n: float = 0.0
    mult: int = 0

    def value(self, sigma: float, beta0: float, t: float) -> float:
        gap = sigma - beta0
        if self.kind is ZeroTermKind.RECIPROCAL:
            return -self.n / gap
        if self.kind is ZeroTermKind.LORENTZIAN:
            return -self.n * gap / (gap ** 2 + (self.mult * t) ** 2)
        return 0.0


NO_ZERO = ZeroTerm()


@dataclasses.dataclass(frozen=True)
class BoundExpr(object):
    """Main + Error bound for one j-difference.

    The log coefficients multiply kappa log N, kappa log k and
    kappa log|t|. `lorentz_pole` is (coef, mult) for
    coef (sigma - 1)/((sigma - 1)^2 + (mult t)^2). `prime_terms` pairs a
    profile sum name with its coefficient.
    """
    n: int
    mult: int
    regime: Regime
    error_const: float
    pole_coef: float = 0.0
    lorentz_pole: Optional[Tuple[float, int]] = None
    log_level_coef: float = 0.0
    log_weight_coef: float = 0.0
    log_height_coef: float = 0.0
    zero_term: ZeroTerm = NO_ZERO
    prime_terms: Tuple[Tuple[str, float], ...] = ()
    sigma_range: Tuple[float, float] = SIGMA_WIDE


def _table() -> Dict[Tuple[int, int, Regime], BoundExpr]:
    ge, lt, eq = Regime.T_GE_1, Regime.T_LT_1, Regime.T_EQ_0
    table = {}

    def add(n, mult, regimes, **fields):
        for regime in regimes:
            table[n, mult, regime] = BoundExpr(n=n, mult=mult, regime=regime,
                                               **fields)

    add(0, 0, (ge, lt, eq), pole_coef=1.0, error_const=-0.601655)

    j1 = dict(log_level_coef=0.5, log_weight_coef=1.0,
              zero_term=ZeroTerm(ZeroTermKind.RECIPROCAL, 1.0))
    add(1, 1, (ge,), log_height_coef=1.0, error_const=-0.48973, **j1)
    add(1, 1, (lt,), error_const=-0.596438, **j1)
    add(1, 0, (eq,), log_level_coef=0.5, log_weight_coef=1.0,
        zero_term=ZeroTerm(ZeroTermKind.LORENTZIAN, 2.0, 1),
        error_const=0.603562)

    j2 = dict(log_level_coef=1.0, log_weight_coef=1.0,
              sigma_range=SIGMA_NARROW)
    add(2, 0, (ge, lt), pole_coef=1.0, error_const=-1.66308,
        prime_terms=(('sN', -1.0),), **j2)
    add(2, 0, (eq,), pole_coef=1.0, error_const=-1.36737,
        prime_terms=(('sN', -1.0),), log_level_coef=1.0,
        log_weight_coef=1.0)
    add(2, 2, (lt,), lorentz_pole=(1.0, 2), error_const=-0.700692,
        prime_terms=(('TN1', 1.0),), **j2)
    add(2, 2, (ge,), log_height_coef=2.0, error_const=-0.292925,
        prime_terms=(('TN1', 1.0),), **j2)

    j3 = dict(log_level_coef=2.5, log_weight_coef=4.0,
              prime_terms=(('RN', 1.0),))
    add(3, 1, (ge,), log_height_coef=4.0, error_const=-1.9409,
        zero_term=ZeroTerm(ZeroTermKind.RECIPROCAL, 2.0), **j3)
    add(3, 1, (lt, eq), error_const=-2.3414,
        zero_term=ZeroTerm(ZeroTermKind.RECIPROCAL, 2.0), **j3)
    add(3, 3, (ge,), log_height_coef=4.0, error_const=1.20626, **j3)
    add(3, 3, (lt, eq), error_const=1.03,
        zero_term=ZeroTerm(ZeroTermKind.LORENTZIAN, 2.0, 2), **j3)

    j4 = dict(log_level_coef=5.0, log_weight_coef=5.0,
              sigma_range=SIGMA_NARROW)
    ramified = (('TN1', 2.0), ('RN1', 1.0))
    add(4, 0, (ge, lt, eq), pole_coef=2.0, error_const=-5.42237,
        prime_terms=(('sN', -2.0), ('s1N', -1.0)), **j4)
    add(4, 2, (lt, eq), lorentz_pole=(2.0, 2), error_const=-2.92759,
        prime_terms=ramified, **j4)
    add(4, 2, (ge,), log_height_coef=8.0, error_const=-1.63101,
        prime_terms=ramified, **j4)
    add(4, 4, (lt, eq), lorentz_pole=(2.0, 4), error_const=-0.0298279,
        prime_terms=ramified, **j4)
    add(4, 4, (ge,), log_height_coef=8.0, error_const=-0.410404,
        prime_terms=ramified, **j4)
    return table


_JTABLE = _table()


def _regime(regime: Union[Regime, str]) -> Regime:
    try:
        return Regime(regime)
    except ValueError:
        raise DomainError('Unexpected regime: {}'.format(regime)) from None


def jbound(n: int, mult: int, regime: Union[Regime, str]) -> BoundExpr:
    """The Main/Error bound for j_n(sigma, mult * t) in the given regime.

    Raises:
        DomainError: for a combination that has no bound.
    """
    regime = _regime(regime)
    try:
        return _JTABLE[n, mult, regime]
    except KeyError:
        raise DomainError('No bound for n={}, mult={}, regime={}'.format(
            n, mult, regime.value)) from None


def defined_cases() -> List[Tuple[int, int, Regime]]:
    """All (n, mult, regime) keys that have a bound, in table order."""
    return list(_JTABLE)


def eval_bound(expr: BoundExpr, sigma: float, t: float, N: int, k: int,
               beta0: float) -> float:
    """Numeric value of Main + Error for concrete (sigma, t, N, k, beta0).

    In the t = 0 regime the zero-term height is the height t0 of the zero,
    passed as t.
    """
    lo, hi = expr.sigma_range
    if not lo < sigma < hi:
        raise DomainError('sigma = {} outside ({}, {})'.format(sigma, lo, hi))
    if k < 2 or k % 2:
        raise DomainError('Expected an even weight k >= 2, got {}'.format(k))
    if not 0.5 < beta0 < 1:
        raise DomainError('Expected 1/2 < beta0 < 1, got {}'.format(beta0))
    if expr.log_height_coef and t == 0:
        raise DomainError('log|t| term needs t != 0')
    profile = prime_sum_profile(N, SigmaPair.from_sigma(sigma))
    value = expr.pole_coef / (sigma - 1) + expr.error_const
    if expr.lorentz_pole is not None:
        coef, mult = expr.lorentz_pole
        value += coef * (sigma - 1) / ((sigma - 1) ** 2 + (mult * t) ** 2)
    value += KAPPA * (expr.log_level_coef * math.log(N) +
                      expr.log_weight_coef * math.log(k))
    if expr.log_height_coef:
        value += KAPPA * expr.log_height_coef * math.log(abs(t))
    value += expr.zero_term.value(sigma, beta0, t)
    for kind, coef in expr.prime_terms:
        value += coef * getattr(profile, kind)
    return value


class LedgerEntry(NamedTuple):
    name: str
    value: float
    provenance: str


LITERATURE_CONSTANTS = (
    LedgerEntry('principal_m0', 0.8973,
                'McCurley (1984), Lemma 3: principal character, height 0'),
    LedgerEntry('principal_m2_lt', 0.1565,
                'McCurley (1984), Lemmas 3 and 7: principal character, '
                'height 2t, |t| < 1'),
    LedgerEntry('principal_m2_ge', 0.3530,
                'McCurley (1984), Lemmas 3 and 7: principal character, '
                'height 2t, |t| >= 1'),
    LedgerEntry('principal_m4_lt', 0.3636,
                'McCurley (1984), Lemmas 3 and 7: principal character, '
                'height 4t, |t| < 1'),
    LedgerEntry('principal_m4_ge', 0.4080,
                'McCurley (1984), Lemmas 3 and 7: principal character, '
                'height 4t, |t| >= 1'),
    LedgerEntry('gamma_m0', 0.2469,
                'McCurley (1984), Lemmas 1 and 2: archimedean factor, '
                'heights 0 and 2t with |t| < 1'),
    LedgerEntry('gamma_m2_ge', 0.3915,
                'McCurley (1984), Lemmas 1 and 2: archimedean factor, '
                'height 2t, |t| >= 1'),
    LedgerEntry('gamma_m4_lt', 0.5842,
                'McCurley (1984), Lemmas 1 and 2: archimedean factor, '
                'height 4t, |t| < 1'),
    LedgerEntry('gamma_m4_ge', 0.4266,
                'McCurley (1984), Lemmas 1 and 2: archimedean factor, '
                'height 4t, |t| >= 1'),
)

_LIT = {entry.name: entry.value for entry in LITERATURE_CONSTANTS}


def _principal(mult: int, regime: Regime) -> float:
    """Principal-character contribution, including its -kappa/2 log pi."""
    if mult == 0:
        return -_LIT['principal_m0']
    suffix = 'ge' if regime is Regime.T_GE_1 else 'lt'
    return _LIT['principal_m{}_{}'.format(mult, suffix)] - KAPPA / 2 * _LOG_PI


def _archimedean(mult: int, regime: Regime) -> float:
    if mult == 0 or (mult == 2 and regime is not Regime.T_GE_1):
        return _LIT['gamma_m0']
    suffix = 'ge' if regime is Regime.T_GE_1 else 'lt'
    return _LIT['gamma_m{}_{}'.format(mult, suffix)]


def _c(a: float, m: int, t: float, k: int) -> float:
    return mc_table(a, m, t, k).C


def _binding_height(regime: Regime) -> float:
    # Row constants are decreasing in |t| >= 1 and constant for |t| < 1.
    return 1.0 if regime is Regime.T_GE_1 else 0.5


def _j1_recipe(k: int, regime: Regime) -> float:
    return -KAPPA * _LOG_2PI + _c((k - 1) / 2, 1, _binding_height(regime), k)


def _j2_recipe(mult: int, regime: Regime, principal: float = None
               ) -> Callable[[int], float]:
    t = _binding_height(regime)
    if principal is None:
        principal = _principal(mult, regime)

    def recipe(k):
        return (-KAPPA / 2 * _LOG_PI - KAPPA * _LOG_2PI + _c(k - 1, mult, t, k)
                + principal + _archimedean(mult, regime))
    return recipe


def _j3_recipe(mult: int, regime: Regime) -> Callable[[int], float]:
    t = _binding_height(regime)
    floor = -2 * TRIPLE_FLOOR if mult == 3 else 0.0

    def recipe(k):
        return (-4 * KAPPA * _LOG_2PI + 3 * _c((k - 1) / 2, mult, t, k) +
                _c(3 * (k - 1) / 2, mult, t, k) + floor)
    return recipe


def _j4_recipe(mult: int, regime: Regime) -> Callable[[int], float]:
    t = _binding_height(regime)

    def recipe(k):
        return (-2 * KAPPA * _LOG_PI - 5 * KAPPA * _LOG_2PI +
                4 * _c(k - 1, mult, t, k) + _c(2 * k - 2, mult, t, k) +
                2 * _principal(mult, regime) + 4 * _archimedean(mult, regime))
    return recipe


class DerivedConstant(NamedTuple):
    derived: float
    quoted: float
    margin: float
    binding_k: Optional[int]
    monotone_tail: bool


WEIGHTS = tuple(range(2, 201, 2))


def _sup_over_weights(recipe: Callable[[int], float]
                      ) -> Tuple[float, int, bool]:
    values = np.array([recipe(k) for k in WEIGHTS])
    i = int(np.argmax(values))
    monotone = bool(np.all(np.diff(values[-20:]) < 0))
    return float(values[i]), WEIGHTS[i], monotone


def zeta_pole_error(prime_cutoff: int = 10000, points: int = 400) -> float:
    """Error constant of j_0: sup over sigma in (1, phi] of
    -log(pi)/2 + psi_upper((sigma + 2)/2)/2 + the truncated prime sum."""
    sigmas = np.linspace(1.0, PHI, points + 1)[1:]
    linear = -_LOG_PI / 2 + digamma_linear_upper((sigmas + 2) / 2) / 2
    sums = np.array([zeta_logderiv_prime_sum(float(coupled_abscissa(sigma)),
                                             prime_cutoff)
                     for sigma in sigmas])
    return float(np.max(linear + sums))


def rederive_error_constant(n: int, mult: int, regime: Union[Regime, str]
                            ) -> DerivedConstant:
    """Recomputes the error constant of a j-bound.

    Bounds that depend on the weight are maximized over even k in 2..200.
    The last twenty samples must be decreasing, so the maximum is not an
    artifact of the truncation.
    """
    expr = jbound(n, mult, regime)
    regime = expr.regime
    binding_k = None
    monotone = True
    if n == 0:
        derived = zeta_pole_error()
    elif (n, mult) == (1, 1):
        derived, binding_k, monotone = _sup_over_weights(
            lambda k: _j1_recipe(k, regime))
    elif (n, mult) == (1, 0):
        derived, binding_k, monotone = _sup_over_weights(
            lambda k: _j1_recipe(k, Regime.T_LT_1) - 2 * REAL_FLOOR)
    elif (n, mult) == (2, 0) and regime is Regime.T_EQ_0:
        derived, binding_k, monotone = _sup_over_weights(
            _j2_recipe(0, regime, principal=zeta_pole_error()))
    elif n == 2:
        derived, binding_k, monotone = _sup_over_weights(
            _j2_recipe(mult, regime))
    elif n == 3:
        derived, binding_k, monotone = _sup_over_weights(
            _j3_recipe(mult, regime))
    elif n == 4:
        derived, binding_k, monotone = _sup_over_weights(
            _j4_recipe(mult, regime))
    else:
        raise DomainError('No derivation for n={}, mult={}'.format(n, mult))
    margin = expr.error_const - derived
    logger.debug('Error constant n=%d mult=%d %s: derived %.7f, quoted %.7f, '
                 'margin %.2e', n, mult, regime.value, derived,
                 expr.error_const, margin)
    return DerivedConstant(derived, expr.error_const, margin, binding_k,
                           monotone)


COMBINATION = ((0, 0), (2, 0), (4, 0), (1, 1), (3, 1), (2, 2), (4, 2), (3, 3),
               (4, 4))


def positivity_weights(coeffs: CosCoeffs) -> Tuple[float, ...]:
    """Weights of the nine j-differences in the nonnegative combination,
    in the order of `COMBINATION`."""
    a0, a1, a2, a3, a4 = coeffs
    return (a0 - a2 + a4, a2 - 4 * a4, 3 * a4, a1 - 3 * a3, 3 * a3,
            a2 - 4 * a4, 4 * a4, a3, a4)


class CombinedBound(NamedTuple):
    """Weighted sum of j-bounds. Zero terms are grouped by kind and multiplier.
    """
    pole_coef: float
    lorentz_poles: Dict[int, float]
    log_level_coef: float
    log_weight_coef: float
    log_height_coef: float
    reciprocal_zero_coef: float
    lorentz_zeros: Dict[int, float]
    error_const: float
    prime_terms: Dict[str, float]


def weighted_combination(coeffs: CosCoeffs, regime: Union[Regime, str]
                         ) -> CombinedBound:
    """Sums the nine bounds of the positivity combination for |t| >= 1 or
    |t| < 1."""
    regime = _regime(regime)
    if regime is Regime.T_EQ_0:
        raise DomainError('The combination needs t != 0')
    lorentz_poles = {}
    lorentz_zeros = {}
    prime_terms = dict.fromkeys(PROFILE_KINDS, 0.0)
    totals = dict.fromkeys(('pole', 'level', 'weight', 'height', 'reciprocal',
                            'error'), 0.0)
    for (n, mult), weight in zip(COMBINATION, positivity_weights(coeffs)):
        expr = jbound(n, mult, regime)
        totals['pole'] += weight * expr.pole_coef
        totals['level'] += weight * expr.log_level_coef
        totals['weight'] += weight * expr.log_weight_coef
        totals['height'] += weight * expr.log_height_coef
        totals['error'] += weight * expr.error_const
        if expr.lorentz_pole is not None:
            coef, m = expr.lorentz_pole
            lorentz_poles[m] = lorentz_poles.get(m, 0.0) + weight * coef
        zero = expr.zero_term
        if zero.kind is ZeroTermKind.RECIPROCAL:
            totals['reciprocal'] += weight * zero.n
        elif zero.kind is ZeroTermKind.LORENTZIAN:
            lorentz_zeros[zero.mult] = (lorentz_zeros.get(zero.mult, 0.0) +
                                        weight * zero.n)
        for kind, coef in expr.prime_terms:
            prime_terms[kind] += weight * coef
    return CombinedBound(
        pole_coef=totals['pole'], lorentz_poles=lorentz_poles,
        log_level_coef=totals['level'], log_weight_coef=totals['weight'],
        log_height_coef=totals['height'],
        reciprocal_zero_coef=totals['reciprocal'],
        lorentz_zeros=lorentz_zeros, error_const=totals['error'],
        prime_terms=prime_terms)


def small_t_error_sum() -> float:
    """Error constants of j_0(sigma, 0) + 2 j_1(sigma, 0) + j_2(sigma, 0)
    for sigma up to phi, without the -s(N) term."""
    return (jbound(0, 0, Regime.T_EQ_0).error_const +
            2 * jbound(1, 0, Regime.T_EQ_0).error_const +
            jbound(2, 0, Regime.T_EQ_0).error_const)
