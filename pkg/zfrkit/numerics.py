"""Numeric foundation shared by every verification.

The module provides three things:

* a reference digamma function. It is evaluated by shifting the argument to
  large real part with the recurrence psi(z + 1) = psi(z) + 1/z, then
  summing the Bernoulli asymptotic series;
* a prime sieve;
* `TolerancePolicy` and `leq_with_policy`, which turn a floating-point
  comparison into a `Verdict` that carries the exact margin.

Points of the complex plane are plain Python `complex` values (`CPoint`).
Vectorized variants accept numpy arrays.
"""

import cmath
import dataclasses
import enum
import functools
import logging
import math
from typing import List, NamedTuple, Union

import numpy as np

logger = logging.getLogger(__name__)

CPoint = complex

EULER_GAMMA = 0.57721566490153286061

PRIME_LIMIT_CAP = 10 ** 8

# Re(z) at which the asymptotic series takes over.
_DIGAMMA_SHIFT = 16.0

# B_2, B_4, ..., B_16.
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6,
              -3617 / 510)


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""
    pass


class SingularityError(DomainError):
    """An expression is evaluated at one of its poles."""
    pass


class ResourceLimitError(Exception):
    """A request exceeds a hard-coded resource cap."""
    pass


class SlackMode(enum.Enum):
    """How comparisons that narrowly fail are reported.

    STRICT failures are plain failures. In LOGGED mode a failure within ten
    times the tolerance is additionally flagged as a warning and logged
    together with its exact margin.
    """
    STRICT = 'strict'
    LOGGED = 'logged'


@dataclasses.dataclass(frozen=True)
class TolerancePolicy(object):
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    slack_mode: SlackMode = SlackMode.LOGGED

    def __post_init__(self):
        for name in ('abs_tol', 'rel_tol'):
            value = getattr(self, name)
            if not 0 <= value <= 1e-2:
                raise DomainError(
                    'Tolerance {} must lie in [0, 1e-2], got {}'.format(
                        name, value))
        if not isinstance(self.slack_mode, SlackMode):
            raise DomainError(
                'Unexpected slack mode: {}'.format(self.slack_mode))

    def slack(self, rhs: float) -> float:
        """The allowed excess of a left-hand side over `rhs`."""
        return max(self.abs_tol, self.rel_tol * abs(rhs))

    @classmethod
    def from_dict(cls, data: dict) -> 'TolerancePolicy':
        return cls(abs_tol=float(data.get('abs_tol', 1e-9)),
                   rel_tol=float(data.get('rel_tol', 1e-9)),
                   slack_mode=SlackMode(data.get('slack_mode', 'logged')))

    def to_dict(self) -> dict:
        return {'abs_tol': self.abs_tol, 'rel_tol': self.rel_tol,
                'slack_mode': self.slack_mode.value}


DEFAULT_POLICY = TolerancePolicy()


class Verdict(NamedTuple):
    """The outcome of a tolerance-gated comparison lhs <= rhs.

    `margin` is rhs - lhs, so it is negative exactly when lhs exceeds rhs.
    """
    passed: bool
    margin: float
    warning: bool
    lhs: float
    rhs: float
    tolerance: float


def _check_finite(*values: float):
    for value in values:
        if not math.isfinite(value):
            raise DomainError('Expected a finite value, got {}'.format(value))


def leq_with_policy(lhs: float, rhs: float,
                    policy: TolerancePolicy = DEFAULT_POLICY) -> Verdict:
    """Checks lhs <= rhs up to the slack granted by `policy`.

    The check passes iff lhs <= rhs + max(abs_tol, rel_tol * |rhs|).
    """
    lhs = float(lhs)
    rhs = float(rhs)
    _check_finite(lhs, rhs)
    tolerance = policy.slack(rhs)
    margin = rhs - lhs
    passed = margin >= -tolerance
    warning = (not passed and policy.slack_mode is SlackMode.LOGGED and
               margin >= -10 * tolerance)
    if warning:
        logger.warning('Near miss: %.17g exceeds %.17g by %.3e '
                       '(tolerance %.3e)', lhs, rhs, -margin, tolerance)
    return Verdict(passed, margin, warning, lhs, rhs, tolerance)


def geq_with_policy(lhs: float, rhs: float,
                    policy: TolerancePolicy = DEFAULT_POLICY) -> Verdict:
    """Checks lhs >= rhs; the verdict is reported in the form rhs <= lhs."""
    return leq_with_policy(rhs, lhs, policy)


def within(computed: float, expected: float, tol: float) -> Verdict:
    """Checks |computed - expected| <= tol with no further slack."""
    return leq_with_policy(abs(computed - expected), tol,
                           TolerancePolicy(0.0, 0.0, SlackMode.STRICT))


def digamma_ref(z: Union[CPoint, float]) -> CPoint:
    """Reference value of Gamma'/Gamma(z) for Re(z) > 0.

    Args:
        z: a point of the right half-plane.

    Raises:
        DomainError: if Re(z) <= 0 or z is not finite.
    """
    z = complex(z)
    _check_finite(z.real, z.imag)
    if z.real <= 0:
        raise DomainError(
            'digamma_ref requires Re(z) > 0, got {}'.format(z))
    shifted = 0j
    while z.real < _DIGAMMA_SHIFT:
        shifted -= 1 / z
        z += 1
    inv_sq = 1 / (z * z)
    power = inv_sq
    series = 0j
    for k, bernoulli in enumerate(_BERNOULLI, start=1):
        series += bernoulli / (2 * k) * power
        power *= inv_sq
    return shifted + cmath.log(z) - 0.5 / z - series


def digamma_array(z) -> np.ndarray:
    """Vectorized `digamma_ref` over an array of complex points."""
    z = np.array(z, dtype=complex, ndmin=1)
    if not np.all(np.isfinite(z)):
        raise DomainError('digamma_array requires finite arguments')
    if np.any(z.real <= 0):
        raise DomainError('digamma_array requires Re(z) > 0')
    shifted = np.zeros_like(z)
    while True:
        low = z.real < _DIGAMMA_SHIFT
        if not low.any():
            break
        shifted[low] -= 1 / z[low]
        z[low] += 1
    inv_sq = 1 / (z * z)
    power = inv_sq.copy()
    series = np.zeros_like(z)
    for k, bernoulli in enumerate(_BERNOULLI, start=1):
        series += bernoulli / (2 * k) * power
        power *= inv_sq
    return shifted + np.log(z) - 0.5 / z - series


def digamma_linear_upper(x):
    """Tangent line of the digamma function at x = 3/2.

    The digamma function is concave on the positive axis, so this line is an
    upper bound there: 2 - gamma - 2 log 2 + (pi^2/4 - 2)(2x - 3).
    """
    return (2 - EULER_GAMMA - 2 * math.log(2) +
            (math.pi ** 2 / 4 - 2) * (2 * np.asarray(x, dtype=float) - 3))


@functools.lru_cache(maxsize=8)
def prime_array(limit: int) -> np.ndarray:
    """All primes <= limit as a read-only int64 array."""
    limit = int(limit)
    if limit < 2:
        raise DomainError('Prime limit must be at least 2, got {}'.format(
            limit))
    if limit > PRIME_LIMIT_CAP:
        raise ResourceLimitError(
            'Prime limit {} exceeds the cap {}'.format(limit, PRIME_LIMIT_CAP))
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p::2 * p] = False
    primes = np.flatnonzero(sieve).astype(np.int64)
    primes.setflags(write=False)
    logger.debug('Sieved %d primes up to %d', len(primes), limit)
    return primes


def primes_up_to(limit: int) -> List[int]:
    """The ascending list of primes <= limit, for 2 <= limit <= 10^8."""
    return prime_array(limit).tolist()
