"""The quartic trigonometric polynomial and its coefficient identities.

P(theta) = gamma (a + cos theta)^2 (b + cos theta)^2 is expanded in cosines
of multiples of theta. The cosine coefficients give the weights of the
nine Stečkin differences whose positive combination drives the zero-free
region, and the ratio `objective` measures how good a choice of (a, b) is.

The module also holds the local coefficient identity for symmetric powers:
at a prime p with Satake roots (alpha1, alpha2), the coefficient of p^l in
the m-th power L-function equals (alpha1^l + alpha2^l)^m.
"""

import logging
import math
from typing import NamedTuple, Tuple

import numpy as np

from .numerics import DomainError
from .steckin import KAPPA

logger = logging.getLogger(__name__)

PUBLISHED_A = 1.5315
PUBLISHED_B = 0.374949
PUBLISHED_GAMMA = 8.0

# Stečkin's classical choice.
CLASSICAL_A = 0.9126
CLASSICAL_B = 0.2766

_INV_PHI = (math.sqrt(5) - 1) / 2
_INV_PHI_SQ = (3 - math.sqrt(5)) / 2


class SatakeParams(NamedTuple):
    alpha1: complex
    alpha2: complex
    prime: int
    ramified: bool

    @classmethod
    def unramified(cls, prime: int, theta: float) -> 'SatakeParams':
        root = complex(math.cos(theta), math.sin(theta))
        return cls(root, root.conjugate(), prime, False)

    @classmethod
    def _ramified(cls, prime: int, sign: int = 1) -> 'SatakeParams':
        return cls(complex(sign / math.sqrt(prime)), 0j, prime, True)


class _FieldOrConstructor:
    """The ``ramified`` field accessor would otherwise shadow the
    ``SatakeParams.ramified`` constructor: on the class it is the
    constructor, on an instance it is the field."""

    def __init__(self, field, constructor):
        self._field = field
        self._constructor = constructor

    def __get__(self, obj, objtype=None):
        if obj is None:
            return self._constructor.__get__(objtype, objtype)
        return self._field.__get__(obj, objtype)


SatakeParams.ramified = _FieldOrConstructor(
    SatakeParams.__dict__['ramified'], SatakeParams.__dict__['_ramified'])


def validate_satake(sp: SatakeParams):
    if sp.prime < 2:
        raise DomainError('Unexpected prime: {}'.format(sp.prime))
    if sp.ramified:
        if sp.alpha2 != 0 or abs(abs(sp.alpha1) - sp.prime ** -0.5) > 1e-12:
            raise DomainError(
                'Ramified roots must be (+-p^(-1/2), 0), got {}'.format(sp))
    elif (abs(abs(sp.alpha1) - 1) > 1e-12 or abs(abs(sp.alpha2) - 1) > 1e-12 or
          abs(sp.alpha1 * sp.alpha2 - 1) > 1e-12):
        raise DomainError(
            'Unramified roots must be unitary and reciprocal, got {}'.format(
                sp))


def _sym_trace(sp: SatakeParams, n: int, l: int) -> complex:
    """Trace of the n-th symmetric power at p^l."""
    return sum(sp.alpha1 ** ((n - j) * l) * sp.alpha2 ** (j * l)
               for j in range(n + 1))


def lambda_power(sp: SatakeParams, l: int, m: int) -> float:
    """Coefficient of p^l in the m-th power L-function, 0 <= m <= 4.

    The value is assembled from symmetric-power traces, the way the m-th
    power L-function factors into symmetric powers:
        m = 2: 1 + Sym^2, m = 3: Sym^3 + 2 Sym^1,
        m = 4: 2 + 3 Sym^2 + Sym^4.
    At a ramified prime only the top symmetric power survives.
    """
    validate_satake(sp)
    if l < 1:
        raise DomainError('Unexpected prime power exponent: {}'.format(l))
    if m == 0:
        value = 1 + 0j
    elif sp.ramified or m == 1:
        value = _sym_trace(sp, m, l)
    elif m == 2:
        value = 1 + _sym_trace(sp, 2, l)
    elif m == 3:
        value = _sym_trace(sp, 3, l) + 2 * _sym_trace(sp, 1, l)
    elif m == 4:
        value = 2 + 3 * _sym_trace(sp, 2, l) + _sym_trace(sp, 4, l)
    else:
        raise DomainError('Unexpected power: {}'.format(m))
    if abs(value.imag) > 1e-10:
        raise DomainError('Coefficient {} is not real for {}'.format(
            value, sp))
    return value.real


class PolyParams(NamedTuple):
    gamma_coeff: float
    a: float
    b: float


PUBLISHED_PARAMS = PolyParams(PUBLISHED_GAMMA, PUBLISHED_A, PUBLISHED_B)


class CosCoeffs(NamedTuple):
    a0: float
    a1: float
    a2: float
    a3: float
    a4: float


def cos_coeffs(params: PolyParams) -> CosCoeffs:
    """Cosine coefficients of P. Accepts numpy arrays for a and b."""
    gamma, a, b = params
    if np.any(np.asarray(gamma) <= 0):
        raise DomainError('gamma_coeff must be positive, got {}'.format(gamma))
    half = gamma / 2
    return CosCoeffs(
        a0=half * (0.75 + 4 * a * b + b ** 2 + a ** 2 * (1 + 2 * b ** 2)),
        a1=half * (a + b) * (3 + 4 * a * b),
        a2=half * (1 + a ** 2 + 4 * a * b + b ** 2),
        a3=half * (a + b),
        a4=gamma / 8)


def trig_sum(coeffs: CosCoeffs, theta):
    theta = np.asarray(theta, dtype=float)
    return sum(c * np.cos(m * theta) for m, c in enumerate(coeffs))


def p4_value(params: PolyParams, theta, lam):
    """gamma (a + lam cos theta)^2 (b + lam cos theta)^2.

    lam is a Hecke eigenvalue normalized into [-2, 2]. Values outside that
    range are accepted with a warning.
    """
    lam = np.asarray(lam, dtype=float)
    if np.any(np.abs(lam) > 2):
        logger.warning('Eigenvalue outside [-2, 2]: %s', lam)
    c = lam * np.cos(theta)
    return params.gamma_coeff * (params.a + c) ** 2 * (params.b + c) ** 2


def positivity_identity(params: PolyParams, theta, lam):
    """Residual of the twisted cosine expansion against `p4_value`.

    The expansion is
        gamma a^2 b^2 + (a2 - 4 a4) lam^2 + 3 a4 lam^4
        + ((a1 - 3 a3) lam + 3 a3 lam^3) cos theta
        + ((a2 - 4 a4) lam^2 + 4 a4 lam^4) cos 2 theta
        + a3 lam^3 cos 3 theta + a4 lam^4 cos 4 theta.
    """
    c = cos_coeffs(params)
    theta = np.asarray(theta, dtype=float)
    lam = np.asarray(lam, dtype=float)
    lam2 = lam ** 2
    lam4 = lam2 ** 2
    expansion = (params.gamma_coeff * params.a ** 2 * params.b ** 2 +
                 (c.a2 - 4 * c.a4) * lam2 + 3 * c.a4 * lam4 +
                 ((c.a1 - 3 * c.a3) * lam + 3 * c.a3 * lam2 * lam) *
                 np.cos(theta) +
                 ((c.a2 - 4 * c.a4) * lam2 + 4 * c.a4 * lam4) *
                 np.cos(2 * theta) +
                 c.a3 * lam2 * lam * np.cos(3 * theta) +
                 c.a4 * lam4 * np.cos(4 * theta))
    return expansion - p4_value(params, theta, lam)


class AbcTriple(NamedTuple):
    """Coefficients of the final inequality A/(sigma - beta) < B/(sigma - 1)
    + C kappa log Q."""
    A: float
    B: float
    C: float

    @classmethod
    def from_coeffs(cls, coeffs: CosCoeffs) -> 'AbcTriple':
        # gamma a^2 b^2 = a0 - a2 + a4, so B = a0 + 3 a4.
        a0, a1, a2, a3, a4 = coeffs
        return cls(A=a1 + 3 * a3, B=a0 + 3 * a4,
                   C=a1 + 2 * a2 + 13 * a3 + 32 * a4)


def objective_from_abc(abc: AbcTriple, extra: float = 0.0):
    """(A + B - 2 sqrt(AB)) / (C kappa + extra), or 0 when A <= B."""
    A, B, C = (np.asarray(v, dtype=float) for v in abc)
    if np.any(A * B < 0):
        raise DomainError('Objective needs AB >= 0, got A={}, B={}'.format(
            A, B))
    gain = np.where(A > B, A + B - 2 * np.sqrt(A * B), 0.0)
    return gain / (C * KAPPA + extra)


def objective(params: PolyParams) -> float:
    """The zero-free-region constant 1/C delivered by (gamma, a, b)."""
    return float(objective_from_abc(AbcTriple.from_coeffs(cos_coeffs(params))))


class ABOptimum(NamedTuple):
    a: float
    b: float
    objective: float
    on_boundary: bool


def _golden_max(func, lo: float, hi: float, tol: float) -> float:
    """Golden-section search for a maximum of a unimodal func on [lo, hi]."""
    dist = hi - lo
    if dist <= tol:
        return (lo + hi) / 2
    n = int(math.ceil(math.log(tol / dist) / math.log(_INV_PHI)))
    c = lo + _INV_PHI_SQ * dist
    d = lo + _INV_PHI * dist
    yc = func(c)
    yd = func(d)
    for _ in range(n - 1):
        if yc > yd:
            hi = d
            d = c
            yd = yc
            dist = _INV_PHI * dist
            c = lo + _INV_PHI_SQ * dist
            yc = func(c)
        else:
            lo = c
            c = d
            yc = yd
            dist = _INV_PHI * dist
            d = lo + _INV_PHI * dist
            yd = func(d)
    return (lo + d) / 2 if yc > yd else (c + hi) / 2


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    return np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)


def optimize_ab(search_box: Tuple[Tuple[float, float], Tuple[float, float]],
                gamma_coeff: float = PUBLISHED_GAMMA,
                grid_step: float = 1e-2, tol: float = 1e-6,
                max_rounds: int = 200) -> ABOptimum:
    """Maximizes `objective` over a box of (a, b).

    A grid pass with spacing grid_step selects a start point. Alternating
    golden-section searches along a and along b then refine it to tol.
    P is symmetric in (a, b), so the result is reported with a >= b
    whenever the mirrored point lies in the box.

    Args:
        search_box: ((a_lo, a_hi), (b_lo, b_hi)) inside [0, 3]^2.
    """
    (a_lo, a_hi), (b_lo, b_hi) = search_box
    if not (0 <= a_lo < a_hi <= 3 and 0 <= b_lo < b_hi <= 3):
        raise DomainError('Unexpected search box: {}'.format(search_box))

    a_grid, b_grid = np.meshgrid(_axis(a_lo, a_hi, grid_step),
                                 _axis(b_lo, b_hi, grid_step), indexing='ij')
    values = objective_from_abc(AbcTriple.from_coeffs(
        cos_coeffs(PolyParams(gamma_coeff, a_grid, b_grid))))
    i, j = np.unravel_index(np.argmax(values), values.shape)
    a, b = float(a_grid[i, j]), float(b_grid[i, j])
    best = float(values[i, j])

    def value(x, y):
        return objective(PolyParams(gamma_coeff, x, y))

    for round_ in range(max_rounds):
        start_a, start_b = a, b
        candidate = _golden_max(lambda x: value(x, b),
                                max(a_lo, a - grid_step),
                                min(a_hi, a + grid_step), tol)
        if value(candidate, b) > best:
            a, best = candidate, value(candidate, b)
        candidate = _golden_max(lambda y: value(a, y),
                                max(b_lo, b - grid_step),
                                min(b_hi, b + grid_step), tol)
        if value(a, candidate) > best:
            b, best = candidate, value(a, candidate)
        if abs(a - start_a) + abs(b - start_b) < tol * 1e-2:
            break
    logger.debug('Refined (a, b) to (%.8f, %.8f) after %d rounds', a, b,
                 round_ + 1)

    if b > a and a_lo <= b <= a_hi and b_lo <= a <= b_hi:
        a, b = b, a
    edge = 10 * tol
    on_boundary = (min(a - a_lo, a_hi - a) < edge or
                   min(b - b_lo, b_hi - b) < edge)
    return ABOptimum(a, b, best, on_boundary)
