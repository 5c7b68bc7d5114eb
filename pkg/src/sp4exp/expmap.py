"""Closed-form exponential map from sp(4, R) to Sp(4, R).

A Lie-algebra element is ``m = Omega L`` with ``L = [[a, b], [b^T, c]]`` and
``a``, ``c`` symmetric.  Its square ``S = m @ m`` keeps the block pattern

    S^n = [[alpha_n I,          beta_n J d],
           [-beta_n J d^T,      gamma_n I]],      d = a J b + b J c,

so ``exp(m)`` reduces to six scalar series ("even" and "odd" coefficients)
which are finite combinations of ``cosh(sqrt(lam))`` and
``sinh(sqrt(lam)) / sqrt(lam)`` at the two eigenvalues ``lam_+/-`` of the
2x2 coefficient recursion.
"""

import cmath
import math
from dataclasses import InitVar, dataclass, field

import numpy as np

from .linalg import as_mat2, det2, from_blocks, j2, omega4

#: Relative eigenvalue gap below which ``coeffs_closed`` uses the confluent limit.
CONFLUENT_DELTA = 1e-8
#: Relative half-gap below which ``series_coeffs`` expands about the midpoint.
MIDPOINT_BAND = 1e-3
#: Half-width of the power-series window in ``entire_c`` / ``entire_s``.
SERIES_EPS = 1e-4

_J = j2()
_OMEGA = omega4()


class AsymmetricBlockError(ValueError):
    """Raised when ``a`` or ``c`` is not symmetric in strict mode."""


@dataclass(frozen=True, eq=False)
class Generator:
    """Lie-algebra datum ``(a, b, c)``.

    ``a`` and ``c`` must be exactly symmetric.  With ``lenient=True`` they are
    replaced by ``(x + x^T) / 2`` instead of raising.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    lenient: InitVar[bool] = False

    def __post_init__(self, lenient):
        blocks = {"a": as_mat2(self.a), "b": as_mat2(self.b), "c": as_mat2(self.c)}
        for name in ("a", "c"):
            x = blocks[name]
            if x[0, 1] != x[1, 0]:
                if not lenient:
                    raise AsymmetricBlockError(f"block {name!r} is not symmetric: {x.tolist()}")
                blocks[name] = 0.5 * (x + x.T)
        for name, x in blocks.items():
            x.flags.writeable = False
            object.__setattr__(self, name, x)

    @classmethod
    def zero(cls):
        z = np.zeros((2, 2))
        return cls(z, z, z)

    @classmethod
    def from_params(cls, params):
        """Build from the ten free entries
        ``(a11, a12, a22, b11, b12, b21, b22, c11, c12, c22)``."""
        a11, a12, a22, b11, b12, b21, b22, c11, c12, c22 = (float(v) for v in params)
        return cls(
            np.array([[a11, a12], [a12, a22]]),
            np.array([[b11, b12], [b21, b22]]),
            np.array([[c11, c12], [c12, c22]]),
        )

    def params(self):
        a, b, c = self.a, self.b, self.c
        return (a[0, 0], a[0, 1], a[1, 1], b[0, 0], b[0, 1], b[1, 0], b[1, 1], c[0, 0], c[0, 1], c[1, 1])

    def symmetric_matrix(self):
        """The 4x4 symmetric matrix ``L = [[a, b], [b^T, c]]``."""
        return from_blocks(self.a, self.b, self.b.T, self.c)

    def scaled(self, s):
        return Generator(s * self.a, s * self.b, s * self.c)

    def __neg__(self):
        return self.scaled(-1.0)

    def __eq__(self, other):
        if not isinstance(other, Generator):
            return NotImplemented
        return all(np.array_equal(getattr(self, k), getattr(other, k)) for k in "abc")


@dataclass(frozen=True)
class SpectralData:
    """Scalars describing ``S = m^2``.

    For a complex-conjugate eigenvalue pair (``is_complex``), ``lambda_plus``
    holds the common real part and ``lambda_minus`` the positive imaginary
    part; use :meth:`eigenvalues` for the actual pair.
    """

    alpha1: float
    beta1: float
    gamma1: float
    d: np.ndarray = field(repr=False)
    det_d: float
    lambda_plus: float
    lambda_minus: float
    discriminant: float
    is_complex: bool = False

    def eigenvalues(self):
        if self.is_complex:
            return (
                complex(self.lambda_plus, self.lambda_minus),
                complex(self.lambda_plus, -self.lambda_minus),
            )
        return self.lambda_plus, self.lambda_minus

    @property
    def midpoint(self):
        return 0.5 * (self.alpha1 + self.gamma1)

    @property
    def product(self):
        return self.alpha1 * self.gamma1 - self.beta1**2 * self.det_d


@dataclass(frozen=True)
class SeriesCoeffs:
    alpha_e: float
    beta_e: float
    gamma_e: float
    alpha_o: float
    beta_o: float
    gamma_o: float

    def as_tuple(self):
        return (self.alpha_e, self.beta_e, self.gamma_e, self.alpha_o, self.beta_o, self.gamma_o)


def lie_matrix(g):
    """Return ``m = Omega L`` for the generator ``g``."""
    return _OMEGA @ g.symmetric_matrix()


def spectral_data(g):
    det_a, det_b, det_c = det2(g.a), det2(g.b), det2(g.c)
    d = g.a @ _J @ g.b + g.b @ _J @ g.c
    det_d = det2(d)
    alpha1 = -(det_a + det_b)
    gamma1 = -(det_c + det_b)
    beta1 = 1.0
    disc = (alpha1 - gamma1) ** 2 + 4.0 * beta1**2 * det_d
    mid = 0.5 * (alpha1 + gamma1)
    if disc >= 0.0:
        lp, lm = _real_roots(mid, 0.5 * math.sqrt(disc), alpha1 * gamma1 - det_d)
        return SpectralData(alpha1, beta1, gamma1, d, det_d, lp, lm, disc)
    return SpectralData(alpha1, beta1, gamma1, d, det_d, mid, 0.5 * math.sqrt(-disc), disc, True)


def _real_roots(mid, half_gap, prod):
    # The smaller-magnitude root comes from the product to avoid cancellation.
    lp, lm = mid + half_gap, mid - half_gap
    if mid >= 0.0 and lp != 0.0:
        lm = prod / lp
    elif mid < 0.0:
        lp = prod / lm
    return lp, lm


def compute_S(g):
    """Return ``S = m^2`` from its block closed form, plus its spectral data.

    ``S = [[-(det a + det b) I, J d], [-J d^T, -(det b + det c) I]]``.
    """
    sd = spectral_data(g)
    jd = _J @ sd.d
    eye = np.eye(2)
    s = from_blocks(sd.alpha1 * eye, jd, -_J @ sd.d.T, sd.gamma1 * eye)
    return s, sd


def coeffs_recursive(sd, n):
    """``(alpha_n, beta_n, gamma_n)`` by iterating the 3x3 linear recursion."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    a1, b1, g1, dd = sd.alpha1, sd.beta1, sd.gamma1, sd.det_d
    alpha, beta, gamma = a1, b1, g1
    for _ in range(n - 1):
        alpha, beta, gamma = (
            a1 * alpha + b1 * dd * beta,
            b1 * alpha + g1 * beta,
            b1 * dd * beta + g1 * gamma,
        )
    return alpha, beta, gamma


def coeffs_closed(sd, n, delta=CONFLUENT_DELTA):
    """``(alpha_n, beta_n, gamma_n)`` from the eigenvalues of the recursion.

    Falls back to the confluent limit when ``|lam_+ - lam_-|`` is below
    ``delta * max(1, |lam_+|)``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    lp, lm = sd.eigenvalues()
    half = 0.5 * (sd.alpha1 - sd.gamma1)
    gap = lp - lm
    if abs(gap) < delta * max(1.0, abs(lp)):
        lam = sd.midpoint
        beta = n * lam ** (n - 1)
        power = lam**n
        return power + half * beta, beta, power - half * beta
    pp, pm = lp**n, lm**n
    beta = (pp - pm) / gap
    mean = 0.5 * (pp + pm)
    # alpha_n = [(lam_+ - gamma1) lam_+^n - (lam_- - gamma1) lam_-^n] / gap, regrouped
    alpha, gamma = mean + half * beta, mean - half * beta
    return _real(alpha), _real(beta), _real(gamma)


def _real(z):
    return z.real if isinstance(z, complex) else z


def entire_c(lam):
    """``cosh(sqrt(lam))`` extended to all real ``lam`` (``cos(sqrt(-lam))`` below zero)."""
    if lam > SERIES_EPS:
        return math.cosh(math.sqrt(lam))
    if lam < -SERIES_EPS:
        return math.cos(math.sqrt(-lam))
    return _power_series(lam, 0)


def entire_s(lam):
    """``sinh(sqrt(lam)) / sqrt(lam)`` extended to all real ``lam``."""
    if lam > SERIES_EPS:
        u = math.sqrt(lam)
        return math.sinh(u) / u
    if lam < -SERIES_EPS:
        u = math.sqrt(-lam)
        return math.sin(u) / u
    return _power_series(lam, 1)


def entire_c1(lam):
    """Derivative of :func:`entire_c`: ``sum_{n>=1} n lam^(n-1) / (2n)!``."""
    return 0.5 * entire_s(lam)


def entire_s1(lam):
    """Derivative of :func:`entire_s`: ``sum_{n>=1} n lam^(n-1) / (2n+1)!``."""
    if abs(lam) > 1.0:
        return (entire_c(lam) - entire_s(lam)) / (2.0 * lam)
    return _taylor_coeff(lam, 1, 1)


def _power_series(lam, offset, min_terms=8):
    """``sum_n lam^n / (2n + offset)!`` summed to double precision."""
    total = 0.0
    term = 1.0 / math.factorial(offset)
    for n in range(60):
        total += term
        if n + 1 >= min_terms and abs(term) <= 1e-17 * abs(total):
            break
        term *= lam / ((2 * n + 1 + offset) * (2 * n + 2 + offset))
    return total


def _taylor_coeff(x, k, offset):
    """k-th Taylor coefficient at ``x`` of ``f(lam) = sum_n lam^n / (2n + offset)!``.

    That is ``f^(k)(x) / k! = sum_{n>=k} C(n, k) x^(n-k) / (2n + offset)!``.
    """
    term = 1.0 / math.factorial(2 * k + offset)
    total = 0.0
    for n in range(k, k + 80):
        total += term
        if n >= k + 4 and abs(term) <= 1e-17 * abs(total):
            break
        # ratio of consecutive terms n -> n + 1
        term *= x * (n + 1) / ((n + 1 - k) * (2 * n + 1 + offset) * (2 * n + 2 + offset))
    return total


def _midpoint_expansion(mid, h2, offset):
    """Mean and divided difference of ``f`` over ``mid +/- h`` given ``h^2 = h2``.

    Leading coefficients use the closed forms; the corrections are O(h^2).
    """
    if offset == 0:
        t = [entire_c(mid), entire_c1(mid)]
    else:
        t = [entire_s(mid), entire_s1(mid)]
    mean, dd = t[0], t[1]
    power = 1.0
    for j in range(1, 6):
        power *= h2
        dm = _taylor_coeff(mid, 2 * j, offset) * power
        dv = _taylor_coeff(mid, 2 * j + 1, offset) * power
        mean += dm
        dd += dv
        if abs(dm) <= 1e-17 * abs(mean) and abs(dv) <= 1e-17 * abs(dd):
            break
    return mean, dd


def _complex_c(z):
    return cmath.cosh(cmath.sqrt(z))


def _complex_s(z):
    w = cmath.sqrt(z)
    return cmath.sinh(w) / w


def series_coeffs(sd, band=MIDPOINT_BAND):
    """Even and odd series coefficients of ``exp(m)``.

    With ``f`` either entire function, every coefficient is a combination of
    the mean ``(f(lam_+) + f(lam_-)) / 2`` and the divided difference
    ``(f(lam_+) - f(lam_-)) / (lam_+ - lam_-)``:

        alpha = mean + (alpha1 - gamma1) / 2 * dd
        beta  = dd
        gamma = mean - (alpha1 - gamma1) / 2 * dd

    Close eigenvalues (including complex pairs with a small imaginary part)
    use a Taylor expansion about the midpoint in ``h^2 = disc / 4``, which
    is real in both cases and has the confluent limit as its leading term.
    """
    mid = sd.midpoint
    h2 = 0.25 * sd.discriminant
    half = 0.5 * (sd.alpha1 - sd.gamma1)
    if abs(h2) <= (band * max(1.0, abs(mid))) ** 2:
        mc, dc = _midpoint_expansion(mid, h2, 0)
        ms, ds = _midpoint_expansion(mid, h2, 1)
    elif not sd.is_complex:
        lp, lm = sd.lambda_plus, sd.lambda_minus
        gap = lp - lm
        cp, cm = entire_c(lp), entire_c(lm)
        sp, sm = entire_s(lp), entire_s(lm)
        mc, dc = 0.5 * (cp + cm), (cp - cm) / gap
        ms, ds = 0.5 * (sp + sm), (sp - sm) / gap
    else:
        # conjugate pair: f(lam_-) = conj f(lam_+), gap = 2i Im(lam_+)
        lp = complex(sd.lambda_plus, sd.lambda_minus)
        cp, sp = _complex_c(lp), _complex_s(lp)
        mc, dc = cp.real, cp.imag / sd.lambda_minus
        ms, ds = sp.real, sp.imag / sd.lambda_minus
    return SeriesCoeffs(
        mc + half * dc, dc, mc - half * dc,
        ms + half * ds, ds, ms - half * ds,
    )


def _block_diagonal_form(sd, alpha, beta, gamma):
    jd = _J @ sd.d
    eye = np.eye(2)
    return from_blocks(alpha * eye, beta * jd, -beta * (_J @ sd.d.T), gamma * eye)


def exp_sp4(g):
    """``exp(Omega L)`` for the generator ``g`` via the closed form ``E + m O``."""
    sd = spectral_data(g)
    co = series_coeffs(sd)
    even = _block_diagonal_form(sd, co.alpha_e, co.beta_e, co.gamma_e)
    odd = _block_diagonal_form(sd, co.alpha_o, co.beta_o, co.gamma_o)
    return even + lie_matrix(g) @ odd


def blocks_ABCD(g):
    """The four 2x2 blocks of ``exp_sp4(g)`` from their explicit formulas."""
    a, b, c, J = g.a, g.b, g.c, _J
    bt = b.T
    co = series_coeffs(spectral_data(g))
    ae, be, ge, ao, bo, go = co.as_tuple()
    det_a, det_b, det_c = det2(a), det2(b), det2(c)
    eye = np.eye(2)
    A = ae * eye + (ao - bo * det_b) * (J @ a) + bo * (J @ b @ J @ c @ J @ bt)
    B = (go - bo * det_a) * (J @ b) + be * (J @ a @ J @ b + J @ b @ J @ c) + bo * (J @ a @ J @ b @ J @ c)
    C = (ao - bo * det_c) * (J @ bt) + be * (J @ bt @ J @ a + J @ c @ J @ bt) + bo * (J @ c @ J @ bt @ J @ a)
    D = ge * eye + (go - bo * det_b) * (J @ c) + bo * (J @ bt @ J @ a @ J @ b)
    return A, B, C, D


def sp2_block(x):
    """``exp(J x)`` for a symmetric 2x2 ``x``: ``c(-det x) I + s(-det x) J x``."""
    lam = -det2(x)
    return entire_c(lam) * np.eye(2) + entire_s(lam) * (_J @ x)


def exp_sp4_b_zero(a, c):
    """Group element for ``b = 0``: block-diagonal with two Sp(2, R) factors."""
    g = Generator(a, np.zeros((2, 2)), c)
    zero = np.zeros((2, 2))
    return from_blocks(sp2_block(g.a), zero, zero, sp2_block(g.c))


def exp_sp4_ac_zero(b):
    """Group element for ``a = c = 0``.

    ``[[c I, s J b], [s J b^T, c I]]`` with ``c, s`` evaluated at ``-det b``.
    """
    b = as_mat2(b)
    lam = -det2(b)
    ch, sh = entire_c(lam), entire_s(lam)
    eye = np.eye(2)
    return from_blocks(ch * eye, sh * (_J @ b), sh * (_J @ b.T), ch * eye)
