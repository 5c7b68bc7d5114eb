"""Classical two-mode squeeze matrix and the squeezed-vacuum correlation matrix.

The squeeze parameter is ``zeta = r exp(2i phi)``; ``l1``, ``l2`` are the
oscillator lengths ``sqrt(hbar / (m_j omega_j))``.  Phase-space vectors are
ordered ``(q1, p1, q2, p2)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .expmap import exp_sp4_ac_zero
from .linalg import as_mat4


class SqueezeParamError(ValueError):
    pass


@dataclass(frozen=True)
class SqueezeParams:
    r: float
    phi: float = 0.0
    l1: float = 1.0
    l2: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("r", "phi", "l1", "l2", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise SqueezeParamError(f"{name} must be finite")
        if self.r < 0:
            raise SqueezeParamError(f"r must be >= 0, got {self.r}")
        for name in ("l1", "l2", "hbar"):
            if getattr(self, name) <= 0:
                raise SqueezeParamError(f"{name} must be > 0, got {getattr(self, name)}")

    @classmethod
    def from_oscillators(cls, r, phi, hbar, m_omega1=1.0, m_omega2=1.0):
        """Parameters with ``l_j = sqrt(hbar / (m_j omega_j))``."""
        return cls(r, phi, math.sqrt(hbar / m_omega1), math.sqrt(hbar / m_omega2), hbar)

    @property
    def zeta_x(self):
        return self.r * math.cos(2.0 * self.phi)

    @property
    def zeta_y(self):
        return self.r * math.sin(2.0 * self.phi)


def squeeze_b(p):
    """Coupling block ``b`` of the two-mode squeeze generator."""
    zx, zy = p.zeta_x, p.zeta_y
    l1, l2, hbar = p.l1, p.l2, p.hbar
    return np.array([
        [hbar * zy / (l1 * l2), -l2 * zx / l1],
        [-l1 * zx / l2, -l1 * l2 * zy / hbar],
    ])


def squeeze_matrix(p):
    """The classical squeeze matrix ``M_s(r, phi)`` written out entry by entry."""
    ch, sh = math.cosh(p.r), math.sinh(p.r)
    c2, s2 = math.cos(2.0 * p.phi), math.sin(2.0 * p.phi)
    l1, l2, hbar = p.l1, p.l2, p.hbar
    return np.array([
        [ch, 0.0, -sh * c2 * l1 / l2, -sh * s2 * l1 * l2 / hbar],
        [0.0, ch, -sh * s2 * hbar / (l1 * l2), sh * c2 * l2 / l1],
        [-sh * c2 * l2 / l1, -sh * s2 * l1 * l2 / hbar, ch, 0.0],
        [-sh * s2 * hbar / (l1 * l2), sh * c2 * l1 / l2, 0.0, ch],
    ])


def squeeze_matrix_from_generator(p):
    """``M_s`` obtained by exponentiating the generator with ``a = c = 0``."""
    return exp_sp4_ac_zero(squeeze_b(p))


def correlation_matrix(r):
    """Correlation matrix of the two-mode squeezed vacuum.

    The printed source has ``cosh(r)`` in the (4, 4) slot; symmetry with the
    other three diagonal entries requires ``cosh(2r)``, which is used here.
    """
    if r < 0:
        raise SqueezeParamError(f"r must be >= 0, got {r}")
    ch, sh = math.cosh(2.0 * r), math.sinh(2.0 * r)
    return 0.25 * np.array([
        [ch, 0.0, sh, 0.0],
        [0.0, ch, 0.0, -sh],
        [sh, 0.0, ch, 0.0],
        [0.0, -sh, 0.0, ch],
    ])


def factor_two_check(r):
    """``||4 V(r) - M_s(2r, pi/2)||`` with unit lengths and ``hbar = 1``."""
    ms = squeeze_matrix(SqueezeParams(2.0 * r, math.pi / 2))
    return float(np.max(np.abs(4.0 * correlation_matrix(r) - ms)))


@dataclass(frozen=True)
class Trajectory:
    """Sampled phase-space path; ``samples`` has rows ``(t, q1, p1, q2, p2)``."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.ndim != 2 or s.shape[1] != 5:
            raise ValueError(f"samples must have shape (n, 5), got {s.shape}")
        if np.any(np.diff(s[:, 0]) <= 0):
            raise ValueError("sample times must be strictly increasing")
        object.__setattr__(self, "samples", s)

    @property
    def t(self):
        return self.samples[:, 0]

    @property
    def points(self):
        """``(n, 4)`` array of phase-space points."""
        return self.samples[:, 1:]

    def __len__(self):
        return len(self.samples)


def circular_trajectory(q, p, t0=0.0, t1=2.0 * math.pi, steps=256):
    """Free-oscillator circles ``q_j(t) = cos t q_j + sin t p_j``,
    ``p_j(t) = -sin t q_j + cos t p_j`` on a uniform endpoint-inclusive grid.

    ``q = (q1, q2)`` and ``p = (p1, p2)`` are the initial data.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not t1 > t0:
        raise ValueError("t1 must exceed t0")
    t = np.linspace(t0, t1, steps)
    cos, sin = np.cos(t), np.sin(t)
    cols = [t]
    for qj, pj in zip(q, p):
        cols.append(cos * qj + sin * pj)
        cols.append(-sin * qj + cos * pj)
    return Trajectory(np.column_stack(cols))


def transform_trajectory(traj, M):
    """Apply the phase-space matrix ``M`` to every sample; times are kept."""
    M = as_mat4(M)
    out = traj.samples.copy()
    out[:, 1:] = traj.points @ M.T
    return Trajectory(out)
