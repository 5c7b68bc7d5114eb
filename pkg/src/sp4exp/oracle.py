"""Brute-force checks for the closed-form exponential map.

``exp_series`` is a plain scaling-and-squaring Taylor exponential that knows
nothing about the block structure of sp(4, R); ``fuzz_expmap`` compares it
with :func:`sp4exp.expmap.exp_sp4` on reproducible random generators.

Random numbers come from SplitMix64 (Steele, Lea & Flood 2014) so that
reports are reproducible in any language.  Generator ``i`` of a fuzz run
consumes outputs ``10*i .. 10*i + 9`` of the stream seeded with ``seed``;
since SplitMix64 state advances by a fixed increment, any index can be
reached in O(1) and batches can be split across workers freely.
"""

from dataclasses import dataclass

import numpy as np

from .expmap import Generator, exp_sp4, lie_matrix
from .linalg import as_mat4, inf_norm, max_abs_diff, omega4

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
PARAMS_PER_GENERATOR = 10

_OMEGA = omega4()


@dataclass(frozen=True)
class ExpOracleConfig:
    squaring_threshold: float = 0.5
    max_terms: int = 30
    tol: float = 1e-16

    def __post_init__(self):
        if not self.squaring_threshold > 0:
            raise ValueError("squaring_threshold must be positive")
        if self.max_terms < 20:
            raise ValueError("max_terms must be at least 20")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


def exp_series(m, cfg=None):
    """Matrix exponential by scaling and squaring a truncated Taylor series.

    Picks the smallest ``k`` with ``||m||_inf / 2**k <= squaring_threshold``,
    sums the Taylor series of ``exp(m / 2**k)`` until a term drops below
    ``tol`` (relative) or ``max_terms`` is reached, then squares ``k`` times.
    """
    cfg = cfg or ExpOracleConfig()
    m = as_mat4(m)
    norm = inf_norm(m)
    k = 0
    while norm / 2.0**k > cfg.squaring_threshold:
        k += 1
    x = m / 2.0**k
    result = np.eye(4)
    term = np.eye(4)
    for n in range(1, cfg.max_terms + 1):
        term = term @ x / n
        result = result + term
        if np.max(np.abs(term)) <= cfg.tol * np.max(np.abs(result)):
            break
    for _ in range(k):
        result = result @ result
    return result


def symplectic_residual(M):
    """``||M Omega M^T - Omega||`` in the entrywise infinity norm."""
    M = np.asarray(M, dtype=float)
    return max_abs_diff(M @ _OMEGA @ M.T, _OMEGA)


def splitmix64(state):
    """One SplitMix64 step. Returns ``(new_state, output)``."""
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def uniform_stream(seed, start, count):
    """Doubles in ``[-1, 1)`` at positions ``start .. start + count - 1``.

    Each output ``x`` is mapped as ``2 * (x >> 11) * 2**-53 - 1``.
    """
    state = (seed + start * _GOLDEN) & _MASK64
    out = []
    for _ in range(count):
        state, z = splitmix64(state)
        out.append(2.0 * (z >> 11) * 2.0**-53 - 1.0)
    return out


def random_generator(seed, index, norm_cap):
    """The ``index``-th random generator of a fuzz run.

    Entries are uniform in ``[-1, 1)``; the generator is then scaled down
    (never up) so that ``||lie_matrix(g)||_inf <= norm_cap``.
    """
    params = uniform_stream(seed, PARAMS_PER_GENERATOR * index, PARAMS_PER_GENERATOR)
    g = Generator.from_params(params)
    norm = inf_norm(lie_matrix(g))
    if norm > norm_cap:
        g = g.scaled(norm_cap / norm)
    return g


@dataclass(frozen=True)
class FuzzReport:
    max_dev: float
    max_residual: float
    count: int
    seed: int

    def to_text(self):
        """Flat ``key=value`` block, one key per line; floats round-trip exactly."""
        return (
            f"max_dev={self.max_dev!r}\n"
            f"max_residual={self.max_residual!r}\n"
            f"count={self.count}\n"
            f"seed={self.seed}\n"
        )

    @classmethod
    def from_text(cls, text):
        fields = dict(line.split("=", 1) for line in text.strip().splitlines())
        return cls(
            float(fields["max_dev"]),
            float(fields["max_residual"]),
            int(fields["count"]),
            int(fields["seed"]),
        )


def fuzz_expmap(seed, count, norm_cap, cfg=None):
    """Compare ``exp_sp4`` against ``exp_series`` on ``count`` random generators."""
    if count < 1:
        raise ValueError("count must be >= 1")
    max_dev = 0.0
    max_res = 0.0
    for i in range(count):
        g = random_generator(seed, i, norm_cap)
        closed = exp_sp4(g)
        brute = exp_series(lie_matrix(g), cfg)
        max_dev = max(max_dev, max_abs_diff(closed, brute))
        max_res = max(max_res, symplectic_residual(closed))
    return FuzzReport(max_dev, max_res, count, seed)
