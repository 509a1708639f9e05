"""Seedable samplers for the structured symmetric ensembles.

Every sampler builds its matrix by mirroring a single set of draws, so
symmetry holds exactly (entry for entry), not just to rounding.  Passing
the same seed twice reproduces the same matrix bit for bit.
"""

from dataclasses import dataclass

import numpy as np

DISTRIBUTIONS = ("standard-normal", "rademacher", "uniform-scaled")

KINDS = ("goe", "pte", "bce", "checkerboard", "hollow-goe")

_SQRT3 = np.sqrt(3.0)


def rng_stream(seed, *stream):
    """Counter-based generator for the stream keyed by ``stream`` integers.

    Distinct keys (e.g. per trial and per matrix slot) give statistically
    independent streams under the same base seed.
    """
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(ss))


def _as_generator(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return rng_stream(seed)


def _draw(rng, dist, size):
    """iid draws with mean 0 and variance 1 from the named distribution."""
    if dist == "standard-normal":
        return rng.standard_normal(size)
    if dist == "rademacher":
        return rng.integers(0, 2, size).astype(float) * 2.0 - 1.0
    if dist == "uniform-scaled":
        # Uniform on [-sqrt(3), sqrt(3)] has variance 1.
        return rng.uniform(-_SQRT3, _SQRT3, size)
    raise ValueError(f"unknown distribution tag {dist!r}")


def _check_dims(N, k=None):
    if N < 1:
        raise ValueError(f"invalid dimension: N={N} must be positive")
    if k is not None:
        if k < 1:
            raise ValueError(f"invalid dimension: k={k} must be positive")
        if N % k:
            raise ValueError(f"invalid dimension: k={k} must divide N={N}")


def sample_goe(N, seed=None):
    """N x N GOE draw: off-diagonal N(0,1) mirrored, diagonal N(0,2)."""
    _check_dims(N)
    rng = _as_generator(seed)
    a = np.zeros((N, N))
    iu = np.triu_indices(N, 1)
    a[iu] = rng.standard_normal(iu[0].size)
    a += a.T
    a[np.diag_indices(N)] = rng.standard_normal(N) * np.sqrt(2.0)
    return a


def sample_pte(N, seed=None, dist="standard-normal"):
    """Palindromic Toeplitz draw from b_0..b_{N/2-1} iid with variance 1.

    The entry at (i, j) is b_d for d = |i-j| when d <= N/2 - 1 and
    b_{N-1-d} otherwise, which makes the first row a palindrome.  N must
    be even.
    """
    if N % 2:
        raise ValueError(f"invalid dimension: palindromic Toeplitz needs even N, got {N}")
    _check_dims(N)
    rng = _as_generator(seed)
    b = _draw(rng, dist, N // 2)
    d = np.abs(np.arange(N)[:, None] - np.arange(N)[None, :])
    return b[np.where(d <= N // 2 - 1, d, N - 1 - d)]


def _symmetric_block(rng, k, dist):
    m = np.zeros((k, k))
    iu = np.triu_indices(k)
    m[iu] = _draw(rng, dist, iu[0].size)
    m[(iu[1], iu[0])] = m[iu]
    return m


def sample_bce(N, k, seed=None, dist="standard-normal"):
    """Block circulant draw built from k x k blocks B_0..B_{N/k-1}.

    Free blocks are B_0 (symmetric) and B_1..B_{floor(n/2)} where
    n = N/k; the rest are forced by B_{n-i} = B_i^T.  When n is even the
    middle block B_{n/2} equals its own transpose, so it is drawn
    symmetric as well.
    """
    _check_dims(N, k)
    n = N // k
    rng = _as_generator(seed)
    blocks = [None] * n
    blocks[0] = _symmetric_block(rng, k, dist)
    for i in range(1, n // 2 + 1):
        if 2 * i == n:
            blocks[i] = _symmetric_block(rng, k, dist)
        else:
            blocks[i] = _draw(rng, dist, (k, k))
    for i in range(n // 2 + 1, n):
        blocks[i] = blocks[n - i].T
    return np.block([[blocks[(c - r) % n] for c in range(n)] for r in range(n)])


def sample_checkerboard(N, k, w=1.0, seed=None, dist="standard-normal"):
    """Symmetric iid draw with entries pinned to w where i = j (mod k)."""
    _check_dims(N, k)
    rng = _as_generator(seed)
    a = np.zeros((N, N))
    iu = np.triu_indices(N, 1)
    a[iu] = _draw(rng, dist, iu[0].size)
    a += a.T
    a[np.diag_indices(N)] = _draw(rng, dist, N)
    i = np.arange(N)
    a[(i[:, None] - i[None, :]) % k == 0] = w
    return a


def sample_hollow_goe(k, seed=None):
    """k x k symmetric with zero diagonal and off-diagonal N(0,1)."""
    _check_dims(k)
    rng = _as_generator(seed)
    a = np.zeros((k, k))
    iu = np.triu_indices(k, 1)
    a[iu] = rng.standard_normal(iu[0].size)
    a += a.T
    return a


@dataclass(frozen=True)
class EnsembleSpec:
    """Which ensemble to draw, at what size, with what parameters.

    k is the block or modulus parameter (ignored for goe and pte), w the
    pinned checkerboard weight, dist the entry distribution tag.  Dimension
    constraints are enforced at construction.
    """

    kind: str
    N: int
    k: int = None
    w: float = 1.0
    dist: str = "standard-normal"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.dist not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution tag {self.dist!r}")
        if self.kind == "pte" and self.N % 2:
            raise ValueError(
                f"invalid dimension: palindromic Toeplitz needs even N, got {self.N}"
            )
        if self.kind in ("bce", "checkerboard"):
            if self.k is None:
                raise ValueError(f"{self.kind} needs a block parameter k")
            _check_dims(self.N, self.k)
        else:
            _check_dims(self.N)


def sample_ensemble(spec, seed=None):
    """Draw one matrix described by an EnsembleSpec."""
    if spec.kind == "goe":
        return sample_goe(spec.N, seed)
    if spec.kind == "pte":
        return sample_pte(spec.N, seed, spec.dist)
    if spec.kind == "bce":
        return sample_bce(spec.N, spec.k, seed, spec.dist)
    if spec.kind == "checkerboard":
        return sample_checkerboard(spec.N, spec.k, spec.w, seed, spec.dist)
    if spec.kind == "hollow-goe":
        return sample_hollow_goe(spec.N, seed)
    raise ValueError(f"unknown ensemble kind {spec.kind!r}")


def mean_matrix(N, k):
    """Deterministic 0/1 matrix with ones exactly where i = j (mod k).

    Rank k; its nonzero eigenvalues are k copies of N/k.
    """
    _check_dims(N, k)
    i = np.arange(N)
    return ((i[:, None] - i[None, :]) % k == 0).astype(float)


def perturbation_split(M, k):
    """Split a weight-1 checkerboard sample into mean plus perturbation.

    Returns (mean, M - mean) with mean = mean_matrix(N, k); the
    perturbation vanishes on the residue-equal positions and its
    spectral radius grows only like sqrt(N).
    """
    N = M.shape[0]
    mean = mean_matrix(N, k)
    return mean, M - mean


def dump_matrix(f, M, kind):
    """Write a matrix as CSV, one row per line, 17 significant digits."""
    N = M.shape[0]
    np.savetxt(f, M, fmt="%.17g", delimiter=",",
               header=f"symmetric N={N} kind={kind}", comments="# ")


def load_matrix(f):
    """Read a matrix written by dump_matrix."""
    return np.loadtxt(f, delimiter=",", comments="#")
