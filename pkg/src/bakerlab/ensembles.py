"""Reproducible random sampling: Haar states, circular ensembles, and the
reflection-symmetric map ensemble.

Every sampler takes an :class:`RngStream`, a seeded, addressable random
stream.  Monte-Carlo sweeps give each sample its own stream (see
:meth:`RngStream.offset`), so results are independent of evaluation order
and bit-reproducible across runs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import Bipartition, dagger
from .maps import lambda_basis

__all__ = [
    "EnsembleKind",
    "RngStream",
    "haar_state",
    "product_state",
    "sample_coe",
    "sample_cue",
    "sample_ensemble",
    "sample_symmetric",
]

_U64 = 2**64


@dataclass(frozen=True)
class RngStream:
    """Addressable random stream; ``(master_seed, stream_id)`` fixes every draw.

    Use one stream per Monte-Carlo sample.  Draws inside a single sample
    consume the stream sequentially.
    """

    master_seed: int
    stream_id: int = 0

    def __post_init__(self):
        for label, value in (("master_seed", self.master_seed), ("stream_id", self.stream_id)):
            if not (0 <= value < _U64):
                raise ValueError(f"{label} must fit an unsigned 64-bit integer, got {value}")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(seq))

    def offset(self, k: int) -> "RngStream":
        """The stream ``k`` slots further along, for per-sample derivation."""
        return RngStream(self.master_seed, (self.stream_id + k) % _U64)


class EnsembleKind(enum.Enum):
    """Random-matrix ensembles understood by :func:`sample_ensemble`."""

    CUE = "cue"
    COE = "coe"
    SYMMETRIC = "symmetric"


def _haar_state(gen: np.random.Generator, d: int) -> np.ndarray:
    z = gen.standard_normal(d) + 1j * gen.standard_normal(d)
    return z / np.linalg.norm(z)


def _cue(gen: np.random.Generator, d: int) -> np.ndarray:
    # QR of a complex Ginibre matrix; rescaling R's diagonal phases makes the
    # distribution exactly Haar rather than merely orthonormal.
    z = (gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def _coe(gen: np.random.Generator, d: int) -> np.ndarray:
    v = _cue(gen, d)
    return v @ v.T


def haar_state(d: int, rng: RngStream) -> np.ndarray:
    """A Haar-random pure state on ``d`` levels."""
    if d < 1:
        raise ValueError(f"state dimension must be >= 1, got {d}")
    return _haar_state(rng.generator(), d)


def product_state(part: Bipartition, rng: RngStream) -> np.ndarray:
    """Tensor product of independent Haar states on the two subsystems."""
    gen = rng.generator()
    return np.kron(_haar_state(gen, part.d_a), _haar_state(gen, part.d_b))


def sample_cue(d: int, rng: RngStream) -> np.ndarray:
    """A Haar-distributed (circular unitary ensemble) matrix."""
    if d < 1:
        raise ValueError(f"matrix dimension must be >= 1, got {d}")
    return _cue(rng.generator(), d)


def sample_coe(d: int, rng: RngStream) -> np.ndarray:
    """A circular orthogonal ensemble matrix, V V^T with V Haar; symmetric."""
    if d < 1:
        raise ValueError(f"matrix dimension must be >= 1, got {d}")
    return _coe(rng.generator(), d)


def sample_symmetric(d: int, rng: RngStream) -> np.ndarray:
    """A random reflection-symmetric unitary.

    Two independent COE blocks are drawn for the parity sectors and rotated
    back with :func:`bakerlab.maps.lambda_basis`; the result commutes with
    the reflection by construction and shares the baker map's time-reversal
    and parity structure.
    """
    if d < 2 or d % 2:
        raise ValueError(f"symmetric ensemble needs an even dimension >= 2, got {d}")
    gen = rng.generator()
    half = d // 2
    blocks = np.zeros((d, d), dtype=np.complex128)
    blocks[:half, :half] = _coe(gen, half)
    blocks[half:, half:] = _coe(gen, half)
    lam = lambda_basis(d)
    return lam @ blocks @ dagger(lam)


def sample_ensemble(kind, d: int, rng: RngStream) -> np.ndarray:
    """Draw one matrix from the ensemble named by ``kind``."""
    kind = EnsembleKind(kind)
    if kind is EnsembleKind.CUE:
        return sample_cue(d, rng)
    if kind is EnsembleKind.COE:
        return sample_coe(d, rng)
    if kind is EnsembleKind.SYMMETRIC:
        return sample_symmetric(d, rng)
    raise ValueError(f"unhandled ensemble kind {kind!r}")  # pragma: no cover
