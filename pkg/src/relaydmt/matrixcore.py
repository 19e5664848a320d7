"""Complex matrix primitives: sampling, log-det capacity, eigenvalues.

All capacities in this package reduce to log2 det(I + rho H H^H) for a
complex channel matrix H and a nonnegative power level rho. This module
owns that computation together with the reproducible sampling of
circularly-symmetric complex Gaussian matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractError, DomainError, NumericError, SizeError

# Largest matrix dimension the package accepts. Antenna counts in the
# supported topologies are far below this; the ceiling exists to catch
# accidental dimension blowups (e.g. concatenating in a loop).
MAX_DIM = 64

HERMITIAN_TOL = 1e-10
EIG_CLAMP = -1e-10

_LOG2E = float(np.log2(np.e))


class ComplexMatrix:
    """Immutable complex matrix with validated dimensions.

    Entries are stored row-major as complex128. The wrapped array is
    read-only; use ``.data`` for numpy interop.
    """

    __slots__ = ("data",)

    def __init__(self, entries) -> None:
        arr = np.array(entries, dtype=np.complex128, order="C")
        if arr.ndim != 2:
            raise SizeError(f"expected a 2-d array of entries, got ndim={arr.ndim}")
        rows, cols = arr.shape
        if not (1 <= rows <= MAX_DIM and 1 <= cols <= MAX_DIM):
            raise SizeError(f"matrix dimensions {rows}x{cols} outside 1..{MAX_DIM}")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexMatrix is immutable")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> np.ndarray:
        """Row-major flat view of the entries."""
        return self.data.reshape(-1)

    def __repr__(self) -> str:
        return f"ComplexMatrix({self.rows}x{self.cols})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.data.shape, self.data.tobytes()))


@dataclass(frozen=True)
class RngStream:
    """Addressable random stream: (master_seed, stream_index).

    Streams are counter-based (Philox keyed on the pair), so distinct
    indices give statistically independent streams and the same pair
    always reproduces the same draws, independent of execution order
    or worker count. Trial t of every experiment uses stream_index t.
    """

    master_seed: int
    stream_index: int

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_index"):
            v = getattr(self, name)
            if not 0 <= v < 2**64:
                raise DomainError(f"{name} must be a 64-bit unsigned integer, got {v}")

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        key = np.array([self.master_seed, self.stream_index], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def _draw_cn_block(gen: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """CN(0,1) block: independent real/imag parts with variance 1/2 each."""
    re = gen.standard_normal((rows, cols))
    im = gen.standard_normal((rows, cols))
    return (re + 1j * im) / np.sqrt(2.0)


def sample_gaussian_matrix(rows: int, cols: int, stream: RngStream) -> ComplexMatrix:
    """i.i.d. CN(0,1) matrix, bit-reproducible for a given stream."""
    if not (1 <= rows <= MAX_DIM and 1 <= cols <= MAX_DIM):
        raise SizeError(f"matrix dimensions {rows}x{cols} outside 1..{MAX_DIM}")
    return ComplexMatrix(_draw_cn_block(stream.generator(), rows, cols))


def _chol_log2det(gram: np.ndarray) -> float:
    """log2 det of a Hermitian positive-definite matrix via Cholesky."""
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"Cholesky factorization failed: {exc}") from exc
    diag = np.real(np.diagonal(chol))
    return float(2.0 * np.sum(np.log2(diag)))


def logdet_capacity(h: ComplexMatrix, rho: float) -> float:
    """log2 det(I + rho H H^H) in bits per channel use.

    Computed from the Gram matrix on the smaller side of H (the two
    determinants are equal), factorized by Cholesky.
    """
    if rho < 0:
        raise DomainError(f"power level must be nonnegative, got {rho}")
    a = h.data
    if h.rows > h.cols:
        a = a.conj().T
    gram = np.eye(a.shape[0]) + rho * (a @ a.conj().T)
    return _chol_log2det(gram)


def hermitian_eigenvalues(a: ComplexMatrix) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Tiny negative eigenvalues (>= -1e-10) from rank-deficient Gram
    inputs are clamped to zero; anything more negative is genuine and
    passes through.
    """
    m = a.data
    if a.rows != a.cols:
        raise ContractError(f"Hermitian input must be square, got {a.rows}x{a.cols}")
    if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
        raise ContractError("input is not Hermitian within tolerance 1e-10")
    w = np.linalg.eigvalsh(m)
    w[(w < 0.0) & (w >= EIG_CLAMP)] = 0.0
    return w


def hconcat(blocks: Sequence[ComplexMatrix]) -> ComplexMatrix:
    """Concatenate blocks horizontally; every block must share row count."""
    if not blocks:
        raise SizeError("hconcat needs at least one block")
    rows = blocks[0].rows
    for b in blocks:
        if b.rows != rows:
            raise SizeError(f"row mismatch in hconcat: {b.rows} != {rows}")
    return ComplexMatrix(np.hstack([b.data for b in blocks]))
