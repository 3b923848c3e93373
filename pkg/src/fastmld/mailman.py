"""Binary vector-matrix products via the Mailman decomposition.

A binary matrix with S columns is cut into row blocks of height
``h = floor(log2 S)``.  Inside one block every column is one of the 2^h
possible bit patterns, so the block equals ``U_h @ P`` where the universal
matrix ``U_h`` holds all 2^h patterns as columns and ``P`` merely records
which pattern each column carries.  A row vector times the block therefore
costs one sweep that tabulates the vector against every pattern of ``U_h``
(2^h - 1 additions, by a doubling recursion) plus one table lookup per
column -- no multiplications at all.  Summed over ``ceil(m/h)`` blocks the
additions stay below ``4*m*S/log2(S) + 2*S + m``, against ``m*S``
multiply-adds for the dense product.

Inputs may contain ``-inf`` (log of a zero probability).  Blocks whose
vector segment is not entirely finite are scored by a masked fallback that
only ever adds selected entries, so a zero-weight position never touches a
``-inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CapacityExceeded,
    DegenerateMatrix,
    DimensionMismatch,
    HeightOutOfRange,
    InvalidParams,
)

#: Largest supported universal-matrix height; 2^30 pattern sums is already
#: far past the point where the naive product would be cheaper.
MAX_BLOCK_HEIGHT = 30

#: Cap on rows*cols of a stored binary matrix (bits, not bytes).
MAX_MATRIX_BITS = 2**31

# Column chunk budget (dense cells) used when unpacking big matrices.
_DENSE_CHUNK_CELLS = 1 << 26


@dataclass
class OpCount:
    """Running tally of scalar-equivalent arithmetic.

    The kernels are vectorized, so counts are the scalar operations the
    algorithm defines, not numpy internals: every ``x += y`` on a length-k
    array tallies k additions, and masked sums tally one addition per
    selected entry.
    """

    multiplications: int = 0
    additions: int = 0

    @property
    def total(self) -> int:
        return self.multiplications + self.additions

    def merge(self, other: "OpCount") -> None:
        self.multiplications += other.multiplications
        self.additions += other.additions


@dataclass(frozen=True)
class BinaryMatrix:
    """Bit-packed 0/1 matrix; ``bits`` packs each column's rows MSB-first."""

    rows: int
    cols: int
    bits: np.ndarray = field(repr=False)

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "BinaryMatrix":
        dense = np.asarray(dense)
        if dense.ndim != 2:
            msg = f"expected a 2-d array, got ndim={dense.ndim}"
            raise InvalidParams(msg)
        rows, cols = dense.shape
        if cols < 1:
            msg = "a binary matrix needs at least one column"
            raise InvalidParams(msg)
        if rows * cols > MAX_MATRIX_BITS:
            msg = f"matrix of {rows}x{cols} bits exceeds the cap of {MAX_MATRIX_BITS}"
            raise CapacityExceeded(msg)
        if dense.size and not ((dense == 0) | (dense == 1)).all():
            msg = "matrix entries must be 0 or 1"
            raise InvalidParams(msg)
        packed = np.packbits(dense.astype(np.uint8, copy=False), axis=0)
        return cls(rows=rows, cols=cols, bits=packed)

    def to_dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        return np.unpackbits(self.bits, axis=0, count=self.rows)

    def count_ones(self) -> int:
        return int(self.to_dense().sum())


@dataclass(frozen=True)
class MailmanBlock:
    """One row block: its height, first row, and each column's pattern index.

    The pattern index of a column is the integer whose binary expansion
    (most-significant bit = first row of the block) equals the column's bits
    within the block.
    """

    height: int
    row_offset: int
    correspondence: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class MailmanFactorization:
    """Block decomposition of a binary matrix for the fast product."""

    rows: int
    cols: int
    blocks: tuple[MailmanBlock, ...]

    def reconstruct(self) -> BinaryMatrix:
        """Rebuild the exact matrix from the pattern indices."""
        dense = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for block in self.blocks:
            dense[block.row_offset : block.row_offset + block.height] = _pattern_bits(
                block.correspondence, block.height
            )
        return BinaryMatrix.from_dense(dense)


def _pattern_bits(correspondence: np.ndarray, height: int) -> np.ndarray:
    """Expand pattern indices back into a (height, cols) bit array."""
    shifts = np.arange(height - 1, -1, -1, dtype=np.int64)
    return ((correspondence[None, :] >> shifts[:, None]) & 1).astype(np.uint8)


def _block_heights(rows: int, cols: int) -> list[int]:
    h = max(1, int(math.floor(math.log2(cols))))
    h = min(h, MAX_BLOCK_HEIGHT)
    heights = [h] * (rows // h)
    if rows % h:
        heights.append(rows % h)
    return heights


def factorize(matrix: BinaryMatrix) -> MailmanFactorization:
    """Split ``matrix`` into row blocks and record each column's pattern.

    Raises ``DegenerateMatrix`` for fewer than two columns; callers fall
    back to the naive product in that case.
    """
    if matrix.cols < 2:
        msg = f"cannot factorize a matrix with {matrix.cols} column(s)"
        raise DegenerateMatrix(msg)
    if matrix.rows == 0:
        return MailmanFactorization(rows=0, cols=matrix.cols, blocks=())
    blocks: list[MailmanBlock] = []
    offset = 0
    chunk = max(1, _DENSE_CHUNK_CELLS // max(1, matrix.rows))
    heights = _block_heights(matrix.rows, matrix.cols)
    patterns = [np.empty(matrix.cols, dtype=np.int64) for _ in heights]
    for start in range(0, matrix.cols, chunk):
        stop = min(start + chunk, matrix.cols)
        dense = np.unpackbits(matrix.bits[:, start:stop], axis=0, count=matrix.rows)
        offset = 0
        for i, h in enumerate(heights):
            weights = 1 << np.arange(h - 1, -1, -1, dtype=np.int64)
            patterns[i][start:stop] = weights @ dense[offset : offset + h]
            offset += h
    offset = 0
    for i, h in enumerate(heights):
        blocks.append(MailmanBlock(height=h, row_offset=offset, correspondence=patterns[i]))
        offset += h
    return MailmanFactorization(rows=matrix.rows, cols=matrix.cols, blocks=tuple(blocks))


def vec_times_universal(weights: np.ndarray) -> np.ndarray:
    """Row vector times the universal matrix of height ``len(weights)``.

    Column j of the universal matrix is the binary expansion of j with the
    most-significant bit in the first row, so output[j] is the sum of the
    weights at j's set bits.  Built by doubling: 2^h - 1 additions total.
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.ndim != 1:
        msg = "weights must be a 1-d vector"
        raise InvalidParams(msg)
    h = weights.shape[0]
    if not 1 <= h <= MAX_BLOCK_HEIGHT:
        msg = f"universal height {h} outside [1, {MAX_BLOCK_HEIGHT}]"
        raise HeightOutOfRange(msg)
    out = np.zeros(1, dtype=np.float64)
    for w in weights[::-1]:
        out = np.concatenate([out, out + w])
    return out


def vec_times_matrix(
    vector: np.ndarray,
    factorization: MailmanFactorization,
    ops: OpCount | None = None,
) -> np.ndarray:
    """Compute ``vector @ M`` from the factorization of M, without multiplying.

    Per block: tabulate the vector segment against every pattern
    (2^h - 1 additions), then add each column's tabulated entry into the
    output (cols additions).  A block whose segment contains non-finite
    entries is instead scored by a masked sum over its set bits only.
    """
    vector = np.asarray(vector, dtype=np.float64)
    if vector.ndim != 1 or vector.shape[0] != factorization.rows:
        msg = (
            f"vector of length {vector.shape[0] if vector.ndim == 1 else vector.shape}"
            f" does not match {factorization.rows} matrix rows"
        )
        raise DimensionMismatch(msg)
    out = np.zeros(factorization.cols, dtype=np.float64)
    for block in factorization.blocks:
        segment = vector[block.row_offset : block.row_offset + block.height]
        if np.isfinite(segment).all():
            table = vec_times_universal(segment)
            out += table[block.correspondence]
            if ops is not None:
                ops.additions += (1 << block.height) - 1 + factorization.cols
        else:
            bits = _pattern_bits(block.correspondence, block.height)
            out += np.where(bits.astype(bool), segment[:, None], 0.0).sum(axis=0)
            if ops is not None:
                ops.additions += int(bits.sum()) + factorization.cols
    return out


def vec_times_matrix_naive(
    vector: np.ndarray,
    matrix: BinaryMatrix,
    ops: OpCount | None = None,
) -> np.ndarray:
    """Reference product: per column, sum the vector entries at set bits.

    Zero-weight positions are skipped outright, so ``-inf`` entries there
    are never touched.  Tallies one addition per set bit.
    """
    vector = np.asarray(vector, dtype=np.float64)
    if vector.ndim != 1 or vector.shape[0] != matrix.rows:
        msg = (
            f"vector of length {vector.shape[0] if vector.ndim == 1 else vector.shape}"
            f" does not match {matrix.rows} matrix rows"
        )
        raise DimensionMismatch(msg)
    if matrix.rows == 0:
        return np.zeros(matrix.cols, dtype=np.float64)
    out = np.empty(matrix.cols, dtype=np.float64)
    chunk = max(1, _DENSE_CHUNK_CELLS // max(1, matrix.rows))
    for start in range(0, matrix.cols, chunk):
        stop = min(start + chunk, matrix.cols)
        dense = np.unpackbits(matrix.bits[:, start:stop], axis=0, count=matrix.rows)
        mask = dense.astype(bool)
        out[start:stop] = np.where(mask, vector[:, None], 0.0).sum(axis=0)
        if ops is not None:
            ops.additions += int(dense.sum())
    return out


def vec_times_bipolar_matrix(
    vector: np.ndarray,
    matrix: BinaryMatrix,
    factorization: MailmanFactorization | None = None,
    ops: OpCount | None = None,
) -> np.ndarray:
    """Row vector times the +/-1 matrix ``2*B - J`` given its 0/1 bits ``B``.

    Uses ``v @ (2B - J) = 2*(v @ B) - sum(v)`` so the signed product still
    runs through the binary kernel.  The vector must be finite.
    """
    vector = np.asarray(vector, dtype=np.float64)
    if not np.isfinite(vector).all():
        msg = "bipolar products require a finite vector"
        raise InvalidParams(msg)
    if factorization is None:
        product = vec_times_matrix_naive(vector, matrix, ops=ops)
    else:
        product = vec_times_matrix(vector, factorization, ops=ops)
    if ops is not None:
        ops.multiplications += matrix.cols
        ops.additions += matrix.cols + max(0, vector.shape[0] - 1)
    return 2.0 * product - vector.sum()


def op_count(factorization: MailmanFactorization) -> OpCount:
    """Exact operation count of ``vec_times_matrix`` on all-finite input."""
    additions = 0
    for block in factorization.blocks:
        additions += (1 << block.height) - 1 + factorization.cols
    return OpCount(multiplications=0, additions=additions)


def addition_bound(rows: int, cols: int) -> float:
    """Addition budget the fast product is guaranteed to stay under."""
    if cols < 2:
        msg = "the bound is defined for at least two columns"
        raise InvalidParams(msg)
    return 4.0 * rows * cols / math.log2(cols) + 2.0 * cols + rows
