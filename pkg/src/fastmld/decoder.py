"""Decoding pipelines built on the fast vector-matrix product.

Every decoder follows the same three steps: build the observation's
log-likelihood vector, multiply it by the code's binary matrix through the
block factorization, and scan the resulting score vector for the argmax
(or the top of the ranking).  Codeword indices in results are 1-based and
stable: index i always refers to row i-1 of ``code.codewords``.

Ties are exact by default: the tie set holds every index whose score is
``>= max - tie_tolerance`` with tolerance 0, and the reported best index is
the smallest of them.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .channels import (
    ContinuousChannel,
    DiscreteChannel,
    ErasureObservation,
    IsiChannel,
    bipolar_received_vector,
    conditional_probability_vector,
    conditional_probability_vector_isi,
)
from .codes import (
    BipolarCodebook,
    Code,
    CodebookMatrix,
    LinearCode,
    coset_leaders,
    parity_check_from_generator,
    syndrome,
)
from .errors import (
    CapacityExceeded,
    DimensionMismatch,
    InvalidParams,
    ListSizeOutOfRange,
    NonBinaryCode,
    NoZeroDistanceCoset,
    ObservationOutOfAlphabet,
)
from .mailman import (
    MAX_MATRIX_BITS,
    BinaryMatrix,
    OpCount,
    factorize,
    vec_times_bipolar_matrix,
    vec_times_matrix,
    vec_times_matrix_naive,
)


@dataclass(frozen=True)
class DecodeResult:
    """Outcome of a single decode.

    ``implausible`` is set when every codeword scored -inf (the observation
    has probability zero under the whole code); the result then reports
    index 1 with all indices tied, carrying no information.
    """

    best_index: int
    best_codeword: np.ndarray = field(repr=False)
    best_score: float
    ties: tuple[int, ...]
    scores: np.ndarray = field(repr=False)
    implausible: bool = False


@dataclass(frozen=True)
class ListDecodeResult:
    """Top of the ranking: (index, score) pairs, best first."""

    entries: tuple[tuple[int, float], ...]

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(index for index, _ in self.entries)


@dataclass(frozen=True)
class SyndromeResult:
    """Syndrome decode outcome: corrected bits plus the coset-leader row used."""

    codeword: np.ndarray = field(repr=False)
    leader_index: int
    distances: np.ndarray = field(repr=False)


def argmax_scan(scores: np.ndarray, tie_tolerance: float = 0.0) -> tuple[int, tuple[int, ...]]:
    """Best 1-based index and the ascending tie set within tolerance of the max."""
    scores = np.asarray(scores, dtype=np.float64)
    if scores.ndim != 1 or scores.shape[0] < 1:
        msg = "scores must be a non-empty 1-d vector"
        raise InvalidParams(msg)
    if not (np.isfinite(tie_tolerance) and tie_tolerance >= 0.0):
        msg = f"tie tolerance must be finite and >= 0, got {tie_tolerance}"
        raise InvalidParams(msg)
    top = scores.max()
    ties = tuple(int(j) + 1 for j in np.flatnonzero(scores >= top - tie_tolerance))
    return ties[0], ties


def _score_product(
    vector: np.ndarray, codebook: CodebookMatrix, ops: OpCount | None
) -> np.ndarray:
    if codebook.factorization is not None:
        return vec_times_matrix(vector, codebook.factorization, ops=ops)
    return vec_times_matrix_naive(vector, codebook.matrix, ops=ops)


def _finish(code: Code, scores: np.ndarray, tie_tolerance: float) -> DecodeResult:
    best, ties = argmax_scan(scores, tie_tolerance)
    best_score = float(scores[best - 1])
    return DecodeResult(
        best_index=best,
        best_codeword=code.codewords[best - 1],
        best_score=best_score,
        ties=ties,
        scores=scores,
        implausible=bool(np.isneginf(best_score)),
    )


def _check_memoryless(codebook: CodebookMatrix, code: Code, channel) -> None:
    if not isinstance(channel, (DiscreteChannel, ContinuousChannel)):
        msg = f"memoryless decoding cannot use {type(channel).__name__}"
        raise InvalidParams(msg)
    if channel.q != code.q:
        msg = f"channel input alphabet {channel.q} does not match code q={code.q}"
        raise DimensionMismatch(msg)
    if codebook.memory != 0 or codebook.block_size != code.q:
        msg = "codebook was built with memory; use the matching decoder"
        raise DimensionMismatch(msg)
    if codebook.cols != code.size or codebook.rows != code.n * code.q:
        msg = (
            f"codebook of {codebook.rows}x{codebook.cols} does not match a"
            f" {code.size}-codeword code with n={code.n}, q={code.q}"
        )
        raise DimensionMismatch(msg)


def ml_decode(
    codebook: CodebookMatrix,
    code: Code,
    channel,
    received: np.ndarray,
    tie_tolerance: float = 0.0,
    ops: OpCount | None = None,
) -> DecodeResult:
    """Exact maximum-likelihood decode of one observation.

    Scores every codeword's log-likelihood in one vector-matrix product and
    returns the argmax; works for any code, discrete or Gaussian channel.
    """
    _check_memoryless(codebook, code, channel)
    vector = conditional_probability_vector(channel, received)
    if vector.shape[0] != codebook.rows:
        msg = f"observation of length {vector.shape[0] // code.q} does not match n={code.n}"
        raise DimensionMismatch(msg)
    scores = _score_product(vector, codebook, ops)
    return _finish(code, scores, tie_tolerance)


def list_decode(
    codebook: CodebookMatrix,
    code: Code,
    channel,
    received: np.ndarray,
    list_size: int,
    ops: OpCount | None = None,
) -> ListDecodeResult:
    """The ``list_size`` most likely codewords, best first.

    Ranking is by score descending with ascending index breaking ties, kept
    in a bounded min-heap, so the result is always a prefix of the full
    sorted ranking.
    """
    _check_memoryless(codebook, code, channel)
    if not 1 <= list_size <= code.size:
        msg = f"list size {list_size} outside 1..{code.size}"
        raise ListSizeOutOfRange(msg)
    vector = conditional_probability_vector(channel, received)
    if vector.shape[0] != codebook.rows:
        msg = f"observation of length {vector.shape[0] // code.q} does not match n={code.n}"
        raise DimensionMismatch(msg)
    scores = _score_product(vector, codebook, ops)
    heap: list[tuple[float, int]] = []
    for j, score in enumerate(scores):
        item = (float(score), -j)
        if len(heap) < list_size:
            heapq.heappush(heap, item)
        elif item > heap[0]:
            heapq.heapreplace(heap, item)
    ranked = sorted(heap, key=lambda item: (-item[0], -item[1]))
    return ListDecodeResult(entries=tuple((-neg + 1, score) for score, neg in ranked))


def erasure_decode(
    bipolar: BipolarCodebook,
    code: Code,
    observation: ErasureObservation,
    tie_tolerance: float = 0.0,
    ops: OpCount | None = None,
) -> DecodeResult:
    """Decode a binary word with erasures by match counting.

    The +1/-1/0 received vector times the +/-1 codeword matrix scores each
    codeword as (unerased matches) - (unerased mismatches); a codeword
    consistent with every surviving position scores exactly n minus the
    number of erasures, and is unique whenever fewer than d_min positions
    were erased.
    """
    if code.q != 2:
        msg = f"erasure decoding is defined for binary codes, got q={code.q}"
        raise NonBinaryCode(msg)
    if not isinstance(observation, ErasureObservation):
        msg = "erasure decoding needs an ErasureObservation"
        raise InvalidParams(msg)
    if observation.n != code.n or bipolar.n != code.n or bipolar.cols != code.size:
        msg = (
            f"observation length {observation.n} and codebook {bipolar.n}x{bipolar.cols}"
            f" must match n={code.n}, S={code.size}"
        )
        raise DimensionMismatch(msg)
    vector = bipolar_received_vector(observation)
    scores = vec_times_bipolar_matrix(vector, bipolar.matrix, bipolar.factorization, ops=ops)
    return _finish(code, scores, tie_tolerance)


def build_syndrome_matrix(linear: LinearCode) -> tuple[CodebookMatrix, np.ndarray]:
    """Syndrome-distance matrix and coset-leader table for a binary code.

    Column j encodes the syndrome with base-2 index j, one (bit, 1-bit)
    pair per syndrome coordinate, so a received syndrome's encoded vector
    times this matrix counts, for every coset, the coordinates where the
    two syndromes differ.  Returns the 2(n-k) x 2^(n-k) matrix and the
    leader table aligned to the same index.
    """
    if linear.q != 2:
        msg = f"syndrome decoding is defined for binary codes, got q={linear.q}"
        raise NonBinaryCode(msg)
    r = linear.n - linear.k
    cols = 2**r
    if 2 * r * cols > MAX_MATRIX_BITS:
        msg = f"syndrome matrix of {2 * r}x{cols} bits exceeds the cap of {MAX_MATRIX_BITS}"
        raise CapacityExceeded(msg)
    leaders = coset_leaders(linear)
    shifts = np.arange(r - 1, -1, -1, dtype=np.int64)
    bits = (np.arange(cols, dtype=np.int64)[None, :] >> shifts[:, None]) & 1
    dense = np.zeros((2 * r, cols), dtype=np.uint8)
    dense[0::2] = bits
    dense[1::2] = 1 - bits
    matrix = BinaryMatrix.from_dense(dense)
    fact = factorize(matrix) if cols >= 2 else None
    codebook = CodebookMatrix(
        rows=2 * r,
        cols=cols,
        matrix=matrix,
        factorization=fact,
        ones_per_column=r,
        block_size=2,
    )
    return codebook, leaders


def syndrome_decode(
    linear: LinearCode,
    leaders: np.ndarray,
    syndrome_matrix: CodebookMatrix,
    received_bits: np.ndarray,
    ops: OpCount | None = None,
) -> SyndromeResult:
    """Classical syndrome decode with distances through the fast product.

    Encodes the received word's syndrome, multiplies it by the syndrome
    matrix to get its Hamming distance to every coset's syndrome, picks the
    (necessarily unique) zero, and subtracts that coset's leader.
    """
    if linear.q != 2:
        msg = f"syndrome decoding is defined for binary codes, got q={linear.q}"
        raise NonBinaryCode(msg)
    bits = np.asarray(received_bits, dtype=np.int64)
    if bits.shape != (linear.n,):
        msg = f"received word must hold {linear.n} bits"
        raise DimensionMismatch(msg)
    if bits.size and (bits.min() < 0 or bits.max() > 1):
        msg = "received word must be binary (0/1)"
        raise ObservationOutOfAlphabet(msg)
    r = linear.n - linear.k
    if leaders.shape != (2**r, linear.n) or syndrome_matrix.cols != 2**r:
        msg = "leader table and syndrome matrix do not match the code"
        raise DimensionMismatch(msg)
    h = parity_check_from_generator(linear)
    s = syndrome(h, bits, 2)
    vector = np.empty(2 * r, dtype=np.float64)
    vector[0::2] = 1.0 - s
    vector[1::2] = s
    if syndrome_matrix.factorization is not None:
        distances = vec_times_matrix(vector, syndrome_matrix.factorization, ops=ops)
    else:
        distances = vec_times_matrix_naive(vector, syndrome_matrix.matrix, ops=ops)
    leader_index = int(np.argmin(distances))
    if distances[leader_index] != 0.0:
        msg = "no coset syndrome matched the received syndrome exactly"
        raise NoZeroDistanceCoset(msg)
    corrected = (bits + leaders[leader_index]) % 2
    return SyndromeResult(
        codeword=corrected, leader_index=leader_index, distances=distances
    )


def isi_ml_decode(
    codebook: CodebookMatrix,
    code: Code,
    channel: IsiChannel,
    received: np.ndarray,
    tie_tolerance: float = 0.0,
    ops: OpCount | None = None,
) -> DecodeResult:
    """Maximum-likelihood decode over a channel with memory.

    Same product as ``ml_decode`` but the codebook one-hot encodes each
    position's (symbol, predecessors) tuple, so the channel's dependence on
    the last ``memory`` symbols is priced into the matrix.  ``memory=0``
    coincides with ``ml_decode``.
    """
    if not isinstance(channel, IsiChannel):
        msg = f"expected an IsiChannel, got {type(channel).__name__}"
        raise InvalidParams(msg)
    if channel.q != code.q:
        msg = f"channel input alphabet {channel.q} does not match code q={code.q}"
        raise DimensionMismatch(msg)
    if codebook.memory != channel.memory or codebook.initial_symbol != channel.initial_symbol:
        msg = (
            f"codebook (memory={codebook.memory}, initial={codebook.initial_symbol})"
            f" does not match channel (memory={channel.memory},"
            f" initial={channel.initial_symbol})"
        )
        raise DimensionMismatch(msg)
    if codebook.cols != code.size or codebook.rows != code.n * channel.tuple_count:
        msg = (
            f"codebook of {codebook.rows}x{codebook.cols} does not match a"
            f" {code.size}-codeword code with n={code.n} over {channel.tuple_count} tuples"
        )
        raise DimensionMismatch(msg)
    vector = conditional_probability_vector_isi(channel, received)
    if vector.shape[0] != codebook.rows:
        msg = f"observation of length {len(np.atleast_1d(received))} does not match n={code.n}"
        raise DimensionMismatch(msg)
    scores = _score_product(vector, codebook, ops)
    return _finish(code, scores, tie_tolerance)
