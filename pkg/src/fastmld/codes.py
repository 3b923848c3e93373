"""Block codes and their binary codebook matrices.

A length-n code over the alphabet {1..q} is scored against a received word
through its codebook matrix: column j stacks, for every position, the
one-hot encoding of codeword j's symbol there, giving an (n*q) x S binary
matrix with exactly one 1 per position block.  The same construction over
symbol tuples (a sliding window of the current symbol plus L predecessors)
extends the matrix to channels with memory.

Symbols are 1-based at every public boundary; all internal index
arithmetic shifts to 0-based immediately on entry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CapacityExceeded,
    InvalidParams,
    NonBinaryCode,
    RankDeficient,
    SymbolOutOfRange,
)
from .mailman import (
    MAX_MATRIX_BITS,
    BinaryMatrix,
    MailmanFactorization,
    factorize,
)

#: Cap on the number of codewords an enumeration may materialize.
MAX_CODEWORDS = 2**24


@dataclass(frozen=True)
class Code:
    """An arbitrary block code: S distinct codewords of n symbols in {1..q}."""

    q: int
    n: int
    codewords: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.q < 2:
            msg = f"alphabet size q={self.q} must be at least 2"
            raise InvalidParams(msg)
        if self.n < 1:
            msg = f"block length n={self.n} must be at least 1"
            raise InvalidParams(msg)
        words = np.asarray(self.codewords, dtype=np.int64)
        if words.ndim != 2 or words.shape[1] != self.n:
            msg = f"codewords must be a (S, {self.n}) array"
            raise InvalidParams(msg)
        if words.shape[0] < 1:
            msg = "a code needs at least one codeword"
            raise InvalidParams(msg)
        if words.shape[0] > MAX_CODEWORDS:
            msg = f"{words.shape[0]} codewords exceed the cap of {MAX_CODEWORDS}"
            raise CapacityExceeded(msg)
        if words.min() < 1 or words.max() > self.q:
            msg = f"symbols must lie in 1..{self.q}"
            raise SymbolOutOfRange(msg)
        if np.unique(words, axis=0).shape[0] != words.shape[0]:
            msg = "codewords must be distinct"
            raise InvalidParams(msg)
        words.setflags(write=False)
        object.__setattr__(self, "codewords", words)

    @property
    def size(self) -> int:
        """Number of codewords S."""
        return int(self.codewords.shape[0])


@dataclass(frozen=True)
class LinearCode:
    """A [n, k] linear code over the prime field F_q, given by its generator.

    Generator entries are field elements 0..q-1 (not 1-based symbols); the
    rows must be linearly independent.
    """

    q: int
    n: int
    k: int
    generator: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not _is_prime(self.q):
            msg = f"q={self.q} is not prime; linear codes need a prime field"
            raise InvalidParams(msg)
        if not 1 <= self.k <= self.n:
            msg = f"need 1 <= k <= n, got k={self.k}, n={self.n}"
            raise InvalidParams(msg)
        gen = np.asarray(self.generator, dtype=np.int64)
        if gen.shape != (self.k, self.n):
            msg = f"generator must be ({self.k}, {self.n}), got {gen.shape}"
            raise InvalidParams(msg)
        if gen.min() < 0 or gen.max() >= self.q:
            msg = f"generator entries must lie in 0..{self.q - 1}"
            raise SymbolOutOfRange(msg)
        if _rank_mod_q(gen, self.q) != self.k:
            msg = "generator rows are linearly dependent"
            raise RankDeficient(msg)
        gen.setflags(write=False)
        object.__setattr__(self, "generator", gen)


@dataclass(frozen=True)
class CodebookMatrix:
    """A code's binary scoring matrix plus its block factorization.

    ``block_size`` is the one-hot width per position (q, or q^(L+1) when L
    memory taps are baked in); every column carries exactly
    ``ones_per_column`` ones, one per position block.  ``factorization`` is
    None only for single-codeword matrices, which cannot be factorized.
    """

    rows: int
    cols: int
    matrix: BinaryMatrix
    factorization: MailmanFactorization | None
    ones_per_column: int
    block_size: int
    memory: int = 0
    initial_symbol: int = 1


@dataclass(frozen=True)
class BipolarCodebook:
    """Bit matrix of a binary code for +/-1 scoring (erasure decoding)."""

    n: int
    cols: int
    matrix: BinaryMatrix
    factorization: MailmanFactorization | None


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


def _row_reduce_mod_q(matrix: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_q; returns (rref, pivot columns)."""
    m = matrix.astype(np.int64) % q
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if m[i, c] % q), None)
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        m[r] = (m[r] * pow(int(m[r, c]), q - 2, q)) % q
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % q
        pivots.append(c)
        r += 1
    return m, pivots


def _rank_mod_q(matrix: np.ndarray, q: int) -> int:
    return len(_row_reduce_mod_q(matrix, q)[1])


def validate_symbols(q: int, word: np.ndarray) -> np.ndarray:
    """Check a 1-based symbol vector and return it as int64."""
    word = np.asarray(word, dtype=np.int64)
    if word.ndim != 1:
        msg = "a word must be a 1-d vector"
        raise InvalidParams(msg)
    if word.size and (word.min() < 1 or word.max() > q):
        msg = f"symbols must lie in 1..{q}"
        raise SymbolOutOfRange(msg)
    return word


def enumerate_codewords(linear: LinearCode) -> Code:
    """All q^k codewords of a linear code, as 1-based symbols.

    Messages run in lexicographic order (first coordinate most
    significant), so codeword j encodes the base-q expansion of j.
    """
    q, n, k = linear.q, linear.n, linear.k
    size = q**k
    if size > MAX_CODEWORDS:
        msg = f"q^k = {size} codewords exceed the cap of {MAX_CODEWORDS}"
        raise CapacityExceeded(msg)
    indices = np.arange(size, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    messages = (indices[:, None] // powers[None, :]) % q
    words = (messages @ linear.generator) % q
    return Code(q=q, n=n, codewords=words + 1)


def random_linear_code(q: int, n: int, k: int, seed: int) -> LinearCode:
    """Draw generator rows uniformly until they are linearly independent."""
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        gen = rng.integers(0, q, size=(k, n), dtype=np.int64)
        if _rank_mod_q(gen, q) == k:
            return LinearCode(q=q, n=n, k=k, generator=gen)
    msg = f"no full-rank {k}x{n} generator over F_{q} found"
    raise InvalidParams(msg)


def incidence_vector(q: int, codeword: np.ndarray) -> np.ndarray:
    """Stacked one-hot encoding of a codeword: rows i*q + (c_i - 1) are 1."""
    word = validate_symbols(q, codeword)
    out = np.zeros(word.shape[0] * q, dtype=np.uint8)
    out[np.arange(word.shape[0]) * q + (word - 1)] = 1
    return out


def tuple_indices(
    q: int, memory: int, codeword: np.ndarray, initial_symbol: int = 1
) -> np.ndarray:
    """Base-q index of each position's (current symbol, L predecessors) tuple.

    The current symbol is the most significant digit; positions before the
    start of the word read the initial symbol.
    """
    if memory < 0:
        msg = f"memory must be >= 0, got {memory}"
        raise InvalidParams(msg)
    if not 1 <= initial_symbol <= q:
        msg = f"initial symbol {initial_symbol} must lie in 1..{q}"
        raise SymbolOutOfRange(msg)
    word = validate_symbols(q, codeword)
    padded = np.concatenate(
        [np.full(memory, initial_symbol - 1, dtype=np.int64), word - 1]
    )
    windows = np.lib.stride_tricks.sliding_window_view(padded, memory + 1)
    powers = q ** np.arange(memory + 1, dtype=np.int64)
    return windows @ powers


def incidence_vector_isi(
    q: int, memory: int, codeword: np.ndarray, initial_symbol: int = 1
) -> np.ndarray:
    """One-hot encoding over symbol tuples; block width q^(memory+1)."""
    idx = tuple_indices(q, memory, codeword, initial_symbol)
    width = q ** (memory + 1)
    out = np.zeros(idx.shape[0] * width, dtype=np.uint8)
    out[np.arange(idx.shape[0]) * width + idx] = 1
    return out


def _assemble_codebook(
    code: Code, per_position: np.ndarray, block_size: int, memory: int, initial: int
) -> CodebookMatrix:
    """Build the bit matrix whose column j one-hot encodes codeword j."""
    n, size = code.n, code.size
    rows = n * block_size
    if rows * size > MAX_MATRIX_BITS:
        msg = f"codebook of {rows}x{size} bits exceeds the cap of {MAX_MATRIX_BITS}"
        raise CapacityExceeded(msg)
    dense = np.zeros((rows, size), dtype=np.uint8)
    row_idx = np.arange(n)[:, None] * block_size + per_position
    dense[row_idx, np.arange(size)[None, :]] = 1
    matrix = BinaryMatrix.from_dense(dense)
    fact = factorize(matrix) if size >= 2 else None
    return CodebookMatrix(
        rows=rows,
        cols=size,
        matrix=matrix,
        factorization=fact,
        ones_per_column=n,
        block_size=block_size,
        memory=memory,
        initial_symbol=initial,
    )


def build_codebook_matrix(code: Code) -> CodebookMatrix:
    """Codebook matrix for memoryless scoring: (n*q) x S, one 1 per position."""
    per_position = code.codewords.T - 1
    return _assemble_codebook(code, per_position, code.q, memory=0, initial=1)


def build_codebook_matrix_isi(
    code: Code, memory: int, initial_symbol: int = 1
) -> CodebookMatrix:
    """Codebook matrix over symbol tuples for channels with ``memory`` taps."""
    idx = np.stack(
        [
            tuple_indices(code.q, memory, word, initial_symbol)
            for word in code.codewords
        ],
        axis=1,
    )
    width = code.q ** (memory + 1)
    return _assemble_codebook(code, idx, width, memory=memory, initial=initial_symbol)


def build_bipolar_codebook(code: Code) -> BipolarCodebook:
    """Bit matrix (n x S) of a binary code: entry 1 where the codeword bit is 1."""
    if code.q != 2:
        msg = f"bipolar codebooks are defined for binary codes, got q={code.q}"
        raise NonBinaryCode(msg)
    dense = (code.codewords.T == 2).astype(np.uint8)
    matrix = BinaryMatrix.from_dense(dense)
    fact = factorize(matrix) if code.size >= 2 else None
    return BipolarCodebook(n=code.n, cols=code.size, matrix=matrix, factorization=fact)


def parity_check_from_generator(linear: LinearCode) -> np.ndarray:
    """An (n-k) x n parity-check matrix H with G @ H.T = 0 over F_q.

    Row-reduces the generator (permuting columns where pivots are missing),
    reads off the standard-form check matrix, and undoes the permutation.
    """
    q, n, k = linear.q, linear.n, linear.k
    rref, pivots = _row_reduce_mod_q(linear.generator, q)
    if len(pivots) != k:
        msg = "generator rows are linearly dependent"
        raise RankDeficient(msg)
    others = [c for c in range(n) if c not in pivots]
    h = np.zeros((n - k, n), dtype=np.int64)
    h[:, pivots] = (-rref[:, others].T) % q
    h[:, others] = np.eye(n - k, dtype=np.int64)
    return h


def syndrome(parity_check: np.ndarray, word: np.ndarray, q: int) -> np.ndarray:
    """Syndrome H @ word over F_q; ``word`` holds field elements 0..q-1."""
    word = np.asarray(word, dtype=np.int64)
    if word.shape != (parity_check.shape[1],):
        msg = f"word length {word.shape} does not match H columns {parity_check.shape[1]}"
        raise InvalidParams(msg)
    if word.size and (word.min() < 0 or word.max() >= q):
        msg = f"field elements must lie in 0..{q - 1}"
        raise SymbolOutOfRange(msg)
    return (parity_check @ word) % q


def _weight_class(n: int, q: int, weight: int):
    """All weight-w words over F_q in ascending lexicographic order."""
    words = []
    for support in itertools.combinations(range(n), weight):
        for values in itertools.product(range(1, q), repeat=weight):
            word = [0] * n
            for pos, val in zip(support, values):
                word[pos] = val
            words.append(tuple(word))
    words.sort()
    return words


def coset_leaders(linear: LinearCode) -> np.ndarray:
    """Minimum-weight error pattern for every syndrome, indexed by syndrome.

    Row j is the leader whose syndrome, read as a base-q integer (first
    syndrome coordinate most significant), equals j.  Candidates are
    scanned in non-decreasing weight and, within a weight, ascending
    lexicographic order, so the recorded leader is the lexicographically
    smallest among minimum-weight patterns in its coset.
    """
    q, n, k = linear.q, linear.n, linear.k
    r = n - k
    count = q**r
    if count > MAX_CODEWORDS:
        msg = f"q^(n-k) = {count} cosets exceed the cap of {MAX_CODEWORDS}"
        raise CapacityExceeded(msg)
    h = parity_check_from_generator(linear)
    powers = q ** np.arange(r - 1, -1, -1, dtype=np.int64)
    leaders = np.zeros((count, n), dtype=np.int64)
    seen = np.zeros(count, dtype=bool)
    found = 0
    for weight in range(n + 1):
        for word in _weight_class(n, q, weight):
            vec = np.array(word, dtype=np.int64)
            idx = int(powers @ ((h @ vec) % q))
            if not seen[idx]:
                seen[idx] = True
                leaders[idx] = vec
                found += 1
                if found == count:
                    return leaders
    return leaders
