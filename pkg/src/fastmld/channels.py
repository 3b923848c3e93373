"""Channel models and their per-observation log-likelihood vectors.

Decoding needs, for a received word y, the length n*q vector whose block i
lists log P(y_i | x = 1..q).  Multiplying it by the codebook matrix yields
every codeword's log-likelihood at once, so everything a channel must
provide is that vector plus (for simulation) a sampler.

Zero transition probabilities are legal and become -inf log entries; the
product kernels only ever add selected entries, so -inf is propagated but
never multiplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .codes import tuple_indices, validate_symbols
from .errors import (
    InvalidParams,
    ObservationOutOfAlphabet,
    SymbolOutOfRange,
)

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

#: Marker for an erased position inside an ErasureObservation.
ERASED = -1


def _log_table(probabilities: np.ndarray, rows: int, cols: int) -> np.ndarray:
    table = np.asarray(probabilities, dtype=np.float64)
    if table.shape != (rows, cols):
        msg = f"transition table must be ({rows}, {cols}), got {table.shape}"
        raise InvalidParams(msg)
    if np.isnan(table).any() or (table < 0).any():
        msg = "transition probabilities must be non-negative and not NaN"
        raise InvalidParams(msg)
    sums = table.sum(axis=1)
    if not np.allclose(sums, 1.0, rtol=0.0, atol=1e-9):
        msg = "each transition row must sum to 1 within 1e-9"
        raise InvalidParams(msg)
    with np.errstate(divide="ignore"):
        logs = np.log(table)
    logs.setflags(write=False)
    return logs


@dataclass(frozen=True)
class DiscreteChannel:
    """Memoryless channel over finite alphabets, stored as log P(y|x).

    ``log_transition[s - 1, y - 1]`` is the log-probability of receiving y
    when symbol s was sent; rows exponentiate to probability 1.
    """

    q: int
    output_alphabet_size: int
    log_transition: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.q < 2 or self.output_alphabet_size < 1:
            msg = "need q >= 2 input symbols and at least one output symbol"
            raise InvalidParams(msg)
        table = np.asarray(self.log_transition, dtype=np.float64)
        if table.shape != (self.q, self.output_alphabet_size):
            msg = (
                f"log_transition must be ({self.q}, {self.output_alphabet_size}),"
                f" got {table.shape}"
            )
            raise InvalidParams(msg)
        if np.isnan(table).any() or (table == np.inf).any():
            msg = "log probabilities must be real or -inf"
            raise InvalidParams(msg)
        if not np.allclose(np.exp(table).sum(axis=1), 1.0, rtol=0.0, atol=1e-9):
            msg = "each transition row must exponentiate to probability 1"
            raise InvalidParams(msg)
        table.setflags(write=False)
        object.__setattr__(self, "log_transition", table)

    @classmethod
    def from_probabilities(cls, probabilities: np.ndarray) -> "DiscreteChannel":
        table = np.asarray(probabilities, dtype=np.float64)
        if table.ndim != 2:
            msg = "transition table must be 2-d"
            raise InvalidParams(msg)
        q, out = table.shape
        return cls(q=q, output_alphabet_size=out, log_transition=_log_table(table, q, out))

    @classmethod
    def bsc(cls, crossover: float) -> "DiscreteChannel":
        """Binary symmetric channel with flip probability ``crossover``."""
        if not 0.0 <= crossover <= 1.0:
            msg = f"crossover probability {crossover} outside [0, 1]"
            raise InvalidParams(msg)
        p = float(crossover)
        return cls.from_probabilities([[1.0 - p, p], [p, 1.0 - p]])

    @classmethod
    def symmetric(cls, q: int, error: float) -> "DiscreteChannel":
        """q-ary symmetric channel: wrong symbols share probability ``error``."""
        if q < 2:
            msg = f"q={q} must be at least 2"
            raise InvalidParams(msg)
        if not 0.0 <= error <= 1.0:
            msg = f"error probability {error} outside [0, 1]"
            raise InvalidParams(msg)
        table = np.full((q, q), error / (q - 1), dtype=np.float64)
        np.fill_diagonal(table, 1.0 - error)
        return cls.from_probabilities(table)


@dataclass(frozen=True)
class ContinuousChannel:
    """Additive white Gaussian noise around a real constellation point.

    Symbol s is transmitted as ``constellation[s - 1]`` and received as that
    value plus N(0, sigma^2) noise.
    """

    sigma: float
    constellation: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            msg = f"sigma must be positive and finite, got {self.sigma}"
            raise InvalidParams(msg)
        points = np.asarray(self.constellation, dtype=np.float64)
        if points.ndim != 1 or points.shape[0] < 2:
            msg = "constellation must map at least two symbols to real points"
            raise InvalidParams(msg)
        if not np.isfinite(points).all():
            msg = "constellation points must be finite"
            raise InvalidParams(msg)
        points.setflags(write=False)
        object.__setattr__(self, "constellation", points)

    @property
    def q(self) -> int:
        return int(self.constellation.shape[0])

    @classmethod
    def awgn(cls, sigma: float, constellation=None) -> "ContinuousChannel":
        """Gaussian channel; defaults to the antipodal map {1 -> +1, 2 -> -1}."""
        if constellation is None:
            constellation = (1.0, -1.0)
        return cls(sigma=float(sigma), constellation=np.asarray(constellation))

    def log_density(self, received: np.ndarray) -> np.ndarray:
        """Per-position densities: entry (i, s-1) is log f(y_i | symbol s)."""
        y = np.asarray(received, dtype=np.float64)
        if y.ndim != 1:
            msg = "received values must be a 1-d vector"
            raise InvalidParams(msg)
        if not np.isfinite(y).all():
            msg = "received values must be finite"
            raise ObservationOutOfAlphabet(msg)
        diff = y[:, None] - self.constellation[None, :]
        return -math.log(self.sigma) - _LOG_SQRT_2PI - diff**2 / (2.0 * self.sigma**2)


@dataclass(frozen=True)
class ErasureChannel:
    """Binary erasure channel: each bit survives or is erased independently."""

    erasure_probability: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.erasure_probability <= 1.0:
            msg = f"erasure probability {self.erasure_probability} outside [0, 1]"
            raise InvalidParams(msg)

    @property
    def q(self) -> int:
        return 2


@dataclass(frozen=True)
class ErasureObservation:
    """Received binary word with erasures: entries 0, 1, or ERASED (-1)."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.int64)
        if values.ndim != 1 or values.shape[0] < 1:
            msg = "an observation must be a non-empty 1-d vector"
            raise InvalidParams(msg)
        if not np.isin(values, (0, 1, ERASED)).all():
            msg = "erasure observations hold only 0, 1, or the erasure marker"
            raise ObservationOutOfAlphabet(msg)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def erasure_count(self) -> int:
        return int((self.values == ERASED).sum())

    @classmethod
    def from_string(cls, text: str) -> "ErasureObservation":
        mapping = {"0": 0, "1": 1, "e": ERASED, "E": ERASED}
        try:
            values = [mapping[ch] for ch in text.strip()]
        except KeyError as exc:
            msg = f"erasure words use characters 0/1/e, got {exc.args[0]!r}"
            raise ObservationOutOfAlphabet(msg) from None
        return cls(values=np.array(values, dtype=np.int64))

    def __str__(self) -> str:
        return "".join("e" if v == ERASED else str(int(v)) for v in self.values)


@dataclass(frozen=True)
class IsiChannel:
    """Discrete channel whose output depends on the last ``memory`` symbols too.

    ``log_transition`` has one row per (current symbol, predecessors) tuple,
    indexed base-q with the current symbol most significant; positions
    before the first symbol read ``initial_symbol``.  ``memory=0`` reduces
    to a memoryless channel.
    """

    q: int
    memory: int
    output_alphabet_size: int
    log_transition: np.ndarray = field(repr=False)
    initial_symbol: int = 1

    def __post_init__(self) -> None:
        if self.q < 2 or self.output_alphabet_size < 1:
            msg = "need q >= 2 input symbols and at least one output symbol"
            raise InvalidParams(msg)
        if self.memory < 0:
            msg = f"memory must be >= 0, got {self.memory}"
            raise InvalidParams(msg)
        if not 1 <= self.initial_symbol <= self.q:
            msg = f"initial symbol {self.initial_symbol} must lie in 1..{self.q}"
            raise SymbolOutOfRange(msg)
        rows = self.q ** (self.memory + 1)
        table = np.asarray(self.log_transition, dtype=np.float64)
        if table.shape != (rows, self.output_alphabet_size):
            msg = (
                f"log_transition must be ({rows}, {self.output_alphabet_size}),"
                f" got {table.shape}"
            )
            raise InvalidParams(msg)
        if np.isnan(table).any() or (table == np.inf).any():
            msg = "log probabilities must be real or -inf"
            raise InvalidParams(msg)
        if not np.allclose(np.exp(table).sum(axis=1), 1.0, rtol=0.0, atol=1e-9):
            msg = "each transition row must exponentiate to probability 1"
            raise InvalidParams(msg)
        table.setflags(write=False)
        object.__setattr__(self, "log_transition", table)

    @property
    def tuple_count(self) -> int:
        return int(self.q ** (self.memory + 1))

    @classmethod
    def from_probabilities(
        cls, q: int, memory: int, probabilities: np.ndarray, initial_symbol: int = 1
    ) -> "IsiChannel":
        rows = q ** (memory + 1)
        table = np.asarray(probabilities, dtype=np.float64)
        if table.ndim != 2:
            msg = "transition table must be 2-d"
            raise InvalidParams(msg)
        logs = _log_table(table, rows, table.shape[1])
        return cls(
            q=q,
            memory=memory,
            output_alphabet_size=table.shape[1],
            log_transition=logs,
            initial_symbol=initial_symbol,
        )


def _check_discrete_observation(out_size: int, received: np.ndarray) -> np.ndarray:
    y = np.asarray(received, dtype=np.int64)
    if y.ndim != 1 or y.shape[0] < 1:
        msg = "an observation must be a non-empty 1-d vector"
        raise InvalidParams(msg)
    if y.min() < 1 or y.max() > out_size:
        msg = f"received symbols must lie in 1..{out_size}"
        raise ObservationOutOfAlphabet(msg)
    return y


def conditional_probability_vector(channel, received: np.ndarray) -> np.ndarray:
    """Length n*q log-likelihood vector: block i holds log P(y_i | x = 1..q)."""
    if isinstance(channel, DiscreteChannel):
        y = _check_discrete_observation(channel.output_alphabet_size, received)
        return channel.log_transition[:, y - 1].T.ravel()
    if isinstance(channel, ContinuousChannel):
        return channel.log_density(received).ravel()
    msg = f"no likelihood vector for channel type {type(channel).__name__}"
    raise InvalidParams(msg)


def conditional_probability_vector_isi(
    channel: IsiChannel, received: np.ndarray
) -> np.ndarray:
    """Length n*q^(L+1) vector: block i holds log P(y_i | every symbol tuple)."""
    if not isinstance(channel, IsiChannel):
        msg = f"expected an IsiChannel, got {type(channel).__name__}"
        raise InvalidParams(msg)
    y = _check_discrete_observation(channel.output_alphabet_size, received)
    return channel.log_transition[:, y - 1].T.ravel()


def bipolar_received_vector(observation: ErasureObservation) -> np.ndarray:
    """Map a received word with erasures to +1/-1/0 (1 -> +1, 0 -> -1, e -> 0)."""
    values = observation.values
    return np.where(values == ERASED, 0.0, 2.0 * values - 1.0)


def _sample_categorical(
    log_rows: np.ndarray, row_index: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    probs = np.exp(log_rows[row_index])
    cumulative = np.cumsum(probs, axis=1)
    draws = rng.random((row_index.shape[0], 1))
    picks = (draws > cumulative).sum(axis=1)
    return np.minimum(picks, log_rows.shape[1] - 1) + 1


def sample_channel(channel, codeword: np.ndarray, rng) -> np.ndarray | ErasureObservation:
    """Draw one received word for ``codeword``; deterministic per generator state.

    ``rng`` may be a seed or a numpy Generator.  Returns 1-based output
    symbols for discrete channels, floats for continuous ones, and an
    ErasureObservation for the erasure channel.
    """
    rng = np.random.default_rng(rng)
    if isinstance(channel, DiscreteChannel):
        word = validate_symbols(channel.q, codeword)
        return _sample_categorical(channel.log_transition, word - 1, rng)
    if isinstance(channel, ContinuousChannel):
        word = validate_symbols(channel.q, codeword)
        points = channel.constellation[word - 1]
        return points + channel.sigma * rng.standard_normal(word.shape[0])
    if isinstance(channel, ErasureChannel):
        word = validate_symbols(2, codeword)
        bits = word - 1
        erased = rng.random(word.shape[0]) < channel.erasure_probability
        return ErasureObservation(values=np.where(erased, ERASED, bits))
    if isinstance(channel, IsiChannel):
        idx = tuple_indices(channel.q, channel.memory, codeword, channel.initial_symbol)
        return _sample_categorical(channel.log_transition, idx, rng)
    msg = f"cannot sample from channel type {type(channel).__name__}"
    raise InvalidParams(msg)
