"""Monte Carlo frame-error simulation and kernel benchmarking.

A simulation draws codewords uniformly, pushes them through the channel,
decodes, and counts a trial as an error when the transmitted codeword is
not in the decoder's tie set (for syndrome decoding: when the corrected
word differs).  Trials partition across logical workers, each with a seed
derived from the master seed, and tallies merge by plain addition, so a
config reproduces its report byte for byte; wall-clock timing is reported
separately and excluded from that contract.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from statistics import median

import numpy as np

from .channels import (
    DiscreteChannel,
    ErasureChannel,
    IsiChannel,
    sample_channel,
)
from .codes import (
    Code,
    LinearCode,
    build_bipolar_codebook,
    build_codebook_matrix,
    build_codebook_matrix_isi,
    enumerate_codewords,
    random_linear_code,
)
from .decoder import (
    build_syndrome_matrix,
    erasure_decode,
    isi_ml_decode,
    list_decode,
    ml_decode,
    syndrome_decode,
)
from .errors import InvalidParams
from .mailman import (
    BinaryMatrix,
    OpCount,
    addition_bound,
    factorize,
    op_count,
    vec_times_matrix,
    vec_times_matrix_naive,
)
from .oracle import esd_decode, esd_decode_isi, min_distance_decode, ranking_equivalent

VARIANTS = ("ml", "list", "erasure", "syndrome", "isi")

_ERROR_RULES = {
    "ml": "transmitted_not_in_ties",
    "list": "transmitted_not_in_list",
    "erasure": "transmitted_not_in_ties",
    "syndrome": "corrected_word_differs",
    "isi": "transmitted_not_in_ties",
}


@dataclass(frozen=True)
class RandomCodeSpec:
    """Recipe for a reproducible random linear code."""

    q: int
    n: int
    k: int
    seed: int


@dataclass(frozen=True)
class SimConfig:
    """Everything a Monte Carlo run depends on.

    ``code_source`` is a Code, a LinearCode, or a RandomCodeSpec; the
    syndrome variant needs one of the latter two.  ``analytic_fer`` is an
    optional externally known reference echoed into the report.
    """

    code_source: Code | LinearCode | RandomCodeSpec
    channel: object
    trials: int
    seed: int
    variant: str = "ml"
    list_size: int = 1
    tie_tolerance: float = 0.0
    oracle_check: bool = False
    analytic_fer: float | None = None
    workers: int = 1


@dataclass(frozen=True)
class SimReport:
    """Simulation outcome; ``canonical_text`` is the reproducible part."""

    variant: str
    trials: int
    seed: int
    workers: int
    error_rule: str
    word_errors: int
    frame_error_rate: float
    symbol_error_rate: float
    tie_events: int
    analytic_fer: float | None
    oracle_checked: bool
    oracle_disagreements: int
    mean_decode_additions: float
    wall_time_per_decode: float

    def _fields(self) -> list[tuple[str, str]]:
        return [
            ("variant", self.variant),
            ("trials", str(self.trials)),
            ("seed", str(self.seed)),
            ("workers", str(self.workers)),
            ("error_rule", self.error_rule),
            ("word_errors", str(self.word_errors)),
            ("frame_error_rate", repr(self.frame_error_rate)),
            ("symbol_error_rate", repr(self.symbol_error_rate)),
            ("tie_events", str(self.tie_events)),
            ("analytic_fer", "none" if self.analytic_fer is None else repr(self.analytic_fer)),
            ("oracle_checked", str(int(self.oracle_checked))),
            ("oracle_disagreements", str(self.oracle_disagreements)),
            ("mean_decode_additions", repr(self.mean_decode_additions)),
        ]

    def canonical_text(self) -> str:
        """Deterministic report body: identical configs give identical bytes."""
        return "".join(f"{name} {value}\n" for name, value in self._fields())

    def render(self) -> str:
        """Canonical body plus an informational (non-reproducible) timing line."""
        timing = f"# wall_time_per_decode_us {1e6 * self.wall_time_per_decode:.3f} (informational)\n"
        return self.canonical_text() + timing

    def csv_header(self) -> str:
        return ",".join(name for name, _ in self._fields())

    def csv_row(self) -> str:
        return ",".join(value for _, value in self._fields())

    def to_json(self) -> str:
        """Machine-readable form of the deterministic fields."""
        payload = {
            "variant": self.variant,
            "trials": self.trials,
            "seed": self.seed,
            "workers": self.workers,
            "error_rule": self.error_rule,
            "word_errors": self.word_errors,
            "frame_error_rate": self.frame_error_rate,
            "symbol_error_rate": self.symbol_error_rate,
            "tie_events": self.tie_events,
            "analytic_fer": self.analytic_fer,
            "oracle_checked": self.oracle_checked,
            "oracle_disagreements": self.oracle_disagreements,
            "mean_decode_additions": self.mean_decode_additions,
        }
        return json.dumps(payload)


@dataclass(frozen=True)
class BenchRow:
    """One benchmark point comparing the fast product to the naive one."""

    rows: int
    cols: int
    naive_ops: int
    mailman_additions: int
    ratio: float
    naive_seconds: float
    mailman_seconds: float


@dataclass
class _Tally:
    """Per-worker counters; merge is plain addition, so order never matters."""

    word_errors: int = 0
    symbol_errors: int = 0
    tie_events: int = 0
    disagreements: int = 0
    decode_seconds: float = 0.0

    def __post_init__(self):
        self.ops = OpCount()

    def merge(self, other: _Tally) -> None:
        self.word_errors += other.word_errors
        self.symbol_errors += other.symbol_errors
        self.tie_events += other.tie_events
        self.disagreements += other.disagreements
        self.decode_seconds += other.decode_seconds
        self.ops.merge(other.ops)


def _resolve_code(source) -> tuple[Code, LinearCode | None]:
    if isinstance(source, Code):
        return source, None
    if isinstance(source, LinearCode):
        return enumerate_codewords(source), source
    if isinstance(source, RandomCodeSpec):
        linear = random_linear_code(source.q, source.n, source.k, source.seed)
        return enumerate_codewords(linear), linear
    msg = f"cannot build a code from {type(source).__name__}"
    raise InvalidParams(msg)


def run_monte_carlo(config: SimConfig) -> SimReport:
    """Run ``config.trials`` decode trials and tally error rates.

    With ``oracle_check`` every trial is re-decoded by brute force and tie
    sets are compared (for syndrome decoding, membership of the corrected
    word in the minimum-distance tie set).
    """
    if config.variant not in VARIANTS:
        msg = f"variant must be one of {VARIANTS}, got {config.variant!r}"
        raise InvalidParams(msg)
    if config.trials < 1:
        msg = f"need at least one trial, got {config.trials}"
        raise InvalidParams(msg)
    if config.workers < 1:
        msg = f"need at least one worker, got {config.workers}"
        raise InvalidParams(msg)
    code, linear = _resolve_code(config.code_source)
    channel = config.channel
    variant = config.variant

    if variant in ("ml", "list"):
        structure = build_codebook_matrix(code)
    elif variant == "erasure":
        if not isinstance(channel, ErasureChannel):
            msg = "erasure simulation needs an ErasureChannel"
            raise InvalidParams(msg)
        structure = build_bipolar_codebook(code)
    elif variant == "syndrome":
        if linear is None:
            msg = "syndrome simulation needs a linear code"
            raise InvalidParams(msg)
        if not isinstance(channel, DiscreteChannel) or channel.q != 2:
            msg = "syndrome simulation needs a binary discrete channel"
            raise InvalidParams(msg)
        structure = build_syndrome_matrix(linear)
    else:
        if not isinstance(channel, IsiChannel):
            msg = "isi simulation needs an IsiChannel"
            raise InvalidParams(msg)
        structure = build_codebook_matrix_isi(code, channel.memory, channel.initial_symbol)

    # Each worker owns a contiguous trial share and an independent child
    # seed; results merge by addition, so the split count only changes the
    # sample stream, never the accounting.
    children = np.random.SeedSequence(config.seed).spawn(config.workers)
    base, extra = divmod(config.trials, config.workers)
    total = _Tally()
    for worker, child in enumerate(children):
        share = base + (1 if worker < extra else 0)
        if share == 0:
            continue
        rng = np.random.default_rng(child)
        total.merge(_run_trials(config, code, linear, structure, share, rng))

    return SimReport(
        variant=variant,
        trials=config.trials,
        seed=config.seed,
        workers=config.workers,
        error_rule=_ERROR_RULES[variant],
        word_errors=total.word_errors,
        frame_error_rate=total.word_errors / config.trials,
        symbol_error_rate=total.symbol_errors / (config.trials * code.n),
        tie_events=total.tie_events,
        analytic_fer=config.analytic_fer,
        oracle_checked=config.oracle_check,
        oracle_disagreements=total.disagreements,
        mean_decode_additions=total.ops.additions / config.trials,
        wall_time_per_decode=total.decode_seconds / config.trials,
    )


def _run_trials(config: SimConfig, code, linear, structure, trials: int, rng) -> _Tally:
    """One worker's share of the trial loop."""
    variant = config.variant
    channel = config.channel
    tally = _Tally()
    if variant == "syndrome":
        syndrome_matrix, leaders = structure
    for _ in range(trials):
        tx = int(rng.integers(code.size))
        word = code.codewords[tx]
        observation = sample_channel(channel, word, rng)
        listed_indices: tuple[int, ...] | None = None
        start = time.perf_counter()
        if variant == "ml":
            result = ml_decode(structure, code, channel, observation, config.tie_tolerance, tally.ops)
            ties = result.ties
            hit = (tx + 1) in ties
            decoded = result.best_codeword
            tally.tie_events += len(ties) > 1
        elif variant == "list":
            listed = list_decode(structure, code, channel, observation, config.list_size, tally.ops)
            listed_indices = listed.indices
            ties = listed_indices
            hit = (tx + 1) in listed_indices
            decoded = code.codewords[listed_indices[0] - 1]
        elif variant == "erasure":
            result = erasure_decode(structure, code, observation, config.tie_tolerance, tally.ops)
            ties = result.ties
            hit = (tx + 1) in ties
            decoded = result.best_codeword
            tally.tie_events += len(ties) > 1
        elif variant == "syndrome":
            outcome = syndrome_decode(linear, leaders, syndrome_matrix, observation - 1, tally.ops)
            decoded = outcome.codeword + 1
            ties = ()
            hit = bool((decoded == word).all())
        else:
            result = isi_ml_decode(structure, code, channel, observation, config.tie_tolerance, tally.ops)
            ties = result.ties
            hit = (tx + 1) in ties
            decoded = result.best_codeword
            tally.tie_events += len(ties) > 1
        tally.decode_seconds += time.perf_counter() - start
        if not hit:
            tally.word_errors += 1
        tally.symbol_errors += int((decoded != word).sum())
        if config.oracle_check:
            tally.disagreements += _oracle_disagrees(
                variant, code, channel, observation, config, ties, listed_indices, decoded
            )
    return tally


def _oracle_disagrees(
    variant, code, channel, observation, config, ties, listed_indices, decoded
) -> int:
    """Return 1 when the brute-force reference disagrees with the fast path."""
    if variant in ("ml", "isi"):
        decode = esd_decode_isi if variant == "isi" else esd_decode
        reference = decode(code, channel, observation, config.tie_tolerance)
        return int(reference.ties != ties)
    if variant == "list":
        reference = esd_decode(code, channel, observation, config.tie_tolerance)
        order = np.lexsort((np.arange(code.size), -reference.scores))
        expected = tuple(int(j) + 1 for j in order[: config.list_size])
        return int(not ranking_equivalent(reference.scores, listed_indices, expected))
    if variant == "erasure":
        _, reference_ties, _ = min_distance_decode(code, observation)
        return int(reference_ties != ties)
    _, reference_ties, _ = min_distance_decode(code, np.asarray(observation, dtype=np.int64))
    match = (code.codewords == np.asarray(decoded)[None, :]).all(axis=1)
    decoded_index = int(np.flatnonzero(match)[0]) + 1
    return int(decoded_index not in reference_ties)


def bench_multiply(
    rows_list,
    cols_list,
    repetitions: int = 3,
    seed: int = 0,
    density: float = 0.5,
) -> list[BenchRow]:
    """Time and count both product paths on random matrices.

    For every (rows, cols) pair: draws a random binary matrix and a normal
    vector, checks the two products agree to 1e-12 relative, and records
    instrumented operation counts plus median wall times.  The fast path's
    additions are verified against their guaranteed budget.
    """
    if repetitions < 1:
        msg = f"need at least one repetition, got {repetitions}"
        raise InvalidParams(msg)
    rng = np.random.default_rng(seed)
    out: list[BenchRow] = []
    for rows in rows_list:
        for cols in cols_list:
            dense = (rng.random((rows, cols)) < density).astype(np.uint8)
            matrix = BinaryMatrix.from_dense(dense)
            vector = rng.standard_normal(rows)
            fact = factorize(matrix)

            naive_ops = OpCount()
            fast_ops = OpCount()
            reference = vec_times_matrix_naive(vector, matrix, ops=naive_ops)
            fast = vec_times_matrix(vector, fact, ops=fast_ops)
            scale = np.maximum(np.abs(reference), 1.0)
            if (np.abs(fast - reference) > 1e-12 * scale).any():
                msg = f"product paths disagree beyond 1e-12 at {rows}x{cols}"
                raise AssertionError(msg)
            if fast_ops.additions > addition_bound(rows, cols):
                msg = f"addition budget exceeded at {rows}x{cols}"
                raise AssertionError(msg)
            if fast_ops.additions != op_count(fact).additions:
                msg = f"instrumented additions disagree with the predicted count at {rows}x{cols}"
                raise AssertionError(msg)

            naive_times = []
            fast_times = []
            for _ in range(repetitions):
                start = time.perf_counter()
                vec_times_matrix_naive(vector, matrix)
                naive_times.append(time.perf_counter() - start)
                start = time.perf_counter()
                vec_times_matrix(vector, fact)
                fast_times.append(time.perf_counter() - start)

            out.append(
                BenchRow(
                    rows=rows,
                    cols=cols,
                    naive_ops=naive_ops.total,
                    mailman_additions=fast_ops.additions,
                    ratio=naive_ops.total / fast_ops.additions,
                    naive_seconds=median(naive_times),
                    mailman_seconds=median(fast_times),
                )
            )
    return out
