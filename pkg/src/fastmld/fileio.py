"""Text file formats and command-line value parsing.

Codebook files: a ``q n S`` header line, then S lines of n space-separated
symbols in {1..q}.  Generator files: a ``q n k`` header, then k rows of
field elements in {0..q-1}.  Channel files hold ``key value`` lines (with
``row`` lines for transition tables); the common kinds also have a compact
``kind:param,...`` command-line form.  Blank lines and ``#`` comments are
ignored everywhere.
"""

from __future__ import annotations

import os

import numpy as np

from .channels import (
    ContinuousChannel,
    DiscreteChannel,
    ErasureChannel,
    ErasureObservation,
    IsiChannel,
)
from .codes import Code, LinearCode
from .errors import InvalidParams, ObservationOutOfAlphabet

CHANNEL_KINDS = ("bsc", "qsc", "dmc", "awgn", "erasure", "isi-dmc")


def _content_lines(path: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = handle.readlines()
    except OSError as exc:
        msg = f"cannot read {path}: {exc}"
        raise InvalidParams(msg) from None
    lines = []
    for line in raw:
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines:
        msg = f"{path}: file holds no content"
        raise InvalidParams(msg)
    return lines


def _ints(text: str, count: int | None, where: str) -> list[int]:
    parts = text.split()
    if count is not None and len(parts) != count:
        msg = f"{where}: expected {count} integers, got {len(parts)}"
        raise InvalidParams(msg)
    try:
        return [int(p) for p in parts]
    except ValueError:
        msg = f"{where}: expected integers, got {text!r}"
        raise InvalidParams(msg) from None


def _floats(text: str, where: str) -> list[float]:
    try:
        return [float(p) for p in text.replace(",", " ").split()]
    except ValueError:
        msg = f"{where}: expected numbers, got {text!r}"
        raise InvalidParams(msg) from None


def read_code_file(path: str) -> Code:
    """Load an explicit codebook: ``q n S`` then S rows of symbols."""
    lines = _content_lines(path)
    q, n, size = _ints(lines[0], 3, f"{path} header")
    if len(lines) - 1 != size:
        msg = f"{path}: header promises {size} codewords, file holds {len(lines) - 1}"
        raise InvalidParams(msg)
    words = [_ints(line, n, f"{path} codeword {i + 1}") for i, line in enumerate(lines[1:])]
    return Code(q=q, n=n, codewords=np.array(words, dtype=np.int64))


def write_code_file(path: str, code: Code) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{code.q} {code.n} {code.size}\n")
        for word in code.codewords:
            handle.write(" ".join(str(int(s)) for s in word) + "\n")


def read_linear_code_file(path: str) -> LinearCode:
    """Load a generator matrix: ``q n k`` then k rows of field elements."""
    lines = _content_lines(path)
    q, n, k = _ints(lines[0], 3, f"{path} header")
    if len(lines) - 1 != k:
        msg = f"{path}: header promises {k} generator rows, file holds {len(lines) - 1}"
        raise InvalidParams(msg)
    rows = [_ints(line, n, f"{path} generator row {i + 1}") for i, line in enumerate(lines[1:])]
    return LinearCode(q=q, n=n, k=k, generator=np.array(rows, dtype=np.int64))


def write_linear_code_file(path: str, linear: LinearCode) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{linear.q} {linear.n} {linear.k}\n")
        for row in linear.generator:
            handle.write(" ".join(str(int(s)) for s in row) + "\n")


def _parse_keyed(lines: list[str], path: str) -> tuple[dict[str, str], list[list[float]]]:
    values: dict[str, str] = {}
    rows: list[list[float]] = []
    for line in lines:
        key, _, rest = line.partition(" ")
        if key == "row":
            rows.append(_floats(rest, f"{path} table row {len(rows) + 1}"))
        elif not rest.strip():
            msg = f"{path}: line {line!r} holds a key with no value"
            raise InvalidParams(msg)
        else:
            values[key] = rest.strip()
    return values, rows


def _require(values: dict[str, str], key: str, path: str) -> str:
    if key not in values:
        msg = f"{path}: missing required field {key!r}"
        raise InvalidParams(msg)
    return values[key]


def read_channel_file(path: str):
    """Load a channel description from ``key value`` lines."""
    lines = _content_lines(path)
    values, rows = _parse_keyed(lines, path)
    kind = _require(values, "kind", path)
    if kind not in CHANNEL_KINDS:
        msg = f"{path}: unknown channel kind {kind!r} (expected one of {CHANNEL_KINDS})"
        raise InvalidParams(msg)
    if kind == "bsc":
        return DiscreteChannel.bsc(float(_require(values, "p", path)))
    if kind == "qsc":
        return DiscreteChannel.symmetric(
            int(_require(values, "q", path)), float(_require(values, "p", path))
        )
    if kind == "dmc":
        if not rows:
            msg = f"{path}: dmc needs transition table 'row' lines"
            raise InvalidParams(msg)
        return DiscreteChannel.from_probabilities(np.array(rows, dtype=np.float64))
    if kind == "awgn":
        sigma = float(_require(values, "sigma", path))
        points = None
        if "map" in values:
            points = _floats(values["map"], f"{path} map")
        return ContinuousChannel.awgn(sigma, points)
    if kind == "erasure":
        return ErasureChannel(erasure_probability=float(_require(values, "p", path)))
    q = int(_require(values, "q", path))
    memory = int(_require(values, "memory", path))
    initial = int(values.get("initial_symbol", "1"))
    if not rows:
        msg = f"{path}: isi-dmc needs transition table 'row' lines"
        raise InvalidParams(msg)
    return IsiChannel.from_probabilities(
        q, memory, np.array(rows, dtype=np.float64), initial_symbol=initial
    )


def parse_channel_spec(spec: str):
    """Resolve ``kind:params`` shorthand, or fall back to a channel file.

    Shorthands: ``bsc:P``, ``qsc:Q,P``, ``awgn:SIGMA[,POINT,...]``,
    ``erasure:P``.  Table-driven kinds (dmc, isi-dmc) need a file.
    """
    kind, sep, rest = spec.partition(":")
    if sep and kind in CHANNEL_KINDS and not os.path.exists(spec):
        parts = _floats(rest, f"channel spec {spec!r}") if rest else []
        if kind == "bsc" and len(parts) == 1:
            return DiscreteChannel.bsc(parts[0])
        if kind == "qsc" and len(parts) == 2:
            return DiscreteChannel.symmetric(int(parts[0]), parts[1])
        if kind == "awgn" and len(parts) >= 1:
            points = parts[1:] if len(parts) > 1 else None
            return ContinuousChannel.awgn(parts[0], points)
        if kind == "erasure" and len(parts) == 1:
            return ErasureChannel(erasure_probability=parts[0])
        msg = f"channel spec {spec!r} is malformed; {kind} tables need a channel file"
        raise InvalidParams(msg)
    return read_channel_file(spec)


def parse_received_word(text: str, channel, q: int):
    """Parse one received word as typed on the command line or per file line.

    Continuous channels take comma/space-separated reals; the erasure
    channel takes a 0/1/e string; discrete channels take either a compact
    digit string or space-separated symbols.  Binary digit strings are read
    as bits 0/1 and mapped to symbols 1/2.
    """
    text = text.strip()
    if not text:
        msg = "empty received word"
        raise InvalidParams(msg)
    if isinstance(channel, ContinuousChannel):
        return np.array(_floats(text, f"received word {text!r}"), dtype=np.float64)
    if isinstance(channel, ErasureChannel):
        return ErasureObservation.from_string(text.replace(" ", ""))
    compact = text.replace(" ", "").replace(",", "")
    if not compact.isdigit():
        msg = f"received word {text!r} must hold digits"
        raise ObservationOutOfAlphabet(msg)
    separated = " " in text or "," in text
    if separated:
        symbols = np.array(_ints(text.replace(",", " "), None, f"received word {text!r}"))
    else:
        symbols = np.array([int(ch) for ch in compact], dtype=np.int64)
    # Binary words are typed as bits and shifted to symbols 1/2; anything
    # with a digit above 1 is taken as literal 1-based symbols.
    if q == 2 and symbols.size and symbols.max() <= 1:
        symbols = symbols + 1
    return symbols


def read_observations(path: str, channel, q: int) -> list:
    """One received word per content line of ``path``."""
    return [parse_received_word(line, channel, q) for line in _content_lines(path)]
