"""Shared fixtures-by-hand for the test suite."""

import numpy as np

from fastmld import Code, DiscreteChannel, LinearCode

# Systematic [7,4] single-error-correcting generator.
HAMMING_G = np.array(
    [
        [1, 0, 0, 0, 1, 1, 0],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]
)

REP3_G = np.array([[1, 1, 1]])


def hamming_code() -> LinearCode:
    return LinearCode(q=2, n=7, k=4, generator=HAMMING_G)


def rep3_code() -> LinearCode:
    return LinearCode(q=2, n=3, k=1, generator=REP3_G)


def toy_code() -> Code:
    """The four-codeword binary toy code used across the worked checks."""
    return Code(
        q=2,
        n=3,
        codewords=np.array([[1, 1, 2], [1, 2, 1], [2, 1, 1], [2, 2, 2]]),
    )


def toy_channel() -> DiscreteChannel:
    return DiscreteChannel.bsc(0.1)


def all_words(q: int, n: int) -> np.ndarray:
    """Every length-n word over symbols 1..q, one per row, ascending."""
    grids = np.meshgrid(*[np.arange(1, q + 1)] * n, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)
