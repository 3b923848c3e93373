import math

import numpy as np
import pytest

import fastmld.mailman as mailman
from fastmld import (
    Code,
    DiscreteChannel,
    ErasureObservation,
    IsiChannel,
    esd_decode,
    esd_decode_isi,
    min_distance_decode,
)

from helpers import all_words, hamming_code, toy_code, toy_channel
from fastmld import enumerate_codewords


def test_esd_toy_case():
    result = esd_decode(toy_code(), toy_channel(), np.array([1, 1, 1]))
    a, b = math.log(0.9), math.log(0.1)
    np.testing.assert_array_equal(result.scores, [2 * a + b, 2 * a + b, 2 * a + b, 3 * b])
    assert result.best_index == 1
    assert result.ties == (1, 2, 3)


def test_esd_never_touches_the_fast_kernels(monkeypatch):
    """The reference decoder must not share arithmetic with the fast path."""

    def explode(*args, **kwargs):
        raise AssertionError("oracle called a fast kernel")

    for name in ("vec_times_matrix", "vec_times_matrix_naive", "vec_times_bipolar_matrix",
                 "vec_times_universal", "factorize"):
        monkeypatch.setattr(mailman, name, explode)
    result = esd_decode(toy_code(), toy_channel(), np.array([2, 1, 1]))
    assert result.best_index == 3
    _, ties, _ = min_distance_decode(toy_code(), np.array([2, 1, 1]))
    assert ties == (3,)
    table = np.log(np.array([[0.8, 0.2], [0.3, 0.7], [0.5, 0.5], [0.9, 0.1]]))
    chan = IsiChannel(q=2, memory=1, output_alphabet_size=2, log_transition=table)
    code = Code(q=2, n=2, codewords=np.array([[1, 1], [2, 2]]))
    esd_decode_isi(code, chan, np.array([1, 2]))


def test_oracle_module_never_mentions_the_kernel():
    import pathlib

    import fastmld.oracle as oracle

    source = pathlib.Path(oracle.__file__).read_text()
    assert "mailman" not in source


def test_min_distance_toy_case():
    best, ties, distances = min_distance_decode(toy_code(), np.array([1, 1, 1]))
    assert best == 1
    assert ties == (1, 2, 3)
    np.testing.assert_array_equal(distances, [1, 1, 1, 3])


def test_min_distance_with_erasures_ignores_erased_positions():
    code = enumerate_codewords(hamming_code())
    obs = ErasureObservation.from_string("e0e0e0e")
    best, ties, distances = min_distance_decode(code, obs)
    # Distances count only the four unerased positions.
    assert distances.min() == 0
    assert 1 in ties  # the all-zero codeword matches everywhere it can


def test_esd_and_min_distance_agree_on_bsc():
    """On a BSC with p < 1/2, likelihood order is Hamming-distance order."""
    code = toy_code()
    chan = DiscreteChannel.bsc(0.2)
    for word in all_words(2, 3):
        likelihood_ties = esd_decode(code, chan, word).ties
        _, distance_ties, _ = min_distance_decode(code, word)
        assert likelihood_ties == distance_ties


def test_ranking_equivalent_checks_score_profiles():
    from fastmld import ranking_equivalent

    scores = np.array([5.0, 3.0, 3.0, 1.0, -np.inf, -np.inf])
    assert ranking_equivalent(scores, (1, 2, 3), (1, 3, 2))  # tie class permuted
    assert ranking_equivalent(scores, (1, 2), (1, 2))
    assert not ranking_equivalent(scores, (1, 4), (1, 2))  # different score at rank 2
    assert not ranking_equivalent(scores, (1,), (1, 2))  # length mismatch
    assert ranking_equivalent(scores, (5,), (6,))  # both impossible


def test_esd_isi_scores_by_direct_computation():
    rng = np.random.default_rng(30)
    probs = rng.dirichlet(np.ones(2), size=8)
    chan = IsiChannel.from_probabilities(2, 2, probs)
    code = Code(q=2, n=3, codewords=np.array([[1, 2, 1], [2, 1, 2]]))
    y = np.array([2, 1, 2])
    result = esd_decode_isi(code, chan, y)
    # Hand-rolled: walk the tuple stream for each codeword.
    expected = []
    for codeword in code.codewords:
        bits = (codeword - 1).tolist()
        history = [0, 0]
        total = 0.0
        for i, bit in enumerate(bits):
            idx = bit * 4 + history[-1] * 2 + history[-2]
            total += chan.log_transition[idx, y[i] - 1]
            history.append(bit)
        expected.append(total)
    np.testing.assert_allclose(result.scores, expected, rtol=1e-15)
