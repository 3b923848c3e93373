import math

import numpy as np
import pytest

from fastmld import (
    Code,
    ContinuousChannel,
    DimensionMismatch,
    DiscreteChannel,
    ErasureObservation,
    InvalidParams,
    IsiChannel,
    LinearCode,
    ListSizeOutOfRange,
    NonBinaryCode,
    NoZeroDistanceCoset,
    OpCount,
    argmax_scan,
    build_bipolar_codebook,
    build_codebook_matrix,
    build_codebook_matrix_isi,
    build_syndrome_matrix,
    enumerate_codewords,
    erasure_decode,
    esd_decode,
    isi_ml_decode,
    list_decode,
    ml_decode,
    op_count,
    syndrome_decode,
)

from helpers import hamming_code, rep3_code, toy_code, toy_channel


def test_argmax_scan_basics():
    best, ties = argmax_scan(np.array([1.0, 3.0, 3.0, 2.0]))
    assert best == 2
    assert ties == (2, 3)


def test_argmax_scan_all_equal():
    best, ties = argmax_scan(np.zeros(5))
    assert best == 1
    assert ties == (1, 2, 3, 4, 5)


def test_argmax_scan_tolerance_widens_ties():
    scores = np.array([0.0, -0.5, -1.5])
    assert argmax_scan(scores)[1] == (1,)
    assert argmax_scan(scores, tie_tolerance=0.5)[1] == (1, 2)
    assert argmax_scan(scores, tie_tolerance=2.0)[1] == (1, 2, 3)


def test_argmax_scan_validation():
    with pytest.raises(InvalidParams):
        argmax_scan(np.zeros(0))
    with pytest.raises(InvalidParams):
        argmax_scan(np.zeros((2, 2)))
    with pytest.raises(InvalidParams):
        argmax_scan(np.zeros(3), tie_tolerance=-1.0)


def test_ml_decode_toy_case_exact():
    code = toy_code()
    result = ml_decode(build_codebook_matrix(code), code, toy_channel(), np.array([1, 1, 1]))
    a, b = math.log(0.9), math.log(0.1)
    np.testing.assert_array_equal(result.scores, [2 * a + b, 2 * a + b, 2 * a + b, 3 * b])
    assert result.best_index == 1
    assert result.ties == (1, 2, 3)
    np.testing.assert_array_equal(result.best_codeword, [1, 1, 2])
    assert result.best_score == 2 * a + b
    assert not result.implausible


def test_ml_decode_counts_operations():
    code = toy_code()
    codebook = build_codebook_matrix(code)
    ops = OpCount()
    ml_decode(codebook, code, toy_channel(), np.array([2, 1, 2]), ops=ops)
    assert ops.additions == op_count(codebook.factorization).additions
    assert ops.multiplications == 0


def test_ml_decode_channel_code_mismatch():
    code = toy_code()
    codebook = build_codebook_matrix(code)
    with pytest.raises(DimensionMismatch):
        ml_decode(codebook, code, DiscreteChannel.symmetric(3, 0.1), np.array([1, 1, 1]))
    with pytest.raises(DimensionMismatch):
        ml_decode(codebook, code, toy_channel(), np.array([1, 1]))


def test_ml_decode_impossible_observation_flagged():
    # A channel that never outputs symbol 2 from any input makes every
    # codeword score -inf for an observation containing 2.
    probs = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    chan = DiscreteChannel.from_probabilities(probs)
    code = Code(q=2, n=2, codewords=np.array([[1, 1], [2, 2]]))
    codebook = build_codebook_matrix(code)
    result = ml_decode(codebook, code, chan, np.array([2, 2]))
    assert result.implausible
    assert result.best_index == 1
    assert np.isneginf(result.scores).all()


def test_ml_decode_partial_minus_infinity():
    probs = np.array([[0.9, 0.1, 0.0], [0.0, 0.1, 0.9]])
    chan = DiscreteChannel.from_probabilities(probs)
    code = Code(q=2, n=2, codewords=np.array([[1, 1], [1, 2], [2, 2]]))
    codebook = build_codebook_matrix(code)
    result = ml_decode(codebook, code, chan, np.array([1, 3]))
    # Only codeword (1,2) explains "clean 1 then strong 2".
    assert result.ties == (2,)
    assert np.isneginf(result.scores[0])
    assert np.isneginf(result.scores[2])
    assert not result.implausible
    reference = esd_decode(code, chan, np.array([1, 3]))
    np.testing.assert_array_equal(result.scores, reference.scores)


def test_ml_decode_soft_channel():
    code = toy_code()
    codebook = build_codebook_matrix(code)
    chan = ContinuousChannel.awgn(0.8)
    rng = np.random.default_rng(21)
    for _ in range(50):
        y = rng.standard_normal(3)
        fast = ml_decode(codebook, code, chan, y)
        slow = esd_decode(code, chan, y)
        assert fast.ties == slow.ties


def test_list_decode_full_ranking():
    code = toy_code()
    codebook = build_codebook_matrix(code)
    y = np.array([1, 2, 1])
    listed = list_decode(codebook, code, toy_channel(), y, list_size=4)
    scores = esd_decode(code, toy_channel(), y).scores
    order = np.lexsort((np.arange(4), -scores))
    assert listed.indices == tuple(int(j) + 1 for j in order)
    # Scores ride along with their index.
    for index, score in listed.entries:
        assert score == scores[index - 1]


def test_list_decode_prefix_property():
    code = toy_code()
    codebook = build_codebook_matrix(code)
    chan = ContinuousChannel.awgn(1.0)
    rng = np.random.default_rng(22)
    for _ in range(25):
        y = rng.standard_normal(3)
        lists = {ell: list_decode(codebook, code, chan, y, ell).indices for ell in (1, 2, 4)}
        assert lists[2][:1] == lists[1]
        assert lists[4][:2] == lists[2]


def test_list_decode_tie_rule_prefers_low_index():
    code = toy_code()
    codebook = build_codebook_matrix(code)
    listed = list_decode(codebook, code, toy_channel(), np.array([1, 1, 1]), list_size=3)
    # Three equal scores: ranking must come out 1, 2, 3.
    assert listed.indices == (1, 2, 3)


def test_list_decode_size_range():
    code = toy_code()
    codebook = build_codebook_matrix(code)
    for bad in (0, 5, -1):
        with pytest.raises(ListSizeOutOfRange):
            list_decode(codebook, code, toy_channel(), np.array([1, 1, 1]), bad)


def test_erasure_decode_unique_recovery():
    code = enumerate_codewords(rep3_code())
    bipolar = build_bipolar_codebook(code)
    obs = ErasureObservation.from_string("1e1")
    result = erasure_decode(bipolar, code, obs)
    assert result.ties == (2,)
    assert result.best_score == 2.0  # unerased positions minus twice the mismatches
    np.testing.assert_array_equal(result.best_codeword, [2, 2, 2])


def test_erasure_decode_all_erased_ties_everything():
    code = enumerate_codewords(rep3_code())
    bipolar = build_bipolar_codebook(code)
    result = erasure_decode(bipolar, code, ErasureObservation.from_string("eee"))
    assert result.ties == (1, 2)
    assert result.best_score == 0.0


def test_erasure_decode_score_identity():
    """Score equals unerased count minus twice the unerased mismatches."""
    code = enumerate_codewords(hamming_code())
    bipolar = build_bipolar_codebook(code)
    rng = np.random.default_rng(23)
    for _ in range(40):
        values = rng.integers(0, 2, size=7)
        values[rng.random(7) < 0.4] = -1
        obs = ErasureObservation(values=values)
        result = erasure_decode(bipolar, code, obs)
        keep = values >= 0
        bits = code.codewords - 1
        mismatches = ((bits[:, keep] != values[keep][None, :])).sum(axis=1)
        expected = keep.sum() - 2.0 * mismatches
        np.testing.assert_array_equal(result.scores, expected)


def test_erasure_decode_requires_binary_code():
    code = Code(q=3, n=2, codewords=np.array([[1, 1], [2, 3]]))
    with pytest.raises(NonBinaryCode):
        build_bipolar_codebook(code)


def test_erasure_decode_checks_length():
    code = enumerate_codewords(rep3_code())
    bipolar = build_bipolar_codebook(code)
    with pytest.raises(DimensionMismatch):
        erasure_decode(bipolar, code, ErasureObservation.from_string("1e"))


def test_syndrome_matrix_repetition_code():
    linear = rep3_code()
    syndrome_matrix, leaders = build_syndrome_matrix(linear)
    assert (syndrome_matrix.rows, syndrome_matrix.cols) == (4, 4)
    expected = np.array(
        [
            [0, 0, 1, 1],
            [1, 1, 0, 0],
            [0, 1, 0, 1],
            [1, 0, 1, 0],
        ],
        dtype=np.uint8,
    )
    np.testing.assert_array_equal(syndrome_matrix.matrix.to_dense(), expected)
    np.testing.assert_array_equal(leaders, [[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]])


def test_syndrome_product_is_hamming_distance_between_syndromes():
    linear = hamming_code()
    syndrome_matrix, _ = build_syndrome_matrix(linear)
    assert (syndrome_matrix.rows, syndrome_matrix.cols) == (6, 8)
    assert syndrome_matrix.factorization is not None


def test_syndrome_decode_repetition_code():
    linear = rep3_code()
    syndrome_matrix, leaders = build_syndrome_matrix(linear)
    outcome = syndrome_decode(linear, leaders, syndrome_matrix, np.array([1, 1, 0]))
    np.testing.assert_array_equal(outcome.codeword, [1, 1, 1])
    assert outcome.leader_index == 1  # error pattern 001
    assert outcome.distances[outcome.leader_index] == 0.0


def test_syndrome_decode_flags_missing_zero_coset():
    import dataclasses

    from fastmld import BinaryMatrix

    linear = rep3_code()
    syndrome_matrix, leaders = build_syndrome_matrix(linear)
    # Corrupt the matrix column the received syndrome should match exactly;
    # the zero-distance assertion must turn that into a loud error.
    dense = syndrome_matrix.matrix.to_dense()
    dense[0, 1] ^= 1
    broken = dataclasses.replace(
        syndrome_matrix, matrix=BinaryMatrix.from_dense(dense), factorization=None
    )
    with pytest.raises(NoZeroDistanceCoset):
        syndrome_decode(linear, leaders, broken, np.array([1, 1, 0]))


def test_syndrome_decode_corrects_single_errors():
    linear = hamming_code()
    code = enumerate_codewords(linear)
    syndrome_matrix, leaders = build_syndrome_matrix(linear)
    rng = np.random.default_rng(24)
    for _ in range(60):
        word = code.codewords[rng.integers(16)] - 1
        received = word.copy()
        received[rng.integers(7)] ^= 1
        outcome = syndrome_decode(linear, leaders, syndrome_matrix, received)
        np.testing.assert_array_equal(outcome.codeword, word)


def test_syndrome_decode_rejects_non_bits():
    linear = rep3_code()
    syndrome_matrix, leaders = build_syndrome_matrix(linear)
    with pytest.raises(Exception):
        syndrome_decode(linear, leaders, syndrome_matrix, np.array([1, 2, 0]))


def test_isi_decode_matches_oracle_brute_force():
    from fastmld import esd_decode_isi

    rng = np.random.default_rng(25)
    code = Code(
        q=2,
        n=4,
        codewords=np.array([[1, 1, 1, 1], [1, 2, 1, 2], [2, 1, 2, 1], [2, 2, 2, 2]]),
    )
    probs = rng.dirichlet(np.ones(3), size=4)
    chan = IsiChannel.from_probabilities(2, 1, probs)
    codebook = build_codebook_matrix_isi(code, 1)
    for _ in range(100):
        y = rng.integers(1, 4, size=4)
        fast = isi_ml_decode(codebook, code, chan, y)
        slow = esd_decode_isi(code, chan, y)
        assert fast.ties == slow.ties
        np.testing.assert_allclose(fast.scores, slow.scores, rtol=1e-12, atol=1e-12)


def test_isi_decode_validates_memory_match():
    code = Code(q=2, n=2, codewords=np.array([[1, 1], [2, 2]]))
    table = np.log(np.full((4, 2), 0.5))
    chan = IsiChannel(q=2, memory=1, output_alphabet_size=2, log_transition=table)
    wrong = build_codebook_matrix_isi(code, 2)
    with pytest.raises(DimensionMismatch):
        isi_ml_decode(wrong, code, chan, np.array([1, 1]))


def test_scale_invariance_of_argmax():
    # Positive scaling of the log-likelihood vector cannot change winners.
    code = toy_code()
    codebook = build_codebook_matrix(code)
    chan = ContinuousChannel.awgn(0.6)
    rng = np.random.default_rng(26)
    from fastmld import conditional_probability_vector, vec_times_matrix

    for _ in range(20):
        y = rng.standard_normal(3)
        vec = conditional_probability_vector(chan, y)
        base = argmax_scan(vec_times_matrix(vec, codebook.factorization))
        scaled = argmax_scan(vec_times_matrix(7.5 * vec, codebook.factorization))
        assert base == scaled
