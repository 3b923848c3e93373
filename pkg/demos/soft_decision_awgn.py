# Soft-decision decoding of the [7,4] Hamming code over an AWGN channel.
#
# Bits are sent as +/-1. The decoder works straight from the noisy real
# samples; no hard slicing happens anywhere. For comparison the script also
# slices each sample to the nearest constellation point and decodes the
# resulting hard word over an equivalent BSC, counting how often the two
# disagree and who was right.

import math

import numpy as np

from fastmld import (
    ContinuousChannel,
    DiscreteChannel,
    build_codebook_matrix,
    enumerate_codewords,
    ml_decode,
    random_linear_code,
    sample_channel,
)

sigma = 0.8
trials = 2000
rng = np.random.default_rng(1)

linear = random_linear_code(2, 7, 4, seed=42)
code = enumerate_codewords(linear)
codebook = build_codebook_matrix(code)

soft = ContinuousChannel.awgn(sigma)
# a hard slice at 0 turns the AWGN channel into a BSC with this crossover
crossover = 0.5 * math.erfc(1 / (sigma * math.sqrt(2)))
hard = DiscreteChannel.bsc(crossover)

soft_errors = 0
hard_errors = 0
for _ in range(trials):
    index = int(rng.integers(code.size))
    sent = code.codewords[index]
    samples = sample_channel(soft, sent, rng)

    soft_result = ml_decode(codebook, code, soft, samples)
    sliced = np.where(samples > 0, 1, 2)
    hard_result = ml_decode(codebook, code, hard, sliced)

    soft_errors += soft_result.best_index != index + 1
    hard_errors += hard_result.best_index != index + 1

print(f"sigma={sigma}  equivalent BSC crossover={crossover:.4f}")
print(f"soft-decision frame errors: {soft_errors}/{trials}")
print(f"hard-decision frame errors: {hard_errors}/{trials}")
