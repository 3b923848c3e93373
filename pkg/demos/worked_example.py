"""Decode a tiny nonlinear code by hand and check every intermediate piece.

The code is {001, 010, 100, 111} over the binary symmetric channel with
crossover 0.1. The all-zero word is received. Three codewords sit at
distance 1, so maximum likelihood ends in a three-way tie.
"""

import math

import numpy as np

from fastmld import Code, DiscreteChannel, build_codebook_matrix, ml_decode

code = Code(
    q=2,
    n=3,
    codewords=np.array([[1, 1, 2], [1, 2, 1], [2, 1, 1], [2, 2, 2]]),
)
channel = DiscreteChannel.bsc(0.1)

codebook = build_codebook_matrix(code)
print("codebook matrix (rows: position x symbol, columns: codewords)")
print(codebook.matrix.to_dense())
print("block heights:", [b.height for b in codebook.factorization.blocks])

received = np.array([1, 1, 1])  # bits 000
result = ml_decode(codebook, code, channel, received)

a, b = math.log(0.9), math.log(0.1)
print("\nscores        :", result.scores)
print("expected      :", np.array([2 * a + b, 2 * a + b, 2 * a + b, 3 * b]))
print("tie set       :", result.ties)
print("best codeword :", result.best_codeword - 1, "(as bits)")
