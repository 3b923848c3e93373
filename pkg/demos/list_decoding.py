"""Rank all codewords of a Hamming code by likelihood, then take prefixes.

A list decoder with list size S is a full sort of the codebook; smaller
lists are prefixes of it. The script corrupts two bits, which is beyond
what a minimum-distance-3 code can correct, and shows the transmitted
word still appearing near the top of the list.
"""

import numpy as np

from fastmld import (
    DiscreteChannel,
    LinearCode,
    build_codebook_matrix,
    enumerate_codewords,
    list_decode,
)

generator = np.array(
    [
        [1, 0, 0, 0, 1, 1, 0],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]
)
code = enumerate_codewords(LinearCode(q=2, n=7, k=4, generator=generator))
codebook = build_codebook_matrix(code)
channel = DiscreteChannel.bsc(0.05)

sent = code.codewords[6]
received = sent.copy()
received[0] = 3 - received[0]  # flip two positions
received[4] = 3 - received[4]

print("sent     :", "".join(str(s - 1) for s in sent))
print("received :", "".join(str(s - 1) for s in received))

for size in (1, 4, 16):
    result = list_decode(codebook, code, channel, received, list_size=size)
    print(f"\nlist size {size}: indices {result.indices}")
    if size == 16:
        rank = result.indices.index(7) + 1
        print(f"transmitted codeword sits at rank {rank} of {size}")
