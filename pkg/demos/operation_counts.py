"""How the decode cost scales with codebook size.

The naive score computation touches every set bit of the codebook matrix.
The factorized product instead walks each row block once to build all
2^h partial sums, then gathers one per column, so its cost is nearly
independent of how many rows feed each block. The advantage grows like
log2(S) and the table below shows it directly from instrumented counts,
with wall-clock times as a sanity check.
"""

import math

from fastmld import bench_multiply

rows = [64]
cols = [2**s for s in range(8, 17, 2)]

print(f"{'rows':>5} {'cols':>7} {'naive adds':>11} {'fast adds':>10} "
      f"{'ratio':>6} {'log2(S)/8':>9} {'naive ms':>9} {'fast ms':>8}")
for row in bench_multiply(rows, cols, repetitions=3, seed=0):
    print(
        f"{row.rows:>5} {row.cols:>7} {row.naive_ops:>11} "
        f"{row.mailman_additions:>10} {row.ratio:>6.2f} "
        f"{math.log2(row.cols) / 8:>9.2f} "
        f"{row.naive_seconds * 1e3:>9.3f} {row.mailman_seconds * 1e3:>8.3f}"
    )
