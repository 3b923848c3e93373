# Frame error rate of the [7,4] Hamming code across a range of crossover
# probabilities, each point checked against the closed form for a perfect
# single-error-correcting code: FER = 1 - (1-p)^7 - 7 p (1-p)^6.

import numpy as np

from fastmld import DiscreteChannel, LinearCode, SimConfig, run_monte_carlo

hamming = LinearCode(
    q=2,
    n=7,
    k=4,
    generator=np.array(
        [
            [1, 0, 0, 0, 1, 1, 0],
            [0, 1, 0, 0, 1, 0, 1],
            [0, 0, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1],
        ]
    ),
)

print(f"{'p':>6} {'trials':>7} {'FER':>10} {'analytic':>10} {'SER':>10}")
for p in (0.02, 0.05, 0.10, 0.20):
    analytic = 1 - (1 - p) ** 7 - 7 * p * (1 - p) ** 6
    trials = max(2000, int(200 / analytic))
    report = run_monte_carlo(
        SimConfig(
            code_source=hamming,
            channel=DiscreteChannel.bsc(p),
            trials=trials,
            seed=1,
            analytic_fer=analytic,
        )
    )
    print(
        f"{p:>6.2f} {report.trials:>7} {report.frame_error_rate:>10.4e} "
        f"{analytic:>10.4e} {report.symbol_error_rate:>10.4e}"
    )

# one full report, rendered the way the command line tool prints it
report = run_monte_carlo(
    SimConfig(
        code_source=hamming,
        channel=DiscreteChannel.bsc(0.05),
        trials=20000,
        seed=1,
        oracle_check=True,
        workers=4,
    )
)
print()
print(report.render())
