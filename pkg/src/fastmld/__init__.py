"""Exact maximum-likelihood decoding of arbitrary block codes.

The decoder turns every supported decoding task into a single product of a
real log-likelihood vector with a fixed binary codebook matrix, then
evaluates that product with a factorization whose addition count grows like
n*q*S/log2(S) instead of the naive n*S.  A brute-force scorer with no shared
arithmetic backs every fast path for verification.
"""

from .channels import (
    ERASED,
    ContinuousChannel,
    DiscreteChannel,
    ErasureChannel,
    ErasureObservation,
    IsiChannel,
    bipolar_received_vector,
    conditional_probability_vector,
    conditional_probability_vector_isi,
    sample_channel,
)
from .codes import (
    MAX_CODEWORDS,
    BipolarCodebook,
    Code,
    CodebookMatrix,
    LinearCode,
    build_bipolar_codebook,
    build_codebook_matrix,
    build_codebook_matrix_isi,
    coset_leaders,
    enumerate_codewords,
    incidence_vector,
    parity_check_from_generator,
    random_linear_code,
    syndrome,
    tuple_indices,
)
from .decoder import (
    DecodeResult,
    ListDecodeResult,
    SyndromeResult,
    argmax_scan,
    build_syndrome_matrix,
    erasure_decode,
    isi_ml_decode,
    list_decode,
    ml_decode,
    syndrome_decode,
)
from .errors import (
    CapacityExceeded,
    DegenerateMatrix,
    DimensionMismatch,
    FastmldError,
    HeightOutOfRange,
    InvalidParams,
    ListSizeOutOfRange,
    NonBinaryCode,
    NoZeroDistanceCoset,
    ObservationOutOfAlphabet,
    RankDeficient,
    SymbolOutOfRange,
)
from .mailman import (
    MAX_BLOCK_HEIGHT,
    MAX_MATRIX_BITS,
    BinaryMatrix,
    MailmanFactorization,
    OpCount,
    addition_bound,
    factorize,
    op_count,
    vec_times_bipolar_matrix,
    vec_times_matrix,
    vec_times_matrix_naive,
    vec_times_universal,
)
from .oracle import esd_decode, esd_decode_isi, min_distance_decode, ranking_equivalent
from .simulate import (
    BenchRow,
    RandomCodeSpec,
    SimConfig,
    SimReport,
    bench_multiply,
    run_monte_carlo,
)

__version__ = "0.1.0"

__all__ = [
    "ERASED",
    "MAX_BLOCK_HEIGHT",
    "MAX_CODEWORDS",
    "MAX_MATRIX_BITS",
    "BenchRow",
    "BinaryMatrix",
    "BipolarCodebook",
    "CapacityExceeded",
    "Code",
    "CodebookMatrix",
    "ContinuousChannel",
    "DecodeResult",
    "DegenerateMatrix",
    "DimensionMismatch",
    "DiscreteChannel",
    "ErasureChannel",
    "ErasureObservation",
    "FastmldError",
    "HeightOutOfRange",
    "InvalidParams",
    "IsiChannel",
    "LinearCode",
    "ListDecodeResult",
    "ListSizeOutOfRange",
    "MailmanFactorization",
    "NoZeroDistanceCoset",
    "NonBinaryCode",
    "ObservationOutOfAlphabet",
    "OpCount",
    "RandomCodeSpec",
    "RankDeficient",
    "SimConfig",
    "SimReport",
    "SymbolOutOfRange",
    "SyndromeResult",
    "addition_bound",
    "argmax_scan",
    "bench_multiply",
    "bipolar_received_vector",
    "build_bipolar_codebook",
    "build_codebook_matrix",
    "build_codebook_matrix_isi",
    "build_syndrome_matrix",
    "conditional_probability_vector",
    "conditional_probability_vector_isi",
    "coset_leaders",
    "enumerate_codewords",
    "erasure_decode",
    "esd_decode",
    "esd_decode_isi",
    "factorize",
    "incidence_vector",
    "isi_ml_decode",
    "list_decode",
    "min_distance_decode",
    "ml_decode",
    "op_count",
    "parity_check_from_generator",
    "random_linear_code",
    "ranking_equivalent",
    "run_monte_carlo",
    "sample_channel",
    "syndrome",
    "syndrome_decode",
    "tuple_indices",
    "vec_times_bipolar_matrix",
    "vec_times_matrix",
    "vec_times_matrix_naive",
    "vec_times_universal",
]
