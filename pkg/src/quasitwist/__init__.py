"""Quasi-twisted codes: construction, distance bounds, decoding, and a
Niederreiter-style cryptosystem, with brute-force oracles for verification."""

__version__ = "0.1.0"

from .errors import (
    BoundNotApplicable,
    BudgetExceeded,
    DecryptionFailure,
    DomainError,
    EvaluationInconsistent,
    FieldMismatch,
    InadmissibleEigenvector,
    InvalidBasis,
    InvalidBoundParams,
    KeygenRetryExhausted,
    NotAnEigenvalue,
    QuasitwistError,
    ShapeError,
    SingularLeadBlock,
    SingularMatrix,
    UnsupportedParameters,
    WeightTooLarge,
)
from .galois import (
    Field,
    FieldElement,
    FieldSpec,
    SplittingData,
    extension_field,
    field_arith,
    find_splitting_data,
    prime_field,
)
from .polyring import Poly, QuotientPolyVector, constashift, phi, phi_inv, ring_mul
from .qtcode import (
    Eigencode,
    EigenData,
    GroebnerGenMatrix,
    HtBoundResult,
    INFINITE,
    QTCode,
    eigen_data,
    eigencode,
    encode,
    ht_bound,
    new_qt_code,
)
from .decoder import (
    DECODING_FAILURE,
    DecoderConfig,
    ErrorLocator,
    SyndromeSet,
    build_syndrome_matrix,
    chien_search,
    compute_syndromes,
    decode,
    decomposition_matrices,
    evaluate_errors,
    solve_key_equations,
    star_product,
)
from .twistulant import (
    ParityCheckMatrix,
    TwistulantMatrix,
    cycle_matrix,
    standard_form,
    twistulant_from_poly,
    validate_h_conditions,
)
from .cryptosystem import CryptoParams, KeyPair, PublicKey, decrypt, encrypt, keygen
from .analysis import min_work_factor, qfs_check, work_factor
from .oracle import (
    OracleBudget,
    eigencode_distance_bruteforce,
    min_distance_bruteforce,
    nearest_codeword,
)
