"""Exact lattice arithmetic for O'Grady-10 moduli criteria."""

from .lattice import (
    BudgetExceeded,
    Degenerate,
    DimensionMismatch,
    Isometry,
    Lattice,
    LatticeError,
    NotDefinite,
    NotIsometry,
    NotSymmetric,
    ParseError,
    RankTooLarge,
    Signature,
    Sublattice,
    UnknownToken,
    ZeroVector,
    direct_sum,
    divisibility,
    enumerate_vectors,
    full_sublattice,
    intersect,
    is_isometric_definite,
    is_primitive,
    is_saturated,
    lattice_invariants,
    make_isometry,
    make_lattice,
    orthogonal_complement,
    pair,
    read_lattice,
    read_lattice_document,
    saturation,
    short_vectors,
    span,
    square,
    standard,
    twist,
    write_lattice,
)
from .discform import (
    FiniteQuadraticForm,
    FormsEquivalence,
    GenusTag,
    GroupTooLarge,
    OddLattice,
    discriminant_group,
    forms_equivalent,
    gauss_sum_residue,
    genus_tag,
    milgram_residue,
    prime_residues,
)
from .glue import (
    CertificateSearch,
    GlueData,
    GlueMismatch,
    HyperbolicCertificate,
    NotIsotropic,
    SigmaPerpEmbedding,
    WrongInvariants,
    canonical_sigma_perp_embedding,
    extend_isometry,
    overlattice_from_glue,
    u_summand_certificate,
    un_summand_certificate,
)
from .og10 import (
    EXCLUDED_INVARIANT_EXPR,
    INDUCED_COINVARIANT_EXPR,
    INDUCED_INVARIANT_EXPR,
    InfiniteOrderSuspected,
    InvolutionReport,
    LdReport,
    MarkedHodgeLattice,
    MismatchedNSLattice,
    MukaiVector,
    NSNotPreserved,
    NotInvolution,
    NotProjective,
    OG10_EXPR,
    OddSquare,
    TwistedData,
    Verdict,
    WrongDeterminant,
    all_even_divisibility,
    build_ld,
    classify_invariant_pair,
    classify_symplectic_involution,
    disc_action_trivial,
    e8_block_swap,
    gamma_v,
    hassett_admissible,
    hassett_row,
    hassett_star,
    hassett_star_prime,
    invariant_coinvariant,
    is_numerical_moduli_space,
    is_ols_vector,
    is_positive_mukai,
    is_twisted_numerical_moduli_space,
    mark_og10,
    mukai_lattice,
    mukai_pair,
    mukai_square,
    mukai_vector_of_sheaf,
    og10_lattice,
    sigma_chart,
)

__version__ = "0.1.0"
