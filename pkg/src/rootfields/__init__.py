"""rootfields: exact decision procedures for where integer polynomials
have roots -- in the algebraic numbers, the totally real numbers, the
field L generated by pairs of complex-conjugate algebraic numbers, and
its maximal elementary-abelian-p extensions E(p) -- plus the supporting
machinery: integer polynomial factorization, certified complex root
isolation, splitting fields with Galois groups, first-order axiom
emission, and the finite linear-algebra lemma used for hyperplane
separation arguments.
"""

from .config import Config, DEFAULT, load_config_file
from .errors import (
    DegreeCapExceeded,
    DegreeTooSmall,
    DimensionMismatch,
    ElementNotInGroup,
    EmbeddingUnresolved,
    EndpointIsRoot,
    GroupTooLarge,
    InconsistentTower,
    IndexSetNotProper,
    NoInvariantComplement,
    NotIrreducible,
    NotSquarefree,
    ParseError,
    RootfieldsError,
    ZeroPolynomial,
)
from .polyarith import (
    PolyQ,
    PolyZ,
    Rat,
    discriminant,
    poly_gcd,
    resultant,
    squarefree_part,
)
from .factorz import (
    Factorization,
    factor,
    factor_with_degree_multiple,
    is_irreducible,
    squarefree_decomposition,
)
from .realroots import (
    Box,
    Interval,
    cauchy_bound,
    count_real_roots,
    is_totally_real,
    isolate_roots,
    refine_box,
    sturm_count,
)
from .galoistower import (
    CayleyGroup,
    EmbeddingProblem,
    Level,
    PermGroup,
    TowerField,
    cayley_group,
    complex_conjugation,
    conjugacy_class,
    cycle_notation,
    cyclic_group,
    dihedral_group,
    extend_generator_map,
    galois_group,
    is_elementary_abelian,
    perm_compose,
    perm_group,
    perm_identity,
    perm_inverse,
    perm_order,
    solve_embedding_problem,
    splitting_field,
    subgroup_generated,
    subgroups_containing,
    symmetric_group,
)
from .fieldmembership import (
    IRR_NO_ROOT_IN_E,
    IRR_SPLITS_IN_E,
    NOT_IRREDUCIBLE,
    ClassLabel,
    E,
    FieldTag,
    L,
    QBAR,
    QTOTR,
    classify,
    has_root,
    splits,
)
from .axioms import (
    DICHOTOMY,
    NO_ROOT,
    SPLITS,
    AxiomRecord,
    RootQuery,
    axiom_check,
    axiom_stream,
    eval_R,
    read_axiom_file,
    records_for,
    write_axiom_file,
)
from .orbitlab import (
    FpModule,
    HyperplaneSpec,
    LemmaReport,
    OrbitBlock,
    PairWitness,
    build_blocks,
    canonical_subspace,
    fp_module,
    full_basis_from_blocks,
    functional_value,
    hyperplane,
    orbit,
    parse_module_file,
    same_orbit,
    verify_lemma,
)

__version__ = "0.1.0"
