"""Combinatorics on words: abelian complexity, balance, frequencies, abelian
induction, decoloring and rotation codings, with exact arithmetic where it
matters."""

from .angles import PHI, SQRT2, SQRT3, SQRT5, TRIB, AngleValue, parse_angle
from .catalog import CATALOG, catalog_spec, default_corpus
from .complexity import (
    ComplexityProfile,
    ParikhSetShape,
    abelian_complexity,
    abelian_counts,
    balance_profile,
    check_balance_abelian_inequality,
    classify_parikh_set,
    complexity_profile,
    parikh_set,
    subword_complexity,
    subword_counts,
    tijdeman_flag,
)
from .decoloring import DecoloringSpec, decolor, sturmian_diagnostic, verify_decolored_counts
from .errors import WordlabError
from .frequency import (
    FrequencyVector,
    IntegerRelation,
    empirical_frequencies,
    exact_frequencies,
    hubert_consistency_check,
    integer_relation_search,
    relation_from_low_abelian,
)
from .harness import SearchConfig, SuiteBounds, run_lemma_suite, search_rho_bounded
from .induction import (
    InducedAlphabet,
    InductionMatrix,
    induce,
    induce_to_balanced,
    induced_frequency_relation,
    matrix_rank_check,
    stride_reduce,
    verify_block_identity,
    verify_complexity_preservation,
)
from .rotation import (
    CircleRotation,
    TorusRotation,
    angle_from_frequencies,
    equidistribution_check,
    find_conflict,
    merge_and_detect,
    orbit_point,
)
from .words import (
    Alphabet,
    FiniteWord,
    ParikhVector,
    Periodic,
    RotationBinary,
    RotationTernary,
    Substitution,
    WordGeneratorSpec,
    factor,
    generate,
    parikh,
)

__version__ = "0.1.0"
