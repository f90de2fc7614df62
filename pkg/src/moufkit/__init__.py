"""moufkit: computational algebra for finite loops given by Cayley tables.

Validated loops, identity-scheme scans, subloop and quotient machinery,
congruence commutators of normal subloops, abelian/central extension
building and decomposition, solvability and nilpotency deciders, and a
catalog of constructions (quadratic-form loops, Chein doubles, the simple
order-120 Moufang loop)."""

from .core import (
    IDENTITY_SCHEMES,
    FiniteLoop,
    IdentityCheck,
    LoopElement,
    closure_elements,
    dump_loop,
    is_diassociative,
    is_moufang,
    is_power_associative,
    parse_loop,
    read_loop,
    satisfies_identity,
    write_loop,
)
from .subloops import (
    DISTINGUISHED_KINDS,
    QuotientResult,
    SubloopHandle,
    all_normal_subloops,
    cosets,
    distinguished_subloop,
    generated_subloop,
    is_normal,
    normal_closure,
    quotient,
    transversal,
)
from .maps import (
    ElementMap,
    MapTriple,
    PseudoautomorphismPair,
    TrialityReport,
    atp_compose,
    atp_inverse,
    autotopism,
    inner_generator,
    inner_mapping_group,
    is_autotopism,
    is_pseudoautomorphism,
    is_semiautomorphism,
    lps_compose,
    lps_inverse,
    moufang_autotopisms,
    pseudoautomorphism,
    translation,
    triality_condition,
)
from .commutator import (
    SeriesWitness,
    canonical_table_key,
    classical_solvable,
    commutator,
    congruence_derived_series,
    congruence_solvable,
    derived_subloop,
    is_abelian_in,
    is_central,
    nilpotency_class,
    nilpotent,
)
from .extensions import (
    ExtensionData,
    build_extension,
    cube_root,
    decompose,
    decompose_central,
    decompose_detail,
    extension_cell_holds,
    is_d_divisible,
    moufang_extension_maps,
)
from .constructions import (
    QuadraticFormGF2,
    QuadraticLoopResult,
    QuadraticLoopSpec,
    associated_bilinear,
    chein_double,
    enumerate_quadratic_forms,
    fixture,
    fixture_from_text,
    is_linear,
    loop_from_quadratic_form,
    paige_loop,
)
from .divisibility import (
    CAUCHY_FAILS,
    CAUCHY_HOLDS,
    CAUCHY_NOT_APPLICABLE,
    DivisibilityReport,
    cauchy,
    divisibility,
    elementwise_lagrange,
    power_map,
)
from . import errors

__version__ = "0.1.0"
