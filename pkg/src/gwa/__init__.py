"""Computing with finite groups that act on themselves.

Build any group of order < 32 as an explicit Cayley table, enumerate all of
its self-actions, compute ideals, centers, commutator ideals, lower central
series, nilpotency classes, the triple-identity subcategory check, and
isomorphism families, and regenerate the full survey table via the ``gwa``
command-line tool.
"""

from .action import (
    GroupWithAction,
    GwaMorphism,
    act,
    action_table_render,
    all_gwa_on_group,
    bracket,
    comm,
    conjugation_gwa,
    gwa_from_dict,
    gwa_from_hom,
    gwa_to_dict,
    is_gwa,
    trivial_gwa,
)
from .errors import GwaError
from .groups import (
    Group,
    Homomorphism,
    Permutation,
    automorphisms,
    catalog,
    catalog_ids,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    element_orders,
    group_center,
    group_from_dict,
    group_to_dict,
    homomorphisms,
    normal_closure,
    quotient_group,
    semidirect,
    validate_group,
)
from .ideals import (
    Subobject,
    all_ideals,
    count_ideals,
    ideal_closure,
    ideal_sum,
    is_ideal,
    is_subobject,
    quotient_gwa,
    subobject,
    subobject_generated,
    trivial_subobject,
    whole_subobject,
)
from .isomorphism import (
    IsoPartition,
    fingerprint,
    is_gwa_morphism,
    is_isomorphic_gwa,
    iso_families,
)
from .structure import (
    CentralSeries,
    NilpotencyResult,
    abelianization_gwa,
    analysis_record,
    center,
    commutator_ideal,
    condition1,
    condition1_prime,
    condition1_prime_witness,
    condition1_witness,
    is_singular,
    lower_central_series,
    nilpotency_class,
    q1_trivializing_quotient,
    q2_conjugation_quotient,
)
from .survey import (
    SurveyReport,
    SurveyRow,
    check_q8_remark,
    emit,
    survey_group,
    survey_range,
)

__version__ = "0.1.0"
