"""frobforge: exact Frobenius-structure workbench over prime fields.

Sparse polynomial arithmetic over F_p, a Buchberger engine, finitely
presented algebras with relative Frobenius maps and twists, truncated
homology (syzygies, resolutions, Tor), Frobenius towers with stabilization
detection, factorization certificates, and a brute-force oracle for
independent verification on finite algebras.
"""

from .algebra import (
    AlgebraMap,
    FPAlgebra,
    GraphIdeal,
    absolute_frobenius,
    compose,
    frobenius_twist,
    graph_ideal,
    in_image,
    is_isomorphism,
    is_surjective,
    map_kernel,
    pushout,
    relative_frobenius,
)
from .errors import (
    EngineError,
    EnumerationError,
    MapNotWellDefinedError,
    ParseError,
    PreconditionError,
    ResourceBudgetError,
)
from .groebner import (
    Ideal,
    ModuleElement,
    eliminate,
    frobenius_power_ideal,
    ideal_contains,
    ideal_equal,
    minors_ideal,
    normal_form,
    reduced_groebner,
)
from .homology import (
    Complex,
    ModulePresentation,
    TorResult,
    algebra_as_module,
    free_resolution,
    frobenius_pushforward,
    syzygy_module,
    tor,
)
from .oracle import (
    FiniteAlgebraTable,
    enumerate_algebra,
    oracle_ideal_membership,
    oracle_map_bijective,
    oracle_subring_closure,
)
from .pipeline import (
    FactorizationCertificate,
    KahlerPresentation,
    PBasisResult,
    PerfectnessCertificate,
    SemiperfectResult,
    factorize,
    find_p_basis,
    is_relatively_perfect,
    is_relatively_semiperfect,
    kahler_presentation,
    semiperfect_cover,
)
from .polyring import (
    GREVLEX,
    LEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    PolyRing,
    PrimeField,
    elimination_order,
    frobenius_power_poly,
    monomial_compare,
    partial_derivative,
)
from .session import SessionAST, format_session, parse_session
from .tower import (
    StabilizationReport,
    TowerStage,
    cofinality_bound,
    detect_stabilization,
    gabber_stage,
    quotient_tower_stage,
    tower_stage,
)
from .workbench import Report, emit_report, main, run_command, run_session

__version__ = "1.0.0"
