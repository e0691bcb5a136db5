"""Quantale-enriched categories: completeness, injectivity and the MacNeille completion."""

from .analysis import (
    Ball,
    check_ball_system,
    enumerate_categories,
    find_copower,
    find_power,
    is_complete,
    is_essential_embedding,
    is_injective,
    is_isbell_convex,
    kan_lan,
    kan_ran,
    sandwich_interval,
    solve_extension,
)
from .errors import (
    AxiomViolation,
    DomainError,
    EnriqError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedError,
    UsageError,
)
from .isbell import (
    Copresheaf,
    Presheaf,
    copresheaf_hom,
    coyoneda,
    isbell_left,
    isbell_right,
    presheaf_hom,
    yoneda,
)
from .macneille import embed, in_U, make_pair, mn_closure, mn_construct, mn_hom, mn_maximality_check, mn_member
from .qcategory import QCategory, QFunctor, is_fully_faithful, is_skeletal
from .qmatrix import QMatrix, compose, diag, m_leq, m_rext, m_rlift
from .quantale import INF, bool2, chain_trop, free_monoid, from_spec, lawvere_rat, max_ext, relations

__version__ = "0.1.0"
