"""Monochromatic domination in 3-edge-coloured tournaments.

Verification and search tooling: domination relations and covers, rainbow
triangle detection, structural audits of would-be minimal counterexamples,
and exhaustive or sampled enumeration campaigns.
"""

from .auditor import (
    AuditReport,
    CheckResult,
    ColourProfilePartition,
    CycleView,
    DescentRound,
    DescentTrace,
    GenHamiltonResult,
    NoDominatingVertexError,
    audit,
    colour_profile_partition,
    descent_check,
    elimination_order,
    genhamilton_check,
    is_qualifying_cycle,
    non_domination_cycle,
)
from .campaigns import (
    CampaignResult,
    estimate_f,
    merge_results,
    run_parallel,
    search_pattern,
    verify_conjecture,
    verify_ssw2,
)
from .core import (
    COLOURS,
    Colour,
    ColouredTournament,
    TournamentFormatError,
    are_isomorphic,
    canonical_json,
    canonical_key,
    parse,
    serialize,
)
from .domination import (
    DominationCover,
    DominationRelation,
    RainbowTriangle,
    at_most_two_everywhere,
    dominated_by_all,
    dominates,
    dominating_vertices,
    domination_relation,
    find_rainbow_triangle,
    min_cover,
    vertex_colour_profile,
)
from .enumeration import (
    BudgetExceededError,
    EnumerationSpec,
    enumerate_instances,
    is_canonical,
    pattern_pinned_codes,
    sample_codes,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BudgetExceededError",
    "COLOURS",
    "CampaignResult",
    "CheckResult",
    "Colour",
    "ColourProfilePartition",
    "ColouredTournament",
    "CycleView",
    "DescentRound",
    "DescentTrace",
    "DominationCover",
    "DominationRelation",
    "EnumerationSpec",
    "GenHamiltonResult",
    "NoDominatingVertexError",
    "RainbowTriangle",
    "TournamentFormatError",
    "are_isomorphic",
    "at_most_two_everywhere",
    "audit",
    "canonical_json",
    "canonical_key",
    "colour_profile_partition",
    "descent_check",
    "dominated_by_all",
    "dominates",
    "dominating_vertices",
    "domination_relation",
    "elimination_order",
    "enumerate_instances",
    "estimate_f",
    "find_rainbow_triangle",
    "genhamilton_check",
    "is_canonical",
    "is_qualifying_cycle",
    "merge_results",
    "min_cover",
    "non_domination_cycle",
    "parse",
    "pattern_pinned_codes",
    "run_parallel",
    "sample_codes",
    "search_pattern",
    "serialize",
    "verify_conjecture",
    "verify_ssw2",
    "vertex_colour_profile",
]
