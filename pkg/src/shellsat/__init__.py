"""shellsat: shellability, collapsibility and weak K3-saturation toolkit.

Decision procedures with machine-checkable certificates for pure
2-dimensional simplicial complexes, certificate converters realizing the
shelling -> saturated-tree -> collapse pipeline, brute-force oracles for
small instances, and a deterministic CLI.
"""

from .complexes import Complex, Face, from_facets, parse_sc, parse_sc_with_warnings
from .outcomes import (
    Budget,
    BudgetExceeded,
    Impossible,
    NotCollapsible,
    NotSaturated,
    Unshellable,
)
from .shelling import (
    ShellingCertificate,
    find_shelling,
    first_shelling_violation,
    verify_shelling,
)
from .collapse import (
    CollapseCertificate,
    CollapseStep,
    apply_collapse,
    collapsible_after_removing,
    free_faces,
    is_collapsible,
    verify_collapse,
)
from .wsat import (
    SaturationCertificate,
    decide_wsat_eq_treesize,
    extract_saturation_order,
    graph_complex,
    is_weakly_saturated,
    k3_closure,
    verify_saturation,
    wsat_number,
)
from .certificates import (
    ChainReport,
    check_removal_count,
    run_chain,
    saturation_to_collapse,
    shelling_to_saturated_tree,
)
from .harness import (
    GeneratorSpec,
    generate,
    oracle_collapsible,
    oracle_shelling,
    oracle_wsat,
)

__all__ = [
    "Budget",
    "BudgetExceeded",
    "ChainReport",
    "CollapseCertificate",
    "CollapseStep",
    "Complex",
    "Face",
    "GeneratorSpec",
    "Impossible",
    "NotCollapsible",
    "NotSaturated",
    "SaturationCertificate",
    "ShellingCertificate",
    "Unshellable",
    "apply_collapse",
    "check_removal_count",
    "collapsible_after_removing",
    "decide_wsat_eq_treesize",
    "extract_saturation_order",
    "find_shelling",
    "first_shelling_violation",
    "free_faces",
    "from_facets",
    "generate",
    "graph_complex",
    "is_collapsible",
    "is_weakly_saturated",
    "k3_closure",
    "oracle_collapsible",
    "oracle_shelling",
    "oracle_wsat",
    "parse_sc",
    "parse_sc_with_warnings",
    "run_chain",
    "saturation_to_collapse",
    "shelling_to_saturated_tree",
    "verify_collapse",
    "verify_saturation",
    "verify_shelling",
    "wsat_number",
]
