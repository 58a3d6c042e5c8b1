"""catbase: a finite ground-set workbench for category bases.

Regions, singular/meager/Baire classification, cluster points, operator
induced topologies, and exhaustive/randomized sweeps that turn the theory's
guarantees into machine-checked properties with witnesses.
"""

from ._kernels import BACKEND
from .axioms import (
    AxiomViolation,
    ValidationResult,
    default_budget,
    disjoint_subfamilies,
    validate_base,
)
from .classify import (
    SetClass,
    classify_all,
    comeager_region,
    fundamental_witness,
    is_abundant,
    is_abundant_everywhere_in,
    is_baire,
    is_meager,
    is_singular,
)
from .core import (
    N_CAP,
    CategoryBase,
    PointSet,
    SetFamily,
    contains_region,
    power_set_iter,
    subregions,
)
from .doperator import (
    OperatorTable,
    OperatorViolation,
    basic_topology,
    cluster_operator,
    cluster_points,
    d_topology,
    validate_operator,
)
from .equiv import (
    EquivalenceReport,
    check_equivalence,
    check_opens_abundant_baire,
    hypothesis_holds,
    minimal_region_condition,
    minimal_regions,
    minimal_union_open_check,
)
from .errors import CapacityError, CatbaseError, InputError, TheoremViolation
from .search import (
    SweepConfig,
    SweepReport,
    canonical_form,
    enumerate_bases,
    enumerate_topologies,
    find_nonequivalent_bases,
    is_canonical,
    orbit_size,
    random_operator,
    sweep,
)
from .topo import (
    BaireDecomposition,
    Topology,
    TopologyValidation,
    TopologyViolation,
    baire_class,
    closure,
    has_baire_property,
    interior,
    is_first_category,
    is_nowhere_dense,
    meager_class,
    validate_topology,
)

__version__ = "0.1.0"
