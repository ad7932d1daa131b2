"""Rotational surfaces in pseudo-Euclidean 4-space with neutral metric.

Library layout:
    pe4        signature-(2,2) vectors, inner product, causal character
    jets       order-2 jet arithmetic and expression descriptors
    odeint     fixed-step RK4 with dense output
    meridians  the classified meridian families and their evaluators
    surfaces   frames, fundamental forms, curvature invariants
    verifier   finite-difference oracles and verification suites
    cli        command-line front end (also exposed as the grs4 script)
"""

from .errors import (ConfigError, ConstraintDriftError, DomainError,
                     FieldError, GrsError, InadmissiblePointError,
                     NoRealRootError, ParamError, ProjectionError,
                     RangeError, StepError)
from .jets import Jet2, jet_apply
from .meridians import (FAMILY_CATALOG, FamilyDescriptor, MeridianFamily,
                        MeridianJet, build_family, descriptor_from_catalog,
                        meridian_jet, classified_case_ids)
from .pe4 import CausalCharacter, PEVector4, causal_character, inner
from .surfaces import (Curvatures, Frame, GeoFns, InvariantRecord, PointJets,
                       SurfaceKind, SurfaceSpec, curvatures,
                       first_fundamental, frames, geometric_functions,
                       invariant_record, position_jets, second_fundamental,
                       shape_operators, surface_from_family)
from .verifier import (CheckResult, FamilyReport, SuiteReport,
                       admissible_domain, cross_check, default_suite_config,
                       fd_connection_check, run_suite, verify_family)

__version__ = "0.1.0"
