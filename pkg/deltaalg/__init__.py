from .__info__ import __version__, __copyright__, __email__, __author__
from .enums import Claims, Identity, Mode, Parity, Tier, Variety, Verdict
from .exceptions import DeltaAlgError
from .exactfield import Scalar, parse_scalar, format_scalar
from .superalg import Element, Meta, SuperAlgebra, multiply
from .dersolve import (
    DerivationQuery,
    MapSpace,
    centroid,
    classify,
    delta_derivations,
    scan_exceptional,
    solve_delta,
    supercentroid,
)
from .store import load_algebra, save_algebra
from .suite import AlgebraSpec, SuiteConfig, run_suite
