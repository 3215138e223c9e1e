__version__ = '0.1.0'

from .numerics import (DomainError, ResourceLimitError, SingularityError,
                       SlackMode, TolerancePolicy, Verdict)
from .trigpoly import PUBLISHED_PARAMS, PolyParams, cos_coeffs, objective
from .zfrsolver import (PreconditionFailure, RegionResult, theorem_summary,
                        zero_free_bound)
from .report import CheckRecord, Report
from .cli import RunConfig, load_config, run
from . import event
