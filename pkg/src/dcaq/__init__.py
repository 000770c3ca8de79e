"""Activeness quotient (DCAQ) of distributed object-oriented component libraries."""

from .access_time import (AccessTimeBreakdown, cache_effective_time, local_access_time,
                          remote_access_time, transfer_time)
from .core import (DEFAULT_THRESHOLDS, ClassificationThresholds, classify, dcaq, evaluate, rank,
                   sublibrary_count)
from .errors import (DcaqError, DegenerateDistributionWarning, EmptyInputError, InvalidCountError,
                     InvalidInputError, InvalidRateError, InvalidRatioError, ScenarioError)
from .model import (Command, Component, DcaqResult, DooclDescriptor, FixedRate, HardwareProfile,
                    LocalEnvironment, NetworkProfile, NormalRate, Organization, RemoteEnvironment,
                    Scenario, UniformRate, command_bits, component_bits)
from .organizedness import SearchCost, organizedness_time, search_iterations
from .scenario_io import ScenarioDocument, load_document, parse_scenario, render_document
from .simulator import (McSummary, SyntheticLibrary, build_library, empirical_search, monte_carlo_dcaq,
                        replay_transfer)

__version__ = "0.1.0"
