"""Joint ZF beamforming and discrete RIS phase optimisation with landscape analysis."""

from .beamforming import BeamformingResult, evaluate_batch, evaluate_configuration, water_filling, zf_directions
from .exceptions import (
    DegenerateSampleError,
    InvalidConfigurationError,
    SingularChannelError,
    UndefinedLengthError,
)
from .problem import FitnessFunction, SumRateProblem
from .system import ChannelSet, PathLoss, SystemConfig, generate_channels

__version__ = "0.1.0"
