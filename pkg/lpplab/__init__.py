from .config import RunConfig, load_config
from .errors import (ConfigError, ConvergenceError, DomainError, LpplabError,
                     PoleError, ResourceError)
from .params import ParamSeq

__version__ = "0.1.0"

__all__ = ["RunConfig", "load_config", "LpplabError", "ConfigError",
           "ConvergenceError", "ResourceError", "PoleError", "DomainError",
           "ParamSeq"]
