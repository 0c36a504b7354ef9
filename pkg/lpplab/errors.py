from functools import wraps

import numpy as np


class LpplabError(ValueError):
    """Base class for every failure raised by lpplab."""


class ConfigError(LpplabError):
    """Malformed or inconsistent configuration (CLI exit code 2)."""


class ConvergenceError(LpplabError):
    """A numerical procedure failed to reach its tolerance (CLI exit code 3)."""


class ResourceError(LpplabError):
    """A memory or combinatorial guard was exceeded (CLI exit code 4)."""


class PoleError(LpplabError):
    """An argument hit a pole or a branch point of a log-space product."""


class DomainError(LpplabError):
    """An argument lies outside the supported box of a routine."""


def extract_param(param_name: str, position: int, args: tuple, kwargs: dict):
    """
    Extract a parameter from args or kwargs of a function.
    `position` is the index in args once `self`/first arguments are stripped.
    """

    if args and len(args) > position:
        return args[position]
    elif kwargs and param_name in kwargs:
        return kwargs[param_name]
    else:
        raise LpplabError(
            f"Parameter '{param_name}' not found in args or kwargs")


def require_line_index(*names: str):
    """
    Decorator that checks |r| < N for each named line index.
    The decorated function must take (seq, N, ...) as its first arguments.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(seq, N, *args, **kwargs):
            if N < 1:
                raise DomainError(f"N must be positive, got N={N}")
            for position, name in enumerate(names):
                r = extract_param(name, position, args, kwargs)
                if abs(r) >= N:
                    raise DomainError(
                        f"Line index {name}={r} must satisfy |{name}| < N={N}")
            return func(seq, N, *args, **kwargs)
        return wrapper
    return decorator


def require_in_range(param_name: str, position: int, low: float, high: float):
    """
    Decorator that checks low <= param <= high for a scalar or array argument.
    Raises a DomainError otherwise.
    """

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            value = np.asarray(extract_param(
                param_name, position, args, kwargs), dtype=float)
            if value.size and (np.any(value < low) or np.any(value > high)
                               or np.any(np.isnan(value))):
                raise DomainError(
                    f"{func.__name__}: {param_name} must lie in [{low}, {high}]")
            return func(*args, **kwargs)
        return wrapper
    return decorator


def require_power_family(low: float, high: float):
    """
    Decorator that checks the first argument is a Power sequence with
    low < alpha <= high.
    """

    def decorator(func):
        @wraps(func)
        def wrapper(seq, *args, **kwargs):
            family = getattr(getattr(seq, "family", None), "value", None)
            if family != "power" or not low < seq.value <= high:
                raise DomainError(
                    f"{func.__name__} needs a power sequence with alpha in "
                    f"({low:g}, {high:g}], got {seq}")
            return func(seq, *args, **kwargs)
        return wrapper
    return decorator
