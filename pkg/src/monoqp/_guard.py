import os


class GuardExceeded(ValueError):
    """Raised when an exhaustive routine is asked to run beyond its size limit."""


def size_limit(default: int, override: int | None = None) -> int:
    """Resolve a size guard: explicit argument, then MONOQP_MAX_N, then default."""
    if override is not None:
        return override
    env = os.environ.get("MONOQP_MAX_N")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"MONOQP_MAX_N must be an integer, got {env!r}") from None
    return default


def check_size(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise GuardExceeded(
            f"{what}: n={n} exceeds the size guard {limit} "
            "(pass a larger limit or set MONOQP_MAX_N)"
        )
