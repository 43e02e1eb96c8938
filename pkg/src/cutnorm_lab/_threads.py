import os

ENV_VAR = "CUTNORM_LAB_THREADS"


def resolve_threads(threads=None) -> int:
    """Explicit count, else $CUTNORM_LAB_THREADS, else machine parallelism."""
    if threads is None:
        env = os.environ.get(ENV_VAR, "").strip()
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise ValueError(f"{ENV_VAR} must be an integer, got {env!r}") from None
        else:
            threads = os.cpu_count() or 1
    threads = int(threads)
    if threads < 1:
        raise ValueError(f"thread count must be >= 1, got {threads}")
    return threads
