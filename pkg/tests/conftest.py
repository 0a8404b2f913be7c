import random

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_of(seed: int) -> random.Random:
    return random.Random(seed)


def redraw(fn, rng, *args, cap=10**4):
    """``fn(rng, *args)``, drawing again from ``rng`` whenever the index cap is hit."""
    from adelic_weil.errors import IndexOverflow
    from adelic_weil.lattice import index_cap

    with index_cap(cap):
        for _ in range(200):
            try:
                return fn(rng, *args)
            except IndexOverflow:
                continue
    raise AssertionError("every draw exceeded the index cap")
