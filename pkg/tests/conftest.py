import os
import sys

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from pathkit.generate import GeneratorConfig, PathGenerator, sample_rng  # noqa: E402

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def generator(seed: int, term_depth: int = 3, path_depth: int = 4) -> PathGenerator:
    cfg = GeneratorConfig(seed=seed, max_term_depth=term_depth, max_path_depth=path_depth)
    return PathGenerator(cfg, sample_rng(seed, 0))


terms = seeds.map(lambda s: generator(s, term_depth=5).term())
paths = seeds.map(lambda s: generator(s).path())
