import functools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from mffdfa import FbmSpec, generate_fgn

# numerical property tests routinely outlive hypothesis' default deadline
settings.register_profile(
    "numeric",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


@functools.lru_cache(maxsize=64)
def _fgn_cached(hurst: float, length: int, seed: int):
    x = generate_fgn(FbmSpec(hurst=hurst, length=length, seed=seed))
    x.setflags(write=False)
    return x


@pytest.fixture(scope="session")
def fgn_bank():
    """Memoized exact-fGn realizations shared by the slower tests."""
    return _fgn_cached


@pytest.fixture
def report(capfd):
    """Print one uncaptured pass/fail line per acceptance criterion."""
    def _report(name: str, ok: bool, detail: str = ""):
        with capfd.disabled():
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return _report


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
