"""Shared fixtures; expensive eigensolutions are cached per session."""

import numpy as np
import pytest

from magtun import (AgmonProfile, DoubleWellConfig, RadialWell, WkbAmplitude,
                    calibrate_outer, ground_state)


@pytest.fixture(scope="session")
def well():
    return RadialWell.bump(depth=1.0, a=1.0)


@pytest.fixture(scope="session")
def config4(well):
    return DoubleWellConfig(well, 4.0)


@pytest.fixture(scope="session")
def profile4(well):
    return AgmonProfile(well, 4.0)


@pytest.fixture(scope="session")
def amp6(well):
    return WkbAmplitude(well, 6.0)


@pytest.fixture(scope="session")
def well_deep():
    return RadialWell.bump(depth=4.0, a=1.0)


@pytest.fixture(scope="session")
def config_deep(well_deep):
    return DoubleWellConfig(well_deep, 4.0)


@pytest.fixture(scope="session")
def profile_deep(well_deep):
    return AgmonProfile(well_deep, 4.0)


@pytest.fixture(scope="session")
def amp_deep(well_deep):
    return WkbAmplitude(well_deep, 6.0)


@pytest.fixture(scope="session")
def config85(well):
    return DoubleWellConfig(well, 8.5)


@pytest.fixture(scope="session")
def profile85(well):
    return AgmonProfile(well, 8.5)


@pytest.fixture(scope="session")
def gs_cache():
    """(well id, h, L) -> ground_state solution, shared across modules."""
    cache = {}

    def get(well, h, L=4.0):
        key = (id(well), round(h, 6), L)
        if key not in cache:
            cache[key] = ground_state(well, h, L=L)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def outer_cache(gs_cache):
    cache = {}

    def get(well, h, L=4.0):
        key = (id(well), round(h, 6), L)
        if key not in cache:
            sol = gs_cache(well, h, L)
            cache[key] = calibrate_outer(well, h, sol, check_upto=L + 1.0)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def deep_chain(config_deep, well_deep, profile_deep, amp_deep):
    """W-chain sweep on the deep well (t_a = 0.392 keeps the eta-policy
    window inside the truncation-error regime)."""
    from magtun import w_chain

    out = {}
    for h in (0.3, 0.2, 0.14, 0.1, 0.07, 0.05):
        sol = ground_state(well_deep, h, L=4.0)
        outer = calibrate_outer(well_deep, h, sol, check_upto=5.0)
        out[h] = {
            eta: w_chain(config_deep, h, eta, sol, outer, amp_deep,
                         profile_deep)
            for eta in ((0.05, 0.1, 0.2) if h == 0.05 else (0.05,))
        }
    return out


def acceptance_line(num, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"\nACCEPTANCE {num:2d} {status}: {detail}")
    assert ok, f"criterion {num}: {detail}"
