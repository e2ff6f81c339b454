import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from logcy.fan import hirzebruch_fan, p2_fan
from logcy.model import ToricModel, corner_blowup

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE = {}


@st.composite
def toric_models(draw, kmax=9, mmax=2, toric=False):
    base = draw(st.sampled_from(["P2"] + [f"F{a}" for a in range(6)]))
    fan = p2_fan() if base == "P2" else hirzebruch_fan(int(base[1:]))
    model = ToricModel(fan, (0,) * fan.k)
    nblow = draw(st.integers(0, kmax - fan.k))
    for _ in range(nblow):
        model = corner_blowup(model, draw(st.integers(0, model.k - 1)))
    if not toric:
        m = draw(st.lists(st.integers(0, mmax), min_size=model.k, max_size=model.k))
        model = ToricModel(model.fan, tuple(m))
    return model


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {num:2d}. {title}")
