import os
import subprocess
import sys

import numpy as np
from hypothesis import given, strategies as st

from logcy import _kernels as K


@given(st.integers(1, 5).flatmap(lambda k: st.lists(
    st.lists(st.integers(-4, 4), min_size=k + 1, max_size=k + 1), min_size=0, max_size=8)))
def test_compose_backends_agree(rows):
    if not rows:
        return
    cyc = np.array(rows, dtype=np.int64)
    assert (K.compose_numba(cyc) == K.compose_numpy(cyc)).all()


@given(st.lists(st.integers(-3, 6), min_size=4, max_size=4), st.integers(-6, 0), st.integers(0, 6))
def test_count_backends_agree(bound, lo, hi):
    rays = np.array([(1, 0), (0, 1), (-1, 2), (0, -1)], dtype=np.int64)
    minv = np.eye(2, dtype=np.int64)
    b = np.array(bound, dtype=np.int64)
    args = (minv, rays, b, lo, hi, lo, hi)
    assert K.count_points_numba(*args) == K.count_points_numpy(*args)


def test_count_brute_force():
    # the square [-1, 2]^2 cut by x <= 2, y <= 2, x >= -1, y >= -1
    rays = np.array([(1, 0), (0, 1), (-1, 0), (0, -1)], dtype=np.int64)
    b = np.array([1, 1, 2, 2], dtype=np.int64)
    assert K.count_points(np.eye(2, dtype=np.int64), rays, b, -5, 5, -5, 5) == 16


def test_env_switch():
    code = "import logcy._kernels as k; print(k.BACKEND)"
    env = dict(os.environ, LCY_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
