import pytest
from hypothesis import given, strategies as st

from logcy.errors import (NonPrimitiveRay, NotComplete, NotCounterclockwise, NotMinusOneRay,
                          NotUnimodular, TooFewRays)
from logcy.fan import (blowup_slot, corner_blowdown, corner_blowup, det, hirzebruch_fan, mmp_reduce,
                       p2_fan, self_intersections, validate_fan)

from conftest import toric_models


def brute_selfint(rays):
    # v_{i-1} + v_{i+1} = -n_i v_i, solved by hand for each ray
    k = len(rays)
    out = []
    for i in range(k):
        p, v, q = rays[i - 1], rays[i], rays[(i + 1) % k]
        s = (p[0] + q[0], p[1] + q[1])
        n = next(n for n in range(-50, 51) if (s[0] + n * v[0], s[1] + n * v[1]) == (0, 0))
        out.append(n)
    return out


def test_p2_selfint():
    assert self_intersections(p2_fan()) == [1, 1, 1]


@pytest.mark.parametrize("a", range(6))
def test_hirzebruch_selfint(a):
    assert self_intersections(hirzebruch_fan(a)) == [0, a, 0, -a]


def test_validate_rotation_normalises():
    f = validate_fan([(0, 1), (-1, -1), (1, 0)])
    assert f.rays == ((1, 0), (0, 1), (-1, -1))


@pytest.mark.parametrize("rays,err", [
    ([(2, 0), (0, 1), (-1, -1)], NonPrimitiveRay),
    ([(1, 0), (0, 1)], TooFewRays),
    ([(1, 0), (-1, -1), (0, 1)], NotCounterclockwise),
    ([(1, 0), (0, 1), (-1, 1)], NotComplete),
    ([(1, 0), (1, 2), (-1, -1)], NotUnimodular),
])
def test_validation_errors(rays, err):
    with pytest.raises(err):
        validate_fan(rays)


def test_corner_blowup_p2():
    f = corner_blowup(p2_fan(), 0)
    assert f.rays == ((1, 0), (1, 1), (0, 1), (-1, -1))
    assert self_intersections(f) == [0, -1, 0, 1]


def test_blowdown_needs_minus_one():
    with pytest.raises(NotMinusOneRay):
        corner_blowdown(p2_fan(), 0)


def test_mmp_examples():
    f = corner_blowup(corner_blowup(p2_fan(), 1), 0)
    res = mmp_reduce(f)
    assert res.fan.k in (3, 4)
    assert mmp_reduce(hirzebruch_fan(3)).name == "F3"
    assert mmp_reduce(p2_fan()).name == "P2"


@given(toric_models(toric=True))
def test_selfint_matches_brute_force(model):
    assert list(model.n) == brute_selfint(model.fan.rays)


@given(toric_models(toric=True), st.integers(0, 20))
def test_blowup_then_blowdown(model, i):
    i %= model.k
    big = corner_blowup(model.fan, i)
    slot = blowup_slot(model.k, i)
    assert big.n[slot] == -1
    # self-intersection sum drops by 3 - 2 per blow-up: sum n = 12 - 3k
    assert sum(big.n) == 12 - 3 * big.k
    assert corner_blowdown(big, slot).same_fan(model.fan)


@given(toric_models(toric=True))
def test_mmp_terminates_minimal(model):
    res = mmp_reduce(model.fan)
    assert res.fan.k in (3, 4)
    assert res.kind in ("P2", "F")
    if res.fan.k == 4:
        assert sorted(res.fan.n) == sorted([0, res.a, 0, -res.a])


@given(toric_models(toric=True))
def test_unimodular_consecutive(model):
    r = model.fan.rays
    assert all(det(r[i], r[(i + 1) % len(r)]) == 1 for i in range(len(r)))
