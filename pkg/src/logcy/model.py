"""Toric models: a smooth fan plus interior blow-up counts m_i per ray."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import fan as fanmod
from .errors import ModelError, NoInteriorBlowup, NoOppositeRay
from .fan import Fan, det

REFLECT = ((0, 1), (1, 0))


@dataclass(frozen=True)
class ToricModel:
    fan: Fan
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if len(self.m) != self.fan.k:
            raise ModelError(f"m has length {len(self.m)}, fan has {self.fan.k} rays")
        if any(x < 0 for x in self.m):
            raise ModelError("interior blow-up counts must be non-negative")

    @property
    def k(self):
        return self.fan.k

    @property
    def n(self):
        return self.fan.n

    @property
    def selfint(self):
        """D~_i . D~_i = n_i - m_i."""
        return tuple(a - b for a, b in zip(self.n, self.m))

    @property
    def total_m(self):
        return sum(self.m)

    def rotate(self, r):
        r %= self.k
        return ToricModel(self.fan.rotate_labels(r), self.m[r:] + self.m[:r])

    def reflect(self):
        """Reverse the cyclic orientation, keeping label 0: new order 0, k-1, ..., 1."""
        return ToricModel(self.fan.transform(REFLECT), (self.m[0],) + tuple(reversed(self.m[1:])))


def make_model(rays, m=None, normalise=False):
    f = fanmod.validate_fan(rays, normalise=normalise)
    return ToricModel(f, tuple(m) if m is not None else (0,) * f.k)


def corner_blowup(model, i):
    f = fanmod.corner_blowup(model.fan, i)
    slot = fanmod.blowup_slot(model.k, i)
    m = list(model.m)
    m.insert(slot, 0)
    return ToricModel(f, tuple(m))


def _shear_side(fan, v):
    # side of the line R v that gets sheared: the open half-plane missing ray 0,
    # or the counterclockwise side of ray 0 when ray 0 lies on the line
    u = fan.rays[0]
    d = det(v, u)
    if d != 0:
        return -1 if d > 0 else 1
    return 1 if u == v else -1


def elementary_transformation(model, i):
    """Slide one interior blow-up from ray i to the opposite ray.

    The new fan keeps the labels; rays on one side of the line through v_i
    are sheared by x -> x + |det(v_i, x)| v_i, which lowers n_i and raises
    n_opp by one.  The side is fixed by ray 0, so transforming back at the
    opposite ray undoes the shear exactly.
    """
    k = model.k
    i %= k
    j = model.fan.opposite(i)
    if j is None:
        raise NoOppositeRay(i)
    if model.m[i] == 0:
        raise NoInteriorBlowup(i)
    v = model.fan.rays[i]
    side = _shear_side(model.fan, v)
    rays = []
    for x in model.fan.rays:
        d = det(v, x)
        if d * side > 0:
            x = (x[0] + abs(d) * v[0], x[1] + abs(d) * v[1])
        rays.append(x)
    new_fan = fanmod.validate_fan(rays, normalise=False)
    m = list(model.m)
    m[i] -= 1
    m[j] += 1
    new = ToricModel(new_fan, tuple(m))
    n0, n1 = model.n, new.n
    assert n1[i] == n0[i] - 1 and n1[j] == n0[j] + 1
    assert all(n1[t] == n0[t] for t in range(k) if t not in (i, j))
    return new, (("elementary", i, j),)


def intersection_matrix(model):
    q = model.fan.adjacency()
    for i in range(model.k):
        q[i, i] = model.selfint[i]
    return q


def _det(rows):
    # fraction-free elimination, exact
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for t in range(c, n):
                    a[r][t] -= f * a[c][t]
    return int(d)


def definiteness(q):
    """'negative-definite', 'negative-semidefinite' or 'indefinite/other' for an integer matrix."""
    neg = (-np.asarray(q, dtype=object)).tolist()
    k = len(neg)
    leading = [_det([row[:s] for row in neg[:s]]) for s in range(1, k + 1)]
    if all(x > 0 for x in leading):
        return "negative-definite"
    for s in range(1, k + 1):
        for idx in combinations(range(k), s):
            if _det([[neg[r][c] for c in idx] for r in idx]) < 0:
                return "other"
    return "negative-semidefinite"


def boundary_profile(model):
    prof = model.selfint
    kind = definiteness(intersection_matrix(model))
    if kind == "negative-semidefinite":
        if all(s == -2 for s in prof) and model.k <= 9:
            kind = "strictly-negative-semidefinite"
        else:
            kind = "other"
    if kind == "strictly-negative-semidefinite":
        assert model.k <= 9
    return prof, kind


def deformation_invariants(model):
    k, sm = model.k, model.total_m
    return {"k": k, "sum_m": sm, "picard_rank": k - 2 + sm, "euler": k + sm}


def p2(m=(0, 0, 0)):
    return ToricModel(fanmod.p2_fan(), m)


def hirzebruch(a, m=(0, 0, 0, 0)):
    return ToricModel(fanmod.hirzebruch_fan(a), m)
