"""Smooth complete fans in Z^2.

Rays are stored in label order.  ``validate_fan`` rotates user input so the
ray of smallest angle comes first; the blow-up operations keep labels stable
instead, and ``Fan.canonical`` recovers the rotation-normalised form when two
fans need comparing as fans.
"""
from dataclasses import dataclass
from functools import cached_property, cmp_to_key
from math import gcd

import numpy as np

from .errors import (NonPrimitiveRay, NotComplete, NotCounterclockwise, NotMinusOneRay,
                     NotUnimodular, TooFewRays)


def det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def is_primitive(v):
    return gcd(int(v[0]), int(v[1])) == 1


def _half(v):
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def angle_cmp(u, v):
    """Exact comparison of angles in [0, 2pi) measured from the positive x-axis."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    d = det(u, v)
    return -1 if d > 0 else (1 if d < 0 else 0)


angle_key = cmp_to_key(angle_cmp)


@dataclass(frozen=True)
class Fan:
    rays: tuple

    @property
    def k(self):
        return len(self.rays)

    def ray(self, i):
        return self.rays[i % self.k]

    @cached_property
    def n(self):
        return tuple(self_intersections(self))

    def opposite(self, i):
        v = self.ray(i)
        target = (-v[0], -v[1])
        for j, w in enumerate(self.rays):
            if w == target:
                return j
        return None

    def adjacency(self):
        """Intersection matrix of the toric boundary: n_i on the diagonal, 1 for neighbours."""
        k = self.k
        q = np.zeros((k, k), dtype=np.int64)
        for i in range(k):
            q[i, i] = self.n[i]
            q[i, (i + 1) % k] = 1
            q[(i + 1) % k, i] = 1
        return q

    def canonical(self):
        j = min(range(self.k), key=lambda i: angle_key(self.rays[i]))
        return Fan(self.rays[j:] + self.rays[:j])

    def same_fan(self, other):
        return self.canonical().rays == other.canonical().rays

    def rotate_labels(self, r):
        """Relabel so that old label r becomes label 0."""
        r %= self.k
        return Fan(self.rays[r:] + self.rays[:r])

    def transform(self, m):
        """Image under an integral 2x2 matrix of determinant +-1, keeping label 0 first.

        A determinant -1 matrix reverses the cyclic order, so the remaining
        labels are read backwards to stay counterclockwise.
        """
        (a, b), (c, d_) = m
        img = [(a * x + b * y, c * x + d_ * y) for x, y in self.rays]
        if a * d_ - b * c == 1:
            return Fan(tuple(img))
        if a * d_ - b * c == -1:
            return Fan((img[0],) + tuple(reversed(img[1:])))
        raise ValueError("matrix is not unimodular")

    def to_list(self):
        return [list(v) for v in self.rays]


def _check(rays):
    k = len(rays)
    for i, v in enumerate(rays):
        if not is_primitive(v):
            raise NonPrimitiveRay(i, v)
    if k < 3:
        raise TooFewRays(f"a complete fan needs at least 3 rays, got {k}")
    dets = [det(rays[i], rays[(i + 1) % k]) for i in range(k)]
    if any(d <= 0 for d in dets):
        directions_distinct = len(set(rays)) == k
        descents = sum(angle_cmp(rays[(i + 1) % k], rays[i]) < 0 for i in range(k))
        if directions_distinct and descents == 1:
            raise NotComplete("rays are ordered counterclockwise but leave a gap of angle >= pi")
        raise NotCounterclockwise("consecutive rays are not in counterclockwise order")
    wraps = sum(angle_cmp(rays[(i + 1) % k], rays[i]) < 0 for i in range(k))
    if wraps != 1:
        raise NotComplete(f"rays wind {wraps} times around the origin")
    for i, d in enumerate(dets):
        if d != 1:
            raise NotUnimodular(i, d)


def validate_fan(rays, normalise=True):
    if rays is None or len(rays) == 0:
        raise TooFewRays("empty ray list")
    rays = tuple((int(v[0]), int(v[1])) for v in rays)
    _check(rays)
    fan = Fan(rays)
    return fan.canonical() if normalise else fan


def self_intersections(fan):
    out = []
    k = fan.k
    for i in range(k):
        v, p, q = fan.rays[i], fan.rays[i - 1], fan.rays[(i + 1) % k]
        s = (p[0] + q[0], p[1] + q[1])
        # s is an integer multiple of v since det(p, v) = det(v, q) = 1
        n = -(s[0] // v[0]) if v[0] else -(s[1] // v[1])
        assert (s[0] + n * v[0], s[1] + n * v[1]) == (0, 0)
        out.append(n)
    return out


def corner_blowup(fan, i):
    """Insert v_i + v_{i+1}.  Blowing up the last corner puts the new ray at label 0."""
    k = fan.k
    i %= k
    v, w = fan.rays[i], fan.rays[(i + 1) % k]
    e = (v[0] + w[0], v[1] + w[1])
    if i == k - 1:
        return Fan((e,) + fan.rays)
    return Fan(fan.rays[:i + 1] + (e,) + fan.rays[i + 1:])


def blowup_slot(k, i):
    """Label of the exceptional ray produced by corner_blowup(fan, i) on k rays."""
    i %= k
    return 0 if i == k - 1 else i + 1


def corner_blowdown(fan, i):
    i %= fan.k
    if fan.n[i] != -1:
        raise NotMinusOneRay(i, fan.n[i])
    return Fan(fan.rays[:i] + fan.rays[i + 1:])


@dataclass(frozen=True)
class MMPResult:
    fan: Fan
    trace: tuple  # (label at time of removal, ray) pairs
    kind: str     # "P2" or "F"
    a: int = 0

    @property
    def name(self):
        return "P2" if self.kind == "P2" else f"F{self.a}"


def minimal_kind(fan):
    if fan.k == 3:
        return "P2", 0
    if fan.k == 4:
        n = fan.n
        if n[0] == n[2] == 0 and n[1] == -n[3]:
            return "F", abs(n[1])
        if n[1] == n[3] == 0 and n[0] == -n[2]:
            return "F", abs(n[0])
    raise ValueError(f"fan with self-intersections {fan.n} is not P2 or a Hirzebruch surface")


def mmp_reduce(fan):
    trace = []
    while fan.k > 3:
        try:
            i = fan.n.index(-1)
        except ValueError:
            break
        trace.append((i, fan.rays[i]))
        fan = corner_blowdown(fan, i)
    kind, a = minimal_kind(fan)
    return MMPResult(fan, tuple(trace), kind, a)


def p2_fan():
    return Fan(((1, 0), (0, 1), (-1, -1)))


def hirzebruch_fan(a):
    """F_a with self-intersections (0, a, 0, -a)."""
    return Fan(((1, 0), (0, 1), (-1, -a), (0, -1)))
