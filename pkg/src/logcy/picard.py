"""Picard lattice, K-theory classes and line-bundle cohomology on toric models.

A divisor class is a toric part (coefficients of pi^* D_i) plus an
exceptional part (coefficients of Gamma_ij, flattened ray by ray).  The toric
part is defined modulo the relations (<u, v_i>)_i; the canonical
representative has its first two toric coefficients zero, which is always
reachable because v_0, v_1 is a lattice basis.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import IndexOutOfRange, ModelMismatch, NegativeH1, NonLineBundleEntry
from .fan import Fan, det
from .model import ToricModel


def _solve2(v, w, a, b):
    """Integer m with <m, v> = a and <m, w> = b, given det(v, w) = 1."""
    # rows v, w; inverse is [[w1, -v1], [-w0, v0]]
    return (w[1] * a - v[1] * b, -w[0] * a + v[0] * b)


def exc_index(model):
    """List of (ray i, copy j) in storage order, 0-based."""
    return [(i, j) for i in range(model.k) for j in range(model.m[i])]


@dataclass(frozen=True)
class DivClass:
    model: ToricModel = field(compare=True, repr=False)
    toric: tuple
    exc: tuple

    @staticmethod
    def make(model, toric, exc=None):
        toric = [int(x) for x in toric]
        exc = tuple(int(x) for x in exc) if exc is not None else (0,) * model.total_m
        if len(toric) != model.k or len(exc) != model.total_m:
            raise ModelMismatch("coefficient vector lengths do not match the model")
        v0, v1 = model.fan.rays[0], model.fan.rays[1]
        u = _solve2(v0, v1, toric[0], toric[1])
        red = tuple(t - (u[0] * v[0] + u[1] * v[1]) for t, v in zip(toric, model.fan.rays))
        assert red[0] == red[1] == 0
        return DivClass(model, red, exc)

    def _same(self, other):
        if self.model != other.model:
            raise ModelMismatch("classes live on different models")

    def __add__(self, other):
        self._same(other)
        return DivClass.make(self.model, [a + b for a, b in zip(self.toric, other.toric)],
                             [a + b for a, b in zip(self.exc, other.exc)])

    def __neg__(self):
        return DivClass(self.model, tuple(-a for a in self.toric), tuple(-a for a in self.exc))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return DivClass(self.model, tuple(c * a for a in self.toric), tuple(c * a for a in self.exc))

    def __repr__(self):
        return f"DivClass(toric={list(self.toric)}, exc={list(self.exc)})"


def zero(model):
    return DivClass.make(model, [0] * model.k)


def toric_divisor(model, a):
    return DivClass.make(model, a)


def pullback(model, i):
    t = [0] * model.k
    t[i % model.k] = 1
    return DivClass.make(model, t)


def gamma(model, i, j=0):
    """Gamma_{ij}: total transform of the j-th exceptional curve over D_i (0-based)."""
    idx = exc_index(model).index((i % model.k, j))
    e = [0] * model.total_m
    e[idx] = 1
    return DivClass.make(model, [0] * model.k, e)


def boundary(model, i):
    """D~_i = pi^* D_i - sum_j Gamma_ij."""
    i %= model.k
    e = [0] * model.total_m
    for idx, (r, _) in enumerate(exc_index(model)):
        if r == i:
            e[idx] = -1
    t = [0] * model.k
    t[i] = 1
    return DivClass.make(model, t, e)


def canonical(model):
    return DivClass.make(model, [-1] * model.k, [1] * model.total_m)


@lru_cache(maxsize=256)
def _gram_toric(fan):
    q = fan.adjacency()
    # the pairing must kill the two relation vectors
    for u in ((1, 0), (0, 1)):
        rel = np.array([u[0] * v[0] + u[1] * v[1] for v in fan.rays], dtype=np.int64)
        assert not (q @ rel).any()
    return q


def intersection_pairing(a, b):
    a._same(b)
    q = _gram_toric(a.model.fan)
    t = int(np.array(a.toric, dtype=np.int64) @ q @ np.array(b.toric, dtype=np.int64))
    return t - sum(x * y for x, y in zip(a.exc, b.exc))


def rr_chi(d):
    """Riemann-Roch: chi(O(D)) = 1 + D.(D - K)/2."""
    twice = intersection_pairing(d, d) - intersection_pairing(d, canonical(d.model))
    assert twice % 2 == 0, "D.(D-K) must be even"
    return 1 + twice // 2


@dataclass(frozen=True)
class KClassY:
    r: int
    c1: DivClass
    chi: int

    def __add__(self, o):
        return KClassY(self.r + o.r, self.c1 + o.c1, self.chi + o.chi)

    def __neg__(self):
        return KClassY(-self.r, -self.c1, -self.chi)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        return KClassY(c * self.r, self.c1.scale(c), c * self.chi)

    @property
    def model(self):
        return self.c1.model


def line_bundle(d):
    return KClassY(1, d, rr_chi(d))


def skyscraper_exceptional(model, i, j=0):
    """Class of O_E(-1) for the exceptional curve Gamma_ij: (0, Gamma, 0)."""
    return KClassY(0, gamma(model, i, j), 0)


def euler_pairing_Y(x, y):
    """chi(x, y) = r_x chi_y + r_y chi_x - r_x r_y - c_x.c_y + r_y K.c_x."""
    if x.model != y.model:
        raise ModelMismatch("classes live on different models")
    k = canonical(x.model)
    return (x.r * y.chi + y.r * x.chi - x.r * y.r - intersection_pairing(x.c1, y.c1)
            + y.r * intersection_pairing(k, x.c1))


def tensor_class(x, l):
    """x tensor O(L) on (r, c1, chi)."""
    k = canonical(x.model)
    twice = intersection_pairing(l, l) - intersection_pairing(k, l)
    return KClassY(x.r, x.c1 + l.scale(x.r), x.chi + intersection_pairing(x.c1, l) + x.r * twice // 2)


# -- toric cohomology oracle -------------------------------------------------

def _upper(fan, idx, a):
    """Upper bound on <u, v_idx> over the polygon {<u, v_i> >= -a_i}."""
    w = fan.rays[idx]
    w = (-w[0], -w[1])
    k = fan.k
    for p in range(k):
        vp, vq = fan.rays[p], fan.rays[(p + 1) % k]
        al, be = det(w, vq), det(vp, w)
        if al >= 0 and be >= 0:
            # -v_idx = al v_p + be v_q, so <u, v_idx> <= al a_p + be a_q
            return al * a[p] + be * a[(p + 1) % k]
    raise AssertionError("fan is not complete")


def h0_toric(fan, a):
    a = [int(x) for x in a]
    v0, v1 = fan.rays[0], fan.rays[1]
    minv = np.array([[v1[1], -v0[1]], [-v1[0], v0[0]]], dtype=np.int64)
    return _kernels.count_points(minv, np.array(fan.rays, dtype=np.int64), np.array(a, dtype=np.int64),
                                 -a[0], _upper(fan, 0, a), -a[1], _upper(fan, 1, a))


def chi_toric(fan, a):
    q = _gram_toric(fan)
    a = np.array(a, dtype=np.int64)
    d2 = int(a @ q @ a)
    kd = -int((q @ a).sum())
    assert (d2 - kd) % 2 == 0
    return 1 + (d2 - kd) // 2


def toric_cohomology(fan, a):
    if len(a) != fan.k:
        raise ModelMismatch(f"divisor has {len(a)} coefficients, fan has {fan.k} rays")
    h0 = h0_toric(fan, a)
    h2 = h0_toric(fan, [-1 - x for x in a])
    h1 = h0 + h2 - chi_toric(fan, a)
    if h1 < 0:
        raise NegativeH1(f"h1 = {h1} for divisor {list(a)}")
    return h0, h1, h2


# -- collections ---------------------------------------------------------------

@dataclass(frozen=True)
class Entry:
    cls: KClassY
    witness: DivClass = None
    label: str = ""


@dataclass(frozen=True)
class Collection:
    model: ToricModel
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def classes(self):
        return [e.cls for e in self.entries]


def _recognise(cls, label):
    if cls.r == 1 and cls.chi == rr_chi(cls.c1):
        return Entry(cls, cls.c1, label)
    return Entry(cls, None, label)


def standard_collection(model):
    ents = [Entry(line_bundle(zero(model)), zero(model), "O")]
    for i in reversed(range(model.k)):
        for j in reversed(range(model.m[i])):
            g = gamma(model, i, j)
            ents.append(Entry(line_bundle(g), g, f"O(G{i + 1},{j + 1})"))
    acc = zero(model)
    for i in range(model.k - 1):
        acc = acc + pullback(model, i)
        ents.append(Entry(line_bundle(acc), acc, "O(" + "+".join(f"D{t + 1}" for t in range(i + 1)) + ")"))
    return Collection(model, tuple(ents))


def toric_line_collection(model, divisors):
    ents = []
    for a in divisors:
        d = toric_divisor(model, a)
        ents.append(Entry(line_bundle(d), d))
    return Collection(model, tuple(ents))


def mutate_collection(c, i, direction):
    if not 0 <= i < len(c) - 1:
        raise IndexOutOfRange(f"mutation index {i} out of range for length {len(c)}")
    e, f = c.entries[i], c.entries[i + 1]
    ents = list(c.entries)
    if direction == "left":
        new = f.cls - e.cls.scale(euler_pairing_Y(e.cls, f.cls))
        ents[i], ents[i + 1] = _recognise(new, f"L({f.label})"), e
    elif direction == "right":
        new = e.cls - f.cls.scale(euler_pairing_Y(e.cls, f.cls))
        ents[i], ents[i + 1] = f, _recognise(new, f"R({e.label})")
    else:
        raise ValueError(f"direction must be 'left' or 'right', not {direction!r}")
    return Collection(c.model, tuple(ents))


def transform_collection(c, op, l=None):
    if op == "tensor":
        ents = []
        for e in c.entries:
            cls = tensor_class(e.cls, l)
            ents.append(Entry(cls, e.witness + l if e.witness is not None else None, e.label))
        return Collection(c.model, tuple(ents))
    if op == "serre_cycle":
        mk = -canonical(c.model)
        first = c.entries[0]
        moved = Entry(tensor_class(first.cls, mk),
                      first.witness + mk if first.witness is not None else None, first.label + "(-K)")
        return Collection(c.model, c.entries[1:] + (moved,))
    if op == "dualize":
        if any(e.witness is None for e in c.entries):
            raise NonLineBundleEntry("dualize needs a line-bundle witness on every entry")
        return Collection(c.model, tuple(Entry(line_bundle(-e.witness), -e.witness, e.label + "^v")
                                         for e in reversed(c.entries)))
    raise ValueError(f"unknown transform {op!r}")


def gram(c):
    cl = c.classes
    return [[euler_pairing_Y(a, b) for b in cl] for a in cl]


def support_function(fan, a):
    k = fan.k
    return [_solve2(fan.rays[i], fan.rays[(i + 1) % k], -a[i], -a[(i + 1) % k]) for i in range(k)]


def slope_direction(fan, i):
    """u_i with <u_i, v_i> = 0 and <u_i, v_{i+1}> = -1."""
    return _solve2(fan.rays[i], fan.rays[(i + 1) % fan.k], 0, -1)


def exceptionality_certificate(model):
    """Cohomology-vanishing check of the standard collection on a purely toric model.

    For i > j every degree of H^*(E_j - E_i) must vanish.  Returns
    (ok, failures, forward) where ``forward`` lists pairs with higher
    cohomology in the forward direction E_i - E_j; these do not spoil
    exceptionality, only strongness (they occur along (-2)-curves).
    """
    if model.total_m:
        raise ModelMismatch("the toric oracle needs m = 0")
    k = model.k
    divs = [[1] * i + [0] * (k - i) for i in range(k)]
    failures, forward = [], []
    for i in range(k):
        for j in range(i):
            down = [x - y for x, y in zip(divs[j], divs[i])]
            up = [-x for x in down]
            hd, hu = toric_cohomology(model.fan, down), toric_cohomology(model.fan, up)
            if hd != (0, 0, 0):
                failures.append({"i": i, "j": j, "h_down": list(hd)})
            if hu[1:] != (0, 0):
                forward.append({"i": i, "j": j, "h_up": list(hu)})
    return not failures, failures, forward
