"""Vanishing-cycle calculus on the K-theory shadow of the k-punctured torus.

A class is (r, d) with d in Z^k: longitudes l(d) = (1, d), meridians
W_i = (0, e_i).  The pairing chi_D(x, y) = r_x sum(d_y) - r_y sum(d_x) is
antisymmetric, so tau_c(x) = x - chi_D(c, x) c is a transvection and
tau_c^n(x) = x - n chi_D(c, x) c.

Fibrations compare cycle by cycle up to a sign on each cycle (shifts are
invisible here); labels never take part in equality.
"""
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (IndexOutOfRange, KMismatch, KTooSmall, NoInteriorBlowup, NoOppositeRay,
                     NotStabilizingClass, NotStandardFibration)
from .model import ToricModel, corner_blowup, elementary_transformation


@dataclass(frozen=True)
class CurveClass:
    r: int
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))

    @property
    def k(self):
        return len(self.d)

    def __add__(self, o):
        _same_k(self, o)
        return CurveClass(self.r + o.r, tuple(a + b for a, b in zip(self.d, o.d)))

    def __neg__(self):
        return CurveClass(-self.r, tuple(-a for a in self.d))

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        return CurveClass(c * self.r, tuple(c * a for a in self.d))

    def vector(self):
        return (self.r,) + self.d

    def normalized(self):
        """Representative of {x, -x} whose first nonzero entry is positive."""
        for v in self.vector():
            if v:
                return self if v > 0 else -self
        return self

    def __repr__(self):
        if self.r == 1:
            return f"l{self.d}"
        return f"({self.r}, {self.d})"


def _same_k(x, y):
    if len(x.d) != len(y.d):
        raise KMismatch(f"classes on Sigma_{len(x.d)} and Sigma_{len(y.d)}")


def longitude(d):
    return CurveClass(1, d)


def meridian(k, i):
    d = [0] * k
    d[i % k] = 1
    return CurveClass(0, d)


def boundary_parallel(k, i):
    """b_{i,i+1}, taken as (0, e_{i+1} - e_i)."""
    d = [0] * k
    d[(i + 1) % k] += 1
    d[i % k] -= 1
    return CurveClass(0, d)


def equal_up_to_sign(x, y):
    return x == y or x == -y


def euler_pairing_D(x, y):
    _same_k(x, y)
    return x.r * sum(y.d) - y.r * sum(x.d)


def spherical_twist(c, x, power=1):
    return x - c.scale(power * euler_pairing_D(c, x))


def twist_matrix(c, power=1):
    dim = c.k + 1
    cv = np.array(c.vector(), dtype=np.int64)
    phi = np.full(dim, c.r, dtype=np.int64)
    phi[0] = -sum(c.d)
    return np.eye(dim, dtype=np.int64) - power * np.outer(cv, phi)


@dataclass(frozen=True)
class Fibration:
    k: int
    cycles: tuple
    labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        cyc = tuple(self.cycles)
        object.__setattr__(self, "cycles", cyc)
        if any(c.k != self.k for c in cyc):
            raise KMismatch("all cycles must live on the same Sigma_k")
        labels = self.labels
        if labels is None:
            labels = ("",) * len(cyc)
        labels = tuple(labels)
        if len(labels) != len(cyc):
            raise ValueError("one label per cycle")
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.cycles)

    def with_cycles(self, cycles, labels=None):
        return Fibration(self.k, tuple(cycles), self.labels if labels is None else labels)

    def equivalent(self, other):
        """Cycle-by-cycle equality up to sign."""
        return (self.k == other.k and len(self) == len(other)
                and all(equal_up_to_sign(a, b) for a, b in zip(self.cycles, other.cycles)))

    def normalized_key(self):
        return tuple(c.normalized().vector() for c in self.cycles)


def hurwitz_move(f, i, direction):
    if not 0 <= i < len(f) - 1:
        raise IndexOutOfRange(f"Hurwitz index {i} out of range for {len(f)} cycles")
    c = list(f.cycles)
    lab = list(f.labels)
    a, b = c[i], c[i + 1]
    if direction == "left":
        c[i], c[i + 1] = spherical_twist(a, b), a
    elif direction == "right":
        c[i], c[i + 1] = b, spherical_twist(b, a, -1)
    else:
        raise ValueError(f"direction must be 'left' or 'right', not {direction!r}")
    lab[i], lab[i + 1] = lab[i + 1], lab[i]
    return Fibration(f.k, tuple(c), tuple(lab))


def apply_global(f, word):
    """Apply a product of meridional twists to every cycle.

    ``word`` is a list of (i, power) read right to left, like composition.
    """
    cyc = list(f.cycles)
    for i, p in reversed(list(word)):
        w = meridian(f.k, i)
        cyc = [spherical_twist(w, x, p) for x in cyc]
    return f.with_cycles(cyc)


def run_script(f, script):
    """Replay a move list: ('left'|'right', i), ('global', word) or ('permute', perm)."""
    for step in script:
        kind = step[0]
        if kind in ("left", "right"):
            f = hurwitz_move(f, step[1], kind)
        elif kind == "global":
            f = apply_global(f, step[1])
        elif kind == "permute":
            f = permute_coordinates(f, step[1])
        elif kind == "reorder":
            perm = step[1]
            f = Fibration(f.k, tuple(f.cycles[p] for p in perm), tuple(f.labels[p] for p in perm))
        else:
            raise ValueError(f"unknown script step {step!r}")
    return f


def permute_coordinates(f, perm):
    """New coordinate t is old coordinate perm[t]."""
    cyc = [CurveClass(c.r, tuple(c.d[p] for p in perm)) for c in f.cycles]
    return f.with_cycles(cyc)


def total_monodromy(f):
    if not len(f):
        return np.eye(f.k + 1, dtype=np.int64)
    arr = np.array([c.vector() for c in f.cycles], dtype=np.int64)
    return _kernels.compose_twists(arr)


def meridional_monodromy(k, powers):
    """Matrix of prod_i tau_{W_i}^{p_i}: (r, d) -> (r, d + r p)."""
    m = np.eye(k + 1, dtype=np.int64)
    for i, p in enumerate(powers):
        m[1 + i, 0] += p
    return m


def reference_monodromy(model, with_meridians=False):
    """prod tau_{W_i}^{-n_i-2}; with meridians the exponent becomes m_i - n_i - 2."""
    extra = model.m if with_meridians else (0,) * model.k
    return meridional_monodromy(model.k, [e - x - 2 for x, e in zip(model.n, extra)])


def toric_monodromy(f, model):
    """tau_{V_0} ... tau_{V_{k-1}}: the product over the non-meridian cycles."""
    return total_monodromy(Fibration(f.k, f.cycles[model.total_m:]))


# -- standard fibrations -------------------------------------------------------

def standard_fibration(model):
    """Meridians W_{i,j} by ray, then V_l = l((D_0 + ... + D_{l-1}) . D_j), l = 0..k-1.

    Computed straight from the fan adjacency and self-intersections.
    """
    k = model.k
    q = model.fan.adjacency()
    cycles, labels = [], []
    for i in range(k):
        for j in range(model.m[i]):
            cycles.append(meridian(k, i))
            labels.append(f"W{i + 1},{j + 1}")
    acc = np.zeros(k, dtype=np.int64)
    for l in range(k):
        cycles.append(longitude(acc.tolist()))
        labels.append(f"V{l}")
        acc = acc + q[l]
    return Fibration(k, tuple(cycles), tuple(labels))


def _require_standard(f, model):
    if not f.equivalent(standard_fibration(model)):
        raise NotStandardFibration("fibration is not the standard one for this model")


def _insert_zero(c, slot):
    d = list(c.d)
    d.insert(slot, 0)
    return CurveClass(c.r, d)


def stabilization_class(k_new, slot):
    """S_E = (0, e_prev - e_E + e_next) on Sigma_{k_new}, E at ``slot``."""
    d = [0] * k_new
    d[slot] -= 1
    d[(slot - 1) % k_new] += 1
    d[(slot + 1) % k_new] += 1
    return CurveClass(0, d)


def stabilize_with_script(f, model, i):
    _require_standard(f, model)
    k = model.k
    i %= k
    slot = 0 if i == k - 1 else i + 1
    s_e = stabilization_class(k + 1, slot)
    nm = model.total_m
    cyc = [_insert_zero(c, slot) for c in f.cycles]
    labels = list(f.labels)
    g = Fibration(k + 1, tuple(cyc[:nm] + [s_e] + cyc[nm:]),
                  tuple(labels[:nm] + ["S_E"] + labels[nm:]))
    script = []
    pos = nm  # position of S_E
    if i == k - 1:
        script.append(("right", pos))
    else:
        # carry S_E to the end; its class is fixed by the total monodromy
        for p in range(pos, pos + k):
            script.append(("right", p))
        end = pos + k
        # pull V_{k-1}, ..., V_{i+1} across it
        for p in range(end - 1, nm + i, -1):
            script.append(("right", p))
        script.append(("right", nm + i + 1))
    out = run_script(g, script)
    return out, [("stabilize", slot)] + script


def stabilize_corner(f, model, i):
    return stabilize_with_script(f, model, i)[0]


def destabilize(f, s, slot):
    k = f.k
    if not 0 <= s < len(f):
        raise IndexOutOfRange(f"cycle index {s} out of range")
    if not 0 <= slot < k or k < 2:
        raise NotStabilizingClass(s, slot)
    if not equal_up_to_sign(f.cycles[s], stabilization_class(k, slot)):
        raise NotStabilizingClass(s, slot)
    cyc, lab = [], []
    for t, c in enumerate(f.cycles):
        if t == s:
            continue
        cyc.append(CurveClass(c.r, c.d[:slot] + c.d[slot + 1:]))
        lab.append(f.labels[t])
    return Fibration(k - 1, tuple(cyc), tuple(lab))


def deleted_entries(f, s, slot):
    """Coordinates a destabilisation at ``slot`` throws away, excluding cycle s."""
    return [c.d[slot] for t, c in enumerate(f.cycles) if t != s]


def cap_puncture(f, i):
    """Merge coordinates i and i+1; capping the last node puts the merged slot first."""
    k = f.k
    if k < 2:
        raise KTooSmall("need at least two punctures to cap")
    i %= k
    cyc = []
    for c in f.cycles:
        d = list(c.d)
        if i == k - 1:
            d = [d[-1] + d[0]] + d[1:-1]
        else:
            d[i:i + 2] = [d[i] + d[i + 1]]
        cyc.append(CurveClass(c.r, d))
    return Fibration(k - 1, tuple(cyc), f.labels)


def dual_classes(f):
    """V*_i = tau_{V_0} ... tau_{V_{i-1}} V_i, in index order."""
    out = []
    for i, v in enumerate(f.cycles):
        x = v
        for c in reversed(f.cycles[:i]):
            x = spherical_twist(c, x)
        out.append(x)
    return out


def dual_collection(f):
    d = dual_classes(f)
    labels = tuple(f"{lab or 'V' + str(t)}*" for t, lab in enumerate(f.labels))
    return Fibration(f.k, tuple(reversed(d)), tuple(reversed(labels)))


def dualize_fibration(f):
    cyc = [CurveClass(c.r, tuple(-x for x in c.d)) for c in reversed(f.cycles)]
    return Fibration(f.k, tuple(cyc), tuple(reversed(f.labels)))


# -- relabelling ---------------------------------------------------------------

def _meridian_sort_script(f, nm, order_key):
    """Bubble the first nm cycles (meridians) into the order given by order_key.

    Meridians pair to zero, so these swaps change no class.
    """
    keys = [order_key(c) for c in f.cycles[:nm]]
    script = []
    for a in range(nm):
        for b in range(nm - 1 - a):
            if keys[b] > keys[b + 1]:
                keys[b], keys[b + 1] = keys[b + 1], keys[b]
                script.append(("right", b))
    return script


def _meridian_slot(c):
    return next(t for t, x in enumerate(c.d) if x)


def cyclic_shift_script(f, model):
    """Relabel D_0, ..., D_{k-1} as D_1, ..., D_{k-1}, D_0."""
    k, nm = model.k, model.total_m
    word = [(k - 1, -1), (0, -model.n[0]), (1, -1)]
    script = [("global", word)]
    g = apply_global(f, word)
    for p in range(nm, nm + k - 1):
        script.append(("right", p))
    g = run_script(g, script[1:])
    perm = list(range(1, k)) + [0]
    script.append(("permute", perm))
    g = permute_coordinates(g, perm)
    s2 = _meridian_sort_script(g, nm, _meridian_slot)
    g = run_script(g, s2)
    return g, script + s2


def reverse_permutation(k):
    return [0] + list(range(k - 1, 0, -1))


def relabel_ops(f, model, op, depth=2):
    _require_standard(f, model)
    if op == "cyclic_shift":
        g, script = cyclic_shift_script(f, model)
        target = standard_fibration(model.rotate(1))
        if not g.equivalent(target):
            raise NotStandardFibration("cyclic shift did not land on the relabelled standard fibration")
        return g, script
    if op == "reverse":
        rmodel = model.reflect()
        target = standard_fibration(rmodel)
        perm = reverse_permutation(model.k)
        g = permute_coordinates(f, perm)
        nm = model.total_m
        s2 = _meridian_sort_script(g, nm, _meridian_slot)
        g = run_script(g, s2)
        found = hurwitz_equiv_search(g, target, depth=depth)
        script = None if found is None else [("permute", perm)] + s2 + found
        return target, script
    raise ValueError(f"unknown relabelling {op!r}")


# -- elementary transformation script -----------------------------------------

def _core_elem_script(f, model, j):
    """Script for an elementary transformation at ray j whose opposite ray is the last one."""
    k, nm = model.k, model.total_m
    # last copy of W_j among the meridians
    start = sum(model.m[:j])
    p = start + model.m[j] - 1
    script = []
    # carry W_j to the very end
    for t in range(p, len(f) - 1):
        script.append(("right", t))
    end = len(f) - 1
    # pull V_{k-1}, ..., V_{j+1} across it
    for t in range(end - 1, nm - 1 + j, -1):
        script.append(("right", t))
    # left-mutate it back over V_j, ..., V_0
    pos = nm - 1 + j + 1
    for t in range(pos - 1, nm - 2, -1):
        script.append(("left", t))
    return script


def elem_trans_script(f, model, i):
    """Hurwitz/global script from the standard fibration of model to that of its
    elementary transformation at ray i.  Returns (fibration, script, trace)."""
    k = model.k
    i %= k
    opp = model.fan.opposite(i)
    if opp is None:
        raise NoOppositeRay(i)
    if model.m[i] == 0:
        raise NoInteriorBlowup(i)
    _require_standard(f, model)
    r = (opp + 1) % k
    script = []
    g, cur = f, model
    for _ in range(r):
        g, s = cyclic_shift_script(g, cur)
        script += s
        cur = cur.rotate(1)
    j = (i - r) % k
    s = _core_elem_script(g, cur, j)
    g = run_script(g, s)
    script += s
    new_cur, trace = elementary_transformation(cur, j)
    if not g.equivalent(standard_fibration(new_cur)):
        raise NotStandardFibration("elementary-transformation script missed the target")
    for _ in range((k - r) % k):
        g, s = cyclic_shift_script(g, new_cur)
        script += s
        new_cur = new_cur.rotate(1)
    target_model, _ = elementary_transformation(model, i)
    if not g.equivalent(standard_fibration(target_model)):
        raise NotStandardFibration("relabelling back after the elementary transformation failed")
    return g, script, trace


# -- search --------------------------------------------------------------------

def _moves(f, word_len, exps):
    n = len(f)
    for i in range(n - 1):
        yield ("left", i), hurwitz_move(f, i, "left"), exps
        yield ("right", i), hurwitz_move(f, i, "right"), exps
    for j in range(f.k):
        for p in (1, -1):
            e = exps[j] + p
            if abs(e) <= word_len:
                ne = exps[:j] + (e,) + exps[j + 1:]
                yield ("global", [(j, p)]), apply_global(f, [(j, p)]), ne


def _inverse(step):
    kind = step[0]
    if kind == "left":
        return ("right", step[1])
    if kind == "right":
        return ("left", step[1])
    (j, p), = step[1]
    return ("global", [(j, -p)])


def hurwitz_equiv_search(a, b, depth=6, word_len=2, max_states=200000):
    """Bidirectional breadth-first search over Hurwitz moves and meridional twists.

    Cycles are compared up to sign.  Returns a script taking a to b, or None
    once the bound is exhausted.  A hit certifies equality of classes only.
    """
    if a.k != b.k or len(a) != len(b):
        return None
    if np.trace(total_monodromy(a)) != np.trace(total_monodromy(b)):
        return None
    if a.normalized_key() == b.normalized_key():
        return []
    zero = (0,) * a.k
    fwd = {a.normalized_key(): []}
    bwd = {b.normalized_key(): []}
    fq = deque([(a, zero)])
    bq = deque([(b, zero)])
    fd, bd = (depth + 1) // 2, depth // 2

    def expand(queue, seen, other, level, forward):
        nxt = deque()
        for f, ex in queue:
            path = seen[f.normalized_key()]
            for step, g, ne in _moves(f, word_len, ex):
                key = g.normalized_key()
                if key in seen:
                    continue
                seen[key] = path + [step]
                if key in other:
                    if forward:
                        return seen[key] + [_inverse(s) for s in reversed(other[key])], nxt
                    return other[key] + [_inverse(s) for s in reversed(seen[key])], nxt
                nxt.append((g, ne))
                if len(seen) > max_states:
                    return None, deque()
        return None, nxt

    for level in range(max(fd, bd)):
        if level < fd:
            hit, fq = expand(fq, fwd, bwd, level, True)
            if hit is not None:
                return hit
        if level < bd:
            hit, bq = expand(bq, bwd, fwd, level, False)
            if hit is not None:
                return hit
    return None
