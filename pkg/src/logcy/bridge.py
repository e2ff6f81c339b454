"""K-level mirror bridge: restriction to the boundary cycle and certificates.

Every check here compares classes only.  A pass is a necessary-condition
certificate for the corresponding statement about objects or Lagrangians.
"""
import os
import random
from functools import lru_cache
from dataclasses import dataclass, field

import numpy as np

from . import fibration as fb
from .errors import ModelError, ModelMismatch, NonLineBundleEntry, NotExceptionalAtChiLevel
from .fan import hirzebruch_fan, p2_fan
from .model import ToricModel, corner_blowup, elementary_transformation
from .picard import (Collection, DivClass, Entry, KClassY, boundary, canonical, euler_pairing_Y,
                     exceptionality_certificate, gamma, intersection_pairing, line_bundle,
                     mutate_collection, pullback, standard_collection, tensor_class)


@dataclass
class Certificate:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    counterexample: dict = None

    def to_dict(self):
        return {"certificate": self.name, "passed": bool(self.passed),
                "class_level_only": True,
                "details": _plain(self.details),
                "counterexample": _plain(self.counterexample)}


def _plain(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, fb.CurveClass):
        return {"r": x.r, "d": list(x.d)}
    return x


@dataclass(frozen=True)
class MirrorPair:
    model: ToricModel
    collection: Collection
    fibration: fb.Fibration

    def __post_init__(self):
        for e, c in zip(self.collection.entries, self.fibration.cycles):
            if not fb.equal_up_to_sign(restrict_class(e.cls, self.model), c):
                raise ModelMismatch("fibration does not restrict the collection")


@lru_cache(maxsize=512)
def _restriction_matrix(model):
    # rows: toric basis divisors then exceptional curves, paired with each D~_j
    bd = [boundary(model, j) for j in range(model.k)]
    basis = [pullback(model, t) for t in range(model.k)]
    basis += [DivClass.make(model, [0] * model.k, [int(s == t) for s in range(model.total_m)])
              for t in range(model.total_m)]
    return np.array([[intersection_pairing(b, d) for d in bd] for b in basis], dtype=np.int64)


def restrict_class(x, model):
    if x.model != model:
        raise ModelMismatch("class lives on another model")
    coeffs = np.array(tuple(x.c1.toric) + tuple(x.c1.exc), dtype=np.int64)
    return fb.CurveClass(x.r, tuple((coeffs @ _restriction_matrix(model)).tolist()))


def build_fibration(model, collection):
    cycles, labels = [], []
    for e in collection.entries:
        if e.cls.r != 1 or e.witness is None:
            raise NonLineBundleEntry(f"entry {e.label or e.cls} is not a line bundle")
        cycles.append(restrict_class(e.cls, model))
        labels.append(e.label)
    return fb.Fibration(model.k, tuple(cycles), tuple(labels))


def standard_script(model):
    """Left mutations carrying each O(Gamma) over O, then meridian sorting by ray."""
    nm = model.total_m
    script = [("left", p) for p in range(nm)]
    # meridians come out in descending ray order; reverse them by trivial swaps
    for a in range(nm):
        for b in range(nm - 1 - a):
            script.append(("right", b))
    return script


def _mutate(c, script):
    for d, i in script:
        c = mutate_collection(c, i, d)
    return c


def mirror_pair(model):
    coll = standard_collection(model)
    script = standard_script(model)
    f = fb.run_script(build_fibration(model, coll), script)
    mut = _mutate(coll, script)
    ref = fb.standard_fibration(model)
    if not f.equivalent(ref):
        raise AssertionError("collection side disagrees with the direct construction")
    return MirrorPair(model, mut, fb.Fibration(model.k, f.cycles, ref.labels))


def build_standard(model):
    return mirror_pair(model).fibration


# -- pulling classes back along a corner blow-up ------------------------------

def pullback_divisor(d, new_model, i):
    old = d.model
    k = old.k
    slot = 0 if i % k == k - 1 else i % k + 1
    a = list(d.toric)
    a.insert(slot, a[i % k] + a[(i + 1) % k])
    return DivClass.make(new_model, a, d.exc)


def pullback_class(x, new_model, i):
    return KClassY(x.r, pullback_divisor(x.c1, new_model, i), x.chi)


# -- certificates --------------------------------------------------------------

def verify_monodromy_theorem(model):
    f = build_standard(model)
    toric = fb.toric_monodromy(f, model)
    ref = fb.reference_monodromy(model)
    total = fb.total_monodromy(f)
    ref_total = fb.reference_monodromy(model, with_meridians=True)
    ok = bool((toric == ref).all() and (total == ref_total).all())
    det = {"toric_product": toric, "reference": ref, "total": total, "reference_with_meridians": ref_total}
    return Certificate("monodromy", ok, det, None if ok else det)


def verify_mutation_compat(model, collection, script):
    c = collection
    f = fb.Fibration(model.k, tuple(restrict_class(e.cls, model) for e in c.entries))
    for step, (d, i) in enumerate(script):
        e, g = c.entries[i].cls, c.entries[i + 1].cls
        if euler_pairing_Y(g, e) != 0:
            raise NotExceptionalAtChiLevel(f"step {step}: chi(E_{i + 1}, E_{i}) = {euler_pairing_Y(g, e)}")
        c = mutate_collection(c, i, d)
        f = fb.hurwitz_move(f, i, d)
        for t in (i, i + 1):
            r = restrict_class(c.entries[t].cls, model)
            if not fb.equal_up_to_sign(r, f.cycles[t]):
                ce = {"step": step, "position": t, "restricted": r, "twisted": f.cycles[t]}
                return Certificate("mutation", False, {"steps": step}, ce)
    return Certificate("mutation", True, {"steps": len(script), "final": list(f.cycles)})


def torus_class_check(model):
    if model.total_m:
        raise ModelError("the torus check needs a purely toric model (m = 0)")
    duals = fb.dual_classes(build_standard(model))
    s = duals[1]
    for x in duals[2:]:
        s = s + x
    ok = fb.equal_up_to_sign(s, duals[0])
    return Certificate("torus", ok, {"duals": duals, "sum": s}, None if ok else {"sum": s, "v0": duals[0]})


def verify_stabilisation(model):
    mp = mirror_pair(model)
    f = mp.fibration
    per = []
    for i in range(model.k):
        big = corner_blowup(model, i)
        g, script = fb.stabilize_with_script(f, model, i)
        ref = build_standard(big)
        slot = script[0][1]
        ok = g.equivalent(ref)
        # collection side: pulled-back mutated collection with O_E(-1) inserted
        ents = [Entry(pullback_class(e.cls, big, i), None, e.label) for e in mp.collection.entries]
        e_cls = KClassY(0, DivClass.make(big, [1 if t == slot else 0 for t in range(big.k)]), 0)
        ents.insert(model.total_m, Entry(e_cls, None, "O_E(-1)"))
        coll = Collection(big, tuple(ents))
        moves = [s for s in script[1:]]
        mc = verify_mutation_compat(big, coll, moves)
        per.append({"corner": i, "fibration": ok, "collection": mc.passed})
        if not (ok and mc.passed):
            return Certificate("stabilisation", False, {"corners": per},
                               {"corner": i, "got": list(g.cycles), "expected": list(ref.cycles)})
    return Certificate("stabilisation", True, {"corners": per})


def verify_elemtrans(model):
    f = build_standard(model)
    done = []
    for i in range(model.k):
        if model.fan.opposite(i) is None or model.m[i] == 0:
            continue
        g, script, _ = fb.elem_trans_script(f, model, i)
        new, _ = elementary_transformation(model, i)
        ok = g.equivalent(build_standard(new))
        done.append({"ray": i, "moves": len(script), "passed": ok})
        if not ok:
            return Certificate("elemtrans", False, {"rays": done}, {"ray": i})
    return Certificate("elemtrans", True, {"rays": done, "eligible": len(done)})


def verify_bridge(model):
    coll = standard_collection(model)
    f = build_fibration(model, coll)
    kd = model.k
    # restriction intertwines tensoring with meridional twists
    ls = [pullback(model, t) for t in range(kd)]
    ls += [gamma(model, i, j) for i in range(kd) for j in range(model.m[i])]
    ls.append(-canonical(model))
    for l in ls:
        powers = [intersection_pairing(l, boundary(model, j)) for j in range(kd)]
        word = [(j, p) for j, p in enumerate(powers) if p]
        for e, c in zip(coll.entries, f.cycles):
            lhs = restrict_class(tensor_class(e.cls, l), model)
            rhs = fb.apply_global(fb.Fibration(kd, (c,)), word).cycles[0]
            if lhs != rhs:
                return Certificate("bridge", False, {}, {"tensor": l.toric + l.exc, "entry": e.label,
                                                          "lhs": lhs, "rhs": rhs})
    # Euler pairings agree on ordered pairs of the exceptional collection
    cl = coll.classes
    for a in range(len(cl)):
        for b in range(a + 1, len(cl)):
            x, y = euler_pairing_Y(cl[a], cl[b]), fb.euler_pairing_D(f.cycles[a], f.cycles[b])
            if x != y:
                return Certificate("bridge", False, {}, {"pair": [a, b], "chi_Y": x, "chi_D": y})
    mc = verify_mutation_compat(model, coll, standard_script(model))
    ok = mc.passed and build_standard(model).equivalent(fb.standard_fibration(model))
    return Certificate("bridge", ok, {"tensors": len(ls), "pairs": len(cl) * (len(cl) - 1) // 2})


def verify_exceptionality(model):
    ok, failures, forward = exceptionality_certificate(model)
    return Certificate("exceptionality", ok,
                       {"pairs": model.k * (model.k - 1) // 2, "strong": not forward, "forward_higher": forward},
                       {"failures": failures} if failures else None)


CHECKS = {
    "monodromy": verify_monodromy_theorem,
    "bridge": verify_bridge,
    "elemtrans": verify_elemtrans,
    "stab": verify_stabilisation,
    "torus": torus_class_check,
}


# -- random corpus -------------------------------------------------------------

def corpus_seed(default=0):
    return int(os.environ.get("LCY_SEED", default))


def random_model(rng, kmax=12, mmax=2, toric=False):
    if rng.random() < 0.3:
        f = p2_fan()
    else:
        f = hirzebruch_fan(rng.randint(0, 5))
    from .model import ToricModel as TM
    model = TM(f, (0,) * f.k)
    target = rng.randint(f.k, kmax)
    while model.k < target:
        model = corner_blowup(model, rng.randrange(model.k))
    if not toric:
        model = TM(model.fan, tuple(rng.randint(0, mmax) for _ in range(model.k)))
    return model


def random_corpus(n, seed=None, kmax=12, toric=False, mmax=2):
    rng = random.Random(corpus_seed() if seed is None else seed)
    return [random_model(rng, kmax, mmax, toric) for _ in range(n)]


def eligible_elemtrans_corpus(n, seed=None, kmax=12):
    """Random models with at least one ray admitting an elementary transformation."""
    rng = random.Random(corpus_seed() if seed is None else seed)
    out = []
    while len(out) < n:
        m = random_model(rng, kmax)
        if any(m.fan.opposite(i) is not None and m.m[i] > 0 for i in range(m.k)):
            out.append(m)
    return out
