"""Destabilisation scripts mirroring non-toric blow-downs.

Starting from the standard fibration of the normalised toric model in a
BlowdownReport, each contracted component is traded for a stabilising
class S_E which is then destabilised.  Patterns the scripts rely on are
checked as they are met; a mismatch raises ScriptPreconditionFailed.
"""
from dataclasses import dataclass, field

from .errors import NotStabilizingClass, ScriptPreconditionFailed
from .fibration import (deleted_entries, destabilize, hurwitz_move, longitude,
                        equal_up_to_sign, standard_fibration)


@dataclass
class PipelineRun:
    fibration: object
    states: list = field(default_factory=list)   # (tag, fibration) snapshots
    deleted: list = field(default_factory=list)  # (tag, coordinates removed)
    script: list = field(default_factory=list)

    @property
    def deleted_nonzero(self):
        return any(any(v != 0 for v in vals) for _, vals in self.deleted)


class _Runner:
    def __init__(self, f):
        self.f = f
        self.run = PipelineRun(f)

    def left(self, p):
        self.f = hurwitz_move(self.f, p, "left")
        self.run.script.append(("left", p))

    def right(self, p):
        self.f = hurwitz_move(self.f, p, "right")
        self.run.script.append(("right", p))

    def expect(self, p, cls, what):
        if not equal_up_to_sign(self.f.cycles[p], cls):
            raise ScriptPreconditionFailed(f"{what}: expected {cls}, found {self.f.cycles[p]}")

    def destab(self, s, slot, tag):
        self.run.states.append((tag, self.f))
        self.run.deleted.append((tag, deleted_entries(self.f, s, slot)))
        try:
            self.f = destabilize(self.f, s, slot)
        except NotStabilizingClass as exc:
            raise ScriptPreconditionFailed(f"{tag}: {exc}") from exc
        self.run.script.append(("destabilize", s, slot))


def _chain_step(rn, junk, copies, nv, mt, tag):
    """One destabilisation of a chain component.

    Layout on entry: junk cycles, l(0), ``copies`` restricted meridians of
    the previous component, nv longitudes, then the mt meridians of the
    component being contracted at the front of the meridian tail.
    """
    k = rn.f.k
    rn.expect(junk, longitude((0,) * k), f"{tag}: base longitude")
    for u in range(copies):
        rn.left(junk + u)
    base = junk + copies
    for l in range(base + nv, base, -1):
        for t in range(mt):
            rn.right(l + t)
    for p in range(base + mt, base, -1):
        rn.right(p)
    rn.run.states.append((tag + " display", rn.f))
    rn.left(base)
    for p in range(base - 1, junk - 1, -1):
        rn.right(p)
    rn.destab(junk, 0, tag)
    return junk + copies, mt, nv - 1


def destab_pipeline_run(model, report):
    if report.case == "none" or not report.sequence:
        raise ScriptPreconditionFailed("report carries no non-toric blow-down")
    nm = report.normal_model
    if nm is None or nm.k != model.k or nm.total_m != model.total_m:
        raise ScriptPreconditionFailed("report does not describe this model")
    seq = tuple(report.sequence)
    k = nm.k
    chain = seq == tuple(range(1, len(seq) + 1))
    nonchain = report.case.startswith("2.b") and seq in ((1,), (1, 3), (1, 3, 2))
    if not (chain or nonchain):
        raise ScriptPreconditionFailed(f"no destabilisation script for sequence {seq}")
    rn = _Runner(standard_fibration(nm))
    total = nm.total_m
    # meridians to the end; the monodromy fixes them
    for w in range(total - 1, -1, -1):
        for t in range(k):
            rn.right(w + t)
    rn.run.states.append(("meridians moved", rn.f))
    junk, copies, nv = 0, 0, k - 1
    steps = seq if chain else seq[:1]
    for lab in steps:
        junk, copies, nv = _chain_step(rn, junk, copies, nv, nm.m[lab - 1], f"E{lab}")
    if nonchain and len(seq) >= 2:
        if k != 4 or nm.m[2] != 1:
            raise ScriptPreconditionFailed("non-chain script needs four rays and m3 = 1")
        m2 = nm.m[1]
        w3 = 1 + copies + nv + m2
        for p in range(w3 - 1, w3 - 1 - m2, -1):
            rn.left(p)
        for l in range(copies + nv, 0, -1):
            rn.right(l)
        rn.right(1)
        rn.left(0)
        rn.destab(0, 1, "E3")
        if len(seq) == 3:
            if m2 != 0:
                raise ScriptPreconditionFailed("final non-chain step needs m2 = 0")
            rn.expect(1, longitude((1, 1)), "E2: second longitude")
            rn.right(2)
            rn.left(0)
            rn.left(1)
            rn.right(0)
            rn.destab(0, 0, "E2")
    rn.run.fibration = rn.f
    if rn.f.k != k - len(seq):
        raise ScriptPreconditionFailed("wrong number of destabilisations")
    return rn.run


def nontoric_destab_pipeline(model, report):
    return destab_pipeline_run(model, report).fibration
