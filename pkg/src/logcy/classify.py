"""Non-toric blow-down classification.

The first contraction is a boundary (-1)-curve D~_i with m_i > 0 and no
opposite ray; further contractions are simulated on the cycle of
self-intersections only.  Labels in reports are 1-based and refer to the
normalised model, in which the first contracted component is D1.
"""
from dataclasses import dataclass, field

from .errors import NotBlowdownEligible
from .model import ToricModel, deformation_invariants, elementary_transformation

ORBIT_CAP = 50000

FZERO_OR_FTWO = ("F0", "F2")
FZERO_OR_FTWO_NOTE = "F2 carries the distinguished complex structure; F0 does not"


@dataclass(frozen=True)
class BlowdownReport:
    case: str
    sequence: tuple
    sequence_original: tuple
    y_min: tuple
    d_min: tuple
    star: bool
    trace: tuple
    normal_model: ToricModel = None
    boundary_after: tuple = ()
    rank_after: int = 0
    row: tuple = None
    notes: tuple = ()
    metadata: dict = field(default_factory=dict, compare=False)

    def to_dict(self):
        return {
            "case": self.case,
            "sequence": list(self.sequence),
            "sequence_original": list(self.sequence_original),
            "y_min": list(self.y_min),
            "d_min": list(self.d_min),
            "star": self.star,
            "row": None if self.row is None else [self.row[0], self.row[1]],
            "boundary_after": list(self.boundary_after),
            "rank_after": self.rank_after,
            "trace": [list(_jsonable(t)) for t in self.trace],
            "notes": list(self.notes),
            "metadata": dict(self.metadata),
            "normal_model": None if self.normal_model is None else {
                "rays": self.normal_model.fan.to_list(), "interior_blowups": list(self.normal_model.m)},
        }


def _jsonable(step):
    out = []
    for x in step:
        if isinstance(x, tuple):
            out.append([list(r) if isinstance(r, tuple) else r for r in x])
        else:
            out.append(x)
    return out


def _toric_type(model, i):
    return model.m[i] == 0 or model.fan.opposite(i) is not None


def _rays_from_n(n):
    # the fan with these self-intersections, up to GL(2, Z)
    v = [(1, 0), (0, 1)]
    for i in range(1, len(n) - 1):
        p, c = v[i - 1], v[i]
        v.append((-p[0] - n[i] * c[0], -p[1] - n[i] * c[1]))
    return v


def et_orbit(model, cap=ORBIT_CAP):
    """All m-vectors reachable by elementary transformations.

    Self-intersections n_i - m_i never change, so a member is determined by
    its m.  Returns ({m: (parent m, ray) or None}, complete).
    """
    s, k = model.selfint, model.k
    parents = {model.m: None}
    todo = [model.m]
    while todo and len(parents) < cap:
        m = todo.pop()
        rays = _rays_from_n([a + b for a, b in zip(s, m)])
        where = {v: i for i, v in enumerate(rays)}
        for i in range(k):
            j = where.get((-rays[i][0], -rays[i][1]))
            if m[i] == 0 or j is None:
                continue
            new = list(m)
            new[i] -= 1
            new[j] += 1
            new = tuple(new)
            if new not in parents:
                parents[new] = (m, i)
                todo.append(new)
    return parents, not todo


def _walk(model, parents, target, trace):
    path = []
    while parents[target] is not None:
        target, i = parents[target]
        path.append(i)
    for i in reversed(path):
        model, t = elementary_transformation(model, i)
        trace.extend(t)
    return model


def simulate_blowdowns(model, first, max_steps=None, toric=None):
    """Contract boundary components greedily, starting with ``first``.

    ``toric`` is the set of components whose contraction is toric up to
    elementary transformations; by default it is read off the model as given.
    Returns (sequence of original indices, remaining indices in cyclic
    order, their self-intersections).
    """
    if toric is None:
        toric = {i for i in range(model.k) if _toric_type(model, i)}
    alive = list(range(model.k))
    s = dict(enumerate(model.selfint))
    touched = set()
    seq = []
    c = first
    while True:
        seq.append(c)
        idx = alive.index(c)
        if len(alive) >= 3:
            for nb in (alive[idx - 1], alive[(idx + 1) % len(alive)]):
                s[nb] += 1
                touched.add(nb)
        elif len(alive) == 2:
            nb = alive[1 - idx]
            s[nb] += 4
            touched.add(nb)
        alive.pop(idx)
        if len(alive) <= 1 or (max_steps is not None and len(seq) >= max_steps):
            break
        cands = [i for i in alive if s[i] == -1 and (i in touched or i not in toric)]
        if not cands:
            break
        cands.sort(key=lambda i: (i in touched, i))
        c = cands[0]
    return seq, alive, [s[i] for i in alive]


def _orient(model, first, direction):
    """Model relabelled so that ``first`` is label 0 and the cycle runs in ``direction``."""
    moves = [("rotate", first)]
    out = model.rotate(first)
    if direction < 0:
        out = out.reflect()
        moves.append(("reflect",))
    return out, moves


def _label_map(k, first, direction):
    return {(first + direction * t) % k: t for t in range(k)}


def _normalise_basis(model):
    (a, b), (c, d) = model.fan.rays[0], model.fan.rays[1]
    # inverse of the matrix with columns v0, v1 (determinant 1)
    mat = ((d, -c), (-b, a))
    return ToricModel(model.fan.transform(mat), model.m), ("basis", mat)


def _drain(model, i, trace):
    while model.m[i] > 0 and model.fan.opposite(i) is not None:
        model, t = elementary_transformation(model, i)
        trace.extend(t)
    return model


def _table(case, length, a=None):
    if case == "1":
        return {1: (FZERO_OR_FTWO, (2, 2), False),
                2: (("P2",), (9,), True)}.get(length)
    if case == "2.a.i":
        return {2: (("P2",), (1, 4), True),
                3: (("P2",), (1, 4), False),
                4: (FZERO_OR_FTWO, (8,), False)}.get(length)
    if case == "2.a.ii":
        return {2: (("P2",), (1, 4), False),
                3: (FZERO_OR_FTWO, (8,), False)}.get(length)
    if case == "2.b.i":
        return {1: (("F2",), (-2, 4, 0), False),
                3: (("P2",), (9,), False)}.get(length)
    if case == "2.b.ii":
        if length == 1:
            return ((f"F{abs(a - 1)}",), (-a + 1, a + 1, 0), False)
        if length == 2:
            if a == 1:
                return (("P2",), (1, 4), True)
            return ((f"F{abs(a - 2)}",), (-a + 2, a + 2), False)
    return None


def _rank(name):
    return 1 if name == "P2" else 2


def dmin_consistent(report):
    """Whether D_min is reached from the computed boundary by interior blow-ups.

    Needs a dihedral alignment where every entry of D_min - boundary is
    non-negative and the total equals the drop in Picard rank.  None when
    the row is starred or absent.
    """
    if report.row is None or report.star:
        return None
    after = list(report.boundary_after)
    dm = list(report.d_min)
    if len(after) != len(dm):
        return False
    need = report.rank_after - _rank(report.y_min[0])
    n = len(dm)
    for flip in (1, -1):
        for r in range(n):
            al = [after[(r + flip * t) % n] for t in range(n)]
            diff = [x - y for x, y in zip(dm, al)]
            if all(x >= 0 for x in diff) and sum(diff) == need:
                return True
    return False


def classify_nontoric_blowdown(model, max_steps=None, orbit_cap=ORBIT_CAP):
    """Classify the first non-toric blow-down of a boundary (-1)-curve.

    Everything is decided on the orbit of the model under elementary
    transformations, so transformed models get the same report up to the
    trace.  A component counts as non-toric when m_i > 0 throughout the orbit.
    """
    k = model.k
    s = model.selfint
    parents, complete = et_orbit(model, orbit_cap)
    members = sorted(parents)
    minus = [i for i in range(k) if s[i] == -1]
    some = [i for i in minus if any(m[i] > 0 for m in members)]
    if not some:
        raise NotBlowdownEligible("no boundary component with n_i - m_i = -1 and m_i > 0")
    always = {i for i in range(k) if all(m[i] > 0 for m in members)}
    meta = {"orbit_size": len(members), "orbit_complete": complete}
    trace = []
    proper = [i for i in some if i in always]
    if not proper:
        i = some[0]
        target = next(m for m in members if m[i] == 0)
        _walk(model, parents, target, trace)
        return BlowdownReport(
            case="none", sequence=(), sequence_original=(), y_min=(), d_min=(), star=False,
            trace=tuple(trace), normal_model=None, metadata=meta,
            notes=(f"component {i + 1} loses its interior blow-ups under elementary "
                   "transformations; its contraction is toric",))
    first = proper[0]
    seq, alive, s_after = simulate_blowdowns(model, first, max_steps,
                                             toric=set(range(k)) - always)
    canon = _walk(model, parents, members[0], trace)
    prev, nxt = (first - 1) % k, (first + 1) % k
    notes = []
    a = None
    if k == 3:
        case = "1"
        direction = -1 if len(seq) > 1 and seq[1] == prev else 1
    else:
        if len(seq) > 1 and seq[1] in (prev, nxt):
            case = "2.a.i" if k >= 5 else "2.a.ii"
            direction = -1 if seq[1] == prev else 1
        else:
            if len(seq) > 2 and seq[2] in (prev, nxt):
                direction = -1 if seq[2] == prev else 1
            else:
                direction = -1 if s[prev] < s[nxt] else 1
            two = (first + direction) % k
            case = "2.b.i" if s[two] == -3 else "2.b.ii"
    omodel, moves = _orient(canon, first, direction)
    trace.extend(moves)
    lmap = _label_map(k, first, direction)
    if case in ("2.a.i", "2.a.ii", "2.b.i"):
        omodel = _drain(omodel, 1, trace)
    elif case == "2.b.ii":
        omodel = _drain(omodel, 3 % k, trace)
    omodel, basis = _normalise_basis(omodel)
    trace.append(basis)
    if case.startswith("2.b"):
        a = -omodel.n[1] if case == "2.b.i" else omodel.n[3 % k]
    if case.startswith("2.b") and k != 4:
        row = None
        notes.append("second contraction away from D1 on a blown-up Hirzebruch fan is not tabulated")
    elif case == "2.a.i" and k != 5:
        row = None
        notes.append("toric contractions would have to come first; not performed")
    else:
        row = _table(case, len(seq), a)
    seq_norm = tuple(lmap[c] + 1 for c in seq)
    alive_sorted = sorted(alive, key=lambda c: lmap[c])
    smap = dict(zip(alive, s_after))
    after = tuple(smap[c] for c in alive_sorted)
    rank_after = deformation_invariants(model)["picard_rank"] - len(seq)
    if a is not None:
        meta["a"] = a
    if not complete:
        notes.append("elementary-transformation orbit truncated; report may depend on the model")
    if row is None:
        y_min, d_min, star = (), (), False
        if not notes:
            notes.append("blow-down sequence not listed in the table")
    else:
        y_min, d_min, star = row
        if y_min == FZERO_OR_FTWO:
            meta["complex_structure"] = FZERO_OR_FTWO_NOTE
        if star:
            notes.append("further (-1)-curve contractions needed; their effect on Pic is not computed")
    return BlowdownReport(
        case=case, sequence=seq_norm, sequence_original=tuple(c + 1 for c in seq),
        y_min=tuple(y_min), d_min=tuple(d_min), star=star, trace=tuple(trace),
        normal_model=omodel, boundary_after=after, rank_after=rank_after,
        row=None if row is None else (case, len(seq)), notes=tuple(notes), metadata=meta)
