"""JSON documents: surfaces, fibrations, and a canonical byte form."""
import json

from .errors import DocumentError, LcyError
from .fibration import CurveClass, Fibration
from .model import make_model


def canonical_dumps(obj):
    """Sorted keys, no optional whitespace, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def pretty_dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps(obj, canonical=False):
    return canonical_dumps(obj) if canonical else pretty_dumps(obj)


def load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None


def _int(x, path):
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"expected an integer, got {x!r}", path=path)
    return x


def _list(x, path):
    if not isinstance(x, list):
        raise DocumentError(f"expected a list, got {type(x).__name__}", path=path)
    return x


def _surface_fields(doc):
    if not isinstance(doc, dict):
        raise DocumentError("surface document must be an object")
    if "rays" not in doc:
        raise DocumentError("missing field", path="rays")
    rays = []
    for i, v in enumerate(_list(doc["rays"], "rays")):
        p = f"rays[{i}]"
        if not isinstance(v, list) or len(v) != 2:
            raise DocumentError("a ray is a pair of integers", path=p)
        rays.append((_int(v[0], p + "[0]"), _int(v[1], p + "[1]")))
    m = doc.get("interior_blowups")
    if m is None:
        m = [0] * len(rays)
    m = [_int(x, f"interior_blowups[{i}]") for i, x in enumerate(_list(m, "interior_blowups"))]
    if len(m) != len(rays):
        raise DocumentError(f"{len(m)} blow-up counts for {len(rays)} rays", path="interior_blowups")
    for i, x in enumerate(m):
        if x < 0:
            raise DocumentError("blow-up counts are non-negative", path=f"interior_blowups[{i}]")
    labels = doc.get("labels")
    if labels is not None:
        labels = _list(labels, "labels")
        if len(labels) != len(rays) or not all(isinstance(s, str) for s in labels):
            raise DocumentError("one string label per ray", path="labels")
    return rays, m, labels


def parse_surface_doc(text):
    """Returns (model, labels or None)."""
    rays, m, labels = _surface_fields(load_json(text))
    try:
        model = make_model(rays, m, normalise=False)
    except LcyError as exc:
        idx = getattr(exc, "index", None)
        path = "rays" if idx is None else f"rays[{idx}]"
        raise DocumentError(f"{type(exc).__name__}: {exc}", path=path) from exc
    return model, labels


def parse_surface(text):
    return parse_surface_doc(text)[0]


def surface_doc(model, labels=None):
    doc = {"rays": model.fan.to_list(), "interior_blowups": list(model.m)}
    if labels is not None:
        doc["labels"] = list(labels)
    return doc


def emit_fibration_doc(f):
    return {"kind": "fibration", "k": f.k,
            "cycles": [{"r": c.r, "d": list(c.d), "label": lab} for c, lab in zip(f.cycles, f.labels)]}


def fibration_from_doc(doc):
    if not isinstance(doc, dict) or "k" not in doc or "cycles" not in doc:
        raise DocumentError("fibration document needs k and cycles")
    k = _int(doc["k"], "k")
    cycles, labels = [], []
    for i, c in enumerate(_list(doc["cycles"], "cycles")):
        p = f"cycles[{i}]"
        if not isinstance(c, dict):
            raise DocumentError("a cycle is an object", path=p)
        d = [_int(x, f"{p}.d[{j}]") for j, x in enumerate(_list(c.get("d"), p + ".d"))]
        if len(d) != k:
            raise DocumentError(f"expected {k} coordinates", path=p + ".d")
        cycles.append(CurveClass(_int(c.get("r"), p + ".r"), d))
        lab = c.get("label", "")
        if not isinstance(lab, str):
            raise DocumentError("label must be a string", path=p + ".label")
        labels.append(lab)
    return Fibration(k, tuple(cycles), tuple(labels))


def parse_fibration_doc(text):
    return fibration_from_doc(load_json(text))
