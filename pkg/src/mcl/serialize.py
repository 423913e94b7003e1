"""JSON formats for elements, certificates, subgroups and matrices.

Element:      {"top": [ints], "fun": [{"at": [ints], "val": int}, ...]}
Certificate:  {"target": element, "factors": [{"kind", "a", "b"[, "conjugator"]}],
               "conjugator": element | null}
Output is canonical: support sorted by "at", no zero values, sorted keys.
"""
from __future__ import annotations

import json

from .abelian import FgAbelianGroup, Subgroup
from .decompose import Certificate, Factor
from .errors import InputError
from .linalg import IntMatrix
from .wreath import FinSupFunc, WreathElt, WreathGroup


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{what} must be an integer, got {v!r}")
    return v


def _vec(v, n, what):
    if not isinstance(v, list) or len(v) != n:
        raise InputError(f"{what} must be a list of {n} integers, got {v!r}")
    return [_int(c, what) for c in v]


def function_to_json(u: FinSupFunc) -> list:
    return [{"at": list(at), "val": val} for at, val in u.items()]


def function_from_json(data, base: FgAbelianGroup) -> FinSupFunc:
    if not isinstance(data, list):
        raise InputError("\"fun\" must be a list of {\"at\", \"val\"} entries")
    entries = {}
    for item in data:
        if not isinstance(item, dict) or set(item) != {"at", "val"}:
            raise InputError(f"bad function entry {item!r}")
        at = base.elem(_vec(item["at"], base.ngens, "\"at\""))
        entries[at] = entries.get(at, 0) + _int(item["val"], "\"val\"")
    return FinSupFunc(base, entries)


def element_to_json(a: WreathElt) -> dict:
    return {"top": list(a.top), "fun": function_to_json(a.fun)}


def element_from_json(data, g: WreathGroup) -> WreathElt:
    if not isinstance(data, dict) or not set(data) <= {"top", "fun"}:
        raise InputError("an element is an object with keys \"top\" and \"fun\"")
    fun = function_from_json(data.get("fun", []), g.index)
    top = _vec(data.get("top", [0] * g.gamma.ngens), g.gamma.ngens, "\"top\"")
    return g.elem(fun, top)


def _maybe_element(a):
    return None if a is None else element_to_json(a)


def certificate_to_json(cert: Certificate, target: WreathElt) -> dict:
    factors = []
    for f in cert.factors:
        d = {"kind": f.kind, "a": element_to_json(f.a), "b": element_to_json(f.b)}
        if f.conjugator is not None:
            d["conjugator"] = element_to_json(f.conjugator)
        factors.append(d)
    return {"target": element_to_json(target), "factors": factors,
            "conjugator": _maybe_element(cert.conjugator)}


def certificate_from_json(data, g: WreathGroup) -> tuple:
    """Return ``(certificate, target or None)``."""
    if not isinstance(data, dict) or "factors" not in data:
        raise InputError("a certificate is an object with a \"factors\" list")
    if not isinstance(data["factors"], list):
        raise InputError("\"factors\" must be a list")
    factors = []
    for f in data["factors"]:
        if not isinstance(f, dict) or not {"kind", "a", "b"} <= set(f):
            raise InputError(f"bad factor {f!r}")
        conj = f.get("conjugator")
        factors.append(Factor(
            f["kind"], element_from_json(f["a"], g), element_from_json(f["b"], g),
            None if conj is None else element_from_json(conj, g)))
    conj = data.get("conjugator")
    target = data.get("target")
    cert = Certificate(g, tuple(factors), None if conj is None else element_from_json(conj, g))
    return cert, None if target is None else element_from_json(target, g)


def subgroup_from_json(data, group: FgAbelianGroup) -> Subgroup:
    """``{"generators": [[...], ...]}`` or a bare list of generators."""
    if isinstance(data, dict):
        data = data.get("generators")
    if not isinstance(data, list):
        raise InputError("a subgroup is a list of generators")
    return Subgroup(group, tuple(group.elem(_vec(v, group.ngens, "generator")) for v in data))


def subgroup_to_json(s: Subgroup) -> dict:
    return {"generators": [list(t) for t in s.minimal_generators()],
            "invariants": list(s.invariants), "rank": s.rank}


def vectors_from_json(data, group: FgAbelianGroup) -> list:
    if isinstance(data, dict):
        data = data.get("generators")
    if not isinstance(data, list):
        raise InputError("expected a list of vectors")
    return [_vec(v, group.ngens, "vector") for v in data]


def matrix_from_json(data) -> IntMatrix:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InputError("a matrix is a non-empty JSON array of rows")
    n = len(data[0])
    rows = [_vec(r, n, "matrix row") for r in data]
    return IntMatrix.from_rows(rows, n)


def dumps(obj) -> str:
    """Canonical JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def load_file(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}")
