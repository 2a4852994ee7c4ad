"""JSON file formats for complexes, lattices, cobordisms and triangles.

Complex::

    {"flavor": "homology_sphere" | "admissible",
     "generators": [{"id": "beta", "degree": 0}, ...],
     "d": [{"from": id, "to": id, "coeff": int}, ...],
     "v": [...],
     "delta": {id: int}, "delta_prime": {id: int}}

Lattice::

    {"sign": "negative" | "positive", "gram": [[int, ...], ...]}

Vectors of a lattice are written in the basis of its Gram matrix.  The E8
file shipped in ``data/e8.json`` uses simple roots; Euclidean coordinates
convert with :func:`eqfloer.lattice.e8_coordinates`, for example
e1 + e2 -> (0, 1, 0, 0, 0, 0, 0, 0) and e1 + e2 + e3 + e4 -> (0, 2, 1, 2, 1, 0, 0, 0).

Cobordism::

    {"source": <complex>, "target": <complex>,
     "Wstar": [{"from", "to", "coeff"}], "delta_W": {id: int},
     "delta_prime_W": {id: int}, "phi": [{"from", "to", "coeff"}] (optional),
     "flags": {"negative_definite": bool, "h1_trivial": bool}}

Triangle::

    {"ring": "Q" | "F<p>",
     "spaces": [{"dims": [8 ints], "u": {"q": matrix}} x 3],
     "maps": [{"shift": int, "blocks": {"q": matrix}} x 3]}

Matrix entries are integers or strings "p/q".
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

from .cobordism import CobordismData
from .complex import FloerComplex, Generator
from .lattice import Lattice
from .linalg import RingSpec
from .triangle import GradedSpace, TriangleMap, TrianglePresentation


class SchemaError(ValueError):
    """Input that does not follow the documented file format."""


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _need(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in obj:
        raise SchemaError(f"{where}: missing key {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise SchemaError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return val


def _int(x, where) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{where}: expected an integer, got {x!r}")
    return x


def _entries(raw, where):
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: expected a list of {{from, to, coeff}}")
    out = []
    for k, e in enumerate(raw):
        w = f"{where}[{k}]"
        out.append((str(_need(e, "from", str, w)), str(_need(e, "to", str, w)),
                    _int(_need(e, "coeff", int, w), w + ".coeff")))
    return out


def _vector(raw, where):
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}: expected an object id -> int")
    return [(str(k), _int(v, f"{where}.{k}")) for k, v in raw.items()]


# ---------------------------------------------------------------- complexes

def complex_from_json(obj, where: str = "complex") -> FloerComplex:
    flavor = _need(obj, "flavor", str, where)
    gens = []
    for k, g in enumerate(_need(obj, "generators", list, where)):
        w = f"{where}.generators[{k}]"
        gens.append(Generator(_need(g, "id", str, w), _int(_need(g, "degree", int, w), w)))
    for key in obj:
        if key not in ("flavor", "generators", "d", "v", "delta", "delta_prime"):
            raise SchemaError(f"{where}: unknown key {key!r}")
    return FloerComplex(
        flavor, tuple(gens),
        _entries(obj.get("d", []), where + ".d"),
        _entries(obj.get("v", []), where + ".v"),
        _vector(obj.get("delta", {}), where + ".delta"),
        _vector(obj.get("delta_prime", {}), where + ".delta_prime"))


def _entries_json(entries) -> List[Dict[str, Any]]:
    return [{"from": s, "to": t, "coeff": c} for s, t, c in entries]


def complex_to_json(C: FloerComplex) -> Dict[str, Any]:
    out = {
        "flavor": C.flavor,
        "generators": [{"id": g.id, "degree": g.degree} for g in C.generators],
        "d": _entries_json(C.d),
        "v": _entries_json(C.v),
    }
    if C.is_sphere:
        out["delta"] = dict(C.delta)
        out["delta_prime"] = dict(C.delta_prime)
    return out


# ---------------------------------------------------------------- lattices

def lattice_from_json(obj, where: str = "lattice") -> Lattice:
    sign = obj.get("sign") if isinstance(obj, dict) else None
    signs = {"negative": -1, "positive": 1, -1: -1, 1: 1}
    if sign not in signs:
        raise SchemaError(f"{where}.sign: expected 'negative' or 'positive', got {sign!r}")
    gram = _need(obj, "gram", list, where)
    rows = []
    for i, r in enumerate(gram):
        if not isinstance(r, list):
            raise SchemaError(f"{where}.gram[{i}]: expected a list")
        rows.append([_int(x, f"{where}.gram[{i}]") for x in r])
    return Lattice(tuple(map(tuple, rows)), signs[sign])


def lattice_to_json(L: Lattice) -> Dict[str, Any]:
    return {"sign": "positive" if L.sign > 0 else "negative", "gram": [list(r) for r in L.gram]}


# ---------------------------------------------------------------- cobordisms

def cobordism_from_json(obj, where: str = "cobordism") -> CobordismData:
    src = complex_from_json(_need(obj, "source", dict, where), where + ".source")
    tgt = complex_from_json(_need(obj, "target", dict, where), where + ".target")
    flags = obj.get("flags", {})
    if not isinstance(flags, dict):
        raise SchemaError(f"{where}.flags: expected an object")
    nd = flags.get("negative_definite", False)
    h1 = flags.get("h1_trivial", False)
    if not isinstance(nd, bool) or not isinstance(h1, bool):
        raise SchemaError(f"{where}.flags: values must be booleans")
    phi = obj.get("phi")
    return CobordismData(
        src, tgt, tuple(_entries(_need(obj, "Wstar", list, where), where + ".Wstar")),
        tuple(_vector(obj.get("delta_W", {}), where + ".delta_W")),
        tuple(_vector(obj.get("delta_prime_W", {}), where + ".delta_prime_W")),
        None if phi is None else tuple(_entries(phi, where + ".phi")),
        nd, h1)


def cobordism_to_json(W: CobordismData) -> Dict[str, Any]:
    out = {
        "source": complex_to_json(W.source),
        "target": complex_to_json(W.target),
        "Wstar": _entries_json(W.wstar),
        "delta_W": dict(W.delta_w),
        "delta_prime_W": dict(W.delta_prime_w),
        "flags": {"negative_definite": W.negative_definite, "h1_trivial": W.h1_trivial},
    }
    if W.phi is not None:
        out["phi"] = _entries_json(W.phi)
    return out


# ---------------------------------------------------------------- triangles

def _number(x, where):
    if isinstance(x, bool):
        raise SchemaError(f"{where}: expected a number")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            pass
    raise SchemaError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")


def _matrix(raw, where):
    if not isinstance(raw, list) or any(not isinstance(r, list) for r in raw):
        raise SchemaError(f"{where}: expected a list of rows")
    return tuple(tuple(_number(x, f"{where}[{i}]") for x in r) for i, r in enumerate(raw))


def _blocks(raw, where) -> Dict[int, tuple]:
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}: expected an object degree -> matrix")
    out = {}
    for k, M in raw.items():
        try:
            q = int(k)
        except ValueError:
            raise SchemaError(f"{where}: degree key {k!r} is not an integer") from None
        out[q] = _matrix(M, f"{where}.{k}")
    return out


def triangle_from_json(obj, where: str = "triangle") -> TrianglePresentation:
    try:
        ring = RingSpec.parse(str(obj.get("ring", "Q")) if isinstance(obj, dict) else "Q")
    except ValueError as e:
        raise SchemaError(f"{where}.ring: {e}") from None
    spaces = _need(obj, "spaces", list, where)
    maps = _need(obj, "maps", list, where)
    if len(spaces) != 3 or len(maps) != 3:
        raise SchemaError(f"{where}: expected three spaces and three maps")
    sp = []
    for j, s in enumerate(spaces):
        w = f"{where}.spaces[{j}]"
        dims = tuple(_int(x, w + ".dims") for x in _need(s, "dims", list, w))
        u = _blocks(s["u"], w + ".u") if "u" in s else None
        sp.append(GradedSpace(dims, u))
    ms = []
    for j, m in enumerate(maps):
        w = f"{where}.maps[{j}]"
        ms.append(TriangleMap(_int(_need(m, "shift", int, w), w + ".shift"),
                              _blocks(m.get("blocks", {}), w + ".blocks")))
    return TrianglePresentation(tuple(sp), tuple(ms), ring)


def exact(x) -> Any:
    """JSON-safe exact number: ints stay ints, other fractions become 'p/q'."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def exact_matrix(M) -> List[List[Any]]:
    return [[exact(x) for x in row] for row in M]


def triangle_to_json(T: TrianglePresentation) -> Dict[str, Any]:
    def blocks(b):
        return {str(q): exact_matrix(M) for q, M in sorted(b.items())}

    spaces = []
    for H in T.spaces:
        s = {"dims": list(H.dims)}
        if H.u is not None:
            s["u"] = blocks(H.u)
        spaces.append(s)
    return {"ring": T.ring.label, "spaces": spaces,
            "maps": [{"shift": a.shift, "blocks": blocks(a.blocks)} for a in T.maps]}
