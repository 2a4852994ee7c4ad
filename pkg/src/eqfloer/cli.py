"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed (the report is still
printed), 2 malformed input or flags.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import cobordism as cob
from . import corpus, floer, lattice as lat
from .complex import ComplexFormatError, InvalidComplexError, reverse_orientation, validate_complex
from .linalg import QQ, RingSpec
from .schema import (
    SchemaError, complex_from_json, complex_to_json, cobordism_from_json, dumps, exact,
    exact_matrix, lattice_from_json, load_json, triangle_from_json,
)
from .triangle import ShiftError, TriangleFormatError, check_exact_triangle, check_reduced_sequence


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ring(text: str) -> RingSpec:
    try:
        return RingSpec.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------- rendering

def _text(obj: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(obj))
    return lines


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _inline(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "(" + ", ".join(_inline(x) for x in v) + ")"
    return str(v)


def _emit(out, result: Dict[str, Any], fmt: str) -> None:
    if fmt == "json":
        out.write(dumps(result))
    else:
        out.write("\n".join(_text(result)) + "\n")


def _checks(report) -> List[Dict[str, Any]]:
    return [{"check": c.name, "passed": c.passed, **({"witness": c.witness} if c.witness else {})}
            for c in report.checks]


# ---------------------------------------------------------------- complex commands

def _load_complex(path):
    return complex_from_json(load_json(path))


def _field(ring: RingSpec) -> RingSpec:
    return QQ if ring.kind == "integers" else ring


def cmd_validate(a):
    C = _load_complex(a.complex)
    rep = validate_complex(C)
    return {"valid": rep.ok, "checks": _checks(rep)}, 0 if rep.ok else 1


def cmd_cohomology(a):
    C = _load_complex(a.complex)
    rep = validate_complex(C)
    if not rep.ok:
        return {"valid": False, "checks": _checks(rep)}, 1
    H = floer.cohomology(C, a.ring)
    out = {"ring": a.ring.label, "ranks": list(H.ranks), "euler_characteristic": H.euler_characteristic}
    if a.ring.kind == "integers":
        out["torsion"] = {str(q): list(t) for q, t in enumerate(H.torsion) if t}
    return out, 0


def cmd_invariants(a):
    C = _load_complex(a.complex)
    rep = validate_complex(C)
    if not rep.ok:
        return {"valid": False, "checks": _checks(rep)}, 1
    ring = a.ring
    field = _field(ring)
    H = floer.cohomology(C, ring)
    chi, lam = floer.euler_and_casson(C, ring)
    out: Dict[str, Any] = {"ring": ring.label, "flavor": C.flavor, "hf_ranks": list(H.ranks),
                           "euler_characteristic": chi}
    if field != ring:
        out["field_invariants_over"] = field.label
    red = floer.reduced_group(C, field)
    status = 0
    if C.is_sphere:
        out["casson_lambda"] = exact(lam)
        hr = floer.h_invariant(C, field)
        T = floer.delta_tower(C, field)
        out["h"] = exact(hr.h)
        out["h_methods"] = {"euler_defect": exact(hr.h), "delta_span_b4": hr.via_b4,
                            "h_characterisation": hr.via_hchar, "agree": hr.agree}
        if hr.warnings:
            out["warnings"] = list(hr.warnings)
        out["tower"] = {"delta_dims_hf0_hf4": list(T.delta_dims),
                        "delta_prime_dims_hf1_hf5": list(T.delta_prime_dims),
                        "stabilization_index": T.stabilization_index}
        if not hr.agree:
            status = 1
    out["reduced_dims"] = list(red.dims)
    nil = floer.nilpotency_index(C, field)
    out["nilpotency_index"] = nil
    return out, status


def cmd_reduced(a):
    C = _load_complex(a.complex)
    red = floer.reduced_group(C, a.ring)
    out = {"ring": a.ring.label, "dims": list(red.dims),
           "u": {str(q): exact_matrix(red.u[q]) for q in range(8) if red.dims[q] and red.dims[(q + 4) % 8]}}
    return out, 0


def cmd_reverse(a):
    C = _load_complex(a.complex)
    R = complex_to_json(reverse_orientation(C))
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(R))
        return {"written": a.output}, 0
    return R, 0


def cmd_periodicity(a):
    C = _load_complex(a.complex)
    rep = floer.periodicity_report(C, a.ring)
    out = {"ring": a.ring.label, "u_isomorphism": {str(q): v for q, v in sorted(rep.u_isomorphism.items())},
           "hf_dims": list(rep.hf_dims), "reduced_dims": list(rep.reduced_dims),
           "hf_mod4_periodic": rep.hf_mod4_periodic, "reduced_mod4_periodic": rep.reduced_mod4_periodic,
           "passed": rep.passed}
    return out, 0 if rep.passed else 1


# ---------------------------------------------------------------- lattice commands

def _need_flag(a, name):
    val = getattr(a, name)
    if val is None:
        raise UsageError(f"lattice {a.op}: --{name} is required")
    return val


def _coords(L, v, name):
    if len(v) != L.rank:
        raise UsageError(f"--{name} needs {L.rank} coordinates, got {len(v)}")
    return v


def cmd_lattice(a):
    L = lattice_from_json(load_json(a.lattice))
    op = a.op
    if op == "eta":
        w = _coords(L, _need_flag(a, "w"), "w")
        av = _coords(L, a.a, "a") if a.a is not None else None
        try:
            value = lat.eta(L, w, av, a.m)
        except (lat.EtaParityError, ValueError) as e:
            raise UsageError(str(e)) from None
        ext = lat.is_extremal(L, w)
        out = {"w": list(w), "m": a.m, "eta": value, "w_extremal": ext}
        if not ext:
            out["warning"] = "w is not extremal in w + 2L; η is only meaningful for extremal w"
            a.err.write("warning: " + out["warning"] + "\n")
        return out, 0
    if op == "extremal":
        w = _coords(L, _need_flag(a, "w"), "w")
        return {"w": list(w), "square": L.square(w), "min_square_in_coset": lat.min_square_in_coset(L, w) * L.sign,
                "extremal": lat.is_extremal(L, w)}, 0
    if op == "shortvec":
        s = _need_flag(a, "square")
        try:
            pairs = lat.vectors_with_square(L, s)
        except lat.LatticeError as e:
            raise UsageError(str(e)) from None
        return {"square": s, "pairs": len(pairs), "vectors": [list(z) for z in pairs]}, 0
    if op == "reducibles":
        c = _coords(L, _need_flag(a, "c"), "c")
        k = _need_flag(a, "k")
        n, pairs = lat.count_reducibles(L, c, k)
        return {"c": list(c), "k": k, "count": n, "vectors": [list(z) for z in pairs]}, 0
    if op == "diagonal":
        return {"rank": L.rank, "determinant": L.determinant, "standard_diagonal": lat.is_standard_diagonal(L)}, 0
    if op == "certificate":
        cert = lat.nondiagonal_certificate(L)
        if cert is None:
            return {"diagonal": True, "certificate": None}, 0
        return {"diagonal": False, "certificate": {"w": list(cert.w), "a": list(cert.a), "m": cert.m,
                                                   "eta": cert.eta_value, "w_extremal": cert.extremal}}, 0
    raise UsageError(f"unknown lattice operation {op!r}")


# ---------------------------------------------------------------- cobordism / triangle / corpus

def cmd_cobordism(a):
    W = cobordism_from_json(load_json(a.cobordism))
    ring = a.ring
    rep = cob.validate_cobordism(W)
    if a.op == "validate":
        return {"valid": rep.ok, "checks": _checks(rep)}, 0 if rep.ok else 1
    if a.op == "monotone":
        m = cob.h_monotonicity_report(W, ring)
        out = {"h_source": exact(m.h_source), "h_target": exact(m.h_target),
               "negative_definite_flag": m.negative_definite, "inequality_holds": m.inequality_holds,
               "consistent": m.consistent, "note": m.note, "cobordism_valid": rep.ok}
        return out, 0 if m.consistent else 1
    if not rep.ok:
        return {"valid": False, "checks": _checks(rep)}, 1
    if a.op == "homotopy":
        Phi = cob.solve_homotopy(W, ring)
        if Phi is None:
            return {"solvable": False}, 1
        return {"solvable": True, "phi": [{"from": s, "to": t, "coeff": exact(c)}
                                          for s, t, c in cob.phi_entries(W, Phi)]}, 0
    if a.op == "induced":
        try:
            res = cob.induced_reduced_map(W, ring)
        except floer.ReducedGroupError as e:
            return {"error": str(e)}, 1
        out = {"source_dims": list(res.source_dims), "target_dims": list(res.target_dims),
               "maps": {str(q): exact_matrix(M) for q, M in enumerate(res.matrices)
                        if res.source_dims[q] and res.target_dims[q]},
               "commutes_with_u": res.commutes_with_u, "checks": _checks(res.report)}
        return out, 0 if res.report.ok else 1
    raise UsageError(f"unknown cobordism operation {a.op!r}")


def _vertex(c):
    return {"vertex": c.vertex, "degree": c.degree, "dim": c.dim, "image_rank": c.image_rank,
            "kernel_dim": c.kernel_dim, "exact": c.exact, **({"failure": c.failure} if c.failure else {})}


def cmd_triangle(a):
    T = triangle_from_json(load_json(a.triangle))
    if a.reduced:
        rep = check_reduced_sequence(T)
        out = {"shifts": list(T.shifts), "shifts_ok": rep.shifts_ok,
               "checks": [_vertex(c) for c in rep.checks if c.dim or not c.exact],
               "u_commutes": {str(k): v for k, v in sorted(rep.u_commutes.items())}, "passed": rep.passed}
        return out, 0 if rep.passed else 1
    try:
        rep = check_exact_triangle(T)
    except ShiftError as e:
        return {"shifts": list(T.shifts), "exact": False, "error": str(e)}, 1
    out = {"shifts": list(T.shifts), "exact": rep.exact, "rank_nullity_ok": rep.rank_nullity_ok,
           "checks": [_vertex(c) for c in rep.checks if c.dim or not c.exact]}
    return out, 0 if rep.exact else 1


def cmd_corpus(a):
    if a.op == "list":
        return {"entries": [{"name": n, "description": corpus.build(n).description} for n in corpus.NAMES]}, 0
    if not a.name:
        raise UsageError("corpus emit needs a name")
    try:
        e = corpus.build(a.name)
    except KeyError as err:
        raise UsageError(err.args[0]) from None
    data = complex_to_json(e.complex)
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(data))
        return {"written": a.output}, 0
    return data, 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    ring = argparse.ArgumentParser(add_help=False)
    ring.add_argument("--ring", type=_ring, default=QQ, help="Z, Q or F<p> with p an odd prime")
    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--ring", type=_field_ring, default=QQ, help="Q or F<p> with p an odd prime")

    p = _Parser(prog="eqfloer", description="Exact Floer-complex and lattice computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, parents, help_ in (
            ("validate", cmd_validate, [common], "check the chain-level identities"),
            ("cohomology", cmd_cohomology, [common, ring], "HF ranks and torsion"),
            ("invariants", cmd_invariants, [common, ring], "h, χ, λ, towers, reduced dims, nilpotency"),
            ("reduced", cmd_reduced, [common, field], "reduced group and its u-map"),
            ("periodicity", cmd_periodicity, [common, field], "u-isomorphism and mod-4 periodicity")):
        s = sub.add_parser(name, parents=parents, help=help_)
        s.add_argument("complex")
        s.set_defaults(func=fn)
    s = sub.add_parser("reverse", parents=[common], help="orientation-reversed complex")
    s.add_argument("complex")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_reverse)

    s = sub.add_parser("lattice", parents=[common], help="definite-lattice invariants")
    s.add_argument("op", choices=("eta", "extremal", "shortvec", "reducibles", "diagonal", "certificate"))
    s.add_argument("lattice")
    s.add_argument("--w", type=_ints)
    s.add_argument("--a", type=_ints)
    s.add_argument("--m", type=int, default=0)
    s.add_argument("--square", type=int)
    s.add_argument("--c", type=_ints)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("cobordism", parents=[common, field], help="cobordism-map checks")
    s.add_argument("op", choices=("validate", "homotopy", "induced", "monotone"))
    s.add_argument("cobordism")
    s.set_defaults(func=cmd_cobordism)

    s = sub.add_parser("triangle", parents=[common], help="exact-triangle checks")
    s.add_argument("op", choices=("check",))
    s.add_argument("triangle")
    s.add_argument("--reduced", action="store_true",
                   help="check a reduced sequence: exactness at the first two terms and u-commutation")
    s.set_defaults(func=cmd_triangle)

    s = sub.add_parser("corpus", parents=[common], help="built-in complexes")
    s.add_argument("op", choices=("list", "emit"))
    s.add_argument("name", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_corpus)
    return p


def _field_ring(text: str) -> RingSpec:
    r = _ring(text)
    if not r.is_field:
        raise argparse.ArgumentTypeError("this command needs a field: Q or F<p>")
    return r


_INPUT_ERRORS = (SchemaError, ComplexFormatError, lat.LatticeError, TriangleFormatError, UsageError)
_MATH_ERRORS = (InvalidComplexError, cob.CobordismError, floer.ReducedGroupError, floer.TowerError,
                lat.CertificateError)


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        args.err = err
        result, code = args.func(args)
    except _INPUT_ERRORS as e:
        err.write(f"error: {e}\n")
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except _MATH_ERRORS as e:
        err.write(f"failed: {e}\n")
        return 1
    except ValueError as e:
        # remaining value errors are unmet preconditions of the input
        err.write(f"error: {e}\n")
        return 2
    _emit(out, result, args.format)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
