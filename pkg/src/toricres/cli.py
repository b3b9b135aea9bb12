"""Command line front end: JSON instance in, exact JSON result out.

Exit status: 0 on success, 2 for malformed input, 3 when a mathematical
precondition fails (the certificate is included in the output), 1 when
the numeric cross-check in ``verify`` disagrees with the exact result.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

import jsonschema

from . import combinatorics as comb
from . import geometry as geo
from . import oracle
from . import residues as res
from . import resultants as rs
from .errors import InputError, PreconditionError
from .laurent import LaurentPoly, SystemInstance, format_fraction

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3

_RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"}
_POLY = {
    "type": "object",
    "properties": {
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "exp": {"type": "array", "items": {"type": "integer"}},
                    "coef": _RATIONAL,
                },
                "required": ["exp", "coef"],
                "additionalProperties": False,
            },
        }
    },
    "required": ["terms"],
    "additionalProperties": False,
}
INSTANCE_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "polynomials": {"type": "array", "items": _POLY},
        "declared_polytopes": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 1,
                "items": {"type": "array", "items": {"type": "integer"}},
            },
        },
    },
    "required": ["n", "polynomials"],
    "additionalProperties": False,
}


# --------------------------------------------------------------------------
# (de)serialisation


def q(x) -> str:
    return format_fraction(Fraction(x))


def parse_instance(doc: dict) -> SystemInstance:
    jsonschema.validate(doc, INSTANCE_SCHEMA)
    n = doc["n"]
    polys = [LaurentPoly.from_json(p, n) for p in doc["polynomials"]]
    if not polys:
        raise InputError("no polynomials given")
    declared = None
    if "declared_polytopes" in doc:
        declared = [geo.convex_hull(pts) for pts in doc["declared_polytopes"]]
    return SystemInstance.from_polys(polys, declared)


def serialize_instance(inst: SystemInstance) -> dict:
    return {
        "n": inst.n,
        "polynomials": [f.to_json() for f in inst.polys],
        "declared_polytopes": [[list(v) for v in P.vertices] for P in inst.declared_polytopes],
    }


def _polytope_doc(P: geo.LatticePolytope) -> dict:
    return {
        "vertices": [list(v) for v in P.vertices],
        "dim": P.dim,
        "lattice_volume": geo.lattice_volume(P),
        "facet_normals": [list(v) for v in geo.facet_normals(P)],
    }


def _cert_doc(cert: geo.DevelopednessCertificate) -> dict:
    if cert.verdict:
        return {
            "developed": True,
            "cones": [{"normal": list(v), "vertex_term": i} for v, i in cert.cone_witnesses],
        }
    return {"developed": False, "witness": list(cert.witness)}


def _monomial_doc(M) -> dict:
    return M.to_json()


# --------------------------------------------------------------------------
# commands


def _polytopes(inst: SystemInstance) -> list[geo.LatticePolytope]:
    return list(inst.declared_polytopes)


def _square(inst: SystemInstance) -> None:
    if len(inst.polys) != inst.n:
        raise InputError(f"need {inst.n} polynomials in {inst.n} variables")


def _split_f(inst: SystemInstance, f_arg: str | None) -> tuple[LaurentPoly, SystemInstance]:
    """``f`` and the square system it is summed over."""
    if f_arg is None:
        raise InputError("--f is required")
    if f_arg.lstrip("-").isdigit():
        i = int(f_arg)
        if len(inst.polys) != inst.n + 1 or not 1 <= i <= len(inst.polys):
            raise InputError("--f INDEX needs n+1 polynomials and 1 <= INDEX <= n+1")
        rest = [p for j, p in enumerate(inst.polys, 1) if j != i]
        decl = [P for j, P in enumerate(inst.declared_polytopes, 1) if j != i]
        return inst.polys[i - 1], SystemInstance.from_polys(rest, decl)
    try:
        doc = json.loads(f_arg)
        jsonschema.validate(doc, _POLY)
    except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
        raise InputError(f"bad inline polynomial: {exc}") from exc
    _square(inst)
    return LaurentPoly.from_json(doc, inst.n), inst


def _table(inst: SystemInstance):
    _square(inst)
    inst.require_omega()
    return comb.combinatorial_coefficients(_polytopes(inst))


def cmd_polytope(inst, args) -> dict:
    return {"polytopes": [_polytope_doc(P) for P in _polytopes(inst)]}


def cmd_minkowski(inst, args) -> dict:
    return {"sum": _polytope_doc(geo.minkowski_sum_all(_polytopes(inst)))}


def cmd_mixed_volume(inst, args) -> dict:
    return {"value": str(geo.mixed_volume(_polytopes(inst), inst.n))}


def cmd_developed(inst, args) -> dict:
    polys = _polytopes(inst)
    if args.complete:
        ok, certs = geo.is_completely_developed(polys)
        doc = {"completely_developed": ok, "per_index": [_cert_doc(c) for c in certs]}
        if not ok:
            bad = [i for i, c in enumerate(certs, 1) if not c.verdict]
            raise PreconditionError("collection is not completely developed", doc | {"failing": bad})
        return doc
    if args.i is not None:
        cert = geo.is_i_developed(polys, args.i)
    else:
        cert = geo.is_developed(polys)
    doc = _cert_doc(cert)
    if not cert.verdict:
        raise PreconditionError("collection is not developed", doc)
    return doc


def cmd_comb_coeffs(inst, args) -> dict:
    polys = _polytopes(inst)
    if args.pair:
        i, j = args.pair
        table = comb.combinatorial_coefficients_ij(polys, i, j)
    else:
        table = comb.combinatorial_coefficients(polys)
    return {"order": list(table.order), "coefficients": table.to_json()}


def cmd_power_sums(inst, args) -> dict:
    f, system = _split_f(inst, args.f)
    table = _table(system)
    p = res.power_sums(f, system.polys, table, args.K)
    return {"power_sums": [q(x) for x in p.values]}


def cmd_char_poly(inst, args) -> dict:
    f, system = _split_f(inst, args.f)
    table = _table(system)
    poly = res.values_characteristic_polynomial(f, system.polys, table)
    degree = max((e[0] for e in poly.support()), default=0)
    return {
        "degree": degree,
        "coefficients": [q(poly.coefficient((d,))) for d in range(degree + 1)],
        "text": str(poly),
    }


def cmd_product(inst, args) -> dict:
    if args.i is None:
        raise InputError("--i is required")
    return {"index": args.i, "value": q(rs.pi_product(args.i, inst))}


def _monomials(inst) -> list[tuple[Fraction, tuple[int, ...]]]:
    out = []
    for f in inst.polys:
        if len(f) != 1:
            raise InputError("every polynomial must be a single monomial")
        ((e, c),) = f.items()
        out.append((c, e))
    if len(out) != inst.n + 1:
        raise InputError(f"need {inst.n + 1} monomials in {inst.n} variables")
    return out


def cmd_parshin(inst, args) -> dict:
    mons = _monomials(inst)
    sym = comb.parshin_symbol_symbolic([e for _, e in mons])
    return {"value": q(comb.parshin_symbol(mons)), "symbolic": sym.to_json()}


def cmd_d_function(inst, args) -> dict:
    vectors = [e for _, e in _monomials(inst)]
    return {
        "value": comb.d_function(vectors),
        "kernel_formula": comb.d_function_kernel(vectors),
        "minor_formula": comb.d_function_minors(vectors),
    }


def cmd_sylvester(inst, args) -> dict:
    if inst.n != 1 or len(inst.polys) != 2:
        raise InputError("sylvester needs two polynomials in one variable")
    f1, f2 = inst.polys
    segs = [(P.vertices[0][0], P.vertices[-1][0]) for P in inst.declared_polytopes]
    r1, r2 = rs.delta_resultant_1d(f1, f2, *segs)
    return {"R1": q(r1), "R2": q(r2), "segments": [list(s) for s in segs]}


def cmd_resultant(inst, args) -> dict:
    value, deco = rs.delta_resultant_1developed(inst, args.pivot)
    return {
        "magnitude": q(value.magnitude),
        "sign": value.sign_status,
        "pivot": deco.pivot,
        "pi_term": q(deco.pi_term),
        "facets": [ff.to_json() for ff in deco.facet_factors],
    }


def cmd_poisson_check(inst, args) -> dict:
    rep = rs.signed_poisson_check(inst)
    return {
        "consistent": rep.consistent,
        "values": [q(v) for v in rep.values],
        "pi_products": [q(v) for v in rep.pi_products],
        "signs": list(rep.signs),
        "monomials": [_monomial_doc(M) for M in rep.monomials],
        "facet_monomials_agree": rep.facet_monomials_agree,
        "mismatches": list(rep.mismatches),
    }


def cmd_verify(inst, args) -> dict:
    if inst.n > 2:
        raise InputError("the numeric oracle handles n <= 2 only")
    if args.f is None:
        f, system = LaurentPoly.constant(1, inst.n), inst
    else:
        f, system = _split_f(inst, args.f)
    table = _table(system)
    K = args.K
    exact = res.power_sums(f, system.polys, table, K)
    prod = res.product_over_roots(f, system.polys, table)
    roots = oracle.system_roots(list(system.polys))
    checks = []
    for k in range(1, K + 1):
        approx = oracle.numeric_sum(f**k, roots)
        checks.append({"what": f"p_{k}", "exact": q(exact[k]), "numeric": [approx.real, approx.imag],
                       "ok": oracle.close(exact[k], approx)})
    approx = oracle.numeric_product(f, roots)
    checks.append({"what": "product", "exact": q(prod), "numeric": [approx.real, approx.imag],
                   "ok": oracle.close(prod, approx)})
    count = roots.count()
    mv = geo.mixed_volume(list(system.declared_polytopes))
    checks.append({"what": "root_count", "exact": str(mv), "numeric": [count, 0], "ok": count == mv})
    return {"agree": all(c["ok"] for c in checks), "checks": checks, "residual": roots.residual}


COMMANDS = {
    "polytope": cmd_polytope,
    "minkowski": cmd_minkowski,
    "mixed-volume": cmd_mixed_volume,
    "developed": cmd_developed,
    "comb-coeffs": cmd_comb_coeffs,
    "power-sums": cmd_power_sums,
    "char-poly": cmd_char_poly,
    "product": cmd_product,
    "parshin": cmd_parshin,
    "d-function": cmd_d_function,
    "sylvester": cmd_sylvester,
    "resultant": cmd_resultant,
    "poisson-check": cmd_poisson_check,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", default="-", help="instance JSON file, or - for stdin")
        p.add_argument("--output", default="-", help="result file, or - for stdout")
        p.add_argument("--pretty", action="store_true", help="indent the JSON output")
        if name == "developed":
            g = p.add_mutually_exclusive_group()
            g.add_argument("--i", type=int)
            g.add_argument("--complete", action="store_true")
        if name == "comb-coeffs":
            p.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
        if name in ("power-sums", "char-poly", "verify"):
            p.add_argument("--f", help="1-based polynomial index or inline polynomial JSON")
        if name in ("power-sums", "verify"):
            p.add_argument("--K", type=int, default=1 if name == "power-sums" else 2)
        if name == "product":
            p.add_argument("--i", type=int)
        if name == "resultant":
            p.add_argument("--pivot", type=int, default=1)
    return parser


def _dump(doc: Any, pretty: bool) -> str:
    if pretty:
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def run(argv: Sequence[str] | None = None, stdin=None, stdout=None) -> int:
    """Execute one job; returns the exit status."""
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)
    status = EXIT_OK
    try:
        if args.input == "-":
            text = stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        inst = parse_instance(doc)
        result = {"command": args.command, "result": COMMANDS[args.command](inst, args)}
        if args.command == "verify" and not result["result"]["agree"]:
            status = EXIT_MISMATCH
    except (InputError, jsonschema.ValidationError, OSError) as exc:
        message = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
        result = {"command": args.command, "error": {"kind": "input", "message": message}}
        status = EXIT_INPUT
    except PreconditionError as exc:
        result = {
            "command": args.command,
            "error": {"kind": type(exc).__name__, "message": str(exc), "certificate": exc.certificate},
        }
        status = EXIT_PRECONDITION
    out = _dump(result, args.pretty)
    if args.output == "-":
        stdout.write(out)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    return status


def main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
