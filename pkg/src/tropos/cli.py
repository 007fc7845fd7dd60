"""Command-line front end with JSON input and output.

Input is a JSON object read from a file argument or standard input.  Matrix
entries are integers or the strings ``"inf"`` / ``"-inf"``; rationals are
written ``"a/b"``.  Indices in witnesses and permutations are 1-based.

Exit codes: 0 success, 1 domain error, 2 parse or usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import warnings
from fractions import Fraction

from . import building, ideals, orders, polyhedra, polytrope, trop, valuation

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class DomainError(Exception):
    def __init__(self, status: str, message: str, witness=None):
        super().__init__(message)
        self.status = status
        self.witness = witness


# -- encoding --------------------------------------------------------------------

def encode_value(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, float):
        if x == trop.INF:
            return "inf"
        if x == trop.NEG_INF:
            return "-inf"
        raise ValueError(f"non-integral float {x!r}")
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def encode_vector(v) -> list:
    return [encode_value(x) for x in v]


def encode_matrix(M, fmt: str = "matrix"):
    if fmt == "vec" and all(M[i][i] == 0 for i in range(len(M))):
        return encode_vector(orders.vectorize(M))
    return [encode_vector(row) for row in M]


def encode_ray(v, d: int, fmt: str):
    """Vectorised points are emitted as they are, or re-expanded into matrices."""
    if fmt == "vec":
        return encode_vector(v)
    return encode_matrix(orders.devectorize(v, d))


def encode_orbits(report: polyhedra.OrbitReport, d: int, fmt: str) -> list:
    return [{"size": o.size, "incident_facets": o.incident_facets,
             "representative": encode_ray(o.representative, d, fmt)} for o in report.orbits]


# -- decoding --------------------------------------------------------------------

def parse_value(x):
    if isinstance(x, bool):
        raise UsageError(f"invalid matrix entry {x!r}")
    if isinstance(x, int):
        return x
    if x in ("inf", "+inf"):
        return trop.INF
    if x == "-inf":
        return trop.NEG_INF
    raise UsageError(f"invalid matrix entry {x!r}")


def parse_matrix(obj, name: str = "matrix", finite: bool = False) -> trop.TropMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise UsageError(f"{name} must be a nonempty list of rows")
    d = len(obj)
    if any(len(r) != d for r in obj):
        raise UsageError(f"{name} must be square")
    M = trop.TropMatrix(tuple(tuple(parse_value(x) for x in r) for r in obj))
    if finite and not M.is_finite():
        raise UsageError(f"{name} must have finite entries")
    return M


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise UsageError(f"invalid rational {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid rational {x!r}") from None


def parse_int_vector(obj, name: str) -> list[int]:
    if not isinstance(obj, list) or not obj or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        raise UsageError(f"{name} must be a nonempty list of integers")
    return obj


def parse_int(obj, name: str, minimum: int | None = None) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise UsageError(f"{name} must be an integer")
    if minimum is not None and obj < minimum:
        raise UsageError(f"{name} must be at least {minimum}")
    return obj


def require(data: dict, key: str):
    if key not in data:
        raise UsageError(f"missing field {key!r}")
    return data[key]


def order_from(data: dict) -> orders.GraduatedOrder:
    M = parse_matrix(require(data, "matrix"), finite=True)
    res = orders.check_order(M)
    if isinstance(res, orders.Violation):
        raise DomainError("violation", str(res), violation_json(res))
    return res


def violation_json(v: orders.Violation) -> dict:
    return {"kind": v.kind, "indices": [i + 1 for i in v.indices]}


def witness_json(w: trop.EmptyWitness) -> dict:
    return {"cycle": [i + 1 for i in w.cycle], "weight": w.weight}


# -- commands --------------------------------------------------------------------

def cmd_kleene_check(data, args):
    M = parse_matrix(require(data, "matrix"), finite=True)
    res = orders.check_order(M)
    if isinstance(res, orders.Violation):
        raise DomainError("violation", str(res), violation_json(res))
    return {"kleene_star": True}


def cmd_kleene_star(data, args):
    N = parse_matrix(require(data, "matrix"))
    C = trop.kleene_star(N)
    if isinstance(C, trop.EmptyWitness):
        raise DomainError("empty", "negative cycle: the polytrope is empty", witness_json(C))
    return {"matrix": encode_matrix(C, args.format)}


def cmd_pz(data, args):
    pts = require(data, "points")
    if not isinstance(pts, list) or not pts:
        raise UsageError("points must be a nonempty list")
    pts = [parse_int_vector(u, "point") for u in pts]
    if len({len(u) for u in pts}) != 1:
        raise UsageError("points differ in length")
    O = orders.pz_order(pts)
    return {"matrix": encode_matrix(O.M, args.format)}


def _polytrope(data) -> polytrope.Polytrope:
    P = polytrope.make_polytrope(parse_matrix(require(data, "matrix"), finite=True))
    if P.empty:
        raise DomainError("empty", "the polytrope is empty", witness_json(P.witness))
    return P


def cmd_vertices(data, args):
    P = _polytrope(data)
    names = {"min": trop.MIN_PLUS, "max": trop.MAX_PLUS}
    chosen = [args.semiring] if args.semiring else ["min", "max"]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", polytrope.DegeneratePolytropeWarning)
        out = {s: [encode_vector(v) for v in polytrope.tropical_vertices(P, names[s])] for s in chosen}
    out["full_dimensional"] = not any(issubclass(w.category, polytrope.DegeneratePolytropeWarning) for w in caught)
    return out


def cmd_integer_points(data, args):
    pts = polytrope.integer_points(_polytrope(data))
    return {"count": len(pts), "points": [encode_vector(u) for u in pts]}


def cmd_classical_vertices(data, args):
    V = polytrope.classical_vertices(_polytrope(data))
    return {"count": len(V), "vertices": [encode_vector(v) for v in V]}


def cmd_region_census(data, args):
    d = parse_int(require(data, "d"), "d", 2)
    fvector = True if args.fvector else None
    R = orders.region_census(d, fvector=fvector)
    return {
        "d": d,
        "lineality_dim": R.lineality_dim,
        "n_rays": len(R.rays),
        "rays": [encode_ray(v, d, args.format) for v in R.rays.rays_or_vertices],
        "orbits": encode_orbits(R.orbits, d, args.format),
        "fvector": list(R.fvector) if R.fvector is not None else None,
    }


def cmd_truncated_region(data, args):
    O = order_from(data)
    d = O.d
    if d < 2:
        raise UsageError("truncated regions need d >= 2")
    T = orders.truncated_region(O, fvector=args.fvector)
    verts = T.vertices.rays_or_vertices
    vset = set(verts)
    pts = [orders.vectorize(N) for N in T.integer_points]
    return {
        "n_vertices": len(verts),
        "vertices": [encode_ray(v, d, args.format) for v in verts],
        "orbits": encode_orbits(T.orbits(), d, args.format),
        "n_integer_points": len(pts),
        "n_non_vertex_integer_points": sum(1 for v in pts if tuple(Fraction(x) for x in v) not in vset),
        "integer_points": [encode_ray(v, d, args.format) for v in pts],
        "fvector": list(T.fvector) if T.fvector is not None else None,
    }


def cmd_ideal_classes(data, args):
    O = order_from(data)
    S = ideals.ideal_classes(O)
    return {
        "count": len(S),
        "classes": [encode_matrix(N) for N in S.elements],
        "neutral": S.neutral,
        "jacobson": encode_matrix(ideals.jacobson_radical(O)),
    }


def _ideal(data, O, key: str) -> trop.TropMatrix:
    N = parse_matrix(require(data, key), key, finite=True)
    if N.d != O.d:
        raise UsageError(f"{key} has dimension {N.d}, expected {O.d}")
    if not ideals.is_ideal_class(N, O):
        raise DomainError("violation", f"{key} does not define a fractional ideal of the order")
    return N


def cmd_ideal_product(data, args):
    O = order_from(data)
    A, B = _ideal(data, O, "left"), _ideal(data, O, "right")
    return {"matrix": encode_matrix(ideals.ideal_product(A, B, O))}


def cmd_pseudo_inverse(data, args):
    O = order_from(data)
    if "ideal" in data:
        N = _ideal(data, O, "ideal")
        return {"matrix": encode_matrix(ideals.pseudo_inverse(N, O)), "unit": ideals.is_unit(N, O)}
    S = ideals.ideal_classes(O)
    invs = [ideals.pseudo_inverse(N, O) for N in S.elements]
    return {
        "pseudo_inverses": [encode_matrix(N) for N in invs],
        "distinct": [encode_matrix(N) for N in sorted(set(invs))],
    }


def cmd_class_group(data, args):
    O = order_from(data)
    G = ideals.class_group(O)
    D = G.descriptor
    return {
        "order": D.order,
        "abelian": D.abelian,
        "name": D.name,
        "element_orders": {str(k): v for k, v in D.element_orders},
        "elements": [encode_matrix(N) for N in G.elements],
    }


def cmd_conjecture_check(data, args):
    O = order_from(data)
    limit = data.get("max_rays", 200_000)
    limit = None if limit is None else parse_int(limit, "max_rays", 1)
    R = ideals.conjecture_check(O, max_rays=limit)
    if R.error is not None:
        raise DomainError("limit", R.error)
    return {
        "passed": R.passed,
        "n_vertices": R.n_vertices,
        "verdicts": [{"class": encode_matrix(N), "vertex": ok} for N, ok in R.verdicts],
    }


def cmd_jacobson(data, args):
    return {"matrix": encode_matrix(ideals.jacobson_radical(order_from(data)))}


def cmd_chamber_order(data, args):
    if "sigma" in data:
        sigma = parse_int_vector(data["sigma"], "sigma")
        d = len(sigma)
        if sorted(sigma) != list(range(1, d + 1)):
            raise UsageError("sigma must be a permutation of 1..d")
        u = parse_int_vector(require(data, "u"), "u")
        if len(u) != d:
            raise UsageError("u must have the same length as sigma")
        if sum(u) != 0:
            raise UsageError("u must sum to 0")
    else:
        d = parse_int(require(data, "d"), "d", 2)
        rng = random.Random(args.seed)
        sigma = list(range(1, d + 1))
        rng.shuffle(sigma)
        u = [rng.randint(-3, 3) for _ in range(d - 1)]
        u.append(-sum(u))
    w = building.WeylElement(tuple(s - 1 for s in sigma), tuple(u))
    O = building.two_chamber_order(w)
    C0, _ = building.standard_chamber(d)
    return {
        "sigma": sigma,
        "u": u,
        "matrix": encode_matrix(O.M, args.format),
        "chambers": [[encode_vector(c) for c in C0.classes],
                     [encode_vector(c) for c in building.translate_chamber(w, C0).classes]],
    }


def cmd_val(data, args):
    p = parse_int(require(data, "p"), "p", 2)
    ctx = valuation.PAdic(p)
    if "value" in data:
        return {"val": encode_value(valuation.padic_val(parse_rational(data["value"]), ctx))}
    X = require(data, "matrix")
    if not isinstance(X, list) or not X or not all(isinstance(r, list) and len(r) == len(X) for r in X):
        raise UsageError("matrix must be a square nonempty list of rows")
    X = [[parse_rational(x) for x in r] for r in X]
    out = {"matrix": encode_matrix(valuation.val_matrix(X, ctx))}
    if "lattice" in data:
        N = parse_matrix(data["lattice"], "lattice")
        if N.d != len(X):
            raise UsageError("lattice has the wrong dimension")
        out["in_lattice"] = valuation.in_lattice(X, N, ctx)
    return out


COMMANDS = {
    "kleene-check": cmd_kleene_check,
    "kleene-star": cmd_kleene_star,
    "pz": cmd_pz,
    "vertices": cmd_vertices,
    "integer-points": cmd_integer_points,
    "classical-vertices": cmd_classical_vertices,
    "region-census": cmd_region_census,
    "truncated-region": cmd_truncated_region,
    "ideal-classes": cmd_ideal_classes,
    "ideal-product": cmd_ideal_product,
    "pseudo-inverse": cmd_pseudo_inverse,
    "class-group": cmd_class_group,
    "conjecture-check": cmd_conjecture_check,
    "jacobson": cmd_jacobson,
    "chamber-order": cmd_chamber_order,
    "val": cmd_val,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tropos", description="Tropical computations for graduated orders.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("input", nargs="?", help="JSON input file (default: standard input)")
    ap.add_argument("--fvector", action="store_true", help="also compute face lattices and f-vectors")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    ap.add_argument("--format", choices=["matrix", "vec"], default="matrix",
                    help="emit zero-diagonal matrices as matrices or off-diagonal vectors")
    ap.add_argument("--semiring", choices=["min", "max"], help="restrict vertices to one semiring")
    return ap


def _threads():
    raw = os.environ.get("TROPOS_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise UsageError("TROPOS_THREADS must be a positive integer") from None
    if n < 1:
        raise UsageError("TROPOS_THREADS must be a positive integer")
    return n  # computations are single-threaded; the cap is always respected


def run(argv: list[str] | None = None, stdin=None) -> tuple[dict, int]:
    """Execute one command; returns the JSON document and the exit code."""
    doc: dict = {"command": None, "input": None}
    try:
        args = build_parser().parse_args(argv)
        doc["command"] = args.command
        _threads()
        if args.input:
            try:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
        else:
            text = (stdin or sys.stdin).read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("input must be a JSON object")
        doc["input"] = data
        doc["result"] = COMMANDS[args.command](data, args)
        doc["status"] = "ok"
        return doc, EXIT_OK
    except UsageError as exc:
        doc.update(status="error", error=str(exc))
        return doc, EXIT_USAGE
    except DomainError as exc:
        doc.update(status=exc.status, error=str(exc))
        if exc.witness is not None:
            doc["witness"] = exc.witness
        return doc, EXIT_DOMAIN
    except orders.NotAnOrderError as exc:
        doc.update(status="violation", error=str(exc), witness=violation_json(exc.violation))
        return doc, EXIT_DOMAIN
    except polytrope.EmptyPolytropeError as exc:
        doc.update(status="empty", error=str(exc), witness=witness_json(exc.witness))
        return doc, EXIT_DOMAIN
    except polyhedra.UnboundedError as exc:
        doc.update(status="unbounded", error=str(exc))
        return doc, EXIT_DOMAIN
    except polyhedra.InfeasibleError as exc:
        doc.update(status="empty", error=str(exc))
        return doc, EXIT_DOMAIN
    except (ValueError, ArithmeticError) as exc:
        doc.update(status="error", error=str(exc))
        return doc, EXIT_DOMAIN


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    doc, code = run(argv)
    sys.stdout.write(dumps(doc) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
