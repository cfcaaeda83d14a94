"""Command line interface and file formats.

Hypergraph files::

    # comment
    n 6
    e 1
    e 2 3

Graph files use ``g u v`` lines instead of ``e``.  Every command prints one
JSON record; exact values are fraction strings.  Exit codes: 0 success,
2 parse error, 3 precondition violation, 4 cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import chains, constructions
from .core import Hypergraph
from .count import count_independent, count_independent_bruteforce, independence_polynomial, BRUTEFORCE_LIMIT
from .density import Dyadic, id as density_id, matching_bounds, rho, rho_recursive
from .errors import HypdensError, ParseError

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_CROSSCHECK = 0, 2, 3, 4


class CrossCheckFailure(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# file formats


def _records(text: str, kinds: str):
    n = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        try:
            nums = [int(t) for t in rest]
        except ValueError:
            raise ParseError(f"non-integer token in {raw.strip()!r}", lineno) from None
        if tag == "n":
            if n is not None:
                raise ParseError("duplicate 'n' header", lineno)
            if len(nums) != 1 or nums[0] < 0:
                raise ParseError("'n' takes one non-negative count", lineno)
            n = nums[0]
        elif tag in kinds:
            if n is None:
                raise ParseError(f"'{tag}' line before the 'n' header", lineno)
            bad = [v for v in nums if not 1 <= v <= n]
            if bad:
                raise ParseError(f"vertex {bad[0]} outside 1..{n}", lineno)
            rows.append((lineno, tag, nums))
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'n' header")
    return n, rows


def parse_hypergraph(text: str) -> Hypergraph:
    n, rows = _records(text, "e")
    edges = []
    for lineno, _, nums in rows:
        if len(set(nums)) != len(nums):
            raise ParseError("repeated vertex in edge", lineno)
        edges.append(tuple(nums))
    return Hypergraph(n, tuple(edges))


def format_hypergraph(h: Hypergraph) -> str:
    lines = [f"n {h.n}"]
    lines += ["e" + "".join(f" {v}" for v in e) for e in h.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> constructions.Graph:
    n, rows = _records(text, "g")
    edges = set()
    for lineno, _, nums in rows:
        if len(nums) != 2:
            raise ParseError("'g' takes exactly two vertices", lineno)
        u, v = nums
        if u == v:
            raise ParseError("loops are not allowed", lineno)
        edges.add((u, v))
    return constructions.Graph(n, frozenset(edges))


def format_graph(g: constructions.Graph) -> str:
    return "\n".join([f"n {g.n}"] + [f"g {u} {v}" for u, v in sorted(g.edges)]) + "\n"


def read_hypergraph(path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def read_graph(path) -> constructions.Graph:
    return parse_graph(Path(path).read_text())


def exact(value) -> str:
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    """Accept ``p/q``, decimals, ``1e-6`` and ``2^-P``."""
    text = text.strip()
    try:
        if text.startswith("2^"):
            return Fraction(2) ** int(text[2:])
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def parse_ids(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad vertex list {text!r}") from None


# ---------------------------------------------------------------------------
# commands


def _oracle(h: Hypergraph, count: int):
    if h.n > BRUTEFORCE_LIMIT:
        return {"oracle": "skipped", "reason": f"n > {BRUTEFORCE_LIMIT}"}
    brute = count_independent_bruteforce(h)
    if brute != count:
        raise CrossCheckFailure(f"branching count {count} != brute force {brute}")
    return {"oracle": "agree"}


def cmd_count(args):
    h = read_hypergraph(args.file)
    c = count_independent(h)
    out = {"n": h.n, "count": str(c)}
    if args.oracle:
        out.update(_oracle(h, c))
    return out


def cmd_poly(args):
    h = read_hypergraph(args.file)
    p = independence_polynomial(h)
    out = {"n": h.n, "poly": str(p), "coefficients": [str(c) for c in p], "independence_number": p.degree}
    if args.oracle:
        out.update(_oracle(h, p.total()))
    return out


def cmd_id(args):
    h = read_hypergraph(args.file)
    d = density_id(h)
    out = {"n": h.n, "id": exact(d), "id_power_form": d.as_power_form()}
    if args.oracle:
        out.update(_oracle(h, d.numerator << (h.n - d.exponent)))
    return out


def cmd_rho(args):
    h = read_hypergraph(args.file)
    a, b = parse_ids(args.include), parse_ids(args.exclude)
    out = {"n": h.n, "in": a, "out": b}
    if args.method in ("direct", "both"):
        out["direct"] = exact(rho(h, a, b))
    if args.method in ("recursive", "both"):
        out["recursive"] = exact(rho_recursive(h, a, b))
    if args.method == "both" and out["direct"] != out["recursive"]:
        raise CrossCheckFailure(f"direct {out['direct']} != recursive {out['recursive']}")
    out["rho"] = out.get("direct", out.get("recursive"))
    return out


def cmd_bounds(args):
    h = read_hypergraph(args.file)
    lo, hi = matching_bounds(h, exact=args.exact)
    d = density_id(h)
    if not lo <= d <= hi:
        raise CrossCheckFailure(f"id {d} outside [{lo}, {hi}]")
    return {"n": h.n, "bounds": [exact(lo), exact(hi)], "id": exact(d), "exact_matching": args.exact}


def _build_chain(family: str, params: str | None, x: Fraction):
    p = (params or "").strip()
    if family == "hhat":
        if p.startswith("vertices"):
            step = int(p.split(":", 1)[1]) if ":" in p else 1
            return chains.hhat_vertex_chain(step)
        return chains.hhat_chain()
    if family == "path":
        return chains.path_chain(two_sided=p == "both")
    if family == "cliqueunion":
        if p in ("", "equal"):
            return chains.equal_clique_union_chain()
        if p == "clique":
            return chains.clique_chain()
        try:
            ka, kb = (int(t) for t in p.split(":"))
        except ValueError:
            raise ParseError(f"cliqueunion params are 'equal', 'clique' or 'A:B', got {p!r}") from None
        return chains.clique_union_chain(lambda m: ka * m, lambda m: kb * m, f"cliqueunion-{ka}:{kb}")
    if family == "jump":
        return chains.jumping_chain(parse_rational(p))
    if family == "hofr":
        r = parse_rational(p)
        return chains.hofr_chain_rational(r.numerator, r.denominator)
    if family == "interleave":
        return chains.oscillating_chain(parse_rational(p) if p else x)
    raise ParseError(f"unknown chain family {family!r}")


def _threads() -> int:
    raw = os.environ.get("HD_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ParseError(f"HD_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ParseError("HD_THREADS must be non-negative")
    return n


def cmd_chain(args):
    x = parse_rational(args.x)
    chain = _build_chain(args.family, args.params, x)
    seq = chains.density_sequence(chain, args.steps, x, workers=_threads())
    if args.csv:
        lines = ["m,value_num,value_den"]
        lines += [f"{m},{v.numerator},{v.denominator}" for m, v in enumerate(seq.values, start=1)]
        return "\n".join(lines)
    out = {
        "chain": chain.name,
        "x": exact(x),
        "orders": list(seq.orders),
        "values": [exact(v) for v in seq.values],
    }
    if args.classify:
        lc = chains.classify_limit(seq)
        out["limit"] = {"class": lc.tag}
        if lc.value is not None:
            out["limit"]["value"] = exact(lc.value)
            out["limit"]["width"] = exact(lc.width)
    return out


def _decimal(q: Fraction, digits=15) -> str:
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(mpmath.mpf(q.numerator) / q.denominator, digits)


def cmd_pentagonal(args):
    if args.terms is not None:
        N = args.terms
    else:
        N = constructions.terms_for_width(parse_rational(args.precision))
    value, tail = constructions.pentagonal_partial(N)
    penta = constructions.pentagonal_enclosure(N)
    K = 1
    while Fraction(1, 1 << K) > penta.width:
        K += 1
    prod = constructions.product_enclosure(K)
    if not penta.intersects(prod):
        raise CrossCheckFailure("pentagonal and product enclosures are disjoint")
    with mpmath.workdps(40):
        neglog = [-mpmath.log(mpmath.mpf(q.numerator) / q.denominator) for q in (penta.upper, penta.lower)]
    return {
        "terms": N,
        "value": exact(value),
        "tail_bound": exact(tail),
        "enclosure": [exact(penta.lower), exact(penta.upper)],
        "width": exact(penta.width),
        "width_power_form": Dyadic(penta.width).as_power_form(),
        "enclosure_decimal": [_decimal(penta.lower), _decimal(penta.upper)],
        "product_terms": K,
        "product_enclosure": [exact(prod.lower), exact(prod.upper)],
        "neg_log_enclosure_decimal": [mpmath.nstr(v, 15) for v in neglog],
    }


def _family(specs: list[str], g: constructions.Graph):
    out = []
    for spec in specs:
        if spec == "k2":
            out.append(constructions.clique(2))
        elif spec == "triangle":
            out.append(constructions.clique(3))
        elif spec == "cycles":
            out.extend(constructions.cycle_family(g.n))
        elif spec == "oddcycles":
            out.extend(constructions.odd_cycle_family(g.n))
        elif Path(spec).is_file():
            out.append(read_graph(spec))
        else:
            raise ParseError(f"unknown family member {spec!r}")
    return out


def cmd_ffree(args):
    g = read_graph(args.graph)
    family = _family(args.family, g)
    h = constructions.ffree_lift(g, family)
    if args.lift_out:
        Path(args.lift_out).write_text(format_hypergraph(h))
    return {
        "n": g.n,
        "family": args.family,
        "hyperedges": [list(e) for e in h.edges],
        "density": exact(density_id(h)),
    }


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypdens", description="Exact independence densities of hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("count", cmd_count, "number of independent sets"),
        ("poly", cmd_poly, "independence polynomial"),
        ("id", cmd_id, "independence density"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
        p.set_defaults(func=fn)

    p = sub.add_parser("rho", help="constrained density")
    p.add_argument("file")
    p.add_argument("--in", dest="include", default="", help="vertices required in the set")
    p.add_argument("--out", dest="exclude", default="", help="vertices kept out of the set")
    p.add_argument("--method", choices=("direct", "recursive", "both"), default="direct")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("bounds", help="matching-number bounds on the density")
    p.add_argument("file")
    p.add_argument("--exact", action="store_true", help="use a maximum matching")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("chain", help="density sequence of a chain")
    p.add_argument("--family", required=True, choices=("hhat", "path", "cliqueunion", "jump", "hofr", "interleave"))
    p.add_argument("--params", default=None)
    p.add_argument("--x", default="1")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--classify", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("pentagonal", help="certified enclosure of prod (1 - 2^-k)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--precision", help="target width, e.g. 1e-6 or 2^-30")
    g.add_argument("--terms", type=int)
    p.set_defaults(func=cmd_pentagonal)

    p = sub.add_parser("ffree", help="family-free density of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--family", nargs="+", required=True, help="k2, triangle, cycles, oddcycles or graph files")
    p.add_argument("--lift-out", default=None, help="write the lifted hypergraph here")
    p.set_defaults(func=cmd_ffree)
    return parser


def _record(args, status, payload):
    echo = {k: v for k, v in vars(args).items() if k != "func"}
    return json.dumps({"command": args.command, "args": echo, "status": status, **payload}, indent=None)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except ParseError as exc:
        print(_record(args, "parse_error", {"error": str(exc)}))
        return EXIT_PARSE
    except (OSError, UnicodeDecodeError) as exc:
        print(_record(args, "parse_error", {"error": str(exc)}))
        return EXIT_PARSE
    except HypdensError as exc:
        print(_record(args, "precondition_violation", {"error": f"{type(exc).__name__}: {exc}"}))
        return EXIT_PRECONDITION
    except CrossCheckFailure as exc:
        print(_record(args, "crosscheck_failure", {"error": str(exc)}))
        return EXIT_CROSSCHECK
    if isinstance(result, str):
        print(result)
    else:
        print(_record(args, "ok", {"result": result}))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
