"""Command line interface.

Subcommands mirror the pipeline stages: generate an arrangement, inspect
its curve-configuration graph, build the closed plumbing graph, run
calculus scripts, and compute homology and the closed-form checks.  All
output is deterministic; errors leave a one-line JSON object on stderr and
a nonzero exit code.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .arrangement import (
    IncidenceData,
    arrangement_from_json,
    generate_family,
    incidence_from_lines,
    incidence_to_json,
    random_rational_lines,
)
from .calculus import MoveSpec, apply_script
from .curve_config import build_gamma_c
from .errors import InvalidInput, MFBoundaryError
from .generic_algebra import (
    build_An,
    check_lemma_identities,
    expected_An_factors,
    generic_h1_closed_form,
)
from .graph_core import (
    PlumbingGraph,
    first_betti_of_graph,
    graph_from_json,
    graph_to_json,
    to_dot,
)
from .homology import (
    betti_formula,
    homology_of_graph,
    probe_conjecture,
    smith_normal_form,
)
from .pipeline import boundary_graph
from .strings import build_string


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    flags: dict = field(default_factory=dict)


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_json(path: str):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"invalid JSON in {path}: {exc}") from exc


def _load_any(path: str) -> tuple[Optional[IncidenceData], Optional[PlumbingGraph]]:
    """Accept an arrangement file or a graph file, telling them apart by
    their keys."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "vertices" in obj and "edges" in obj:
        return None, graph_from_json(obj)
    return arrangement_from_json(obj), None


def _cmd_generate(cfg: RunConfig) -> int:
    kind = cfg.flags["kind"]
    n = cfg.flags["n"]
    if kind == "random":
        import random as _random

        rng = _random.Random(cfg.flags.get("seed", 0))
        inc = incidence_from_lines(random_rational_lines(n, rng))
    else:
        inc = generate_family(kind, n)
    _emit(_dump(incidence_to_json(inc)), cfg.output)
    return 0


def _cmd_gamma_c(cfg: RunConfig) -> int:
    inc, g = _load_any(cfg.input)
    if inc is None:
        raise InvalidInput("gamma-c expects an arrangement, not a graph")
    gc = build_gamma_c(inc)
    text = to_dot(gc) if cfg.flags.get("dot") else _dump(graph_to_json(gc))
    _emit(text, cfg.output)
    return 0


def _cmd_string(cfg: RunConfig) -> int:
    a, b, c = cfg.flags["a"], cfg.flags["b"], cfg.flags["c"]
    s = build_string(a, b, c)
    payload = {
        "a": a,
        "b": b,
        "c": c,
        "lambda": s.lam,
        "m1": s.m1,
        "cf": list(s.cf_terms),
        "interior_mults": list(s.interior_mults),
        "end_mults": list(s.end_mults),
        "double_arrow": s.is_double_arrow,
    }
    if cfg.flags.get("json"):
        _emit(_dump(payload), cfg.output)
    else:
        if s.is_double_arrow:
            line = f"Str({a},{b};{c}): double arrow, end multiplicities {s.end_mults}\n"
        else:
            line = (
                f"Str({a},{b};{c}): lambda={s.lam}, cf={list(s.cf_terms)}, "
                f"interior multiplicities {list(s.interior_mults)}, "
                f"end multiplicities {s.end_mults}\n"
            )
        _emit(line, cfg.output)
    return 0


def _cmd_plumbing(cfg: RunConfig) -> int:
    inc, g = _load_any(cfg.input)
    if inc is None:
        raise InvalidInput("plumbing expects an arrangement, not a graph")
    g = boundary_graph(inc, reduce=cfg.flags.get("reduce", False))
    text = to_dot(g) if cfg.flags.get("dot") else _dump(graph_to_json(g))
    _emit(text, cfg.output)
    return 0


def _cmd_calculus(cfg: RunConfig) -> int:
    inc, g = _load_any(cfg.input)
    if g is None:
        raise InvalidInput("calculus expects a graph file")
    script_obj = _load_json(cfg.flags["script"])
    if not isinstance(script_obj, list):
        raise InvalidInput("a move script is a JSON list of move objects")
    script = [MoveSpec.from_json(row) for row in script_obj]
    out = apply_script(g, script, check_h1=cfg.flags.get("check_h1", False))
    text = to_dot(out) if cfg.flags.get("dot") else _dump(graph_to_json(out))
    _emit(text, cfg.output)
    return 0


def _graph_stats(g: PlumbingGraph) -> dict:
    return {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "genus_total": sum(v.genus for v in g.vertices),
        "first_betti": first_betti_of_graph(g),
    }


def _cmd_homology(cfg: RunConfig) -> int:
    inc, g = _load_any(cfg.input)
    betti = None
    if g is None:
        g = boundary_graph(inc, reduce=cfg.flags.get("reduce", False))
        betti = betti_formula(inc)
    group = homology_of_graph(g)
    if cfg.flags.get("json"):
        payload = {
            "h1": str(group),
            "rank": group.free_rank,
            "factors": list(group.torsion),
            "betti_formula": betti,
            "graph_stats": _graph_stats(g),
        }
        _emit(_dump(payload), cfg.output)
    else:
        _emit(f"H1 = {group}\n", cfg.output)
    return 0


def _cmd_betti(cfg: RunConfig) -> int:
    inc, g = _load_any(cfg.input)
    if inc is None:
        raise InvalidInput("betti expects an arrangement, not a graph")
    _emit(f"{betti_formula(inc)}\n", cfg.output)
    return 0


def _generic_check_one(n: int) -> tuple[int, bool, str]:
    notes = []
    ok = True
    factors, corank = expected_An_factors(n)
    snf = smith_normal_form(build_An(n))
    if snf.factors != factors or snf.corank != corank:
        ok = False
        notes.append(f"SNF({list(snf.factors)}, corank {snf.corank}) unexpected")
    if n >= 3:
        lemma = check_lemma_identities(n)
        if not all(lemma.values()):
            ok = False
            notes.append(f"lemma identities failed: {lemma}")
    free = snf.corank + (n - 1) * (n - 2) // 2
    torsion = tuple(d for d in snf.factors if d >= 2)
    closed = generic_h1_closed_form(n)
    if (free, torsion) != (closed.free_rank, closed.torsion):
        ok = False
        notes.append(f"H1 mismatch: rank {free}, torsion {torsion} vs {closed}")
    return n, ok, f"H1 = {closed}" if ok else "; ".join(notes)


def _cmd_generic_check(cfg: RunConfig) -> int:
    max_n = cfg.flags.get("max_n", 12)
    if max_n < 2:
        raise InvalidInput("--max-n must be at least 2")
    ns = range(2, max_n + 1)
    jobs = int(os.environ.get("MFBOUNDARY_JOBS", "1"))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_generic_check_one, ns))
    else:
        results = [_generic_check_one(n) for n in ns]
    lines = []
    bad = 0
    for n, ok, note in results:
        status = "PASS" if ok else "FAIL"
        if not ok:
            bad += 1
        lines.append(f"{status} n={n}: {note}")
    _emit("\n".join(lines) + "\n", cfg.output)
    return 1 if bad else 0


def _cmd_probe(cfg: RunConfig) -> int:
    inc, g = _load_any(cfg.input)
    if inc is None:
        raise InvalidInput("probe-conjecture expects an arrangement")
    report = probe_conjecture(inc)
    _emit(_dump(report.to_json()), cfg.output)
    return 0 if report.all_hold() else 1


def _cmd_export_dot(cfg: RunConfig) -> int:
    inc, g = _load_any(cfg.input)
    if g is None:
        g = boundary_graph(inc, reduce=cfg.flags.get("reduce", False))
    _emit(to_dot(g), cfg.output)
    return 0


_DISPATCH = {
    "generate": _cmd_generate,
    "gamma-c": _cmd_gamma_c,
    "string": _cmd_string,
    "plumbing": _cmd_plumbing,
    "calculus": _cmd_calculus,
    "homology": _cmd_homology,
    "betti": _cmd_betti,
    "generic-check": _cmd_generic_check,
    "probe-conjecture": _cmd_probe,
    "export-dot": _cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mfboundary",
        description="Homology of Milnor fiber boundaries of plane arrangements",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add_output(sp):
        sp.add_argument("-o", "--output", help="write to a file instead of stdout")

    sp = sub.add_parser("generate", help="emit an arrangement JSON for a named family")
    sp.add_argument("kind", choices=["generic", "pencil", "near_pencil", "random"])
    sp.add_argument("n", type=int)
    sp.add_argument("--seed", type=int, default=0, help="rng seed for kind=random")
    add_output(sp)

    sp = sub.add_parser("gamma-c", help="curve-configuration graph of an arrangement")
    sp.add_argument("input")
    sp.add_argument("--dot", action="store_true")
    add_output(sp)

    sp = sub.add_parser("string", help="compute one string chain Str(a,b;c)")
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    sp.add_argument("c", type=int)
    sp.add_argument("--json", action="store_true")
    add_output(sp)

    sp = sub.add_parser("plumbing", help="closed plumbing graph of an arrangement")
    sp.add_argument("input")
    sp.add_argument("--reduce", action="store_true",
                    help="compact the double-point chains by calculus moves")
    sp.add_argument("--dot", action="store_true")
    add_output(sp)

    sp = sub.add_parser("calculus", help="apply a move script to a graph")
    sp.add_argument("input")
    sp.add_argument("--script", required=True, help="JSON list of moves")
    sp.add_argument("--check-h1", action="store_true", dest="check_h1")
    sp.add_argument("--dot", action="store_true")
    add_output(sp)

    sp = sub.add_parser("homology", help="H1 of an arrangement boundary or a graph")
    sp.add_argument("input")
    sp.add_argument("--reduce", action="store_true")
    sp.add_argument("--json", action="store_true")
    add_output(sp)

    sp = sub.add_parser("betti", help="closed-form first Betti number")
    sp.add_argument("input")
    add_output(sp)

    sp = sub.add_parser("generic-check", help="verify the closed-form generic algebra")
    sp.add_argument("--max-n", type=int, default=12, dest="max_n")
    add_output(sp)

    sp = sub.add_parser("probe-conjecture", help="torsion predictions on one arrangement")
    sp.add_argument("input")
    add_output(sp)

    sp = sub.add_parser("export-dot", help="Graphviz output for a graph or arrangement")
    sp.add_argument("input")
    sp.add_argument("--reduce", action="store_true")
    add_output(sp)

    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    flags = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "input", "output") and v is not None
    }
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        output=getattr(args, "output", None),
        flags=flags,
    )


def run(cfg: RunConfig) -> int:
    return _DISPATCH[cfg.command](cfg)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        return run(cfg)
    except MFBoundaryError as exc:
        sys.stderr.write(json.dumps(exc.payload()) + "\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(json.dumps({"error": "FileNotFound", "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
