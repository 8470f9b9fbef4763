"""Command-line interface.

    pluricanonical ideal --sing 6,1,1,1 --k 1
    pluricanonical model z6_cy3 verdict --dmax 10
    pluricanonical model fermat_b3 surface-report --json
    pluricanonical classify --gmax 6 --r 3 --groups cyclic
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .classification import classify_candidates, cyclic_groups, enumerate_types, load_groups
from .config import FORMAT_VERSION, ConfigError, load_config, model_from_config
from .curves import ModelError, ValidationError
from .groups import GroupError
from .plurigenus import (
    HypothesisError,
    cy_verdict,
    format_witness,
    kodaira_witnesses,
    plurigenus_monomial,
    surface_report,
    volume_and_minimality,
)
from .pq import basket, hodge_invariants, numerical_cy
from .singularity import CyclicSingularityType, reid_tai_class
from .toric import minimal_basis, negative_rays, stabilization_exponent

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(ValueError):
    pass


def _exact(x):
    """JSON-safe exact numbers: integers stay integers, other rationals become strings."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def _monomial(exps) -> str:
    return "*".join(f"t{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e) or "1"


# --- ideal ----------------------------------------------------------------


def cmd_ideal(args) -> dict:
    try:
        sing = CyclicSingularityType.parse(args.sing)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    rays = negative_rays(sing)
    ideal = minimal_basis(rays, args.k, sing.dim)
    report = {
        "command": "ideal",
        "singularity": str(sing),
        "k": args.k,
        "class": reid_tai_class(sing).value,
        "negative_rays": [{"w": list(r.w), "u": r.u} for r in rays],
        "unit_ideal": ideal.is_unit,
        "generators": [list(g) for g in ideal.generators],
    }
    if rays:
        s, s_prime = stabilization_exponent(rays, sing.dim)
        report["stabilization"] = {"s": s, "s_prime": s_prime}
    return report


def show_ideal(r: dict) -> str:
    lines = [f"{r['singularity']}  ({r['class']})  level k={r['k']}"]
    if not r["negative_rays"]:
        lines.append("no negative rays: unit ideal")
        return "\n".join(lines)
    lines.append("negative rays (w; u):")
    lines += [f"  {tuple(x['w'])}; {x['u']}" for x in r["negative_rays"]]
    gens = r["generators"]
    degs = sorted({sum(g) for g in gens})
    lines.append(f"{len(gens)} minimal generators, degrees {degs}:")
    lines.append("  " + ", ".join(_monomial(g) for g in gens))
    st = r["stabilization"]
    lines.append(f"stabilization exponent s = {st['s']} (s' = {st['s_prime']})")
    return "\n".join(lines)


# --- model ----------------------------------------------------------------


def _parse_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"bad degree range {text!r}, expected A..B") from exc
    if lo < 1 or hi < lo:
        raise UsageError(f"bad degree range {text!r}")
    return range(lo, hi + 1)


def _workers() -> int:
    env = os.environ.get("PQ_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError as exc:
            raise UsageError("PQ_THREADS must be a positive integer") from exc
        if n < 1:
            raise UsageError("PQ_THREADS must be a positive integer")
        return n
    return os.cpu_count() or 1


def _plurigenus_worker(job):
    data, d, cap = job
    pq = model_from_config(data, validate=False)
    return _plurigenus_entry(pq, plurigenus_monomial(pq, d, cap))


def _plurigenus_entry(pq, rep) -> dict:
    return {
        "d": rep.degree,
        "invariant_dimension": rep.invariant_dimension,
        "count": rep.count,
        "exact": rep.exact,
        "witnesses": [format_witness(pq, w) for w in rep.witnesses],
    }


def _records(pq) -> list[dict]:
    return [
        {
            "orbits": list(r.orbits),
            "generator": list(r.generator),
            "raw_type": str(r.raw_type),
            "type": str(r.canonical_type),
            "count": r.count,
            "class": r.reid_tai.value,
        }
        for r in pq.singular_records
    ]


def cmd_model(args) -> dict:
    data = load_config(args.config)
    pq = model_from_config(data, validate=not args.skip_validation)
    report = {"command": f"model {args.action}", "model": pq.name or str(args.config), "factors": pq.dim}
    if args.action == "invariants":
        inv = hodge_invariants(pq)
        report["invariants"] = {"p_g": inv.p_g, "q": list(inv.q), "chi": inv.chi}
        if pq.dim == 3:
            report["numerical_cy"] = numerical_cy(pq)
    elif args.action == "singular-locus":
        report["records"] = _records(pq)
        report["basket"] = [{"type": str(t), "count": c} for t, c in basket(pq.singular_records)]
        report["total_points"] = sum(r.count for r in pq.singular_records)
        report["noncanonical"] = any(r.noncanonical for r in pq.singular_records)
    elif args.action == "plurigenus":
        degrees = list(_parse_range(args.d))
        workers = min(_workers(), len(degrees))
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                entries = list(pool.map(_plurigenus_worker, [(data, d, args.witnesses) for d in degrees]))
        else:
            entries = [_plurigenus_entry(pq, plurigenus_monomial(pq, d, args.witnesses)) for d in degrees]
        report["plurigenera"] = entries
    elif args.action == "verdict":
        if args.dmax < 1:
            raise UsageError("--dmax must be at least 1")
        v = cy_verdict(pq, args.dmax)
        report["verdict"] = {
            "kind": v.kind.value,
            "label": str(v),
            "d_max": v.d_max,
            "degree": v.degree,
            "reason": v.reason,
            "kodaira_at_least_2": v.kodaira_at_least_2,
            "kodaira_witnesses": [format_witness(pq, w) for w in v.kodaira_triple or ()],
            "counts": [{"d": r.degree, "count": r.count, "exact": r.exact} for r in v.reports],
        }
        if v.degree is not None:
            report["verdict"]["witnesses"] = [
                format_witness(pq, w) for w in v.reports[-1].witnesses[: args.witnesses]
            ]
    elif args.action == "surface-report":
        row = surface_report(pq)
        report["row"] = {
            "g": row.g,
            "K2": row.k2,
            "K2_resolved": _exact(row.k2_resolved),
            "p_g": row.p_g,
            "chi": row.chi,
            "h0_2K_invariant": row.h0_2k_invariant,
            "P2": row.p2,
            "vol": row.vol,
            "vol_minus_K2_resolved": _exact(row.vol_minus_k2),
        }
        report["exact"] = row.exact
        if row.exact:
            try:
                vm = volume_and_minimality(row.p_g, row.p_g - row.chi + 1, row.p2, row.k2_resolved)
                report["minimal"] = vm.minimal
            except HypothesisError as exc:
                report["minimal"] = None
                report["note"] = str(exc)
    return report


def show_model(r: dict) -> str:
    lines = [f"model {r['model']} ({r['factors']} factors)"]
    if "invariants" in r:
        inv = r["invariants"]
        lines.append(f"p_g = {inv['p_g']}, q = {tuple(inv['q'])}, chi = {inv['chi']}")
        if "numerical_cy" in r:
            lines.append(f"numerical Calabi-Yau: {'yes' if r['numerical_cy'] else 'no'}")
    if "records" in r:
        lines.append(f"{'orbits':<24}{'raw type':<18}{'type':<18}{'count':>6}  class")
        for x in r["records"]:
            lines.append(f"{','.join(x['orbits']):<24}{x['raw_type']:<18}{x['type']:<18}{x['count']:>6}  {x['class']}")
        lines.append("basket: " + " + ".join(f"{b['count']} x {b['type']}" for b in r["basket"]))
        lines.append(f"{r['total_points']} singular points")
    if "plurigenera" in r:
        lines.append(f"{'d':>3} {'h0(dK)^G':>10} {'monomials':>10}  bound")
        for e in r["plurigenera"]:
            kind = "exact" if e["exact"] else "lower"
            lines.append(f"{e['d']:>3} {e['invariant_dimension']:>10} {e['count']:>10}  {kind}")
            if e["witnesses"]:
                lines.append("      e.g. " + ", ".join(e["witnesses"][:3]))
    if "verdict" in r:
        v = r["verdict"]
        lines.append(f"verdict: {v['label']}  ({v['reason']})")
        for w in v.get("witnesses", []):
            lines.append(f"  section {w}")
        if v["kodaira_at_least_2"]:
            lines.append("Kodaira dimension >= 2, witnessed by " + ", ".join(v["kodaira_witnesses"]))
    if "row" in r:
        row = r["row"]
        head = ["g", "K2", "K2^", "p_g", "chi", "h0(2K)^G", "P2", "vol", "vol-K2^"]
        vals = [row[k] for k in ("g", "K2", "K2_resolved", "p_g", "chi", "h0_2K_invariant", "P2", "vol",
                                 "vol_minus_K2_resolved")]
        lines.append("  ".join(f"{h:>8}" for h in head))
        lines.append("  ".join(f"{str(v):>8}" for v in vals))
        if not r["exact"]:
            lines.append("P2 is a lower bound (no exactness attestation)")
    return "\n".join(lines)


# --- classify -------------------------------------------------------------


def _element(x):
    if isinstance(x, tuple) and len(x) == 1:
        return x[0]
    return list(x) if isinstance(x, tuple) else x


def cmd_classify(args) -> dict:
    if args.gmax < 2:
        raise UsageError("--gmax must be at least 2")
    tuples = enumerate_types(args.gmax, 3, args.r)
    report = {
        "command": "classify",
        "g_max": args.gmax,
        "r": args.r,
        "types": [{"n": t.n, "genera": list(t.genera), "types": [list(x) for x in t.types]} for t in tuples],
    }
    if args.groups:
        if args.groups == "cyclic":
            groups = cyclic_groups(t.n for t in tuples)
        else:
            try:
                groups = load_groups(args.groups)
            except GroupError as exc:
                raise UsageError(str(exc)) from exc
        cands = classify_candidates(args.gmax, groups, args.r)
        report["candidates"] = [
            {
                "group": c.group_name,
                "n": c.tuple.n,
                "genera": list(c.tuple.genera),
                "types": [list(x) for x in c.tuple.types],
                "witnesses": [[_element(h) for h in w] for w in c.witnesses],
            }
            for c in cands
        ]
    return report


def show_classify(r: dict) -> str:
    lines = [f"{len(r['types'])} admissible type tuples (g_max={r['g_max']}, r={r['r']})"]
    for t in r["types"]:
        ts = "  ".join("[" + ",".join(map(str, x)) + "]" for x in t["types"])
        lines.append(f"  n={t['n']:<4} g={tuple(t['genera'])}  {ts}")
    if "candidates" in r:
        lines.append(f"{len(r['candidates'])} realized by the given groups:")
        for c in r["candidates"]:
            ts = "  ".join("[" + ",".join(map(str, x)) + "]" for x in c["types"])
            lines.append(f"  {c['group']:<10} {ts}   {c['witnesses']}")
    return "\n".join(lines)


# --- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pluricanonical", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the machine-readable report")
    common.add_argument("--timings", action="store_true", help="include wall-clock time in the report")
    sub = p.add_subparsers(dest="command", required=True)

    pi = sub.add_parser("ideal", parents=[common], help="stalk ideal of a cyclic quotient singularity")
    pi.add_argument("--sing", required=True, help="m,a1,..,an for the type 1/m(a1,..,an)")
    pi.add_argument("--k", type=int, default=1, help="level (default 1)")

    pm = sub.add_parser("model", help="invariants of a product-quotient model")
    pm.add_argument("config", help="config file or built-in name (z6_cy3, z8_fake_cy, fermat_bN)")
    pm.add_argument("--skip-validation", action="store_true", help="trust declared orbit data")
    msub = pm.add_subparsers(dest="action", required=True)
    msub.add_parser("invariants", parents=[common])
    msub.add_parser("singular-locus", parents=[common])
    pp = msub.add_parser("plurigenus", parents=[common])
    pp.add_argument("--d", default="1..3", help="degree range A..B")
    pp.add_argument("--witnesses", type=int, default=8, help="witnesses to list per degree")
    pv = msub.add_parser("verdict", parents=[common])
    pv.add_argument("--dmax", type=int, default=10)
    pv.add_argument("--witnesses", type=int, default=8)
    msub.add_parser("surface-report", parents=[common])

    pc = sub.add_parser("classify", parents=[common], help="admissible branching data")
    pc.add_argument("--gmax", type=int, required=True)
    pc.add_argument("--r", type=int, default=None, help="number of branch points per cover")
    pc.add_argument("--groups", help="YAML group file, or 'cyclic' for the cyclic groups")
    return p


COMMANDS = {"ideal": (cmd_ideal, show_ideal), "model": (cmd_model, show_model), "classify": (cmd_classify, show_classify)}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    run, show = COMMANDS[args.command]
    start = time.perf_counter()
    try:
        report = run(args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (UsageError, ConfigError, ModelError, GroupError, HypothesisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    report = {"format_version": FORMAT_VERSION, **report}
    if args.timings:
        report["seconds"] = round(time.perf_counter() - start, 3)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(show(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
