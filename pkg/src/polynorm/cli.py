"""Command-line interface: analyze, holes, check, explore, gen.

Exit codes: 0 success, 1 input or usage error, 2 property violation or an
unmet requirement (--require-kp on a non-very-ample polytope, safety cap
reached, or a failed check).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from . import invariants as inv
from .bounds import (
    BOUND_KEY_ORDER,
    BOUND_TARGETS,
    PipelineError,
    full_report,
    report_to_dict,
)
from .catalog import (
    SplitMix64,
    build_family,
    is_unimodular_simplex,
    parse_family,
    random_polytope,
)
from .invariants import SearchCapExceeded
from .polytope import (
    GeometryError,
    Polytope,
    from_points,
    parse_points_json,
    parse_points_text,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2

DEFAULT_MAX_K = 64


class InputError(ValueError):
    """Unusable command-line input (missing file, bad family spec, ...)."""


@dataclass(frozen=True)
class CacheEntry:
    """One stored report: content-hash key, serialized report, tool version."""

    key: str
    value: dict
    tool_version: str


@dataclass(frozen=True)
class ExploreRecord:
    """A flagged random sample, carrying its full report for re-verification."""

    spec: str
    seed: int
    flags: tuple[str, ...]
    summary: dict
    report: dict


# -- input handling ---------------------------------------------------------------


def resolve_input(text: str) -> Polytope:
    """Interpret the input as a family spec, else as a vertex file path."""
    try:
        spec = parse_family(text)
    except ValueError:
        spec = None
    if spec is not None:
        try:
            return build_family(spec)
        except (ValueError, GeometryError) as e:
            raise InputError(f"bad family parameters {text!r}: {e}") from e
    path = Path(text)
    if not path.is_file():
        raise InputError(f"no such file or family: {text}")
    content = path.read_text()
    try:
        if path.suffix == ".json":
            points, name = parse_points_json(content)
        else:
            points, name = parse_points_text(content)
        return from_points(points, name=name or path.stem)
    except (GeometryError, ValueError) as e:
        raise InputError(f"{path}: {e}") from e


def _effective_max_k(args) -> int:
    if getattr(args, "max_k", None) is not None:
        return args.max_k
    env = os.environ.get("POLYNORM_MAX_K")
    if env:
        try:
            return int(env)
        except ValueError as e:
            raise InputError(f"POLYNORM_MAX_K must be an integer, got {env!r}") from e
    return DEFAULT_MAX_K


def _effective_cache_dir(args):
    if getattr(args, "cache_dir", None):
        return Path(args.cache_dir)
    env = os.environ.get("POLYNORM_CACHE")
    return Path(env) if env else None


# -- cache -----------------------------------------------------------------------


def cache_key(p: Polytope) -> str:
    """Content hash of the literal sorted vertex list.

    Deliberately no lattice-equivalence canonicalization: translated or
    rotated copies of a polytope miss the cache.
    """
    payload = repr((p.dim, sorted(p.vertices))).encode()
    return hashlib.sha256(payload).hexdigest()


def report_dict_for(p: Polytope, cache_dir: Path | None, max_k: int) -> dict:
    """Compute (or fetch) the serialized report; cached entries are reused
    only when the tool version matches."""
    key = cache_key(p)
    path = cache_dir / f"{key}.json" if cache_dir else None
    if path is not None and path.is_file():
        try:
            stored = json.loads(path.read_text())
        except json.JSONDecodeError:
            stored = None
        if stored and stored.get("tool_version") == __version__ and stored.get("key") == key:
            return stored["value"]
    data = report_to_dict(full_report(p, max_k=max_k))
    if path is not None:
        entry = CacheEntry(key=key, value=data, tool_version=__version__)
        cache_dir.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(
            {"key": entry.key, "tool_version": entry.tool_version, "value": entry.value},
            indent=2))
    return data


def dict_json_bytes(data: dict) -> bytes:
    return json.dumps(data, indent=2, sort_keys=False).encode() + b"\n"


# -- rendering --------------------------------------------------------------------

_SCALAR_KEYS = (
    "name", "dim", "num_vertices", "num_lattice_points", "volume_normalized",
    "degree", "d_P", "nu_P", "m_P", "k_P", "very_ample", "smooth", "normal",
    "gamma", "m_prime", "regularity",
)


def render_table(data: dict) -> str:
    lines = []
    width = max(len(k) for k in _SCALAR_KEYS) + 2
    for key in _SCALAR_KEYS:
        value = data.get(key)
        shown = "undefined" if value is None else value
        lines.append(f"{key:<{width}}{shown}")
    lines.append("bounds:")
    for bname in BOUND_KEY_ORDER:
        value = data["bounds"].get(bname)
        shown = "n/a" if value is None else value
        lines.append(f"  {bname:<18}{shown!s:<14}(bounds {BOUND_TARGETS[bname]})")
    lines.append(f"{'eg_rhs':<{width}}{data['eg_rhs'] if data['eg_rhs'] is not None else 'undefined'}")
    lines.append(f"{'eg_holds':<{width}}{data['eg_holds'] if data['eg_holds'] is not None else 'undefined'}")
    for wname, witness in data["witnesses"].items():
        if witness is not None:
            lines.append(f"witness {wname}: {json.dumps(witness)}")
    return "\n".join(lines)


def csv_header() -> list[str]:
    return list(_SCALAR_KEYS) + [f"bounds.{b}" for b in BOUND_KEY_ORDER] + ["eg_rhs", "eg_holds"]


def render_csv(rows: list[dict]) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(csv_header())
    for data in rows:
        row = [data.get(k) for k in _SCALAR_KEYS]
        row += [data["bounds"].get(b) for b in BOUND_KEY_ORDER]
        row += [data.get("eg_rhs"), data.get("eg_holds")]
        writer.writerow(["" if v is None else v for v in row])
    return out.getvalue()


# -- commands ---------------------------------------------------------------------


def cmd_analyze(args) -> int:
    p = resolve_input(args.input)
    data = report_dict_for(p, _effective_cache_dir(args), _effective_max_k(args))
    if args.format == "json":
        sys.stdout.buffer.write(dict_json_bytes(data))
    elif args.format == "csv":
        sys.stdout.write(render_csv([data]))
    else:
        print(render_table(data))
    if args.require_kp and not data["very_ample"]:
        print("requirement failed: polytope is not very ample, k_P undefined",
              file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_holes(args) -> int:
    p = resolve_input(args.input)
    scan = inv.scan_normality(p, max_k=_effective_max_k(args), through_k=args.max_k)
    label = p.name or "polytope"
    k_P = scan.k_P if scan.k_P is not None else "undefined"
    print(f"# holes of {label} (k_P = {k_P})")
    for k in sorted(scan.per_k):
        _, holes = scan.per_k[k]
        if holes:
            listing = " ".join(str(tuple(h)) for h in sorted(holes))
            print(f"k={k}: {len(holes)} hole(s): {listing}")
        else:
            print(f"k={k}: no holes")
    return EXIT_OK


def run_check_suite(p: Polytope, max_k: int | None = None):
    """The structural property suite behind `polynorm check`.

    Returns (results, ok) where results is a list of (status, name, detail)
    and status is PASS, FAIL, or SKIP.  Every FAIL of a certified property
    signals an implementation bug; the Eisenbud-Goto entry is a conjecture,
    reported but marked as such.
    """
    results = []

    def record(name, status, detail=""):
        results.append((status, name, detail))

    report = full_report(p, max_k=max_k)
    n = report.num_vertices
    record("thresholds_ordered",
           "PASS" if report.d_P <= report.nu_P <= max(n - 1, 1) else "FAIL",
           f"d_P={report.d_P} nu_P={report.nu_P} n={n}")
    vol_tri = inv.volume_triangulation(p)
    record("volume_dual_oracle",
           "PASS" if report.volume_normalized == vol_tri else "FAIL",
           f"interpolation={report.volume_normalized} triangulation={vol_tri}")
    record("degree_at_most_dim",
           "PASS" if report.degree <= report.dim else "FAIL",
           f"deg={report.degree} dim={report.dim}")

    if is_unimodular_simplex(p):
        record("d_P_le_deg", "SKIP", "unimodular simplex")
    else:
        record("d_P_le_deg",
               "PASS" if report.d_P <= report.degree else "FAIL",
               f"d_P={report.d_P} deg={report.degree}")

    if not report.very_ample:
        record("very_ample", "SKIP",
               f"not very ample; witness {report.witnesses['non_saturation']}; "
               "k_P-dependent checks skipped")
    else:
        record("chain_dP_mP_kP",
               "PASS" if report.d_P <= report.m_P <= report.k_P else "FAIL",
               f"d_P={report.d_P} m_P={report.m_P} k_P={report.k_P}")
        theorem = report.bounds["theorem"]
        record("theorem_bound_dominates",
               "PASS" if theorem >= report.k_P else "FAIL",
               f"bound={theorem} k_P={report.k_P}")
        record("theorem_equality_iff_normal",
               "PASS" if (theorem == report.k_P) == report.normal else "FAIL",
               f"bound={theorem} k_P={report.k_P} normal={report.normal}")
        if not report.normal:
            refined = report.bounds["refined"]
            record("refined_bound_dominates",
                   "PASS" if report.k_P <= refined <= theorem else "FAIL",
                   f"k_P={report.k_P} refined={refined} theorem={theorem}")
        flags = {}
        for k in range(1, report.k_P + 2):
            flags[k] = inv.is_k_normal(p, k)[0]
        monotone = all(flags[k + 1] for k in range(report.d_P, report.k_P + 1) if flags[k])
        record("normality_monotone_beyond_dP", "PASS" if monotone else "FAIL",
               f"flags={flags}")
        if report.degree <= 1:
            record("low_degree_implies_normal",
                   "PASS" if report.k_P == 1 else "FAIL",
                   f"deg={report.degree} k_P={report.k_P}")
        record("eg_conjecture",
               "PASS" if report.eg_holds else "FAIL",
               f"k_P={report.k_P} <= {report.eg_rhs}? (conjecture, not a code bug)")
        record("d_P_le_volume_excess",
               "PASS" if report.d_P <= report.volume_normalized + report.dim + 1
               - report.num_lattice_points else "FAIL",
               f"d_P={report.d_P} rhs={report.volume_normalized + report.dim + 1 - report.num_lattice_points}")
        if report.smooth:
            ok_corner = report.m_P <= report.d_P * report.gamma
            ok_volume = report.m_P <= report.dim * report.d_P ** report.dim * report.volume_normalized
            ok_gm = report.gamma <= report.dim * report.m_prime
            record("smooth_mP_le_dP_gamma", "PASS" if ok_corner else "FAIL",
                   f"m_P={report.m_P} d_P*gamma={report.d_P * report.gamma}")
            record("smooth_mP_le_volume_form", "PASS" if ok_volume else "FAIL",
                   f"m_P={report.m_P}")
            record("smooth_gamma_le_dim_m_prime", "PASS" if ok_gm else "FAIL",
                   f"gamma={report.gamma} dim*m_prime={report.dim * report.m_prime}")
            mumford = report.bounds["mumford_general"]
            if mumford is None:
                record("mumford_bound_dominates", "SKIP", "degenerate embedding")
            else:
                record("mumford_bound_dominates",
                       "PASS" if mumford >= report.regularity else "FAIL",
                       f"mumford_general={mumford} reg={report.regularity}")
        else:
            record("mumford_bound_dominates", "SKIP",
                   "certified only for smooth polytopes")

    if report.dim <= 3:
        threshold, flags = inv.dilate_normality_profile(p, report.d_P)
        record("dilates_normal_from_dP",
               "PASS" if flags[report.d_P] and threshold == report.d_P else "FAIL",
               f"threshold={threshold} d_P={report.d_P} flags={flags}")
    else:
        record("dilates_normal_from_dP", "SKIP", "asserted only for dim <= 3")

    ok = not any(status == "FAIL" for status, _, _ in results)
    return results, ok


def cmd_check(args) -> int:
    p = resolve_input(args.input)
    results, ok = run_check_suite(p, max_k=_effective_max_k(args))
    for status, name, detail in results:
        print(f"{status:<5} {name}" + (f"  [{detail}]" if detail else ""))
    print(f"# {'all checks passed' if ok else 'CHECK FAILURES PRESENT'}")
    return EXIT_OK if ok else EXIT_VIOLATION


def explore_flags(p: Polytope, report) -> tuple[str, ...]:
    """Flags worth recording for a random sample."""
    flags = []
    if report.eg_holds is False:
        flags.append("eg_violation")
    if report.smooth and report.k_P is not None and report.k_P > 1:
        flags.append("oda_gap")
    threshold, _ = inv.dilate_normality_profile(p, report.d_P)
    if threshold != report.d_P:
        flags.append("d_P_minimality_gap")
    return tuple(flags)


def cmd_explore(args) -> int:
    if not 2 <= args.dim <= 4:
        raise InputError("explore supports --dim 2..4")
    max_k = _effective_max_k(args)
    master = SplitMix64(args.seed)
    store = Path(args.store)
    counts = {"eg_violation": 0, "oda_gap": 0, "d_P_minimality_gap": 0}
    errors = 0
    reverify_failures = 0
    flagged_records = []
    points_per_sample = args.dim + 5
    for _ in range(args.count):
        child = master.next_u64()
        spec = f"random:{args.dim},{args.bound},{points_per_sample},{child}"
        try:
            p = random_polytope(args.dim, args.bound, points_per_sample, child)
            report = full_report(p, max_k=max_k)
            flags = explore_flags(p, report)
        except (GeometryError, SearchCapExceeded, PipelineError) as e:
            errors += 1
            print(f"# skipped {spec}: {e}", file=sys.stderr)
            continue
        if not flags:
            continue
        for f in flags:
            counts[f] += 1
        record = ExploreRecord(
            spec=spec, seed=child, flags=flags,
            summary={"d_P": report.d_P, "nu_P": report.nu_P, "m_P": report.m_P,
                     "k_P": report.k_P, "volume_normalized": report.volume_normalized,
                     "degree": report.degree, "smooth": report.smooth},
            report=report_to_dict(report),
        )
        fresh = report_to_dict(full_report(resolve_input(spec), max_k=max_k))
        if fresh != record.report:
            reverify_failures += 1
            print(f"# re-verification FAILED for {spec}", file=sys.stderr)
        flagged_records.append(record)
    if flagged_records:
        store.parent.mkdir(parents=True, exist_ok=True)
        with store.open("a") as fh:
            for record in flagged_records:
                fh.write(json.dumps({
                    "spec": record.spec, "seed": record.seed,
                    "flags": list(record.flags), "summary": record.summary,
                    "report": record.report,
                }) + "\n")
    print(f"explored {args.count} samples (dim={args.dim}, seed={args.seed}, "
          f"bound={args.bound}): flagged={len(flagged_records)} "
          f"(eg_violation={counts['eg_violation']}, oda_gap={counts['oda_gap']}, "
          f"d_P_minimality_gap={counts['d_P_minimality_gap']}), "
          f"errors_skipped={errors}, reverify_failures={reverify_failures}")
    return EXIT_OK if reverify_failures == 0 else EXIT_VIOLATION


def cmd_gen(args) -> int:
    try:
        spec = parse_family(args.family)
    except ValueError as e:
        raise InputError(str(e)) from e
    p = build_family(spec)
    print(f"# {p.name}")
    for v in p.vertices:
        print(" ".join(str(c) for c in v))
    return EXIT_OK


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polynorm",
        description="Exact k-normality, very-ampleness, and regularity "
                    "invariants of lattice polytopes.")
    parser.add_argument("--version", action="version", version=f"polynorm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(sp):
        sp.add_argument("input", help="family spec (e.g. bruns:4) or vertex file path")
        sp.add_argument("--max-k", type=int, default=None,
                        help="safety cap for k-normality scans "
                             f"(default: $POLYNORM_MAX_K or {DEFAULT_MAX_K})")

    ap = sub.add_parser("analyze", help="compute all invariants and bounds")
    add_input(ap)
    ap.add_argument("--format", choices=("table", "json", "csv"), default="table")
    ap.add_argument("--cache-dir", default=None,
                    help="report cache directory (default: $POLYNORM_CACHE)")
    ap.add_argument("--require-kp", action="store_true",
                    help="exit 2 when the polytope is not very ample")
    ap.set_defaults(func=cmd_analyze)

    hp = sub.add_parser("holes", help="list unreachable lattice points per dilation")
    add_input(hp)
    hp.set_defaults(func=cmd_holes)

    cp = sub.add_parser("check", help="run the structural property suite")
    add_input(cp)
    cp.set_defaults(func=cmd_check)

    ep = sub.add_parser("explore", help="sample random polytopes and record flagged ones")
    ep.add_argument("--dim", type=int, required=True)
    ep.add_argument("--count", type=int, default=100)
    ep.add_argument("--seed", type=int, default=0)
    ep.add_argument("--bound", type=int, default=3)
    ep.add_argument("--store", default="explore_records.jsonl",
                    help="append-only JSONL store for flagged records")
    ep.add_argument("--max-k", type=int, default=None)
    ep.set_defaults(func=cmd_explore)

    gp = sub.add_parser("gen", help="print a family's vertex file (plain text)")
    gp.add_argument("family")
    gp.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except SearchCapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (GeometryError, inv.InvariantError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PipelineError as e:
        if isinstance(e.__cause__, SearchCapExceeded):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_VIOLATION
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
