"""Command-line front end.

Every command builds a plain dict first; the human output is rendered from
that dict, so ``--json`` and the text form always carry the same numbers.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

from . import petrie
from .builders import CATALOG, SOLIDS, SpecError, build, from_spec, load_spec
from .flagcore import FlagGraph
from .published import (
    ACOPTIC_TABLE,
    COVER_ROWS,
    COVER_TABLE,
    Verdict,
    compare_acoptic,
    compare_cover,
    format_ranks,
)
from .quotient import (
    cover_report,
    cuboctahedron_correspondence,
    psi_seed_name,
    select_base_flag,
    verify_psi,
)

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

TORUS = "torus {4,4} (3,3),(5,-5)"


class InputError(Exception):
    pass


def _emit(record, as_json: bool, render: Callable[[dict], list[str]]) -> None:
    if as_json:
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print("\n".join(render(record)))


def default_base(name: str, g: FlagGraph) -> int:
    seed = psi_seed_name(name) if name in CATALOG else None
    if seed is None:
        return 0
    return select_base_flag(CATALOG[name].kind, build(seed), g)


# --- list --------------------------------------------------------------------


def cmd_list(args) -> int:
    records = [
        {"name": e.name, "kind": e.kind.value if e.kind else None, "seed": e.seed,
         "tags": list(e.tags) + (["table"] if e.name in COVER_ROWS else [])}
        for e in CATALOG.values()
    ]

    def render(recs):
        return [f"{r['name']:<32} {' '.join(r['tags'])}".rstrip() for r in recs]

    _emit(records, args.json, render)
    return EXIT_OK


# --- analyze -----------------------------------------------------------------


def _load(target: str) -> tuple[str, FlagGraph]:
    if target in CATALOG:
        return target, build(target)
    path = Path(target)
    if not path.is_file():
        raise InputError(f"{target!r} is neither a catalog name nor a readable file")
    try:
        spec = load_spec(path)
        return spec.name, from_spec(spec)
    except SpecError as exc:
        raise InputError(f"{path}: {exc}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def analyze_record(name: str, g: FlagGraph, base: int | None = None) -> dict:
    if base is None:
        base = default_base(name, g)
    elif not 0 <= base < g.n_flags:
        raise InputError(f"base flag {base} out of range 0..{g.n_flags - 1}")
    report = cover_report(g, name, base)
    record = report.to_dict()
    record["notes"] = []
    if name in COVER_ROWS:
        cmp = compare_cover(report, COVER_ROWS[name])
        record["published_cover"] = cmp.to_dict()
        record["notes"].extend(cmp.mismatches)
    if name in ACOPTIC_TABLE:
        record["published_acoptic"] = compare_acoptic(name, report.acoptic_ranks).to_dict()
    return record


def _render_analyze(r: dict) -> list[str]:
    lines = [
        f"name:              {r['name']}",
        f"flags:             {r['n_flags']}",
        f"flag orbits:       {r['orbit_count']}",
        f"vertex symbol:     {r['vertex_symbol'] or 'not vertex-transitive'}",
        f"Schlafli type:     {r['schlafli']}",
        f"|W| cover order:   {r['cover_order']} = {r['cover_order_factored']}",
        f"|N| stabilizer:    {r['stabilizer_order']} = {r['stabilizer_order_factored']}",
        f"acoptic ranks:     {format_ranks(r['acoptic_ranks'])}",
        f"base flag:         {r['base_flag']}",
    ]
    if "published_cover" in r:
        lines.append(f"published row:     {r['published_cover']['verdict']}")
    if "published_acoptic" in r:
        lines.append(f"published ranks:   {r['published_acoptic']['verdict']}")
    lines += [f"note: {n}" for n in r["notes"]]
    return lines


def cmd_analyze(args) -> int:
    name, g = _load(args.target)
    _emit(analyze_record(name, g, args.base_flag), args.json, _render_analyze)
    return EXIT_OK


# --- table -------------------------------------------------------------------


def table_records(which: int, compare: bool) -> list[dict]:
    out = []
    for row in COVER_TABLE:
        report = cover_report(build(row.name), row.name)
        if which == 1:
            rec = {
                "name": row.name,
                "vertex_symbol": str(report.vertex_symbol),
                "schlafli": str(report.schlafli),
                "cover_order": report.cover_order.value,
                "cover_order_factored": report.cover_order.factored(),
                "stabilizer_order": report.stabilizer_order.value,
                "stabilizer_order_factored": report.stabilizer_order.factored(),
                "n_flags": report.n_flags,
            }
            if compare:
                rec["compare"] = compare_cover(report, row).to_dict()
        else:
            rec = {"name": row.name, "acoptic_ranks": sorted(report.acoptic_ranks)}
            if compare:
                rec["compare"] = compare_acoptic(row.name, report.acoptic_ranks).to_dict()
        out.append(rec)
    return out


def _render_table(which: int) -> Callable[[list], list[str]]:
    def render(recs):
        lines = []
        for r in recs:
            if which == 1:
                line = (f"{r['name']:<30} {r['vertex_symbol']:<10} {r['schlafli']:<7} "
                        f"{r['cover_order']:>18} {r['stabilizer_order']:>16}")
            else:
                line = f"{r['name']:<30} {format_ranks(r['acoptic_ranks'])}"
            if "compare" in r:
                c = r["compare"]
                line += f"  {c['verdict']}"
                if c["mismatches"]:
                    line += "  (" + "; ".join(c["mismatches"]) + ")"
            lines.append(line)
        return lines

    return render


def cmd_table(args) -> int:
    recs = table_records(args.which, args.compare)
    _emit(recs, args.json, _render_table(args.which))
    if args.compare and any(r["compare"]["verdict"] == Verdict.FAIL.value for r in recs):
        return EXIT_VERIFY
    return EXIT_OK


# --- verify ------------------------------------------------------------------


def verify_record() -> dict:
    psi = []
    for name in SOLIDS:
        seed_name = psi_seed_name(name)
        if seed_name is None:
            continue
        kind = CATALOG[name].kind
        g, seed = build(name), build(seed_name)
        base = select_base_flag(kind, seed, g)
        rep = verify_psi(kind, seed, g, base)
        psi.append({
            "solid": name, "kind": kind.name, "seed": seed_name, "base_flag": base,
            "relators_checked": rep.relators_checked, "random_checked": rep.random_checked,
            "ok": rep.ok, "failures": rep.failures[:5],
        })
    corr = cuboctahedron_correspondence(build("cuboctahedron"))
    correspondence = {
        "base_flag": corr.base,
        "images_in_stabilizer": sum(i.image_fixes_base for i in corr.items),
        "equal_to_face_words": corr.matched,
        "total": len(corr.items),
        "face_words_generate_stabilizer": corr.face_words_generate_stabilizer,
        "mismatched_items": [
            {"index": i.index, "cube_word": i.cube_word, "face_word": i.face_word}
            for i in corr.items if not i.equal
        ],
        "ok": corr.ok and corr.face_words_generate_stabilizer,
    }
    summary = petrie.summarize(build(TORUS))
    torus = summary.to_dict()
    torus["name"] = TORUS
    torus["ok"] = (all(s <= {6, 10} for s in summary.orbit_lengths)
                   and set(summary.orders) == {30}
                   and summary.acoptic_ranks == frozenset({0, 1, 2}))
    ok = all(p["ok"] for p in psi) and correspondence["ok"] and torus["ok"]
    return {"psi": psi, "correspondence": correspondence, "torus": torus, "ok": ok}


def _mark(ok: bool) -> str:
    return "ok  " if ok else "FAIL"


def _render_verify(r: dict) -> list[str]:
    lines = ["psi maps:"]
    for p in r["psi"]:
        lines.append(f"  {_mark(p['ok'])} {p['kind']:<24} {p['seed']:<18} -> {p['solid']} "
                     f"(base {p['base_flag']}, {p['relators_checked']} relators, "
                     f"{p['random_checked']} random words)")
        lines += [f"       {f}" for f in p["failures"]]
    c = r["correspondence"]
    lines.append("cuboctahedron face words:")
    lines.append(f"  {_mark(c['ok'])} {c['images_in_stabilizer']}/{c['total']} images in "
                 f"stabilizer, {c['equal_to_face_words']}/{c['total']} equal to face words, "
                 f"face words generate stabilizer: {c['face_words_generate_stabilizer']}")
    for m in c["mismatched_items"]:
        lines.append(f"       item {m['index']}: psi({m['cube_word']}) != {m['face_word']}")
    t = r["torus"]
    lines.append("torus:")
    lines.append(f"  {_mark(t['ok'])} {t['name']}: orbit lengths {t['orbit_lengths']}, "
                 f"orders {t['orders']}, acoptic ranks {format_ranks(t['acoptic_ranks'])}")
    lines.append("all checks passed" if r["ok"] else "some checks FAILED")
    return lines


def cmd_verify(args) -> int:
    record = verify_record()
    _emit(record, args.json, _render_verify)
    return EXIT_OK if record["ok"] else EXIT_VERIFY


# --- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="archquot",
        description="Minimal regular covers and Petrie schemes of Archimedean solids.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="catalog entries")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("analyze", help="cover report for a catalog name or face-list file")
    p.add_argument("target")
    p.add_argument("--base-flag", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("table", help="reproduce the cover table (1) or acoptic table (2)")
    p.add_argument("which", type=int, choices=(1, 2))
    p.add_argument("--compare", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="psi maps, face-word example and torus checks")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
