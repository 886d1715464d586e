"""Command-line front end: ``multimap <subcommand> ...``.

Reports go to stdout as JSON, a one-line summary to stderr. Exit status is 0
on success, 1 for domain errors and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import dynamics, realization, symbolic, trajectory
from .errors import MultimapError, SpecFormatError
from .model import normalize_to_unit, validate
from .numbers import parse_rational
from .render import RenderOptions, render_svg


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path}: not JSON: {exc}") from None


def _load_map(path):
    return validate(_read_json(path))


def _load_matrix(args):
    if getattr(args, "matrix", None):
        return symbolic.AdjacencyMatrix.from_json(_read_json(args.matrix))
    if getattr(args, "map", None):
        return symbolic.build_matrix(_load_map(args.map))
    raise SpecFormatError("give --matrix or --map")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _parse_word(text, F):
    if "," in text or " " in text:
        return tuple(t for t in text.replace(",", " ").split() if t)
    if text in F.index:
        return (text,)
    return tuple(text)


def _positive_components(F, M):
    return [c for c in symbolic.decompose(M).components if c.positive_entropy]


# ---------------------------------------------------------------------------
# subcommands (each returns (report, summary))


def cmd_validate(args):
    F = _load_map(args.map)
    return F.to_json(), f"valid: {len(F.symbols)} symbols, {len(F.P)} partition points"


def cmd_matrix(args):
    M = symbolic.build_matrix(_load_map(args.map))
    return M.to_json(), f"{M.size}x{M.size} matrix, {int(M.entries.sum())} ones"


def cmd_components(args):
    dec = symbolic.decompose(_load_matrix(args))
    return dec.to_json(), f"{len(dec.components)} component(s), {len(dec.wandering_symbols)} wandering"


def cmd_entropy(args):
    M = _load_matrix(args)
    h = symbolic.entropy(M)
    report = {"entropy": h, "base": "e", "tolerance": symbolic.ENTROPY_TOL}
    if args.log2:
        report["entropy_log2"] = h / math.log(2)
    return report, f"entropy = {h:.12g}"


def cmd_interval(args):
    F = _load_map(args.map)
    word = _parse_word(args.word, F)
    iv = dynamics.interval_of_word(F, word)
    return {"word": list(word), "interval": iv.to_json(), "exact": iv.exact}, f"I = {iv}"


def _per_component(args, finder):
    F = _load_map(args.map)
    M = symbolic.build_matrix(F)
    rows = []
    for comp in _positive_components(F, M):
        cert = finder(F, comp, args.depth, M)
        rows.append({"component": comp.to_json(), "certificate": cert.to_json() if cert else None})
    found = sum(r["certificate"] is not None for r in rows)
    return {"depth": args.depth, "components": rows}, f"{found}/{len(rows)} component(s) certified"


def cmd_find_coding(args):
    return _per_component(args, dynamics.find_coding_certificate)


def cmd_find_avoiding(args):
    return _per_component(args, dynamics.find_avoiding_word)


def cmd_certify(args):
    F = _load_map(args.map)
    cd = args.coding_depth if args.coding_depth is not None else args.depth
    ad = args.avoiding_depth if args.avoiding_depth is not None else args.depth
    verdict = dynamics.certify_class_F(F, cd, ad)
    return verdict.to_json(), f"status: {verdict.status}"


def cmd_realize(args):
    M = symbolic.AdjacencyMatrix.from_json(_read_json(args.matrix))
    out = realization.realize(M)
    F = normalize_to_unit(out.multimap) if args.normalize else out.multimap
    report = {"permutation": list(out.permutation), "k": out.k, "provenance": out.provenance}
    if args.out:
        Path(args.out).write_text(F.dumps())
        report["out"] = args.out
    else:
        report["multimap"] = F.to_json()
    summary = f"{len(F.symbols)} symbols on {F.ambient}"
    if args.verify:
        rep = realization.verify_realization(M, out, args.tol)
        report["verification"] = rep.to_json()
        summary += f"; verified, entropy {rep.c0_component_entropy:.12g}"
    return report, summary


def cmd_render(args):
    F = _load_map(args.map)
    svg = render_svg(F, RenderOptions(size=args.size, gridlines=not args.no_grid, labels=args.labels))
    if args.out:
        Path(args.out).write_text(svg)
        return {"out": args.out, "bytes": len(svg.encode())}, f"wrote {args.out}"
    return svg, "rendered"


def cmd_sample(args):
    F = _load_map(args.map)
    t = trajectory.sample_trajectory(F, parse_rational(args.x0), args.len, args.seed)
    return t.to_json(), f"{len(t)} points"


def cmd_label(args):
    F = _load_map(args.map)
    raw = _read_json(args.traj)
    if not isinstance(raw, list):
        raise SpecFormatError("trajectory file must be a JSON list of 'p/q' strings")
    pts = [parse_rational(p) for p in raw]
    lab = trajectory.label_special(F, trajectory.trajectory(F, pts))
    return lab.to_json(), "label: " + " ".join(lab.word)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multimap", description="Markov multi-maps of the interval.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the axioms and print the normalized spec").add_argument(
        "--map", required=True)
    add("matrix", cmd_matrix, "print the transition matrix").add_argument("--map", required=True)
    for name, fn, h in (("components", cmd_components, "irreducible components and their types"),
                        ("entropy", cmd_entropy, "topological entropy (natural log)")):
        sp = add(name, fn, h)
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--map")
        g.add_argument("--matrix")
        if name == "entropy":
            sp.add_argument("--log2", action="store_true", help="also report the value in bits")
    sp = add("interval", cmd_interval, "nested interval of a word")
    sp.add_argument("--map", required=True)
    sp.add_argument("--word", required=True, help="symbol ids, comma separated (or packed single characters)")
    for name, fn, h in (("find-coding", cmd_find_coding, "coding certificate per positive-entropy component"),
                        ("find-avoiding", cmd_find_avoiding, "avoiding word per positive-entropy component")):
        sp = add(name, fn, h)
        sp.add_argument("--map", required=True)
        sp.add_argument("--depth", type=int, default=dynamics.DEFAULT_DEPTH)
    sp = add("certify", cmd_certify, "class-F verdict")
    sp.add_argument("--map", required=True)
    sp.add_argument("--depth", type=int, default=dynamics.DEFAULT_DEPTH)
    sp.add_argument("--coding-depth", type=int)
    sp.add_argument("--avoiding-depth", type=int)
    sp = add("realize", cmd_realize, "multi-map with the entropy of an irreducible matrix")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--out")
    sp.add_argument("--normalize", action="store_true", help="rescale the output to [0, 1]")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp = add("render", cmd_render, "SVG drawing of the graph")
    sp.add_argument("--map", required=True)
    sp.add_argument("--out")
    sp.add_argument("--size", type=int, default=400)
    sp.add_argument("--no-grid", action="store_true")
    sp.add_argument("--labels", action="store_true")
    sp = add("sample", cmd_sample, "random finite trajectory")
    sp.add_argument("--map", required=True)
    sp.add_argument("--x0", required=True)
    sp.add_argument("--len", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("label", cmd_label, "special labeling of a trajectory file")
    sp.add_argument("--map", required=True)
    sp.add_argument("--traj", required=True)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, summary = args.func(args)
    except (MultimapError, OSError, ValueError) as exc:
        stdout.write(_dump({"error": type(exc).__name__, "message": str(exc)}))
        stderr.write(f"error: {exc}\n")
        return 1
    stdout.write(report if isinstance(report, str) else _dump(report))
    stderr.write(summary + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
