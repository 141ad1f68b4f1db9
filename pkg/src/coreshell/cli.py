"""Command-line front end: solve, sweep, degeneracy and oracle-check runs."""
from __future__ import annotations

import argparse
import csv
import logging
import sys
import warnings
from pathlib import Path

from .classify import classify_level_curve, transition_energies
from .config import ConfigError, RunConfig, load_config
from .oracle import shoot_eigenvalues
from .spectrum import SolverWarning, degeneracy_report, find_levels, sweep_well_width
from .well import admissible_branches

logger = logging.getLogger("coreshell")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DIAGNOSTIC = 2

COMMANDS = ("solve", "sweep", "degeneracy", "oracle-check")
OUTPUTS = {
    "solve": ["eigenvalues.csv"],
    "sweep": ["levels.csv", "transitions.csv", "levels.svg"],
    "degeneracy": ["degeneracy.txt"],
    "oracle-check": ["oracle_check.csv"],
}
UNITS = "# units: r0 in fm; E, dE in fm^-1"


def fmt(x) -> str:
    """17 significant digits: re-parses to the identical double."""
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def write_csv(path: Path, header, rows, flagged=False):
    with open(path, "w", newline="") as fh:
        fh.write(UNITS + "\n")
        if flagged:
            fh.write("# flagged: solver diagnostics raised, see diagnostics.txt\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def _channels(run: RunConfig):
    for kappa in run.kappas:
        cfg = run.base.with_(kappa=kappa)
        for branch in admissible_branches(kappa, cfg.U0):
            yield cfg, branch


def cmd_solve(run: RunConfig, out: Path, state):
    rows = []
    for cfg, branch in _channels(run):
        for i, res in enumerate(find_levels(cfg, branch, run.n_max, run.scan_points, run.tol_E)):
            rows.append((cfg.kappa, branch.branch, i, res.E, res.residual, res.n))
    write_csv(out / "eigenvalues.csv", ["kappa", "branch", "n", "E", "residual", "nodes"], rows, state())
    logger.info("solve: %d eigenvalues", len(rows))


def cmd_sweep(run: RunConfig, out: Path, state):
    grid = run.r0_grid or [run.base.r0]
    curves = []
    for cfg, branch in _channels(run):
        curves.extend(sweep_well_width(cfg, grid, branch, run.n_max, run.scan_points, run.tol_E))
    classes = {}
    for curve in curves:
        classes[curve.label] = classify_level_curve(curve).tag if len(curve.points) >= 3 else "unclassified"
    rows = []
    for curve in curves:
        n, kappa, branch = curve.label
        for r0, E in curve.points:
            rows.append((r0, kappa, branch, n, E, classes[curve.label]))
    order = {"plus": 0, "minus": 1}
    rows.sort(key=lambda row: (row[0], row[1], order[row[2]], row[3]))
    flagged = state()
    write_csv(out / "levels.csv", ["r0", "kappa", "branch", "n", "E", "class"], rows, flagged)

    # gap between the two branches of one (n, kappa), where both exist
    gap_rows = []
    by_label = {c.label: c for c in curves}
    for (n, kappa, branch), curve in sorted(by_label.items()):
        partner = by_label.get((n, kappa, "minus"))
        if branch != "plus" or partner is None:
            continue
        try:
            trans = transition_energies(partner, curve)
        except ValueError:
            continue
        gap_rows.extend((r0, kappa, n, dE, trans.trend) for r0, dE in trans.points)
    write_csv(out / "transitions.csv", ["r0", "kappa", "n", "dE", "trend"], gap_rows, flagged)
    if run.plots:
        from .plotting import plot_level_curves

        b = run.base
        title = f"m1={b.m1:g}, m2={b.m2:g}, V0={b.V0:g}, U0={b.U0:g}"
        plot_level_curves(curves, classes, out / "levels.svg", title)
    logger.info("sweep: %d level curves over %d widths", len(curves), len(grid))


def cmd_degeneracy(run: RunConfig, out: Path, state):
    if not run.compare or run.compare.get("kappa") is None and run.compare.get("U0") is None:
        raise ConfigError("degeneracy needs a [compare] section with kappa and/or U0")
    cfg_a = run.base
    cfg_b = cfg_a.with_(
        kappa=run.compare["kappa"] if run.compare.get("kappa") is not None else cfg_a.kappa,
        U0=run.compare["U0"] if run.compare.get("U0") is not None else cfg_a.U0,
    )
    rep = degeneracy_report(cfg_a, cfg_b, run.n_max, run.scan_points)
    lines = [
        f"channel_a: kappa={cfg_a.kappa} U0={fmt(cfg_a.U0)}",
        f"channel_b: kappa={cfg_b.kappa} U0={fmt(cfg_b.U0)}",
        "exponents_a: " + " ".join(fmt(x) for x in rep.exponents_a),
        "exponents_b: " + " ".join(fmt(x) for x in rep.exponents_b),
        f"degenerate: {str(rep.degenerate).lower()}",
        f"verified: {str(rep.verified).lower()}",
        f"max_splitting: {fmt(rep.max_splitting)}",
        "# branch n E_a E_b splitting",
    ]
    lines += [" ".join(fmt(v) for v in row) for row in rep.splittings]
    lines += [f"unmatched: {side} {tag} n={n} E={fmt(E)}" for side, tag, n, E in rep.unmatched]
    if state():
        lines.append("# flagged: solver diagnostics raised, see diagnostics.txt")
    (out / "degeneracy.txt").write_text("\n".join(lines) + "\n")
    logger.info("degeneracy: %s (max splitting %.3g)", rep.degenerate, rep.max_splitting)


def cmd_oracle_check(run: RunConfig, out: Path, state):
    rows = []
    for cfg, branch in _channels(run):
        analytic = find_levels(cfg, branch, run.n_max, run.scan_points, run.tol_E)
        shot = {res.n: res for res in shoot_eigenvalues(cfg, branch, run.n_max)}
        for res in analytic:
            ref = shot.pop(res.n, None)
            E_ref = ref.E if ref else float("nan")
            rows.append((cfg.kappa, branch.branch, res.n, res.E, E_ref, abs(res.E - E_ref), res.n, ref.n if ref else -1))
        for n, ref in sorted(shot.items()):
            rows.append((cfg.kappa, branch.branch, n, float("nan"), ref.E, float("nan"), -1, ref.n))
    header = ["kappa", "branch", "n", "E_analytic", "E_oracle", "abs_diff", "nodes_analytic", "nodes_oracle"]
    write_csv(out / "oracle_check.csv", header, rows, state())
    worst = max((r[5] for r in rows), default=0.0)
    logger.info("oracle-check: %d levels, max |dE| = %.3g", len(rows), worst)


HANDLERS = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "degeneracy": cmd_degeneracy,
    "oracle-check": cmd_oracle_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coreshell",
        description="Dirac core/shell well spectra under pseudospin symmetry with a Coulomb tensor term.",
    )
    parser.add_argument("--config", required=True, help="INI configuration file")
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--out", help="output directory (overrides [output] dir)")
    parser.add_argument("--force", action="store_true", help="overwrite existing output files")
    parser.add_argument("--quiet", action="store_true", help="only report errors")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    try:
        run_cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error:\n{exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = Path(args.out or run_cfg.out_dir)
    targets = [out / name for name in OUTPUTS[args.command] + ["diagnostics.txt"]]
    existing = [str(p) for p in targets if p.exists()]
    if existing and not args.force:
        print(f"refusing to overwrite {', '.join(existing)} (use --force)", file=sys.stderr)
        return EXIT_CONFIG
    out.mkdir(parents=True, exist_ok=True)
    if args.force:
        for p in targets:
            if p.exists():
                p.unlink()

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SolverWarning)

        def flagged():
            return any(issubclass(w.category, SolverWarning) for w in caught)

        try:
            HANDLERS[args.command](run_cfg, out, flagged)
        except ConfigError as exc:
            print(f"config error:\n{exc}", file=sys.stderr)
            return EXIT_CONFIG
    diagnostics = [str(w.message) for w in caught if issubclass(w.category, SolverWarning)]
    if diagnostics:
        (out / "diagnostics.txt").write_text("\n".join(diagnostics) + "\n")
        for msg in diagnostics:
            logger.warning("diagnostic: %s", msg)
        return EXIT_DIAGNOSTIC
    return EXIT_OK


def main():
    sys.exit(run())
