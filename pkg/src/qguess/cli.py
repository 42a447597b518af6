"""Command-line front end.

Exit codes: 0 success, 1 usage or spec error, 2 mathematical failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import explorer, game, qubit
from .measurements import MeasurementSet, mub_unitary
from .specfile import ExperimentSpec, SpecError, load_spec

EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    return f"{x:.12g}"


def fmt_complex(z: complex) -> str:
    z = complex(z)
    re = 0.0 if z.real == 0 else z.real  # no "-0"
    im = 0.0 if z.imag == 0 else z.imag
    sign = "-" if im < 0 else "+"
    return f"{re:.12g}{sign}{abs(im):.12g}j"


def _write_csv(path, header, rows, append=False):
    path = Path(path)
    new = not (append and path.exists() and path.stat().st_size > 0)
    with path.open("a" if append else "w", newline="") as fh:
        w = csv.writer(fh)
        if new:
            w.writerow(header)
        w.writerows(rows)


def _print_basis(name, m, out):
    for j, v in enumerate(m.basis):
        label = m.outcome_labels[j]
        print(f"{name}[{j}] (label {label}): " + " ".join(fmt_complex(z) for z in v), file=out)


# -- commands ---------------------------------------------------------------

def run_solve(spec: ExperimentSpec, tol: float, out=None) -> int:
    out = out or sys.stdout
    if spec.dim != 2:
        raise UsageError(f"solve needs a qubit spec (dimension 2), got {spec.dim}")
    try:
        sol = qubit.solve(spec.mset, tol)
    except qubit.SolverError as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return EXIT_MATH
    print(f"a={sol.a:.6f} b={sol.b:.6f} phi={sol.phase:.6f}", file=out)
    print(f"residual={sol.residual:.3e}", file=out)
    _print_basis("bob_basis", sol.bob_basis, out)
    return EXIT_OK


def run_optimize(spec: ExperimentSpec, restarts: int, seed: int, out_csv=None, out=None) -> int:
    out = out or sys.stdout
    res = explorer.maximize_success(spec.mset, restarts=restarts, seed=seed)
    print(f"best_success={fmt(res.best_success)}", file=out)
    print(f"best_residual={fmt(res.best_residual)}", file=out)
    print(f"restarts={res.restarts_used}", file=out)
    if out_csv:
        row = [spec.digest(), spec.dim, spec.mset.num_measurements,
               fmt(res.best_success), fmt(res.best_residual), seed]
        _write_csv(out_csv, ["spec_hash", "B", "A", "best_success", "best_residual", "seed"],
                   [row], append=True)
    return EXIT_OK


def _default_probe_and_basis(spec: ExperimentSpec, tol: float):
    probe, basis = spec.probe, spec.guess_basis
    if probe is None:
        if spec.dim != 2:
            raise UsageError("spec needs a 'probe' entry unless it is a qubit spec")
        probe = qubit.solve(spec.mset, tol).probe
    if probe.size != spec.dim:
        raise UsageError(f"probe has dimension {probe.size}, spec has {spec.dim}")
    try:
        g = game.GameInstance(probe, spec.mset)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if basis is None:
        e = game.post_selected_ensemble(g)
        try:
            basis = game.bob_basis(e, tol)
        except ValueError as exc:
            raise UsageError(f"{exc}; give a 'guess_basis' in the spec") from exc
    if basis.dim != spec.mset.num_measurements:
        raise UsageError(
            f"guess basis has dimension {basis.dim}, control register has "
            f"{spec.mset.num_measurements}"
        )
    return g, basis


def run_simulate(spec: ExperimentSpec, n: int, seed: int, tol: float, out=None) -> int:
    out = out or sys.stdout
    if n < 1:
        raise UsageError("--rounds must be at least 1")
    g, basis = _default_probe_and_basis(spec, tol)
    rate = game.simulate_rounds(g, basis, n, seed)
    exact = game.exact_success(g, basis)
    sigma = np.sqrt(max(exact * (1 - exact), 0.0) / n)
    print(f"rate={rate:.6f}", file=out)
    print(f"exact={exact:.6f}", file=out)
    print(f"sigma={sigma:.3e}", file=out)
    if abs(rate - exact) > 4 * sigma + 1e-12:
        print("empirical rate deviates from exact value by more than 4 sigma", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


def run_mub(d: int, k: int | None, out=None) -> int:
    out = out or sys.stdout
    ks = range(d) if k is None else [k]
    try:
        for kk in ks:
            U = mub_unitary(d, kk)
            print(f"U_{kk}:", file=out)
            for row in U:
                print("  " + " ".join(fmt_complex(z) for z in row), file=out)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def parse_values(text: str) -> list[float]:
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        try:
            start, stop, step = (float(x) for x in text.split(":"))
        except ValueError as exc:
            raise UsageError(f"bad range {text!r}") from exc
        if step <= 0 or stop < start:
            return []
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad value list {text!r}") from exc


def _sweep_set(spec: ExperimentSpec, param: str, value: float) -> MeasurementSet:
    mset = spec.mset
    if param == "w0":
        if not 0.0 <= value <= 1.0:
            raise UsageError(f"w0 must lie in [0, 1], got {value}")
        rest = np.array(mset.weights[1:])
        rest = rest / rest.sum() if rest.sum() > 0 else np.full(rest.size, 1.0 / max(rest.size, 1))
        return mset.with_weights(np.concatenate([[value], (1 - value) * rest]))
    if param == "seed":
        return explorer.random_measurement_set(mset.dim, mset.num_measurements, int(value))
    raise UsageError(f"unknown sweep parameter {param!r}")


def scan_point(mset: MeasurementSet, restarts: int, seed: int) -> tuple[float, float]:
    if mset.dim == 2:
        try:
            sol = qubit.solve(mset)
            e = game.post_selected_ensemble(game.GameInstance(sol.probe, mset))
            return game.helstrom_success(e), sol.residual
        except qubit.SolverError:
            pass
    res = explorer.maximize_success(mset, restarts=restarts, seed=seed)
    return res.best_success, res.best_residual


def run_scan(spec: ExperimentSpec, param: str, values: list[float], restarts: int, seed: int,
             out_csv=None, out=None) -> int:
    out = out or sys.stdout
    if not values:
        raise UsageError("empty sweep range")
    rows = []
    for v in values:
        success, residual = scan_point(_sweep_set(spec, param, v), restarts, seed)
        rows.append([fmt(v), fmt(success), fmt(residual)])
    header = ["param", "best_success", "residual"]
    if out_csv:
        _write_csv(out_csv, header, rows)
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return EXIT_OK


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qguess", description="Coherent quantum guessing game experiments")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, spec=True):
        if spec:
            sp.add_argument("--spec", required=True, help="experiment spec file (YAML)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=1e-9)

    sp = sub.add_parser("solve", help="closed-form perfect probe for a qubit set")
    common(sp)
    sp = sub.add_parser("simulate", help="Monte-Carlo rounds of the game")
    common(sp)
    sp.add_argument("--rounds", type=int, default=100_000)
    sp = sub.add_parser("optimize", help="multi-start probe optimization")
    common(sp)
    sp.add_argument("--restarts", type=int, default=100)
    sp.add_argument("--out", help="append a CSV row to this file")
    sp = sub.add_parser("mub", help="print the MUB unitaries for a prime dimension")
    sp.add_argument("dim", type=int)
    sp.add_argument("--index", type=int, default=None, help="only this basis index")
    sp = sub.add_parser("scan", help="sweep a parameter and write CSV")
    common(sp)
    sp.add_argument("--param", required=True, choices=["w0", "seed"])
    sp.add_argument("--values", required=True, help="start:stop:step or comma list")
    sp.add_argument("--restarts", type=int, default=10)
    sp.add_argument("--out", help="CSV output path (default stdout)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "mub":
            return run_mub(args.dim, args.index)
        spec = load_spec(args.spec)
        if args.command == "solve":
            return run_solve(spec, args.tol)
        if args.command == "simulate":
            return run_simulate(spec, args.rounds, args.seed, args.tol)
        if args.command == "optimize":
            return run_optimize(spec, args.restarts, args.seed, args.out)
        if args.command == "scan":
            return run_scan(spec, args.param, parse_values(args.values), args.restarts,
                            args.seed, args.out)
    except (SpecError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except qubit.SolverError as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return EXIT_MATH
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
