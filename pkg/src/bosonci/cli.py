"""Command-line interface.

Every subcommand writes deterministic files into ``--out`` and prints a
short summary. Options may also come from a ``key = value`` file passed
with ``--config``; flags given on the command line take precedence.

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""
import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .exceptions import BracketError, ConfigurationError, NumericalError
from .grid import Grid
from .hamiltonian import ProblemSpec
from .io import format_float, write_csv, write_grid_1d, write_grid_2d, write_json
from .orbitals import (default_grid, entanglement_entropy, one_body_density, orbital_eval,
                       pair_density, same_well_fraction, schmidt)
from .potentials import from_config
from .solver import RESIDUAL_TOLERANCE, OmegaSearchConfig, solve
from .sweep import N_REPORTED_OCCUPANCIES, crossover_from_sweep, g_values, sweep
from . import oracles

log = logging.getLogger("bosonci")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigurationError(message)


def _omega_arg(text):
    if text == "auto":
        return "auto"
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"omega must be 'auto' or a number, got {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"fixed omega must be positive, got {value}")
    return value


def _float_list(text):
    try:
        return [float(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_common(p):
    p.add_argument("--config", help="key = value file; command-line flags win")
    p.add_argument("--potential", default="harmonic",
                   choices=["harmonic", "double_well", "triple_well", "custom"])
    p.add_argument("--a", type=float, help="shape parameter of the multi-well traps")
    p.add_argument("--coefficients", type=_float_list,
                   help="c0,c1,... for --potential custom")
    p.add_argument("--K", type=int, default=20, help="one-particle basis size")
    p.add_argument("--n-states", type=int, default=5)
    p.add_argument("--omega", type=_omega_arg, default="auto")
    p.add_argument("--omega-min", type=float, default=1e-3)
    p.add_argument("--omega-max", type=float, default=1e3)
    p.add_argument("--omega-rtol", type=float, default=1e-8)
    p.add_argument("--grid-L", type=float, help="grid half-width")
    p.add_argument("--grid-M", type=int, help="grid point count (odd)")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-v", "--verbose", action="store_true")


def _add_range(p):
    p.add_argument("--g-min", type=float, default=0.0)
    p.add_argument("--g-max", type=float, default=20.0)
    p.add_argument("--g-points", type=int, default=41)
    p.add_argument("--spacing", choices=["linear", "log"], default="linear")
    p.add_argument("--g-values", type=_float_list, help="explicit list, overrides the range")


def build_parser():
    parser = _Parser(prog="bosonci", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="single optimized-CI solve")
    _add_common(p)
    p.add_argument("--g", type=float, default=0.0)

    p = sub.add_parser("sweep", help="ground-state observables over a g range")
    _add_common(p)
    _add_range(p)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("crossover", help="g where lambda_0 - lambda_1 drops to a threshold")
    _add_common(p)
    _add_range(p)
    p.add_argument("--threshold", type=float, default=0.05)

    p = sub.add_parser("density", help="one-body and pair densities")
    _add_common(p)
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--state", type=int, default=0)

    p = sub.add_parser("orbitals", help="natural orbitals sampled on a grid")
    _add_common(p)
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--n-orbitals", type=int, default=3)

    p = sub.add_parser("oracle", help="brute-force reference runs")
    _add_common(p)
    p.add_argument("--type", required=True, choices=["tg", "exact-harmonic", "grid1d", "grid2d"])
    p.add_argument("--g", type=float, default=0.0)
    return parser


def read_config_file(path):
    """Parse ``key = value`` lines; ``#`` starts a comment; dashes and underscores are equivalent."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        actions = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, value in read_config_file(args.config).items():
            if key not in actions or key in ("config", "help"):
                raise ConfigurationError(f"unknown config key {key!r} for {args.command}")
            action = actions[key]
            if action.type is not None:
                try:
                    value = action.type(value)
                except (argparse.ArgumentTypeError, ValueError) as exc:
                    raise ConfigurationError(f"config key {key}: {exc}") from exc
            if action.choices is not None and value not in action.choices:
                raise ConfigurationError(f"config key {key}: {value!r} not in {action.choices}")
            defaults[key] = value
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def _potential(args):
    return from_config(args.potential, args.a, args.coefficients)


def _search(args):
    return OmegaSearchConfig(lower=args.omega_min, upper=args.omega_max, rtol=args.omega_rtol)


def _omega(args):
    return None if args.omega == "auto" else args.omega


def _metadata(args, potential, **extra):
    meta = {"software": "bosonci", "version": __version__, "command": args.command}
    meta.update((k, v) for k, v in potential.to_config().items() if k != "coefficients")
    meta["potential_coefficients"] = ";".join(format_float(c) for c in potential.coefficients)
    meta.update(omega_rtol=args.omega_rtol, residual_tolerance=RESIDUAL_TOLERANCE)
    meta.update(extra)
    return meta


def _grid(args, potential, omega):
    base = default_grid(potential, omega, K=args.K)
    if args.grid_L is None and args.grid_M is None:
        return base
    return Grid(args.grid_L if args.grid_L is not None else base.half_width,
                args.grid_M if args.grid_M is not None else base.n_points)


def _write_result(args, energies, k, meta):
    out = Path(args.out)
    lam = np.asarray(k) ** 2
    if args.format == "json":
        return [write_json(out / f"{args.command}.json", {
            "metadata": meta, "energies": list(energies),
            "schmidt_coefficients": list(k), "occupancies": list(lam)})]
    return [write_csv(out / "spectrum.csv", ("state", "energy"), enumerate(energies)),
            write_csv(out / "occupancies.csv", ("index", "k", "lambda"),
                      ((i, ki, li) for i, (ki, li) in enumerate(zip(k, lam)))),
            write_csv(out / "metadata.csv", ("key", "value"), meta.items())]


def run_solve(args):
    potential = _potential(args)
    problem = ProblemSpec(potential, args.g, args.K)
    spec = solve(problem, min(args.n_states, problem.K * (problem.K + 1) // 2),
                 _search(args), _omega(args))
    decomp = schmidt(spec.state(0))
    meta = _metadata(args, potential, g=args.g, K=spec.K, D=spec.D, omega=spec.omega,
                     **spec.metadata, entropy=entanglement_entropy(decomp))
    files = _write_result(args, spec.energies, decomp.k, meta)
    print(f"omega* = {format_float(spec.omega)}  K = {spec.K}  D = {spec.D}")
    print(f"E_0 = {format_float(spec.energies[0])}")
    print(f"lambda_0 = {format_float(decomp.occupancies[0])}")
    return files


SWEEP_HEADER_TAIL = ("lambda_0", "lambda_1", "lambda_2", "entropy", "omega", "K", "D", "status")


def _gs(args):
    if args.g_values:
        return np.sort(np.asarray(args.g_values, dtype=float))
    return g_values(args.g_min, args.g_max, args.g_points, args.spacing)


def run_sweep(args):
    potential = _potential(args)
    n = min(args.n_states, args.K * (args.K + 1) // 2)
    points = sweep(potential, _gs(args), args.K, n, _omega(args), _search(args),
                   workers=args.workers)
    header = ("g",) + tuple(f"E_{s}" for s in range(n)) + SWEEP_HEADER_TAIL
    rows = []
    for p in points:
        occ = list(p.occupancies[:N_REPORTED_OCCUPANCIES])
        occ += [0.0] * (N_REPORTED_OCCUPANCIES - len(occ))
        rows.append([p.g, *p.energies, *occ, p.entropy, p.omega, p.K, p.D, p.status])
    out = Path(args.out)
    if args.format == "json":
        files = [write_json(out / "sweep.json", {
            "metadata": _metadata(args, potential, K=args.K, D=args.K * (args.K + 1) // 2),
            "columns": list(header), "rows": rows})]
    else:
        files = [write_csv(out / "sweep.csv", header, rows)]
    failed = sum(p.status != "ok" for p in points)
    print(f"{len(points)} points written, {failed} failed")
    return files


def run_crossover(args):
    potential = _potential(args)
    gs = _gs(args)
    res = crossover_from_sweep(potential, gs, args.K, args.threshold, omega=_omega(args),
                               config=_search(args))
    meta = _metadata(args, potential, K=args.K, D=args.K * (args.K + 1) // 2)
    row = (res.g_cr, res.g_lo, res.g_hi, res.gap_lo, res.gap_hi, res.threshold, res.iterations)
    header = ("g_cr", "g_lo", "g_hi", "gap_lo", "gap_hi", "threshold", "iterations")
    out = Path(args.out)
    if args.format == "json":
        files = [write_json(out / "crossover.json", {"metadata": meta,
                                                      **dict(zip(header, row))})]
    else:
        files = [write_csv(out / "crossover.csv", header, [row]),
                 write_csv(out / "metadata.csv", ("key", "value"), meta.items())]
    print(f"g_cr = {format_float(res.g_cr)}  in [{format_float(res.g_lo)}, "
          f"{format_float(res.g_hi)}]")
    return files


def run_density(args):
    potential = _potential(args)
    problem = ProblemSpec(potential, args.g, args.K)
    spec = solve(problem, args.state + 1, _search(args), _omega(args))
    state = spec.state(args.state)
    grid = _grid(args, potential, spec.omega)
    rho = one_body_density(schmidt(state), grid)
    pair = pair_density(state, grid)
    out = Path(args.out)
    meta = _metadata(args, potential, g=args.g, K=spec.K, D=spec.D, omega=spec.omega,
                     state=args.state, grid_L=grid.half_width, grid_M=grid.n_points,
                     one_body_norm=rho.norm, pair_norm=pair.norm,
                     same_side_fraction=same_well_fraction(pair))
    if args.format == "json":
        files = [write_json(out / "density.json", {
            "metadata": meta, "x": list(grid.x), "one_body": list(rho.values),
            "pair": [list(r) for r in pair.values]})]
    else:
        files = [write_grid_1d(out / "one_body_density.csv", grid.x, rho.values),
                 write_grid_2d(out / "pair_density.csv", grid.x, pair.values),
                 write_csv(out / "metadata.csv", ("key", "value"), meta.items())]
    print(f"one-body norm = {format_float(rho.norm)}  pair norm = {format_float(pair.norm)}")
    return files


def run_orbitals(args):
    potential = _potential(args)
    problem = ProblemSpec(potential, args.g, args.K)
    spec = solve(problem, 1, _search(args), _omega(args))
    decomp = schmidt(spec.state(0))
    grid = _grid(args, potential, spec.omega)
    n = min(args.n_orbitals, decomp.K)
    cols = [orbital_eval(decomp, l, grid.x) for l in range(n)]
    out = Path(args.out)
    header = ("x",) + tuple(f"v_{l}" for l in range(n))
    meta = _metadata(args, potential, g=args.g, K=spec.K, D=spec.D, omega=spec.omega,
                     occupancies=";".join(format_float(v) for v in decomp.occupancies[:n]))
    if args.format == "json":
        files = [write_json(out / "orbitals.json", {"metadata": meta, "x": list(grid.x),
                                                     "orbitals": [list(c) for c in cols]})]
    else:
        files = [write_csv(out / "orbitals.csv", header, zip(grid.x, *cols)),
                 write_csv(out / "metadata.csv", ("key", "value"), meta.items())]
    print(f"{n} orbitals on {grid.n_points} points")
    return files


def run_oracle(args):
    potential = _potential(args)
    kind = args.type
    if kind == "exact-harmonic":
        grid = Grid(args.grid_L or 8.0, args.grid_M or 801)
        ref = oracles.harmonic_exact_ground(args.g, grid, args.n_states, potential=potential)
        energies = ref.energies
        k = oracles.kernel_occupancies(ref.ground, args.K).k
        extra = {"raw_E0_h": ref.raw[0, 0], "raw_E0_h2": ref.raw[1, 0]}
    elif kind == "tg":
        grid = Grid(args.grid_L or 8.0, args.grid_M or 801)
        sp = oracles.grid_single_particle(potential, grid, 2)
        energies = np.array([sp.energies.sum()])
        k = oracles.kernel_occupancies(oracles.tg_ground(potential, grid), args.K).k
        extra = {}
    elif kind == "grid1d":
        grid = Grid(args.grid_L or 12.0, args.grid_M or 2401)
        sp = oracles.grid_single_particle(potential, grid, args.n_states)
        energies = sp.energies
        k = np.array([1.0])
        extra = {"note": "single-particle levels; two-boson g=0 ground is 2 E_0"}
    else:
        grid = Grid(args.grid_L or 9.0, args.grid_M or 301)
        res = oracles.grid_two_particle(potential, args.g, grid, args.n_states)
        energies = res.energies
        k = oracles.kernel_occupancies(res.states[0], args.K).k
        extra = {"max_residual": float(res.residuals.max())}
    meta = _metadata(args, potential, oracle=kind, g=args.g, grid_L=grid.half_width,
                     grid_M=grid.n_points, **extra)
    files = _write_result(args, energies, k, meta)
    print(f"E_0 = {format_float(energies[0])}")
    print(f"lambda_0 = {format_float(k[0] ** 2)}")
    return files


COMMANDS = {"solve": run_solve, "sweep": run_sweep, "crossover": run_crossover,
            "density": run_density, "orbitals": run_orbitals, "oracle": run_oracle}


def main(argv=None):
    try:
        args = parse_args(sys.argv[1:] if argv is None else argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        COMMANDS[args.command](args)
    except (ConfigurationError, BracketError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
