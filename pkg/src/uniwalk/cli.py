"""Command-line front end writing walk data as CSV.

Subcommands
-----------
pmf      position PMF and amplitudes at time t (direct, dft, fft or approx)
exit     quantum and classical exit-time probabilities with the asymptotic curves
bounds   stationary-phase PMF estimate and its envelopes on the site grid
compare  cross-check direct, dft and fft fields; exit code 4 on disagreement
fitexit  power-law fit of the exit-time tail

Exit codes: 0 success, 2 configuration error, 3 incompatible options,
4 tolerance breach in ``compare``.

Any long option may also come from ``--config FILE``, a flat ``key=value``
file (``#`` comments allowed). Options given on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
import time
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import asymptotics, evolution, exit_time, spectral
from .walk_core import CoinSpec, QubitState, WaveField, hadamard, is_hadamard

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INCOMPATIBLE = 3
EXIT_TOLERANCE = 4

COMMANDS = ("pmf", "exit", "bounds", "compare", "fitexit")
COMPARE_TOL = 1e-9
INPUT_NORM_TOL = 1e-9
_BOOL_FLAGS = {"normalize", "random_state", "verbose"}


class ConfigError(Exception):
    exit_code = EXIT_CONFIG


class IncompatibleOptions(Exception):
    exit_code = EXIT_INCOMPATIBLE


@dataclass(frozen=True)
class RunConfig:
    command: str
    t: int
    n0: int
    tmax: int
    state: QubitState
    coin: CoinSpec
    method: str
    output_path: str | None
    p: float = 0.5
    exit_method: str = "direct"
    t_lo: int | None = None
    t_hi: int | None = None
    envelope: str = "lower"
    points: int | None = None
    seed: int | None = None


def fmt(x) -> str:
    """17 significant digits: round-trips any double. ``None`` becomes an empty field."""
    if x is None:
        return ""
    return format(float(x), ".17g")


def _add_common(p: argparse.ArgumentParser):
    g = p.add_argument_group("initial coin state (default (|0> + i|1>)/sqrt 2)")
    s = 1.0 / math.sqrt(2.0)
    g.add_argument("--a-re", type=float, default=s)
    g.add_argument("--a-im", type=float, default=0.0)
    g.add_argument("--b-re", type=float, default=0.0)
    g.add_argument("--b-im", type=float, default=s)
    g.add_argument("--normalize", action="store_true", help="rescale (a, b) to unit norm")
    g.add_argument("--random-state", action="store_true", help="draw (a, b) from --seed")
    g.add_argument("--seed", type=int, default=None)
    c = p.add_argument_group("coin")
    c.add_argument("--coin", choices=("hadamard", "general"), default="hadamard")
    c.add_argument("--alpha", type=float, default=0.0)
    c.add_argument("--beta", type=float, default=0.0)
    c.add_argument("--phi", type=float, default=math.pi / 4)
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p.add_argument("--config", default=None, help="key=value file with default options")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uniwalk",
        description="Unidirectional quantum walk: PMFs, exit times and cross-checks as CSV.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "examples:\n"
            "  uniwalk pmf --t 30 --method dft\n"
            "  uniwalk pmf --t 100 --method approx -o plateau.csv\n"
            "  uniwalk exit --n0 100 --tmax 1000 -o exit.csv\n"
            "  uniwalk compare --t 1000\n"
            "  uniwalk fitexit --n0 100 --tmax 1000 --t-lo 220 --t-hi 650\n"
        ),
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("pmf", help="position PMF and amplitudes at time t")
    p.add_argument("--t", "--steps", dest="t", type=int, required=True)
    p.add_argument("--method", choices=("direct", "dft", "fft", "approx"), default="direct")
    _add_common(p)

    p = sub.add_parser("exit", help="exit-time probabilities from [0, n0)")
    p.add_argument("--n0", type=int, required=True)
    p.add_argument("--tmax", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5, help="classical step probability")
    p.add_argument(
        "--exit-method",
        choices=("direct", "spectral", "filtered"),
        default="direct",
        help="route for the quantum column",
    )
    _add_common(p)

    p = sub.add_parser("bounds", help="stationary-phase PMF estimate and envelopes")
    p.add_argument("--t", "--steps", dest="t", type=int, required=True)
    p.add_argument(
        "--points",
        type=int,
        default=None,
        help="evaluate on this many nu values inside the validity interval instead of sites",
    )
    _add_common(p)

    p = sub.add_parser("compare", help="cross-check direct, dft and fft routes")
    p.add_argument("--t", "--steps", dest="t", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("fitexit", help="power-law fit of the exit-time tail")
    p.add_argument("--n0", type=int, required=True)
    p.add_argument("--tmax", type=int, required=True)
    p.add_argument("--t-lo", type=int, default=None)
    p.add_argument("--t-hi", type=int, default=None)
    p.add_argument("--envelope", choices=("lower", "upper", "raw"), default="lower")
    p.add_argument(
        "--exit-method", choices=("direct", "spectral", "filtered"), default="direct"
    )
    _add_common(p)
    return parser


def load_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _expand_config(argv: list[str]) -> list[str]:
    """Splice options from ``--config`` in front of the command-line ones."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, rest = pre.parse_known_args(argv)
    if known.config is None:
        return argv
    cfg = load_config(known.config)
    command = cfg.pop("command", None)
    extra: list[str] = []
    for key, value in cfg.items():
        flag = "--" + key.replace("_", "-")
        if key in _BOOL_FLAGS:
            if value.lower() in ("1", "true", "yes", "on"):
                extra.append(flag)
            elif value.lower() not in ("0", "false", "no", "off"):
                raise ConfigError(f"{key} expects a boolean, got {value!r}")
        else:
            extra += [flag, value]
    if rest and rest[0] in COMMANDS:
        return [rest[0], *extra, *rest[1:]]
    if command is None:
        raise ConfigError("no command given on the command line or in the config file")
    return [command, *extra, *rest]


def make_config(args: argparse.Namespace) -> RunConfig:
    if args.random_state:
        state = QubitState.random(np.random.default_rng(args.seed))
    else:
        a = complex(args.a_re, args.a_im)
        b = complex(args.b_re, args.b_im)
        norm = abs(a) ** 2 + abs(b) ** 2
        if args.normalize:
            if norm == 0.0:
                raise ConfigError("cannot normalize a zero coin state")
            state = QubitState.normalized(a, b)
        elif abs(norm - 1.0) > INPUT_NORM_TOL:
            raise ConfigError(f"|a|^2 + |b|^2 = {norm:.12g}; pass --normalize to rescale")
        else:
            state = QubitState.normalized(a, b)
    coin = hadamard() if args.coin == "hadamard" else CoinSpec(args.alpha, args.beta, args.phi)

    t = getattr(args, "t", 0)
    n0 = getattr(args, "n0", 0)
    tmax = getattr(args, "tmax", 0)
    if t is not None and t < 0:
        raise ConfigError(f"--t must be nonnegative, got {t}")
    if args.command in ("exit", "fitexit"):
        if n0 < 1:
            raise ConfigError(f"--n0 must be at least 1, got {n0}")
        if tmax < n0:
            raise ConfigError(f"--tmax must be at least n0={n0}, got {tmax}")
    p = getattr(args, "p", 0.5)
    if not 0.0 < p < 1.0:
        raise ConfigError(f"--p must lie in (0, 1), got {p}")
    points = getattr(args, "points", None)
    if points is not None and points < 1:
        raise ConfigError(f"--points must be positive, got {points}")

    method = getattr(args, "method", "direct")
    exit_method = getattr(args, "exit_method", "direct")
    hadamard_only = (
        (args.command == "pmf" and method != "direct")
        or args.command in ("bounds", "compare")
        or (args.command in ("exit", "fitexit") and exit_method != "filtered")
    )
    if hadamard_only and not is_hadamard(coin):
        raise IncompatibleOptions(
            f"{args.command} with these options requires the Hadamard coin"
        )
    if args.command == "bounds" and (
        abs(state.a - 1 / math.sqrt(2)) > INPUT_NORM_TOL or abs(state.b - 1j / math.sqrt(2)) > INPUT_NORM_TOL
    ):
        logger.warning("envelopes are derived for the state (|0> + i|1>)/sqrt 2 only")

    return RunConfig(
        command=args.command,
        t=t or 0,
        n0=n0,
        tmax=tmax,
        state=state,
        coin=coin,
        method=method,
        output_path=args.output,
        p=p,
        exit_method=exit_method,
        t_lo=getattr(args, "t_lo", None),
        t_hi=getattr(args, "t_hi", None),
        envelope=getattr(args, "envelope", "lower"),
        points=points,
        seed=args.seed,
    )


def _write_csv(out: TextIO, header: Sequence[str], rows: Iterable[Sequence[str]]):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _envelope_or_blank(nu: float, t: int):
    lo, hi = asymptotics.validity_interval()
    if t < 1 or not lo < nu < hi:
        return None, None, None
    rmin, rmax = asymptotics.rho_envelopes(nu, t)
    return asymptotics.rho_bar(nu, t), rmin, rmax


def field_for(cfg: RunConfig, method: str) -> WaveField:
    if method == "direct":
        return evolution.evolve(cfg.state, cfg.coin, cfg.t)
    if method == "dft":
        return spectral.closed_form_field(cfg.state, cfg.t)
    if method in ("fft", "approx"):
        return spectral.fft_field(cfg.state, cfg.t)
    raise ValueError(method)


def cmd_pmf(cfg: RunConfig, out: TextIO) -> int:
    w = field_for(cfg, cfg.method)
    rho = evolution.pmf(w).rho
    header = ["n", "rho", "psi0_re", "psi0_im", "psi1_re", "psi1_im"]
    approx = cfg.method == "approx"
    if approx:
        header += ["rho_bar", "rho_min", "rho_max"]
    rows = []
    for n in range(w.t + 1):
        row = [str(n), fmt(rho[n]), fmt(w.psi0[n].real), fmt(w.psi0[n].imag),
               fmt(w.psi1[n].real), fmt(w.psi1[n].imag)]
        if approx:
            row += [fmt(v) for v in _envelope_or_blank(n / w.t if w.t else 0.0, w.t)]
        rows.append(row)
    _write_csv(out, header, rows)
    return EXIT_OK


def quantum_exit(cfg: RunConfig) -> exit_time.ExitDistribution:
    if cfg.exit_method == "filtered":
        return exit_time.exit_pmf_filtered(cfg.state, cfg.coin, cfg.n0, cfg.tmax)
    return exit_time.exit_pmf_closed(cfg.state, cfg.n0, cfg.tmax, method=cfg.exit_method)


def cmd_exit(cfg: RunConfig, out: TextIO) -> int:
    quantum = quantum_exit(cfg)
    classical = exit_time.classical_exit_pmf(cfg.n0, cfg.p, cfg.tmax)
    rows = []
    for t, pq, pc in zip(quantum.times, quantum.p_exit, classical.p_exit):
        t = int(t)
        heur = asymptotics.exit_heuristic(cfg.n0, t) if t >= 2 * cfg.n0 else None
        rows.append([str(t), fmt(pq), fmt(pc),
                     fmt(asymptotics.exit_lower_bound(cfg.n0, t)), fmt(heur)])
    _write_csv(out, ["t", "p_quantum", "p_classical", "lower_bound", "heuristic"], rows)
    print(
        f"survival_quantum={fmt(quantum.survival)} survival_classical={fmt(classical.survival)}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_bounds(cfg: RunConfig, out: TextIO) -> int:
    if cfg.t < 1:
        raise ConfigError("bounds needs --t of at least 1")
    rows = []
    if cfg.points is None:
        for n in range(cfg.t + 1):
            nu = n / cfg.t
            rows.append([fmt(nu), fmt(n)] + [fmt(v) for v in _envelope_or_blank(nu, cfg.t)])
    else:
        lo, hi = asymptotics.validity_interval()
        # open interval: drop the two endpoints where the formulas diverge
        nus = np.linspace(lo, hi, cfg.points + 2)[1:-1]
        for nu in nus:
            rows.append([fmt(nu), fmt(nu * cfg.t)] + [fmt(v) for v in _envelope_or_blank(nu, cfg.t)])
    _write_csv(out, ["nu", "n", "rho_bar", "rho_min", "rho_max"], rows)
    return EXIT_OK


def run_compare(state: QubitState, t: int):
    """Fields from the three routes, their pairwise deviations and timings."""
    timings = {}
    fields = {}
    for name, fn in (
        ("direct", lambda: evolution.evolve(state, hadamard(), t)),
        ("dft", lambda: spectral.closed_form_field(state, t)),
        ("fft", lambda: spectral.fft_field(state, t)),
    ):
        start = time.perf_counter()
        fields[name] = fn()
        timings[name] = time.perf_counter() - start
    deviations = {
        (a, b): fields[a].max_deviation(fields[b])
        for a, b in (("direct", "dft"), ("direct", "fft"), ("dft", "fft"))
    }
    return deviations, timings


def cmd_compare(cfg: RunConfig, out: TextIO) -> int:
    deviations, timings = run_compare(cfg.state, cfg.t)
    print(f"t={cfg.t} a={cfg.state.a!r} b={cfg.state.b!r}", file=out)
    for name, secs in timings.items():
        print(f"time[{name}]={secs:.6f}s", file=out)
    ok = True
    for (a, b), dev in deviations.items():
        good = dev < COMPARE_TOL
        ok &= good
        print(f"max|{a}-{b}|={dev:.3e} {'PASS' if good else 'FAIL'}", file=out)
    print("PASS" if ok else "FAIL", file=out)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_fitexit(cfg: RunConfig, out: TextIO) -> int:
    d = quantum_exit(cfg)
    t_lo = cfg.t_lo if cfg.t_lo is not None else min(int(2.2 * cfg.n0), cfg.tmax - 1)
    t_hi = cfg.t_hi if cfg.t_hi is not None else min(int(6.5 * cfg.n0), cfg.tmax)
    try:
        fit = exit_time.tail_exponent_fit(d, t_lo, t_hi, envelope=cfg.envelope)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _write_csv(
        out,
        ["envelope", "t_lo", "t_hi", "exponent", "log_prefactor", "rms_residual", "points", "heuristic_exponent"],
        [[cfg.envelope, str(t_lo), str(t_hi), fmt(fit.exponent), fmt(fit.log_prefactor),
          fmt(fit.rms_residual), str(fit.points), fmt(-asymptotics.HEURISTIC_EXPONENT)]],
    )
    return EXIT_OK


HANDLERS = {
    "pmf": cmd_pmf,
    "exit": cmd_exit,
    "bounds": cmd_bounds,
    "compare": cmd_compare,
    "fitexit": cmd_fitexit,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _expand_config(argv)
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        cfg = make_config(args)
        if cfg.output_path:
            with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
                return HANDLERS[cfg.command](cfg, fh)
        return HANDLERS[cfg.command](cfg, sys.stdout)
    except (ConfigError, IncompatibleOptions) as exc:
        print(f"uniwalk: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:
        # argparse reports usage errors with status 2
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
