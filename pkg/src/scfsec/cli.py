"""``scfsec`` command line: rate reports, sweeps, figures, optimization,
asymptotic gap tables and lattice simulations.

Exit codes: 0 ok, 2 usage or configuration error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import asymptotics, baseline_rates, lattice_sim, optimizer, schemes
from .core import (
    ChannelConfig,
    CoefficientPair,
    ConfigError,
    EveChannelConfig,
    SweepResult,
    db_to_linear,
)
from .scf_rates import above_threshold, jammer_cap, sigma_threshold

EXIT_USAGE = 2
EXIT_BUDGET = 3

POWER_KEYS = ("pa", "pb", "pr", "sigma2")
GAIN_KEYS = ("h1", "h2", "h1p", "h2p", "h3")

SCHEMES = ("rb", "lc", "combined", "sun_af", "zhang_mf", "he_cf", "he2", "vatedka",
           "eve_rb", "upper", "capacity")
SCHEME_ALIASES = {"sun": "sun_af", "zhang": "zhang_mf", "he": "he_cf", "eve": "eve_rb"}
# defined only for the collocated jammer; reported as NaN / null otherwise
SIGMA0_ONLY = ("sun_af", "zhang_mf")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- evaluation

@dataclass
class Point:
    """One operating point: powers in dB, gains linear."""

    db: dict = field(default_factory=dict)
    gains: dict = field(default_factory=dict)

    def channel(self) -> ChannelConfig:
        return ChannelConfig(*(db_to_linear(self.db[k]) for k in POWER_KEYS))

    def eve(self) -> EveChannelConfig:
        cfg = self.channel()
        g = {k: self.gains.get(k, 1.0) for k in GAIN_KEYS}
        return EveChannelConfig(cfg.p_a, cfg.p_b, cfg.p_r, **g)


def scheme_value(name: str, point: Point, a_max: int = optimizer.DEFAULT_A_MAX) -> float:
    cfg = point.channel()
    if name in SIGMA0_ONLY and cfg.sigma2 > 0:
        return math.nan
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", baseline_rates.SigmaIgnoredWarning)
        if name == "rb":
            return schemes.rb_rate(cfg, a_max)
        if name == "lc":
            return schemes.lc_rate(cfg, a_max)
        if name == "combined":
            return schemes.combined_lower_bound(cfg, a_max)
        if name == "sun_af":
            return baseline_rates.af_rate_sun(cfg)
        if name == "zhang_mf":
            return baseline_rates.mf_rate_zhang(cfg)
        if name == "he_cf":
            return baseline_rates.cf_rate_he(cfg)
        if name == "he2":
            return baseline_rates.cnf_rate_he2(cfg.p_a)
        if name == "vatedka":
            return baseline_rates.perfect_rate_vatedka(cfg.p_a)
        if name == "eve_rb":
            return schemes.eve_rb_rate(point.eve(), a_max)
        if name == "upper":
            return baseline_rates.secrecy_upper_bound(cfg).effective
        if name == "capacity":
            return baseline_rates.no_secrecy_capacity(cfg)
    raise UsageError(f"unknown scheme {name!r}")


def parse_schemes(text: str) -> list[str]:
    names = [SCHEME_ALIASES.get(s.strip(), s.strip()) for s in text.split(",") if s.strip()]
    if not names:
        raise UsageError("no schemes given")
    for n in names:
        if n not in SCHEMES:
            raise UsageError(f"unknown scheme {n!r}; choose from {', '.join(SCHEMES)}")
    return names


def clamp(v: float) -> float:
    return v if math.isnan(v) else max(0.0, v)


def fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def json_number(v):
    if v is None or (isinstance(v, float) and not math.isfinite(v)):
        return None
    return v


# ---------------------------------------------------------------- config ingestion

def _parse_db(text) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def add_channel_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with the same (kebab-case) fields as the flags")
    p.add_argument("--pa-db", help="source power P_A in dB")
    p.add_argument("--pb-db", help="jammer power P_B in dB")
    p.add_argument("--pr-db", help="relay power P_R in dB")
    p.add_argument("--sigma2-db", help="jammer-to-destination noise variance in dB, -inf for collocated")
    for g in GAIN_KEYS:
        p.add_argument(f"--{g}", help=f"channel gain {g} (eavesdropper model)")


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    return data


def merged(args, config: dict, key: str, default=None):
    """Flag value, else config value (kebab-case key), else ``default``."""
    v = getattr(args, key.replace("-", "_"), None)
    if v is None:
        v = config.get(key, default)
    return v


def point_from_args(args, config: dict, required=POWER_KEYS[:3]) -> Point:
    db = {}
    for k in POWER_KEYS:
        v = merged(args, config, f"{k}-db", "-inf" if k == "sigma2" else None)
        if v is None:
            if k in required:
                raise UsageError(f"missing --{k}-db")
            v = 0.0
        db[k] = _parse_db(v)
    gains = {}
    for g in GAIN_KEYS:
        v = merged(args, config, g)
        if v is not None:
            gains[g] = _parse_db(v)
    return Point(db, gains)


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------- rate / optimize

def cmd_rate(args) -> str:
    config = load_config(args.config)
    point = point_from_args(args, config)
    cfg = point.channel()
    a_max = int(merged(args, config, "a-max", optimizer.DEFAULT_A_MAX))
    names = [s for s in SCHEMES if s != "eve_rb" or point.gains]
    raw = {n: scheme_value(n, point, a_max) for n in names}
    ub = baseline_rates.secrecy_upper_bound(cfg)
    best = optimizer.search_coefficients(cfg, a_max)
    report = {
        "config": {"p_a": cfg.p_a, "p_b": cfg.p_b, "p_r": cfg.p_r, "sigma2": cfg.sigma2,
                   **({"gains": point.gains} if point.gains else {})},
        "sigma_bar": json_number(sigma_threshold(cfg)),
        "above_threshold": above_threshold(cfg),
        "raw": {n: json_number(v) for n, v in raw.items()},
        "clamped": {n: json_number(clamp(v)) for n, v in raw.items()},
        "upper_bound": {"rho": ub.rho, "r_b": ub.r_b, "effective": ub.effective},
        "optimum": {"a": [best.best.coeffs.a1, best.best.coeffs.a2],
                    "beta_ratio": best.best.scalings.ratio, "value": best.value},
    }
    return dump_json(report)


def cmd_optimize(args) -> str:
    config = load_config(args.config)
    point = point_from_args(args, config)
    cfg = point.channel()
    a_max = int(merged(args, config, "a-max", optimizer.DEFAULT_A_MAX))
    if a_max < 1:
        raise UsageError("--a-max must be >= 1")
    cap = merged(args, config, "b-rate-cap")
    if cap == "jammer":
        cap = jammer_cap(cfg)
    objective = optimizer.Objective(b_rate_cap=None if cap is None or math.isinf(float(cap)) else float(cap))
    target = point.eve() if args.eve else cfg
    res = optimizer.search_coefficients(target, a_max, objective)
    d = res.best
    report = {
        "a": [d.coeffs.a1, d.coeffs.a2],
        "beta_ratio": d.scalings.ratio,
        "value": res.value,
        "r_cf_a": d.r_cf_a,
        "r_cf_b": d.r_cf_b,
        "leakage_bound": d.leakage_bound,
        "constrained": res.constrained,
        "feasible": res.feasible,
        "evaluations": res.evaluations,
    }
    if not args.eve:
        cf = optimizer.closed_form_optimum(cfg)
        report["closed_form"] = {"a": list(cf.a), "beta_ratio": cf.beta_ratio, "value": cf.value}
    return dump_json(report)


# ---------------------------------------------------------------- sweeps / figures

LINK_RE = re.compile(r"^(pa|pb|pr|sigma2)(?:([+-]\d+(?:\.\d+)?))?$")


def parse_links(items) -> dict[str, float]:
    """``pb+10`` ties P_B (dB) to the swept value plus 10 dB."""
    links = {}
    for item in items or ():
        m = LINK_RE.match(item.strip())
        if not m:
            raise UsageError(f"bad --link {item!r}; expected NAME[+-OFFSET], e.g. pb+10")
        links[m.group(1)] = float(m.group(2) or 0.0)
    return links


@dataclass(frozen=True)
class SweepPlan:
    vary: str
    xs: tuple[float, ...]
    base: Point
    links: dict
    scheme_names: tuple[str, ...]

    def point(self, x: float) -> Point:
        db = dict(self.base.db)
        gains = dict(self.base.gains)
        if self.vary == "h2p":
            gains["h2p"] = x
        else:
            db[self.vary] = x
        for k, off in self.links.items():
            db[k] = x + off
        return Point(db, gains)

    @property
    def x_label(self) -> str:
        return "h2p" if self.vary == "h2p" else "x_db"


def run_sweep(plan: SweepPlan, threads: int | None = None, a_max: int = optimizer.DEFAULT_A_MAX) -> SweepResult:
    def row(x):
        pt = plan.point(x)
        return [scheme_value(n, pt, a_max) for n in plan.scheme_names]

    workers = max(1, threads or os.cpu_count() or 1)
    if workers == 1:
        rows = [row(x) for x in plan.xs]
    else:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(row, plan.xs))
    result = SweepResult(plan.x_label, list(plan.scheme_names))
    for x, values in zip(plan.xs, rows):
        result.append(x, values)
    return result


def sweep_csv(result: SweepResult, raw: bool = False) -> str:
    lines = [",".join([result.x_label, *result.scheme_labels])]
    for x, *values in result.rows:
        cells = [fmt(v if raw else clamp(v)) for v in values]
        lines.append(",".join([fmt(x), *cells]))
    return "\n".join(lines) + "\n"


def grid(lo: float, hi: float, steps: int) -> tuple[float, ...]:
    if steps < 2:
        raise UsageError("--steps must be >= 2")
    if not hi > lo:
        raise UsageError("--to-db must exceed --from-db")
    return tuple(float(x) for x in np.linspace(lo, hi, steps))


def cmd_sweep(args) -> str:
    config = load_config(args.config)
    names = parse_schemes(args.schemes)
    vary = args.vary
    required = tuple(k for k in POWER_KEYS[:3] if k != vary and k not in parse_links(args.link))
    base = point_from_args(args, config, required)
    if "eve_rb" in names or vary == "h2p":
        base.gains = {k: base.gains.get(k, 1.0) for k in GAIN_KEYS}
    links = parse_links(args.link)
    if vary == "h2p" and links:
        raise UsageError("--link applies to power sweeps only")
    plan = SweepPlan(vary, grid(args.from_db, args.to_db, args.steps), base, links, tuple(names))
    return sweep_csv(run_sweep(plan, args.threads, args.a_max), args.raw)


COLLOCATED = -math.inf
FIG_SIGMA0 = ("lc", "sun_af", "zhang_mf", "he_cf", "upper", "capacity")
FIG_RB_LC = ("rb", "lc", "upper", "capacity")
FIG_SIGMA = ("combined", "rb", "lc", "he_cf", "upper", "capacity")


@dataclass(frozen=True)
class FigureSpec:
    vary: str
    lo: float
    hi: float
    steps: int
    db: dict
    schemes: tuple[str, ...]
    links: dict = field(default_factory=dict)
    gains: dict = field(default_factory=dict)


def _db(pa=0.0, pb=0.0, pr=0.0, sigma2=COLLOCATED):
    return {"pa": pa, "pb": pb, "pr": pr, "sigma2": sigma2}


FIGURES = {
    "fig4": FigureSpec("pa", 0, 40, 81, _db(), ("rb", "lc", "sun_af", "zhang_mf", "he_cf", "he2",
                                                 "vatedka", "upper", "capacity"),
                       {"pb": 0.0, "pr": 0.0}),
    "fig5a": FigureSpec("pr", 0, 30, 61, _db(30, 30), FIG_RB_LC),
    "fig5b": FigureSpec("sigma2", -5, 20, 51, _db(30, 30, 30), FIG_RB_LC),
    "fig5c": FigureSpec("pr", 0, 30, 61, _db(20, 20, sigma2=3), FIG_RB_LC),
    "fig6a": FigureSpec("pa", 0, 20, 41, _db(pb=20, pr=20), FIG_SIGMA0),
    "fig6b": FigureSpec("pb", 0, 20, 41, _db(pa=20, pr=20), FIG_SIGMA0),
    "fig6c": FigureSpec("pr", 0, 30, 61, _db(20, 20), FIG_SIGMA0),
    "fig6d": FigureSpec("pa", 0, 40, 81, _db(), FIG_SIGMA0, {"pb": 10.0, "pr": 0.0}),
    "fig6e": FigureSpec("pa", 0, 40, 81, _db(), FIG_SIGMA0, {"pb": -10.0, "pr": 0.0}),
    "fig6f": FigureSpec("pa", 0, 40, 81, _db(pr=20), FIG_SIGMA0, {"pb": -10.0}),
    "fig7a": FigureSpec("sigma2", -5, 20, 51, _db(30, 30, 30), FIG_SIGMA),
    "fig7b": FigureSpec("pr", 0, 30, 61, _db(20, 20, sigma2=3), FIG_SIGMA),
    "fig9": FigureSpec("h2p", 0.5, 3.0, 51, _db(20, 20, 20), ("eve_rb", "rb", "upper", "capacity"),
                       gains={"h1": 1.0, "h2": 1.0, "h1p": 1.0, "h2p": 1.0, "h3": 1.0}),
}


def figure_plan(name: str, lo=None, hi=None, steps=None) -> SweepPlan:
    if name not in FIGURES:
        raise UsageError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    f = FIGURES[name]
    xs = grid(f.lo if lo is None else lo, f.hi if hi is None else hi, f.steps if steps is None else steps)
    return SweepPlan(f.vary, xs, Point(dict(f.db), dict(f.gains)), dict(f.links), f.schemes)


def cmd_figure(args) -> str:
    plan = figure_plan(args.name, args.from_db, args.to_db, args.steps)
    return sweep_csv(run_sweep(plan, args.threads), args.raw)


# ---------------------------------------------------------------- asymptotics

def cmd_asymptotics(args) -> str:
    try:
        pa_db = [float(s) for s in args.pa_db_list.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --pa-db-list {args.pa_db_list!r}") from None
    if len(pa_db) < 3:
        raise UsageError("--pa-db-list needs at least 3 points")
    if (args.gamma is None) == (args.pr_db is None):
        raise UsageError("give exactly one of --gamma or --pr-db")
    try:
        scheme = asymptotics.canonical_scheme(args.scheme)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    p_a = [db_to_linear(x) for x in pa_db]
    if args.gamma is not None:
        scen = asymptotics.AsymptoticScenario.proportional(args.alpha, args.gamma, p_a)
    else:
        scen = asymptotics.AsymptoticScenario.fixed(args.alpha, db_to_linear(args.pr_db), p_a)
    lo, hi = asymptotics.scenario_bounds(scheme, scen)
    ref = fmt(lo) if lo == hi else f"{fmt(lo)}:{fmt(hi)}"
    g0 = asymptotics.gap_G0(scen)
    g = asymptotics.gap_G(scheme, scen)
    lines = ["P_A_db,G0,G_scheme,table1_reference,residual"]
    for x, p, a, b in zip(pa_db, p_a, g0, g):
        res = asymptotics.interval_residual(b, *asymptotics.point_bounds(scheme, scen, p))
        lines.append(",".join([fmt(x), fmt(a), fmt(b), ref, fmt(res)]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- simulation

def _fraction(text: str) -> Fraction:
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None
    if f <= 0:
        raise UsageError(f"scaling must be positive, got {text}")
    return f


def _chain(args) -> lattice_sim.ScalarLatticeChain:
    return lattice_sim.ScalarLatticeChain(
        args.ms, args.me, args.mb,
        beta=(_fraction(args.beta_a), _fraction(args.beta_b)),
        coeffs=CoefficientPair(args.a1, args.a2),
    )


def cmd_simulate(args) -> str:
    if args.kind == "chain":
        if args.trials < 1:
            raise UsageError("--trials must be >= 1")
        report = lattice_sim.run_chain_trials(_chain(args), args.trials, args.seed, args.mode)
    elif args.kind == "leakage":
        reduce = args.reduce.replace("-", "_")
        report = lattice_sim.leakage_report(_chain(args), reduce)
    else:
        n_dims = args.n_dims
        spec = lattice_sim.BinningCodeSpec.from_rates(args.l, args.entropy, args.rt, args.ro, n_dims, args.seed)
        alphabet = args.inner_alphabet or 2 ** round(n_dims * args.rt)
        report = lattice_sim.binning_report(spec, alphabet, args.trials)
    return dump_json(report)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scfsec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rate", help="every scheme's rate at one configuration (JSON)")
    add_channel_flags(p)
    p.add_argument("--a-max", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("optimize", help="best coefficient pair and scaling ratio (JSON)")
    add_channel_flags(p)
    p.add_argument("--a-max", type=int)
    p.add_argument("--b-rate-cap", help="cap on R_CF^B in bits, or 'jammer' for C(P_B/sigma2)")
    p.add_argument("--eve", action="store_true", help="optimize against the external eavesdropper")
    p.add_argument("--out")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="rates along one parameter (CSV)")
    add_channel_flags(p)
    p.add_argument("--vary", required=True, choices=("pa", "pb", "pr", "sigma2", "h2p"))
    p.add_argument("--from-db", type=float, required=True, help="start (linear for h2p)")
    p.add_argument("--to-db", type=float, required=True, help="end (linear for h2p)")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--schemes", default="lc,upper")
    p.add_argument("--link", action="append", help="tie a power to the swept one, e.g. pb+10")
    p.add_argument("--raw", action="store_true", help="do not clamp rates at 0")
    p.add_argument("--threads", type=int)
    p.add_argument("--a-max", type=int, default=optimizer.DEFAULT_A_MAX)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="reproduce one comparison figure (CSV)")
    p.add_argument("name")
    p.add_argument("--from-db", type=float)
    p.add_argument("--to-db", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--raw", action="store_true")
    p.add_argument("--threads", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("asymptotics", help="high-SNR gap table against the tabulated limits (CSV)")
    p.add_argument("--alpha", type=float, required=True, help="P_B / P_A")
    p.add_argument("--gamma", type=float, help="P_R / P_A")
    p.add_argument("--pr-db", type=float, help="fixed relay power in dB")
    p.add_argument("--pa-db-list", required=True, help="comma-separated P_A values in dB")
    p.add_argument("--scheme", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("simulate", help="exact lattice simulations (JSON)")
    p.set_defaults(func=cmd_simulate)
    kinds = p.add_subparsers(dest="kind", required=True)
    for kind in ("chain", "leakage"):
        k = kinds.add_parser(kind)
        k.add_argument("--ms", type=int, required=True)
        k.add_argument("--me", type=int, default=1)
        k.add_argument("--mb", type=int, required=True)
        k.add_argument("--a1", type=int, default=1)
        k.add_argument("--a2", type=int, default=1)
        k.add_argument("--beta-a", default="1")
        k.add_argument("--beta-b", default="1")
        k.add_argument("--seed", type=int, default=0)
        k.add_argument("--out")
        if kind == "chain":
            k.add_argument("--trials", type=int, default=1000)
            k.add_argument("--mode", choices=(lattice_sim.CHAIN, lattice_sim.PLAIN), default=lattice_sim.CHAIN)
        else:
            k.add_argument("--reduce", choices=("mod-coarse", "none"), default="mod-coarse")
    k = kinds.add_parser("binning")
    k.add_argument("--l", type=int, default=8)
    k.add_argument("--entropy", type=float, default=1.0, help="message entropy in bits/symbol")
    k.add_argument("--rt", type=float, default=2.0, help="inner transmit rate, bits/dim")
    k.add_argument("--ro", type=float, default=1.0, help="leakage rate, bits/dim")
    k.add_argument("--n-dims", type=int, default=1)
    k.add_argument("--inner-alphabet", type=int, help="default 2^(N R_t)")
    k.add_argument("--trials", type=int, default=1000)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--out")
    return parser


def _join_negative_inf(argv: list[str]) -> list[str]:
    # argparse reads a bare "-inf" as an option; glue it to its flag
    out: list[str] = []
    for tok in argv:
        if tok.lower() in ("-inf", "-infinity") and out and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_inf(list(sys.argv[1:] if argv is None else argv)))
    try:
        text = args.func(args)
    except lattice_sim.BudgetExceeded as exc:
        print(f"scfsec: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ConfigError, ValueError, lattice_sim.NestingViolation) as exc:
        print(f"scfsec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(text, getattr(args, "out", None))
    return 0


if __name__ == "__main__":
    sys.exit(main())
