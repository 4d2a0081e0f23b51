"""Command-line front end.

Subcommands ``energy``, ``nernst``, ``asym-compare`` and ``relax`` print CSV
(header row first, 12 significant digits) on standard output. Input is SI
(metres, kelvin, s^-1), material files in eV or rad/s.

Exit codes: 0 success, 2 bad flags or inputs, 3 convergence failure.

The Lifshitz formula assumes plates of area S with a << sqrt(S); there is no
area parameter, so this condition is the user's responsibility.
"""

import argparse
import csv
import math
import sys

import numpy as np

from . import checks
from .asymptotics import (COEFFICIENT_SETS, entropy_expansion,
                          free_energy_expansion)
from .constants import C, EV
from .dielectric import Plasma
from .errors import ConvergenceError, DomainError
from .lifshitz import (DimensionlessFrame, EngineConfig, effective_temperature, entropy, free_energy,
                       matsubara_sum, prefactor, zero_t_energy)
from .materials import MaterialError, load_material
from .reflection import Geometry
from .relaxation import RelaxationScenario, surface_charge, total_field

EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE = 0, 2, 3
DEFAULT_MATERIAL = "au_sample"
NERNST_SLOPE_TOL = 0.05

SEED_SUITES = {
    "energy": ("dielectric", "reflection", "lifshitz", "materials"),
    "nernst": ("lifshitz", "asymptotics"),
    "asym-compare": ("asymptotics", "specialfn"),
    "relax": ("relaxation",),
}


class UsageError(Exception):
    pass


def fmt(v):
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    return f"{float(v):.12g}"


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _emit(out, header, rows):
    w = _writer(out)
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])


def _positive(name):
    def conv(s):
        try:
            v = float(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {s!r}") from None
        if not v > 0 or not math.isfinite(v):
            raise argparse.ArgumentTypeError(f"{name} must be positive and finite, got {s}")
        return v
    return conv


def _tol(s):
    v = _positive("--tol")(s)
    if not v < 1e-2:
        raise argparse.ArgumentTypeError("--tol must be below 1e-2")
    return v


# ---------------------------------------------------------------------------
# shared model setup


def _add_model_flags(p, models=("drude", "plasma", "gplasma", "skin"), default="plasma"):
    p.add_argument("--model", choices=models, default=default)
    p.add_argument("--material", help="material file path or name (searched in $CASIMIR_MATERIALS_DIR)")
    p.add_argument("--omega-p", type=_positive("--omega-p"), help="override plasma frequency (eV)")
    p.add_argument("--gamma", type=float, help="override relaxation parameter (eV)")


def _add_engine_flags(p, tol=1e-9):
    p.add_argument("--tol", type=_tol, default=tol, help="relative tolerance of free energies")
    p.add_argument("--threads", type=int, default=1, help="worker threads of the engine")
    p.add_argument("--seed-check", action="store_true", help="run invariant checks and exit")


def _add_geometry_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--d", type=_positive("--d"), help="plate thickness (m)")
    g.add_argument("--semispace", action="store_true", help="semi-infinite plates (default)")


def _model(args):
    if args.model == "gplasma" and not args.material:
        raise UsageError("material file required for --model gplasma")
    try:
        rec = load_material(args.material or DEFAULT_MATERIAL)
    except (FileNotFoundError, MaterialError) as exc:
        raise UsageError(str(exc)) from None
    if args.omega_p is not None or args.gamma is not None:
        from dataclasses import replace
        kw = {}
        if args.omega_p is not None:
            kw["omega_p"] = args.omega_p * EV
        if args.gamma is not None:
            kw["gamma"] = args.gamma * EV
        rec = replace(rec, **kw)
    return rec.model(args.model), rec


def _config(args):
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    return EngineConfig(rel_tol=args.tol, threads=args.threads)


def _geometry(args, a):
    d = getattr(args, "d", None)
    return Geometry(a, math.inf if d is None else d)


def _frame(model, a, T):
    return DimensionlessFrame.for_model(model, a, T)


# ---------------------------------------------------------------------------
# subcommands


def _sweep_values(args, fixed, axis_name):
    if args.sweep is None:
        return [fixed]
    axis, start, stop, n, spacing = args.sweep
    if axis != axis_name:
        return [fixed]
    if spacing == "log":
        return np.geomspace(start, stop, n).tolist()
    return np.linspace(start, stop, n).tolist()


def _parse_sweep(s):
    parts = s.split(":")
    if len(parts) not in (4, 5):
        raise argparse.ArgumentTypeError("--sweep needs axis:start:stop:points[:linear|log]")
    axis = {"a": "separation", "separation": "separation", "T": "temperature",
            "temperature": "temperature"}.get(parts[0])
    if axis is None:
        raise argparse.ArgumentTypeError("sweep axis must be separation or temperature")
    try:
        start, stop, n = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError:
        raise argparse.ArgumentTypeError("bad sweep numbers") from None
    spacing = parts[4] if len(parts) == 5 else "linear"
    if spacing not in ("linear", "log") or not start < stop or n < 2:
        raise argparse.ArgumentTypeError("sweep needs start < stop, points >= 2, spacing linear|log")
    if start < 0 or (axis == "separation" and start <= 0) or (spacing == "log" and start <= 0):
        raise argparse.ArgumentTypeError("sweep start out of range")
    return axis, start, stop, n, spacing


def cmd_energy(args, out):
    model, _ = _model(args)
    cfg = _config(args)
    rows = []
    for a in _sweep_values(args, args.a, "separation"):
        for T in _sweep_values(args, args.T, "temperature"):
            res = free_energy(model, _geometry(args, a), T, cfg)
            fr = res.frame
            rows.append([a, T, fr.alpha if fr.alpha is not None else math.nan, fr.tau,
                         res.zero_t_energy, res.thermal_correction, res.free_energy,
                         res.terms_used, res.tail_estimate, res.achieved_tol])
    _emit(out, ["a_m", "T_K", "alpha", "tau", "E_Jm2", "dF_Jm2", "F_Jm2", "terms", "tail", "tol"], rows)
    return EXIT_OK


def loglog_slope(x, y):
    x, y = np.asarray(x, float), np.asarray(y, float)
    return float(np.polyfit(np.log(x), np.log(np.abs(y)), 1)[0])


def nernst_verdict(S, slope):
    """``NERNST-OK``, ``NERNST-VIOLATED`` or ``NERNST-INCONCLUSIVE`` from an entropy sweep."""
    S = np.asarray(S, dtype=float)
    if S[0] < 0:
        return "NERNST-VIOLATED"
    if np.all(S > 0) and abs(slope - 2.0) <= NERNST_SLOPE_TOL:
        return "NERNST-OK"
    return "NERNST-INCONCLUSIVE"


def cmd_nernst(args, out):
    model, rec = _model(args)
    cfg = _config(args)
    geom = _geometry(args, args.a)
    t_eff = effective_temperature(args.a)
    taus = np.geomspace(args.tau_min, args.tau_max, args.points)
    Ts = taus * t_eff / (2 * math.pi)
    S = [entropy(model, geom, T, cfg).entropy for T in Ts]
    osc = rec.oscillators if args.model == "gplasma" else None
    S_exp = []
    for T in Ts:
        fr = _frame(model, args.a, T)
        plasma_like = args.model in ("plasma", "gplasma")
        S_exp.append(entropy_expansion(fr, args.a, osc) if plasma_like else None)
    # slope over the low-temperature half, where the T^2 law dominates
    n_fit = max(2, (len(Ts) + 1) // 2)
    slope = loglog_slope(Ts[:n_fit], S[:n_fit]) if np.all(np.asarray(S[:n_fit]) != 0) else math.nan
    local = [None] + [math.log(abs(S[i] / S[i - 1])) / math.log(Ts[i] / Ts[i - 1])
                          for i in range(1, len(Ts))]
    rows = [[T, s, se, sl] for T, s, se, sl in zip(Ts, S, S_exp, local)]
    _emit(out, ["T", "S_direct", "S_expansion", "slope_estimate"], rows)
    print(f"# fitted log-log slope (lowest {n_fit} temperatures): {fmt(slope)}", file=out)
    print(nernst_verdict(S, slope), file=out)
    return EXIT_OK


def cmd_asym_compare(args, out):
    if args.model not in ("plasma", "gplasma"):
        raise UsageError("asym-compare supports plasma and gplasma")
    model, rec = _model(args)
    if args.alpha is not None:
        wp = C / (2 * args.a) / args.alpha
        model = Plasma(wp) if args.model == "plasma" else type(model)(wp, model.oscillators)
    osc = model.oscillators if args.model == "gplasma" else None
    cfg = _config(args)
    geom = _geometry(args, args.a)
    coeffs = COEFFICIENT_SETS[args.coefficients]
    pref = prefactor(args.a)
    e0 = zero_t_energy(model, geom, cfg)
    e_int = e0 / pref
    t_eff = effective_temperature(args.a)
    taus = np.geomspace(args.tau_min, args.tau_max, args.points)
    rows, absres = [], []
    for tau in taus:
        T = tau * t_eff / (2 * math.pi)
        ms = matsubara_sum(model, geom, tau, cfg)
        if ms.tail > cfg.rel_tol * abs(ms.value):
            raise ConvergenceError("Matsubara sum tolerance not reached", achieved_tol=ms.tail / abs(ms.value))
        f_direct = pref * ms.value
        fr = _frame(model, args.a, T)
        br = free_energy_expansion(fr, args.a, osc, e0, coeffs)
        dF = pref * (ms.value - e_int)
        r = abs(f_direct - br.total)
        absres.append(r)
        rows.append([tau, f_direct, br.total, r / abs(dF), "extrapolated" if br.extrapolated else ""])
    order = loglog_slope(taus, absres) if all(r > 0 for r in absres) else math.nan
    rows = [r[:4] + [order] + r[4:] for r in rows]
    _emit(out, ["tau", "F_direct", "F_asym", "residual", "fitted_order", "flag"], rows)
    return EXIT_OK


def cmd_relax(args, out):
    if args.sigma0 is not None and args.rate is not None:
        raise UsageError("give --sigma0 or --rate, not both")
    sigma0 = args.sigma0 if args.sigma0 is not None else args.rate / (4 * math.pi)
    if args.t_min >= args.t_max:
        raise UsageError("--t-min must be below --t-max")
    ts = np.linspace(args.t_min, args.t_max, args.points)
    sc = RelaxationScenario(sigma0, 1.0, ts)
    rho = np.atleast_1d(surface_charge(sc)) * 4 * math.pi
    field = np.atleast_1d(total_field(sc))
    _emit(out, ["t_s", "rho_ratio", "field_ratio"], zip(ts, rho, field))
    return EXIT_OK


COMMANDS = {"energy": cmd_energy, "nernst": cmd_nernst, "asym-compare": cmd_asym_compare,
            "relax": cmd_relax}


def build_parser():
    p = argparse.ArgumentParser(prog="casimir-thermal", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("energy", help="free energy, zero-temperature energy and thermal correction")
    _add_model_flags(e)
    e.add_argument("--a", type=_positive("--a"), default=1e-6, help="separation (m)")
    e.add_argument("--T", type=float, default=300.0, help="temperature (K)")
    e.add_argument("--sweep", type=_parse_sweep, help="axis:start:stop:points[:linear|log]")
    _add_geometry_flags(e)
    _add_engine_flags(e)

    n = sub.add_parser("nernst", help="entropy sweep at low temperature and Nernst verdict")
    _add_model_flags(n, default="gplasma")
    n.add_argument("--a", type=_positive("--a"), default=1e-6)
    n.add_argument("--tau-min", type=_positive("--tau-min"), default=1e-3)
    n.add_argument("--tau-max", type=_positive("--tau-max"), default=1e-1)
    n.add_argument("--points", type=int, default=5)
    _add_geometry_flags(n)
    _add_engine_flags(n)

    s = sub.add_parser("asym-compare", help="direct free energy against the low-temperature expansion")
    _add_model_flags(s, models=("plasma", "gplasma"))
    s.add_argument("--a", type=_positive("--a"), default=1e-6)
    s.add_argument("--alpha", type=_positive("--alpha"), help="set omega_p = omega_c/alpha")
    s.add_argument("--tau-min", type=_positive("--tau-min"), default=0.02)
    s.add_argument("--tau-max", type=_positive("--tau-max"), default=0.2)
    s.add_argument("--points", type=int, default=6)
    s.add_argument("--coefficients", choices=sorted(COEFFICIENT_SETS), default="published")
    _add_geometry_flags(s)
    _add_engine_flags(s)

    r = sub.add_parser("relax", help="charge accumulation on a finite plate")
    r.add_argument("--sigma0", type=_positive("--sigma0"), help="conductivity (s^-1, Gaussian)")
    r.add_argument("--rate", type=_positive("--rate"), default=None, help="4 pi sigma0 (s^-1)")
    r.add_argument("--t-min", type=float, default=0.0)
    r.add_argument("--t-max", type=_positive("--t-max"), default=2e-18)
    r.add_argument("--points", type=int, default=21)
    r.add_argument("--seed-check", action="store_true")
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "relax" and args.sigma0 is None and args.rate is None:
        args.rate = 3.5e18
    try:
        if args.seed_check:
            results = checks.run(SEED_SUITES[args.command])
            for name, ok in results:
                print(f"seed-check {name}: {'ok' if ok else 'FAIL'}", file=out)
            return EXIT_OK if all(ok for _, ok in results) else 1
        for flag in ("points",):
            if getattr(args, flag, 2) < 2:
                raise UsageError(f"--{flag} must be >= 2")
        if getattr(args, "tau_min", 0) >= getattr(args, "tau_max", 1):
            raise UsageError("--tau-min must be below --tau-max")
        if getattr(args, "T", 0) < 0:
            raise UsageError("--T must be >= 0")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"{parser.prog}: convergence failure: {exc} (achieved_tol={exc.achieved_tol:.3g})",
              file=sys.stderr)
        return EXIT_CONVERGENCE
    except DomainError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
