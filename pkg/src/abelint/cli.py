"""Batch command-line interface: JSON in, JSON (or SVG) out.

Exit codes: 0 success, 1 computation failure (tracking, quadrature,
consistency), 2 input error (bad JSON, schema violation, bad parameters).
Every command validates its input against the documented schema before any
numeric work starts, and all output is deterministic for a fixed Config.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from mpmath import mp

from . import serialize as ser
from .config import Config
from .cycles import build_constellation, constellation_svg, \
    real_interval_to_coefficients
from .errors import ComputationError, InputError
from .hyperelliptic import (check_exth, integral_I, integral_I_prime,
                            main4_limit_check, reduce_form,
                            vanishing_criterion)
from .invariant import decompose_v_delta, psi_set, u_d_dimension_table
from .monodromy import divisor_lattice, monodromy
from .numerics import nstr_det
from .ratpoly import RatPoly
from .solver import (classify, solve_moment_problem, verify_vanishing_numeric,
                     z_delta_basis)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON input: {exc}")


def _write(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_from_args(args) -> Config:
    cfg = Config()
    if args.config:
        cfg = ser.config_from_json(_read_json(args.config))
    overrides = {}
    for name in ("precision_bits", "track_step", "collision_tol", "oracle_tol",
                 "degree_bound", "samples", "seed"):
        val = getattr(args, name, None)
        if val is not None:
            overrides[name] = val
    return replace(cfg, **overrides) if overrides else cfg


def _poly_from_input(data) -> RatPoly:
    if isinstance(data, list):
        return ser.poly_from_json(data)
    if isinstance(data, dict) and "polynomial" in data:
        return ser.poly_from_json(data["polynomial"])
    raise InputError("expected a polynomial array or {polynomial: [...]}")


def _require_degree(p: RatPoly, at_least: int):
    if p.is_zero() or p.degree < at_least:
        raise InputError(f"polynomial must have degree >= {at_least}")


def _group_data(p, cfg):
    rep = monodromy(p, cfg)
    lattice = divisor_lattice(rep, p)
    return rep, lattice


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_monodromy(args, cfg):
    p = _poly_from_input(_read_json(args.input))
    _require_degree(p, 2)
    rep = monodromy(p, cfg)
    _write(ser.dumps(ser.monodromy_to_json(rep)), args.output)


def cmd_lattice(args, cfg):
    p = _poly_from_input(_read_json(args.input))
    _require_degree(p, 2)
    rep, lattice = _group_data(p, cfg)
    out = {
        "n": lattice.n,
        "members": list(lattice.members),
        "covers": {str(d): list(lattice.covered_by(d)) for d in lattice.members},
        "witnesses": {str(d): {"left": ser.poly_to_json(dec.left),
                               "right": ser.poly_to_json(dec.right)}
                      for d, dec in sorted(lattice.witness.items())},
        "psi": {str(d): sorted(psi_set(d, lattice).psi) for d in lattice.members},
        "dims": {str(d): k for d, k in sorted(u_d_dimension_table(lattice).items())},
    }
    _write(ser.dumps(out), args.output)


def cmd_analyze_cycle(args, cfg):
    data = _read_json(args.input)
    p = _poly_from_input(data)
    _require_degree(p, 2)
    if "cycle" not in data:
        raise InputError("analyze-cycle needs a cycle")
    v = ser.cycle_from_json(data["cycle"])
    rep, lattice = _group_data(p, cfg)
    if v.n != lattice.n:
        raise InputError("cycle length does not match the polynomial degree")
    _write(ser.dumps(ser.subspaces_to_json(decompose_v_delta(v, lattice))),
           args.output)


def _basis_with_residuals(p, basis, cycles, cfg, rep):
    residuals = []
    with mp.workprec(cfg.precision_bits + 32):
        for q in basis.basis:
            worst = mp.mpf(0)
            for v in cycles:
                chk = verify_vanishing_numeric(p, v, q, config=cfg, rep=rep)
                worst = max(worst, chk.residual)
            residuals.append(worst)
    return ser.basis_to_json(basis, residuals=residuals, prec=cfg.precision_bits)


def cmd_solve(args, cfg):
    data = _read_json(args.input)
    p = _poly_from_input(data)
    _require_degree(p, 2)
    bound = int(data.get("degree_bound", cfg.resolved_degree_bound(p.degree)))
    rep, lattice = _group_data(p, cfg)
    if "cycle" in data:
        v = ser.cycle_from_json(data["cycle"])
        if v.n != lattice.n:
            raise InputError("cycle length does not match the polynomial degree")
        basis = z_delta_basis(p, v, bound, cfg, rep, lattice)
        out = _basis_with_residuals(p, basis, [v], cfg, rep)
        if v.is_zero():
            out["note"] = ("cycle is zero: every polynomial up to the bound "
                           "vanishes trivially")
    elif "intervals" in data:
        system = ser.interval_system_from_json(data["intervals"])
        basis = solve_moment_problem(p, system, bound, cfg, rep, lattice)
        level_cycles = real_interval_to_coefficients(p, system, rep, cfg)
        nonzero = [lc.cycle for lc in level_cycles if not lc.cycle.is_zero()]
        out = _basis_with_residuals(p, basis, nonzero, cfg, rep)
        out["level_cycles"] = ser.level_cycles_to_json(level_cycles,
                                                       cfg.precision_bits)
    else:
        raise InputError("solve needs either a cycle or an interval system")
    _write(ser.dumps(out), args.output)


def cmd_moment_problem(args, cfg):
    data = _read_json(args.input)
    if "intervals" not in data:
        raise InputError("moment-problem needs an interval system")
    cmd_solve(args, cfg)


def cmd_classify(args, cfg):
    data = _read_json(args.input)
    p = _poly_from_input(data)
    _require_degree(p, 2)
    for key in ("cycle", "q"):
        if key not in data:
            raise InputError(f"classify needs {key!r}")
    v = ser.cycle_from_json(data["cycle"])
    q = ser.poly_from_json(data["q"])
    rep, lattice = _group_data(p, cfg)
    report = classify(p, v, q, cfg, rep, lattice)
    _write(ser.dumps(ser.classification_to_json(report, cfg.precision_bits)),
           args.output)


def cmd_verify(args, cfg):
    data = _read_json(args.input)
    p = _poly_from_input(data)
    _require_degree(p, 2)
    for key in ("cycle", "q"):
        if key not in data:
            raise InputError(f"verify needs {key!r}")
    v = ser.cycle_from_json(data["cycle"])
    q = ser.poly_from_json(data["q"])
    rep = monodromy(p, cfg)
    chk = verify_vanishing_numeric(p, v, q, config=cfg, rep=rep)
    out = {"vanishes": chk.vanishes,
           "residual": nstr_det(chk.residual, cfg.precision_bits),
           "tolerance": repr(chk.tolerance),
           "samples": chk.samples}
    _write(ser.dumps(out), args.output)


def cmd_hyper_check(args, cfg):
    data = _read_json(args.input)
    if "f" not in data:
        raise InputError("hyper-check needs the fiber polynomial f")
    f = ser.poly_from_json(data["f"])
    _require_degree(f, 2)
    if "omega" in data:
        omega = ser.one_form_from_json(data["omega"])
        reduced = reduce_form(omega, f)
        k = reduced.k
    elif "k" in data:
        k = ser.poly_from_json(data["k"])
    else:
        raise InputError("hyper-check needs omega or k")
    out = {"k": ser.poly_to_json(k)}
    if "cycle" in data:
        v = ser.cycle_from_json(data["cycle"])
        report = vanishing_criterion(f, k, v, cfg)
        out["criterion"] = {
            "route": "main3",
            "constant": report.constant,
            "constant_value": (ser.frac_to_str(report.constant_value)
                               if report.constant_value is not None else None),
            "residual": nstr_det(report.residual, cfg.precision_bits),
        }
    if "family" in data:
        family = ser.oval_family_from_json(data["family"])
        witness = check_exth(family, k, cfg)
        out["exth"] = None if witness is None else {
            "witness": ser.poly_to_json(witness.r),
            "exact": witness.exact,
            "max_deviation": nstr_det(witness.max_deviation, cfg.precision_bits),
            "samples": witness.samples,
        }
    if "cycle" not in data and "family" not in data:
        raise InputError("hyper-check needs a cycle or an oval family")
    _write(ser.dumps(out), args.output)


def cmd_hyper_integrate(args, cfg):
    data = _read_json(args.input)
    for key in ("family", "k"):
        if key not in data:
            raise InputError(f"hyper-integrate needs {key!r}")
    family = ser.oval_family_from_json(data["family"])
    k = ser.poly_from_json(data["k"])
    with mp.workprec(cfg.precision_bits + 32):
        if "t" in data:
            ts = [mp.mpf(str(data["t"]))]
        else:
            ts = family.t_samples(int(data.get("t_samples", 8)), mp.prec)
        rows = []
        for t in ts:
            rows.append({"t": nstr_det(t, cfg.precision_bits),
                         "I": nstr_det(integral_I(family, k, t, cfg),
                                       cfg.precision_bits),
                         "I_prime": nstr_det(integral_I_prime(family, k, t, cfg),
                                             cfg.precision_bits)})
    _write(ser.dumps({"values": rows}), args.output)


def cmd_main4_check(args, cfg):
    data = _read_json(args.input)
    for key in ("f", "k", "combo", "z_samples", "critical_point"):
        if key not in data:
            raise InputError(f"main4-check needs {key!r}")
    f = ser.poly_from_json(data["f"])
    _require_degree(f, 2)
    k = ser.poly_from_json(data["k"])
    combo = ser.combo_from_json(data["combo"])
    with mp.workprec(cfg.precision_bits + 32):
        zs = [mp.mpf(str(z)) for z in data["z_samples"]]
        crit = ser.complex_from_json(data["critical_point"], cfg.precision_bits)
        report = main4_limit_check(f, k, combo, zs, crit, cfg)
        rows = [{"z": nstr_det(row["z"], cfg.precision_bits),
                 "limit": [nstr_det(mp.re(row["limit"]), cfg.precision_bits),
                           nstr_det(mp.im(row["limit"]), cfg.precision_bits)],
                 "formula": [nstr_det(mp.re(row["formula"]), cfg.precision_bits),
                             nstr_det(mp.im(row["formula"]), cfg.precision_bits)],
                 "relative_deviation": nstr_det(row["relative_deviation"],
                                                cfg.precision_bits)}
                for row in report.per_sample]
        out = {"per_sample": rows,
               "max_relative_deviation": nstr_det(report.max_relative_deviation,
                                                  cfg.precision_bits)}
    _write(ser.dumps(out), args.output)


def cmd_plot_constellation(args, cfg):
    p = _poly_from_input(_read_json(args.input))
    _require_degree(p, 2)
    rep = monodromy(p, cfg)
    con = build_constellation(p, rep, cfg)
    _write(constellation_svg(con) + "\n", args.output)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

_COMMANDS = {
    "monodromy": cmd_monodromy,
    "lattice": cmd_lattice,
    "analyze-cycle": cmd_analyze_cycle,
    "solve": cmd_solve,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "moment-problem": cmd_moment_problem,
    "hyper-check": cmd_hyper_check,
    "hyper-integrate": cmd_hyper_integrate,
    "main4-check": cmd_main4_check,
    "plot-constellation": cmd_plot_constellation,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abelint",
        description="Vanishing of zero-dimensional and hyperelliptic "
                    "Abelian integrals: exact solvers and numeric oracles.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        cp = sub.add_parser(name)
        cp.add_argument("input", help="input JSON file, or - for stdin")
        cp.add_argument("-o", "--output", default=None,
                        help="output file (default: stdout)")
        cp.add_argument("--config", default=None,
                        help="JSON file with Config overrides")
        cp.add_argument("--precision-bits", dest="precision_bits", type=int)
        cp.add_argument("--track-step", dest="track_step", type=float)
        cp.add_argument("--collision-tol", dest="collision_tol", type=float)
        cp.add_argument("--oracle-tol", dest="oracle_tol", type=float)
        cp.add_argument("--degree-bound", dest="degree_bound", type=int)
        cp.add_argument("--samples", dest="samples", type=int)
        cp.add_argument("--seed", dest="seed", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        _COMMANDS[args.command](args, cfg)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
