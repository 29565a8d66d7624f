"""Command-line front end: golden tables, parameter sweeps, verification.

Subcommands:

- ``tables``        write the five reference tables as CSV/JSON files
- ``sweep``         evaluate one quantity over a parameter grid
- ``verify``        check the analytic layer against the density-matrix oracle
- ``distill-mixed`` one (or several iterated) two-way distillation rounds
- ``distill-pure``  pure-state filtering fidelity
- ``povm-purify``   purified-measurement coefficients and fidelity

All numeric output uses 12 significant digits with '.' as the decimal
separator and Unix newlines, so identical inputs give byte-identical
output. JSON output is one record per line, each carrying a
``schema_version`` field; records re-serialize to the same bytes after a
parse/format round trip.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import distill_mixed as dm
from . import distill_pure as dp
from . import noise, oracle

SCHEMA_VERSION = 1

#: Canonical column order: inputs first, outputs last.
FIELD_ORDER = [
    "quantity", "p", "pA", "pB", "epsilon", "n", "m", "F", "theta", "draw",
    "round", "r0", "r1", "value", "value_3dp", "p_succ",
]


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _ordered_fields(records: list[dict]) -> list[str]:
    present = set()
    for rec in records:
        present.update(rec.keys())
    return [f for f in FIELD_ORDER if f in present]


def emit_records(records: list[dict], fmt: str, out) -> None:
    """Write records as CSV (fixed column order) or JSON lines."""
    if fmt == "json":
        for rec in records:
            rec = dict(rec)
            rec["schema_version"] = SCHEMA_VERSION
            out.write(json.dumps(rec, sort_keys=True) + "\n")
        return
    fields = _ordered_fields(records)
    out.write(",".join(fields) + "\n")
    for rec in records:
        out.write(",".join(_fmt(rec[f]) if f in rec else "" for f in fields) + "\n")


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="\n"), True


def _parse_float_axis(spec: str, name: str, parser) -> list[float]:
    """Parse 'a,b,c' or 'start:stop:count' into a list of floats."""
    try:
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise ValueError
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError
            return [float(v) for v in np.linspace(start, stop, count)]
        vals = [float(v) for v in spec.split(",") if v != ""]
        if not vals:
            raise ValueError
        return vals
    except ValueError:
        parser.error(f"cannot parse {name} axis {spec!r}; use 'a,b,c' or 'start:stop:count'")


def _parse_int_axis(spec: str, name: str, parser) -> list[int]:
    """Parse 'a,b,c' or 'lo:hi' (inclusive) into a list of ints."""
    try:
        if ":" in spec:
            lo, hi = (int(v) for v in spec.split(":"))
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        vals = [int(v) for v in spec.split(",") if v != ""]
        if not vals:
            raise ValueError
        return vals
    except ValueError:
        parser.error(f"cannot parse {name} axis {spec!r}; use 'a,b,c' or 'lo:hi'")


def _parse_rates(spec: str, parser) -> list[float]:
    try:
        rates = [float(v) for v in spec.split(",") if v != ""]
        if not rates:
            raise ValueError
        return rates
    except ValueError:
        parser.error(f"cannot parse rate list {spec!r}")


# ---------------------------------------------------------------------------
# tables

TABLE_SPECS = [
    ("lower_bound_p02", 0.2, [1, 2, 3, 4], [1, 2, 3]),
    ("lower_bound_p01", 0.1, [1, 2, 3, 4], [1, 2]),
]


def table_records() -> list[tuple[str, list[dict]]]:
    """The five reference tables as (name, records) pairs."""
    out = []
    for name, p, ns, ms in TABLE_SPECS:
        recs = []
        for n in ns:
            for m in ms:
                val = dm.lower_bound(dm.parity_weights([p] * n, [p] * m))
                recs.append({
                    "quantity": "lower_bound", "p": p, "epsilon": 0.0,
                    "n": n, "m": m, "value": val, "value_3dp": round(val, 3),
                })
        out.append((name, recs))

    recs = []
    for n in [1, 2, 3, 4]:
        val = dm.lower_bound(dm.parity_weights_gate_noisy(0.1, 0.1, n, n))
        recs.append({
            "quantity": "lower_bound", "p": 0.1, "epsilon": 0.1,
            "n": n, "m": n, "value": val, "value_3dp": round(val, 3),
        })
    out.append(("lower_bound_gate_noise", recs))

    theta = float(np.pi / 16)
    for name, eps in [("pure_fidelity_noiseless", 0.0), ("pure_fidelity_gate_noise", 0.05)]:
        recs = []
        for n in [1, 2, 3, 4]:
            res = dp.pure_filter_fidelity(theta, noise.purified_coeffs_gate_noisy(0.1, eps, n))
            recs.append({
                "quantity": "pure_fidelity", "p": 0.1, "epsilon": eps,
                "n": n, "theta": theta,
                "value": res.fidelity_out, "value_3dp": round(res.fidelity_out, 3),
                "p_succ": res.p_succ,
            })
        out.append((name, recs))
    return out


def cmd_tables(args) -> int:
    outdir = Path(args.out if args.out not in (None, "-") else ".")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        ext = "json" if args.format == "json" else "csv"
        for name, recs in table_records():
            path = outdir / f"{name}.{ext}"
            with open(path, "w", newline="\n") as fh:
                emit_records(recs, args.format, fh)
            print(f"wrote {path}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# sweep

QUANTITIES = [
    "povm_fidelity", "mixed_fidelity_map", "lower_bound",
    "lower_bound_limit", "pure_fidelity", "pure_fidelity_limit",
]


def _sweep_records(args, parser) -> list[dict]:
    q = args.quantity
    p_axis = _parse_float_axis(args.p, "p", parser) if args.p else None
    eps_axis = _parse_float_axis(args.epsilon, "epsilon", parser) if args.epsilon else [0.0]
    n_axis = _parse_int_axis(args.n, "n", parser) if args.n else [1]
    m_axis = _parse_int_axis(args.m, "m", parser) if args.m else [1]
    f_axis = _parse_float_axis(args.F, "F", parser) if args.F else None
    if args.theta and args.theta_frac_pi:
        parser.error("give --theta or --theta-frac-pi, not both")
    theta_axis = None
    if args.theta:
        theta_axis = _parse_float_axis(args.theta, "theta", parser)
    elif args.theta_frac_pi:
        theta_axis = [x * np.pi for x in _parse_float_axis(args.theta_frac_pi, "theta-frac-pi", parser)]

    het = args.het_band is not None
    if (het or args.seed is not None) and q != "mixed_fidelity_map":
        parser.error("--het-band/--seed only apply to the mixed_fidelity_map quantity")
    if not het and p_axis is None:
        parser.error(f"quantity {q} needs a --p axis")
    if q == "mixed_fidelity_map" and f_axis is None:
        parser.error("mixed_fidelity_map needs an --F axis")
    if q in ("pure_fidelity", "pure_fidelity_limit") and theta_axis is None:
        parser.error(f"{q} needs a --theta or --theta-frac-pi axis")

    records: list[dict] = []
    try:
        if q == "povm_fidelity":
            for p in p_axis:
                for eps in eps_axis:
                    for n in n_axis:
                        c = noise.purified_coeffs_gate_noisy(p, eps, n)
                        records.append({"quantity": q, "p": p, "epsilon": eps, "n": n,
                                        "value": c.fidelity, "p_succ": c.acceptance})
        elif q == "lower_bound":
            for p in p_axis:
                for eps in eps_axis:
                    for n in n_axis:
                        for m in m_axis:
                            val = dm.lower_bound(dm.parity_weights_gate_noisy(p, eps, n, m))
                            records.append({"quantity": q, "p": p, "epsilon": eps,
                                            "n": n, "m": m, "value": val})
        elif q == "lower_bound_limit":
            for p in p_axis:
                for eps in eps_axis:
                    records.append({"quantity": q, "p": p, "epsilon": eps,
                                    "value": dm.lower_bound_limit(p, eps)})
        elif q == "pure_fidelity":
            for p in p_axis:
                for eps in eps_axis:
                    for n in n_axis:
                        for theta in theta_axis:
                            res = dp.pure_filter_fidelity(
                                theta, noise.purified_coeffs_gate_noisy(p, eps, n))
                            records.append({"quantity": q, "p": p, "epsilon": eps, "n": n,
                                            "theta": theta, "value": res.fidelity_out,
                                            "p_succ": res.p_succ})
        elif q == "pure_fidelity_limit":
            for p in p_axis:
                for eps in eps_axis:
                    for theta in theta_axis:
                        records.append({"quantity": q, "p": p, "epsilon": eps, "theta": theta,
                                        "value": dp.pure_filter_fidelity_limit(theta, p, eps)})
        elif q == "mixed_fidelity_map" and not het:
            for p in p_axis:
                for eps in eps_axis:
                    for n in n_axis:
                        for m in m_axis:
                            w = dm.parity_weights_gate_noisy(p, eps, n, m)
                            for f in f_axis:
                                res = dm.distill_map(f, w)
                                records.append({"quantity": q, "p": p, "epsilon": eps,
                                                "n": n, "m": m, "F": f,
                                                "value": res.fidelity_out,
                                                "p_succ": res.p_succ})
        else:  # mixed_fidelity_map with random heterogeneous rates
            lo, hi = args.het_band
            rng = np.random.RandomState(args.seed if args.seed is not None else 0)
            for eps in eps_axis:
                for n in n_axis:
                    for m in m_axis:
                        for f in f_axis:
                            for draw in range(args.draws):
                                pa = rng.uniform(lo, hi, n)
                                pb = rng.uniform(lo, hi, m)
                                w = dm.parity_weights_general(pa, pb, eps)
                                res = dm.distill_map(f, w)
                                records.append({
                                    "quantity": q,
                                    "pA": ";".join(f"{x:.12g}" for x in pa),
                                    "pB": ";".join(f"{x:.12g}" for x in pb),
                                    "epsilon": eps, "n": n, "m": m, "F": f,
                                    "draw": draw, "value": res.fidelity_out,
                                    "p_succ": res.p_succ,
                                })
    except ValueError as exc:
        parser.error(str(exc))
    return records


def cmd_sweep(args, parser) -> int:
    records = _sweep_records(args, parser)
    out, close = _open_out(args.out)
    try:
        emit_records(records, args.format, out)
    finally:
        if close:
            out.close()
    return 0


# ---------------------------------------------------------------------------
# verify

VERIFY_TOL = 1e-10


def run_verification(max_n: int = 3, seed: int = 7, draws: int = 20,
                     full: bool = False, corrupt: float = 0.0) -> dict[str, float]:
    """Max |analytic - oracle| per quantity over a seeded random grid.

    ``corrupt`` adds a bias to one analytic value; it exists so the
    failure path of the CLI can be exercised deterministically.
    """
    rng = np.random.RandomState(seed)
    eps_grid = [0.0, 0.05, 0.1]
    dev = {k: 0.0 for k in [
        "povm_coeffs", "povm_offdiag",
        "mixed_fidelity", "mixed_p_succ", "mixed_state",
        "pure_fidelity", "pure_p_succ", "pure_state",
    ]}

    for _ in range(draws):
        f = float(rng.uniform(0.26, 0.99))
        theta = float(rng.uniform(0.05, np.pi / 4 - 0.01))
        for eps in eps_grid:
            for n in range(1, max_n + 1):
                p_list = list(rng.uniform(0.02, 0.3, n))
                c = noise.purified_coeffs_general(p_list, eps)
                ep = oracle.oracle_effective_povm(p_list, eps, n)
                dev["povm_coeffs"] = max(dev["povm_coeffs"],
                                         abs(ep.r0 - c.r0), abs(ep.r1 - c.r1))
                dev["povm_offdiag"] = max(dev["povm_offdiag"],
                                          float(np.abs(ep.q0 - np.diag(np.diag(ep.q0))).max()),
                                          float(np.abs(ep.q1 - np.diag(np.diag(ep.q1))).max()))

                m = int(rng.randint(1, max_n + 1))
                q_list = list(rng.uniform(0.02, 0.3, m))
                w = dm.parity_weights_general(p_list, q_list, eps)
                res = dm.distill_map(f, w)
                orc = oracle.oracle_distill_mixed(f, p_list, q_list, eps)
                dev["mixed_fidelity"] = max(
                    dev["mixed_fidelity"],
                    abs(res.fidelity_out + corrupt - orc.fidelity_out))
                dev["mixed_p_succ"] = max(dev["mixed_p_succ"], abs(res.p_succ - orc.p_succ))
                dev["mixed_state"] = max(
                    dev["mixed_state"],
                    float(np.abs(dm.post_state_unnormalized(f, w)
                                 - oracle.oracle_mixed_post_state(f, p_list, q_list, eps)).max()))

                p_hom = float(rng.uniform(0.02, 0.3))
                ch = noise.purified_coeffs_gate_noisy(p_hom, eps, n)
                res_p = dp.pure_filter_fidelity(theta, ch)
                orc_p = oracle.oracle_distill_pure(theta, p_hom, eps, n)
                dev["pure_fidelity"] = max(dev["pure_fidelity"],
                                           abs(res_p.fidelity_out - orc_p.fidelity_out))
                dev["pure_p_succ"] = max(dev["pure_p_succ"], abs(res_p.p_succ - orc_p.p_succ))
                dev["pure_state"] = max(
                    dev["pure_state"],
                    float(np.abs(dp.pure_post_state_unnormalized(theta, ch)
                                 - oracle.oracle_pure_post_state(theta, p_hom, eps, n)).max()))

    if full:
        dev["direct_register"] = 0.0
        for (n, m, eps) in [(2, 2, 0.0), (2, 2, 0.1), (3, 3, 0.05)]:
            f = float(rng.uniform(0.5, 0.95))
            p_a = list(rng.uniform(0.02, 0.3, n))
            p_b = list(rng.uniform(0.02, 0.3, m))
            direct = oracle.oracle_mixed_post_state_direct(f, p_a, p_b, eps)
            w = dm.parity_weights_general(p_a, p_b, eps)
            dev["direct_register"] = max(
                dev["direct_register"],
                float(np.abs(direct - dm.post_state_unnormalized(f, w)).max()))
    return dev


def cmd_verify(args) -> int:
    dev = run_verification(max_n=args.max_n, seed=args.seed, draws=args.draws,
                           full=args.full, corrupt=1e-6 if args.self_test_corrupt else 0.0)
    ok = True
    for name in sorted(dev):
        status = "ok" if dev[name] < VERIFY_TOL else "FAIL"
        if dev[name] >= VERIFY_TOL:
            ok = False
        print(f"{name:<20s} max|dev| = {dev[name]:.3e}  [{status}]")
    print(f"verification {'passed' if ok else 'FAILED'} "
          f"(tolerance {VERIFY_TOL:.0e}, max_n={args.max_n}, seed={args.seed}, draws={args.draws})")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# single-shot protocol commands

def cmd_distill_mixed(args, parser) -> int:
    if args.pA or args.pB:
        if not (args.pA and args.pB):
            parser.error("--pA and --pB must be given together")
        if args.p is not None:
            parser.error("give either --p or --pA/--pB, not both")
        p_a, p_b = _parse_rates(args.pA, parser), _parse_rates(args.pB, parser)
    else:
        if args.p is None:
            parser.error("distill-mixed needs --p or --pA/--pB")
        p_a, p_b = [args.p] * args.n, [args.p] * args.m
    try:
        weights = dm.parity_weights_general(p_a, p_b, args.epsilon)
    except ValueError as exc:
        parser.error(str(exc))
    records = []
    f = args.F
    for rnd in range(1, args.rounds + 1):
        res = dm.distill_map(f, weights)
        records.append({
            "quantity": "mixed_fidelity_map",
            "pA": ";".join(f"{x:.12g}" for x in p_a),
            "pB": ";".join(f"{x:.12g}" for x in p_b),
            "epsilon": args.epsilon, "n": len(p_a), "m": len(p_b),
            "F": f, "round": rnd, "value": res.fidelity_out, "p_succ": res.p_succ,
        })
        f = res.fidelity_out
    out, close = _open_out(args.out)
    try:
        emit_records(records, args.format, out)
    finally:
        if close:
            out.close()
    return 0


def _resolve_theta(args, parser) -> float:
    if (args.theta is None) == (args.theta_frac_pi is None):
        parser.error("give exactly one of --theta or --theta-frac-pi")
    return args.theta if args.theta is not None else args.theta_frac_pi * np.pi


def cmd_distill_pure(args, parser) -> int:
    theta = _resolve_theta(args, parser)
    try:
        res = dp.pure_filter_fidelity(theta, noise.purified_coeffs_gate_noisy(
            args.p, args.epsilon, args.n))
    except ValueError as exc:
        parser.error(str(exc))
    records = [{
        "quantity": "pure_fidelity", "p": args.p, "epsilon": args.epsilon,
        "n": args.n, "theta": theta, "value": res.fidelity_out, "p_succ": res.p_succ,
    }]
    out, close = _open_out(args.out)
    try:
        emit_records(records, args.format, out)
    finally:
        if close:
            out.close()
    return 0


def cmd_povm_purify(args, parser) -> int:
    if (args.pList is None) == (args.p is None):
        parser.error("give exactly one of --p or --pList")
    try:
        if args.pList is not None:
            p_list = _parse_rates(args.pList, parser)
            c = noise.purified_coeffs_general(p_list, args.epsilon)
            p_field = ";".join(f"{x:.12g}" for x in p_list)
        else:
            c = noise.purified_coeffs_gate_noisy(args.p, args.epsilon, args.n)
            p_field = args.p
    except ValueError as exc:
        parser.error(str(exc))
    records = [{
        "quantity": "povm_fidelity", "p": p_field, "epsilon": args.epsilon, "n": c.n,
        "r0": c.r0, "r1": c.r1, "value": c.fidelity, "p_succ": c.acceptance,
    }]
    out, close = _open_out(args.out)
    try:
        emit_records(records, args.format, out)
    finally:
        if close:
            out.close()
    return 0


# ---------------------------------------------------------------------------

def _add_io_args(sub):
    sub.add_argument("--format", choices=["csv", "json"], default="csv")
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="output file (default stdout); a directory for 'tables'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entdistill",
        description="Noisy-measurement purification and entanglement distillation.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("tables", help="write the five reference tables")
    _add_io_args(sub)

    sub = subs.add_parser("sweep", help="evaluate a quantity over a parameter grid")
    sub.add_argument("--quantity", choices=QUANTITIES, required=True)
    sub.add_argument("--p", help="axis: 'a,b,c' or 'start:stop:count'")
    sub.add_argument("--epsilon", help="axis (default 0)")
    sub.add_argument("--n", help="axis: 'a,b,c' or 'lo:hi' (default 1)")
    sub.add_argument("--m", help="axis (default 1)")
    sub.add_argument("--F", help="axis of input singlet fractions")
    sub.add_argument("--theta", help="axis of Schmidt angles in radians")
    sub.add_argument("--theta-frac-pi", dest="theta_frac_pi",
                     help="axis of Schmidt angles as multiples of pi")
    sub.add_argument("--het-band", dest="het_band", nargs=2, type=float,
                     metavar=("LO", "HI"),
                     help="draw per-measurement rates uniformly from (LO, HI)")
    sub.add_argument("--draws", type=int, default=20,
                     help="random draws per grid point in --het-band mode")
    sub.add_argument("--seed", type=int, default=None,
                     help="seed for --het-band mode")
    _add_io_args(sub)

    sub = subs.add_parser("verify", help="analytic layer vs density-matrix oracle")
    sub.add_argument("--max-n", dest="max_n", type=int, default=3, choices=[1, 2, 3, 4])
    sub.add_argument("--seed", type=int, default=7)
    sub.add_argument("--draws", type=int, default=20)
    sub.add_argument("--full", action="store_true",
                     help="also run the direct full-register checks (up to 8 qubits)")
    sub.add_argument("--self-test-corrupt", dest="self_test_corrupt",
                     action="store_true", help=argparse.SUPPRESS)

    sub = subs.add_parser("distill-mixed", help="two-way distillation of isotropic states")
    sub.add_argument("--F", type=float, required=True)
    sub.add_argument("--p", type=float)
    sub.add_argument("--pA", help="comma-separated per-measurement rates for Alice")
    sub.add_argument("--pB", help="comma-separated per-measurement rates for Bob")
    sub.add_argument("--n", type=int, default=1)
    sub.add_argument("--m", type=int, default=1)
    sub.add_argument("--epsilon", type=float, default=0.0)
    sub.add_argument("--rounds", type=int, default=1,
                     help="iterate the map (convenience; later rounds reuse the same weights)")
    _add_io_args(sub)

    sub = subs.add_parser("distill-pure", help="filter a Schmidt-form pure state")
    sub.add_argument("--theta", type=float)
    sub.add_argument("--theta-frac-pi", dest="theta_frac_pi", type=float)
    sub.add_argument("--p", type=float, required=True)
    sub.add_argument("--epsilon", type=float, default=0.0)
    sub.add_argument("--n", type=int, default=1)
    _add_io_args(sub)

    sub = subs.add_parser("povm-purify", help="purified-measurement coefficients")
    sub.add_argument("--p", type=float)
    sub.add_argument("--pList", help="comma-separated heterogeneous rates")
    sub.add_argument("--epsilon", type=float, default=0.0)
    sub.add_argument("--n", type=int, default=1)
    _add_io_args(sub)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "tables":
            return cmd_tables(args)
        if args.command == "sweep":
            return cmd_sweep(args, parser)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "distill-mixed":
            return cmd_distill_mixed(args, parser)
        if args.command == "distill-pure":
            return cmd_distill_pure(args, parser)
        if args.command == "povm-purify":
            return cmd_povm_purify(args, parser)
        parser.error(f"unknown command {args.command!r}")
    except SystemExit as exc:
        if isinstance(exc.code, int):
            return exc.code
        return 2 if exc.code else 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
