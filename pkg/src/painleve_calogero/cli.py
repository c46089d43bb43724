"""Command-line front end: trajectories, verification suites, parameter maps.

Complex numbers serialize as two-element [re, im] arrays in JSON and as
paired re_/im_ columns in CSV.  Parameter files are flat JSON objects
keyed by the Hamiltonian symbol names (kappa0, kappa1, theta, kappa,
theta1, eta1, theta_inf, eta_inf, theta0, eta0, alpha) plus optional
g4sq.  Exit codes: 0 success, 1 usage error, 2 integration stopped at a
movable pole.

    painleve-calogero integrate --equation p1 --side painleve \
        --initial i0.json --t-end 1 --out tr.csv
    painleve-calogero verify --suite all --seed 7 --out report.json
    painleve-calogero params --equation p6 --aux kappa0=1 kappa1=1 theta=1 kappa=0
"""

from __future__ import annotations

import argparse
import json
import sys

from .dynamics import COMPLETED, integrate
from .errors import PainleveCalogeroError
from .params import AUX_KEYS, AuxParams, param_to_painleve
from .systems import PhaseState, SystemDescriptor
from .verify import SUITE_NAMES, reports_to_json, run_suite

EQUATION_FLAGS = {"p6": "VI", "p5": "V", "p4": "IV", "p3": "III", "p2": "II", "p1": "I"}


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from exc


def _complex_from_json(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2:
        return complex(value[0], value[1])
    raise ValueError(f"expected number or [re, im] pair, got {value!r}")


def _complex_to_json(z: complex) -> list[float]:
    return [z.real, z.imag]


def _load_aux(equation: str, source) -> tuple[AuxParams, complex]:
    """Aux parameters from a JSON file path or inline key=val tokens."""
    if isinstance(source, dict):
        raw = source
    elif len(source) == 1 and "=" not in source[0]:
        with open(source[0]) as fh:
            raw = json.load(fh)
    else:
        raw = {}
        for tok in source:
            key, _, val = tok.partition("=")
            if not _:
                raise ValueError(f"expected key=value, got {tok!r}")
            raw[key] = val
    g4_raw = raw.pop("g4sq", 0)
    g4sq = _parse_complex(g4_raw) if isinstance(g4_raw, str) else _complex_from_json(g4_raw)
    kw = {}
    for key, val in raw.items():
        kw[key] = _parse_complex(val) if isinstance(val, str) else _complex_from_json(val)
    missing = [k for k in AUX_KEYS[equation] if k not in kw]
    if missing:
        raise ValueError(f"P{equation} needs parameters {list(AUX_KEYS[equation])}; "
                         f"missing {missing}")
    return AuxParams(equation, **kw), g4sq


def _load_initial(path: str) -> PhaseState:
    with open(path) as fh:
        raw = json.load(fh)
    coords = [_complex_from_json(c) for c in raw["coords"]]
    momenta = [_complex_from_json(m) for m in raw["momenta"]]
    return PhaseState(tuple(coords), tuple(momenta), _complex_from_json(raw["time"]))


def _trajectory_csv(traj) -> str:
    rank = traj.system.rank
    header = ["re_t", "im_t"]
    for j in range(1, rank + 1):
        header += [f"re_l{j}", f"im_l{j}"]
    for j in range(1, rank + 1):
        header += [f"re_m{j}", f"im_m{j}"]
    lines = [",".join(header)]
    for time, state in traj.samples:
        row = [time.real, time.imag]
        for c in state.coords:
            row += [c.real, c.imag]
        for m in state.momenta:
            row += [m.real, m.imag]
        lines.append(",".join(repr(x) for x in row))
    return "\n".join(lines) + "\n"


def _trajectory_json(traj) -> str:
    doc = {
        "equation": traj.system.equation,
        "side": traj.system.side,
        "rank": traj.system.rank,
        "termination": traj.termination,
        "rel_tol": traj.rel_tol,
        "abs_tol": traj.abs_tol,
        "n_accepted": traj.n_accepted,
        "n_rejected": traj.n_rejected,
        "n_rhs": traj.n_rhs,
        "samples": [
            {
                "time": _complex_to_json(time),
                "coords": [_complex_to_json(c) for c in state.coords],
                "momenta": [_complex_to_json(m) for m in state.momenta],
            }
            for time, state in traj.samples
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_integrate(args) -> int:
    equation = EQUATION_FLAGS[args.equation]
    if args.params:
        aux, g4sq = _load_aux(equation, [args.params])
    else:
        if AUX_KEYS[equation]:
            print(f"error: P{equation} requires --params with keys {AUX_KEYS[equation]}",
                  file=sys.stderr)
            return 1
        aux, g4sq = AuxParams(equation), 0j
    initial = _load_initial(args.initial)
    if args.rank is not None and args.rank != initial.rank:
        print(f"error: --rank {args.rank} does not match initial state rank {initial.rank}",
              file=sys.stderr)
        return 1
    sys_desc = SystemDescriptor(equation, args.side, initial.rank, g4sq, aux)
    traj = integrate(sys_desc, initial, args.t_end,
                     rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    text = _trajectory_csv(traj) if args.format == "csv" else _trajectory_json(traj)
    _write(args.out, text)
    if traj.termination != COMPLETED:
        print(f"integration stopped: {traj.termination} at {traj.samples[-1][0]}",
              file=sys.stderr)
        return 2
    return 0


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, seed=args.seed)
    _write(args.out, reports_to_json(reports) + "\n")
    all_passed = True
    for rep in sorted(reports, key=lambda r: r.check_id):
        status = "PASS" if rep.passed else "FAIL"
        print(f"{status} {rep.check_id}: max_error={rep.max_error:.3e} "
              f"tolerance={rep.tolerance:.3e}")
        all_passed &= rep.passed
    return 0 if all_passed else 3


def cmd_params(args) -> int:
    equation = EQUATION_FLAGS[args.equation]
    aux, _ = _load_aux(equation, args.aux or {})
    if equation == "II":
        result = {"alpha": _complex_to_json(aux.alpha)}
    elif equation == "I":
        result = {}
    else:
        p = param_to_painleve(aux, equation)
        result = {name: _complex_to_json(getattr(p, name))
                  for name in ("alpha", "beta", "gamma", "delta")}
    _write(args.out, json.dumps(result, indent=2, sort_keys=True) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="painleve-calogero",
        description="Painleve/Calogero correspondence: trajectories, parameter maps "
                    "and the numerical verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("integrate", help="integrate a canonical flow")
    p_int.add_argument("--equation", required=True, choices=sorted(EQUATION_FLAGS))
    p_int.add_argument("--side", default="painleve", choices=("painleve", "calogero"))
    p_int.add_argument("--rank", type=int, default=None,
                       help="rank (defaults to the length of the initial state)")
    p_int.add_argument("--params", default=None, help="JSON file with aux parameters")
    p_int.add_argument("--initial", required=True, help="JSON file with coords/momenta/time")
    p_int.add_argument("--t-end", required=True, type=_parse_complex)
    p_int.add_argument("--rel-tol", type=float, default=1e-8)
    p_int.add_argument("--abs-tol", type=float, default=1e-10)
    p_int.add_argument("--out", default=None)
    p_int.add_argument("--format", default="csv", choices=("csv", "json"))
    p_int.set_defaults(func=cmd_integrate)

    p_ver = sub.add_parser("verify", help="run verification suites")
    p_ver.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p_ver.add_argument("--seed", type=int, default=7)
    p_ver.add_argument("--out", default=None)
    p_ver.set_defaults(func=cmd_verify)

    p_par = sub.add_parser("params", help="convert aux constants to (alpha..delta)")
    p_par.add_argument("--equation", required=True, choices=sorted(EQUATION_FLAGS))
    p_par.add_argument("--aux", nargs="*", default=None,
                       help="JSON file or inline key=val pairs")
    p_par.add_argument("--out", default=None)
    p_par.set_defaults(func=cmd_params)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (PainleveCalogeroError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
