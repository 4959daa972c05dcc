"""Command-line front end.

Subcommands: decompose, check-feasible, build-povm, concentrate, lp-solve,
simulate.  Machine-readable JSON goes to stdout, human-readable errors to
stderr.  Exit codes: 0 success, 2 usage error, 3 infeasible or failed
check, 4 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .concentrate import (
    asymptotic_yield_curve,
    concentration_lp,
    optimal_plan,
    optimality_certificate,
    single_shot_povm,
    standard_weights,
)
from .jsonio import dumps, load_ensemble, load_lp, load_povm, load_state, read_json
from .lp import simplex_solve
from .monotones import FEASIBILITY_TOL, ensemble_feasible, nielsen_feasible
from .schmidt import ZERO_TOL, entropy
from .sim import IncompletePovmError, simulate
from .transform import build_ensemble_povm, merge_duplicates

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4

_LN2 = math.log(2.0)


def _emit(doc) -> None:
    sys.stdout.write(dumps(doc) + "\n")


def _in_units(nats: float, units: str) -> float:
    return nats / _LN2 if units == "bits" else nats


def _cmd_decompose(args) -> int:
    state = load_state(args.state, zero_tol=args.zero_tol)
    _emit(
        {
            "spectrum": list(state.coeffs),
            "entropy": _in_units(entropy(state), args.units),
            "units": args.units,
        }
    )
    return EXIT_OK


def _report_dict(report) -> dict:
    return {
        "feasible": report.feasible,
        "violated_indices": list(report.violated_indices),
        "slack": [float(s) for s in report.slack],
    }


def _cmd_check_feasible(args) -> int:
    source = load_state(args.source)
    if args.target is not None:
        target = load_state(args.target)
        report = nielsen_feasible(source, target, tol=args.tol)
    else:
        ensemble = load_ensemble(args.ensemble)
        report = ensemble_feasible(source, ensemble, tol=args.tol)
    _emit(_report_dict(report))
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _povm_dict(povm, die=None) -> dict:
    doc = {
        "support_rank": povm.support_rank,
        "elements": [
            {"label": el.label, "diag": list(el.diag)} for el in povm.elements
        ],
    }
    if die is not None:
        doc["die"] = [
            {
                "representative": group.representative,
                "members": [
                    {"outcome": j, "probability": r} for j, r in group.members
                ],
            }
            for group in die.groups
        ]
    return doc


def _cmd_build_povm(args) -> int:
    source = load_state(args.source)
    ensemble = load_ensemble(args.ensemble)
    report = ensemble_feasible(source, ensemble)
    if not report.feasible:
        _emit(_report_dict(report))
        print(
            "transformation is infeasible at indices "
            f"{list(report.violated_indices)}",
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE
    merged, die = merge_duplicates(ensemble)
    povm = build_ensemble_povm(merged)
    doc = _povm_dict(povm, die)
    _emit(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc) + "\n")
    return EXIT_OK


def _resolve_weights(choice: str, n: int):
    if choice in ("ln", "log2", "indicator"):
        return standard_weights(choice, n)
    weights = read_json(choice)
    if not isinstance(weights, list):
        raise ValueError("weight file must hold a JSON list")
    return tuple(float(w) for w in weights)


def _lp_plan(state, weights):
    """Level distribution optimizing arbitrary weights, via the simplex.

    The solver may leave probability unassigned when the weights give no
    credit for the product level; the remainder goes to level 1, which is
    always feasible and does not change the objective.
    """
    problem = concentration_lp(state, weights)
    solution = simplex_solve(problem)
    if solution.status != "optimal":
        raise ValueError(f"concentration LP came back {solution.status}")
    probs = [max(0.0, float(v)) for v in solution.values]
    probs[0] += max(0.0, 1.0 - math.fsum(probs))
    return probs, float(solution.objective_value)


def _cmd_concentrate(args) -> int:
    state = load_state(args.state)
    n = state.rank
    if args.weights == "ln":
        plan = optimal_plan(state)
        probs = [float(p) for p in plan.probabilities]
        expected = plan.expected_entanglement
        objective = expected
    else:
        weights = _resolve_weights(args.weights, n)
        probs, objective = _lp_plan(state, weights)
        expected = math.fsum(
            p * math.log(j) for j, p in enumerate(probs, start=1)
        )

    yield_key = "expected_bits" if args.units == "bits" else "expected_nats"
    doc = {"plan": {"p": probs, yield_key: _in_units(expected, args.units)}}
    if args.weights != "ln":
        doc["plan"]["objective"] = objective
    if args.certify:
        cert = optimality_certificate(n)
        doc["certificate"] = {"z": list(cert.z_values), "passed": cert.passed}
    curve = None
    if args.asymptotic is not None:
        curve = asymptotic_yield_curve(state, args.asymptotic)
        doc["curve"] = [[n_, _in_units(y, args.units)] for n_, y in curve]

    if args.format == "csv":
        _emit_concentrate_csv(probs, curve, args.units)
    else:
        _emit(doc)
    return EXIT_OK


def _emit_concentrate_csv(probs, curve, units) -> None:
    lines = ["level,probability"]
    lines += [f"{j},{format(p, '.17g')}" for j, p in enumerate(probs, start=1)]
    if curve is not None:
        lines.append("")
        lines.append(f"n,per_copy_yield_{units}")
        lines += [
            f"{n},{format(_in_units(y, units), '.17g')}" for n, y in curve
        ]
    sys.stdout.write("\n".join(lines) + "\n")


def _cmd_lp_solve(args) -> int:
    problem = load_lp(args.problem)
    solution = simplex_solve(problem)
    doc = {"status": solution.status}
    if solution.status == "optimal":
        doc["values"] = [float(v) for v in solution.values]
        doc["objective"] = float(solution.objective_value)
        doc["basis"] = list(solution.basis)
        doc["reduced_costs"] = [float(r) for r in solution.reduced_costs]
    _emit(doc)
    return EXIT_OK if solution.status == "optimal" else EXIT_INFEASIBLE


def _cmd_simulate(args) -> int:
    state = load_state(args.state)
    if args.protocol == "optimal":
        povm = single_shot_povm(state)
    else:
        povm = load_povm(args.protocol)
    report = simulate(povm, state, trials=args.trials, seed=args.seed)
    _emit(
        {
            "trials": report.trials,
            "seed": report.seed,
            "labels": list(report.labels),
            "counts": list(report.counts),
            "empirical_probs": list(report.empirical_probs),
            "expected_probs": list(report.expected_probs),
            "mean_yield_nats": report.mean_yield,
            "max_abs_deviation": report.max_abs_deviation,
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entmanip",
        description=(
            "Decide and construct optimal local manipulations of bipartite "
            "pure-state entanglement."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="Schmidt spectrum and entropy of a state")
    p.add_argument("--state", required=True, help="state file (JSON), or - for stdin")
    p.add_argument("--units", choices=("nats", "bits"), default="nats")
    p.add_argument("--zero-tol", type=float, default=ZERO_TOL)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser(
        "check-feasible", help="monotone feasibility of a local transformation"
    )
    p.add_argument("--source", required=True, help="source state file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--target", help="single target state file")
    group.add_argument("--ensemble", help="target ensemble file")
    p.add_argument("--tol", type=float, default=FEASIBILITY_TOL)
    p.set_defaults(func=_cmd_check_feasible)

    p = sub.add_parser(
        "build-povm",
        help="construct the measurement realising a feasible target ensemble",
    )
    p.add_argument("--source", required=True, help="source state file")
    p.add_argument("--ensemble", required=True, help="target ensemble file")
    p.add_argument("--out", help="also write the JSON to this file")
    p.set_defaults(func=_cmd_build_povm)

    p = sub.add_parser(
        "concentrate", help="optimal concentration plan for a state"
    )
    p.add_argument("--state", required=True, help="state file (JSON), or - for stdin")
    p.add_argument(
        "--weights",
        default="ln",
        help="ln | log2 | indicator | path to a JSON weight list",
    )
    p.add_argument("--certify", action="store_true", help="attach the optimality certificate")
    p.add_argument(
        "--asymptotic",
        type=int,
        metavar="N",
        help="per-copy yield curve for 1..N identical copies",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--units", choices=("nats", "bits"), default="nats")
    p.set_defaults(func=_cmd_concentrate)

    p = sub.add_parser("lp-solve", help="solve a JSON linear program (debug)")
    p.add_argument("problem", help="LP file (JSON), or - for stdin")
    p.set_defaults(func=_cmd_lp_solve)

    p = sub.add_parser("simulate", help="Monte Carlo run of a measurement protocol")
    p.add_argument("--state", required=True, help="state file (JSON), or - for stdin")
    p.add_argument(
        "--protocol",
        default="optimal",
        help="'optimal' for the concentration measurement, or a POVM file",
    )
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate)
    return parser


def run(argv=None) -> int:
    """Parse arguments, dispatch, and map failures to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except IncompletePovmError as exc:
        print(f"entmanip: failed check: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"entmanip: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
