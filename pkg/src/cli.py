"""
Command-line entry point: ``python -m src.cli <command> [options]``.

Exit codes: 0 on success, 2 for invalid input, 1 for internal failures (including a
verification verdict that differs from the expected one).
"""
import argparse
import io
import logging
import os
import sys
import time
from dataclasses import dataclass

import pandas as pd

from src.algorithms.symmetric_power import symmetric_power
from src.algorithms.torus_formulas import (TorusEigenData, closed_form_symn, torsion_closed_form,
                                           torsion_growth, torsion_via_evaluation)
from src.algorithms.twisted import compare_with_closed_form, max_pairwise_deviation, wada_invariant
from src.data_generator import exact_torus_representation, load_config, sample_case11_points, save_to_csv
from src.data_parser import (dump_json, rational_to_json, read_json, read_presentation,
                             representation_from_json, scalar_to_json)
from src.models.laurent import LaurentPoly, RationalFn
from src.models.presentation import TorusLinkParams, torus_link_presentation
from src.models.scalars import complex_field

COMMANDS = ("compute", "closed-form", "verify", "sample", "torsion", "growth")
# Commands whose output is a table by default
CSV_COMMANDS = ("torsion", "growth")


@dataclass(frozen=True)
class RunConfig:
    """
    Settings of one run: built-in defaults, then the config file, then command-line flags.
    """
    command: str
    backend: str
    precision_bits: int
    tolerance: float
    sample_tolerance: float
    zero_tolerance: float
    seed: int
    max_verify_n: int
    sample_count: int
    growth_n_max: int
    out: str = None
    output_format: str = "json"

    def numeric_field(self):
        return complex_field(self.precision_bits, self.tolerance)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=["cyclotomic", "complex"])
    common.add_argument("--precision", type=int, help="Working precision in bits")
    common.add_argument("--tol", type=float, help="Equality tolerance of the complex backend")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="Output file (default: standard output)")
    common.add_argument("--format", dest="output_format", choices=["json", "csv"],
                        help="Output format (default: csv for torsion and growth, json otherwise)")
    common.add_argument("--config", help="Configuration file (default: config.json when present)")
    common.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    torus = argparse.ArgumentParser(add_help=False)
    torus.add_argument("--mu", type=int, required=True)
    torus.add_argument("--p", type=int, required=True)
    torus.add_argument("--q", type=int, required=True)
    torus.add_argument("--a", type=int, required=True)
    torus.add_argument("--b", type=int, required=True)

    parser = argparse.ArgumentParser(prog="src.cli", description="Twisted Alexander polynomials of torus links")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", parents=[common], help="Wada invariant of a presentation and representation")
    compute.add_argument("presentation")
    compute.add_argument("representation")
    compute.add_argument("--column", help="Generator whose block column is removed (default: y)")
    compute.add_argument("--lift", type=int, help="Lift a 2-dimensional representation to this dimension first")

    closed = sub.add_parser("closed-form", parents=[common, torus], help="Closed formula for a torus link")
    closed.add_argument("--n", type=int, default=2)

    verify = sub.add_parser("verify", parents=[common, torus], help="Compare the engine with the closed formula")
    verify.add_argument("--n", type=int, default=2)
    verify.add_argument("--representation", help="Representation file to use instead of the built-in one")
    verify.add_argument("--self-test", action="store_true", help="Corrupt the formula; the comparison must fail")

    sample = sub.add_parser("sample", parents=[common, torus], help="Local constancy on sampled representations")
    sample.add_argument("--count", type=int)

    torsion = sub.add_parser("torsion", parents=[common, torus], help="Torsion value")
    torsion.add_argument("--n", type=int, default=2)

    growth = sub.add_parser("growth", parents=[common, torus], help="Growth of log torsion / n")
    growth.add_argument("--n-max", type=int)
    return parser


def make_run_config(args):
    """Merges defaults, the configuration file and the flags into a RunConfig."""
    if args.config:
        config = load_config(args.config)
    elif os.path.exists("config.json"):
        config = load_config("config.json")
    else:
        config = load_config(None)
    overrides = {"backend": args.backend, "precision_bits": args.precision,
                 "scalar_tolerance": args.tol, "seed": args.seed}
    config.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(
        command=args.command,
        backend=config["backend"],
        precision_bits=int(config["precision_bits"]),
        tolerance=float(config["scalar_tolerance"]),
        sample_tolerance=float(config["sample_tolerance"]),
        zero_tolerance=float(config["zero_tolerance"]),
        seed=int(config["seed"]),
        max_verify_n=int(config["max_verify_n"]),
        sample_count=int(config["sample_count"]),
        growth_n_max=int(config["growth_n_max"]),
        out=args.out,
        output_format=args.output_format or ("csv" if args.command in CSV_COMMANDS else "json"),
    )


def _eigen_data(args, n=2):
    return TorusEigenData(TorusLinkParams(args.mu, args.p, args.q), args.a, args.b, n)


def _decimal(value, precision):
    if hasattr(value, "embed"):
        value = value.embed(precision)
    return value.field.ctx.nstr(value.re, value.field.digits)


def cmd_compute(args, run):
    presentation = read_presentation(args.presentation)
    field = run.numeric_field() if run.backend == "complex" else None
    representation = representation_from_json(read_json(args.representation), presentation, field)
    if args.lift:
        representation = symmetric_power(representation, args.lift)
    invariant = wada_invariant(presentation, representation, args.column, run.zero_tolerance)
    return {
        "delta": rational_to_json(invariant.value),
        "reduced": rational_to_json(invariant.reduced),
        "reduced_in_t": rational_to_json(invariant.reduced_in_t),
        "formatted": invariant.reduced_in_t.format(),
        "polynomial": invariant.polynomial_flag,
        "removed_column": presentation.generator_names[invariant.removed_column],
        "backend": invariant.backend,
    }


def cmd_closed_form(args, run):
    data = _eigen_data(args, args.n)
    formula = closed_form_symn(data)
    return {
        "params": {"mu": args.mu, "p": args.p, "q": args.q, "a": args.a, "b": args.b, "n": args.n},
        "closed_form": rational_to_json(formula),
        "formatted": formula.format(),
        "irreducible_flag": data.irreducible_flag,
    }


def cmd_verify(args, run):
    if args.n > run.max_verify_n:
        raise ValueError(f"n={args.n} exceeds the configured bound {run.max_verify_n}")
    data = _eigen_data(args, args.n)
    presentation = torus_link_presentation(data.params)
    if args.representation:
        representation = representation_from_json(read_json(args.representation), presentation, data.field)
    else:
        representation = exact_torus_representation(data)
    if args.n != 2:
        representation = symmetric_power(representation, args.n)
    formula = closed_form_symn(data)
    if args.self_test:
        t_plus_one = LaurentPoly.from_coefficients(data.field, [1, 1])
        formula = RationalFn(formula.num * t_plus_one, formula.den)
    report = compare_with_closed_form(presentation, representation, formula, zero_tolerance=run.zero_tolerance)
    expected = not args.self_test
    return {
        "params": {"mu": args.mu, "p": args.p, "q": args.q, "a": args.a, "b": args.b, "n": args.n},
        "equal": report.equal,
        "expected": expected,
        "verdict": "pass" if report.equal else "fail",
        "mode": report.mode,
        "unit_witness": {"sign": report.unit_sign, "exp": list(report.unit_exponent)},
        "engine": rational_to_json(report.engine),
        "formula": rational_to_json(report.formula),
        "engine_formatted": report.engine.format(),
        "formula_formatted": report.formula.format(),
    }


def cmd_sample(args, run):
    params = TorusLinkParams(args.mu, args.p, args.q)
    count = args.count if args.count is not None else run.sample_count
    field = run.numeric_field()
    presentation = torus_link_presentation(params)
    samples = []
    deltas = []
    for index, (point, triple) in enumerate(sample_case11_points(params, args.a, args.b, count, run.seed, field)):
        representation = triple.to_representation(presentation)
        invariant = wada_invariant(presentation, representation, zero_tolerance=run.zero_tolerance)
        delta = invariant.reduced_in_t.num
        deltas.append(delta)
        samples.append({
            "index": index,
            "t_x": scalar_to_json(point.t_x),
            "t_y": scalar_to_json(point.t_y),
            "t_xy": scalar_to_json(point.t_xy),
            "quads": [[scalar_to_json(v) for v in quad] for quad in point.quads],
            "polynomial": invariant.polynomial_flag,
            "coefficients": [scalar_to_json(c) for c in delta.coefficient_list()[1]],
        })
    deviation = max_pairwise_deviation(deltas)
    logging.info(f"Max pairwise deviation over {count} samples: {deviation:.3e}")
    return {
        "params": {"mu": args.mu, "p": args.p, "q": args.q, "a": args.a, "b": args.b},
        "seed": run.seed,
        "samples": samples,
        "max_deviation": deviation,
        "within_tolerance": deviation < run.sample_tolerance,
    }


def cmd_torsion(args, run):
    data = _eigen_data(args, args.n)
    closed = torsion_closed_form(data)
    evaluated = torsion_via_evaluation(data)
    return {
        "params": {"mu": args.mu, "p": args.p, "q": args.q, "a": args.a, "b": args.b, "n": args.n},
        "torsion": _decimal(closed, run.precision_bits),
        "torsion_exact": scalar_to_json(closed),
        "torsion_via_evaluation": _decimal(evaluated, run.precision_bits),
        "agree": closed == evaluated,
    }


def cmd_growth(args, run):
    data = _eigen_data(args)
    n_max = args.n_max if args.n_max is not None else run.growth_n_max
    report = torsion_growth(data, n_max, run.precision_bits)
    return {
        "params": {"mu": args.mu, "p": args.p, "q": args.q, "a": args.a, "b": args.b, "n_max": n_max},
        "table": report.table.to_dict(orient="records"),
        "limit": report.limit,
        "final_gap": report.final_gap,
        "block_maxima": list(report.block_maxima),
        "trend_ok": report.trend_ok,
    }


HANDLERS = {
    "compute": cmd_compute,
    "closed-form": cmd_closed_form,
    "verify": cmd_verify,
    "sample": cmd_sample,
    "torsion": cmd_torsion,
    "growth": cmd_growth,
}


def to_table(command, result):
    """Flattens a command result into a DataFrame for CSV output."""
    if command == "growth":
        return pd.DataFrame(result["table"])
    if command == "sample":
        return pd.DataFrame([{"index": s["index"], "t_xy_re": s["t_xy"]["re"], "t_xy_im": s["t_xy"]["im"],
                              "degree": len(s["coefficients"]) - 1, "max_deviation": result["max_deviation"]}
                             for s in result["samples"]])
    flat = {}
    for key, value in result.items():
        if key == "params":
            flat.update(value)
        elif not isinstance(value, (dict, list)):
            flat[key] = value
    return pd.DataFrame([flat])


def render(run, result):
    if run.output_format == "csv":
        buffer = io.StringIO()
        save_to_csv(to_table(run.command, result), buffer)
        return buffer.getvalue()
    return dump_json(result)


def main(argv=None):
    """
    Runs one command.

    Args:
        argv (list, optional): Arguments without the program name; defaults to sys.argv[1:].

    Returns:
        int: The exit code.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format="%(levelname)s: %(message)s")
    try:
        run = make_run_config(args)
        logging.info(f"Running {run.command} with backend {run.backend}")
        start = time.perf_counter()
        result = HANDLERS[run.command](args, run)
        text = render(run, result)
        if run.out:
            with open(run.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
        logging.info(f"{run.command} finished in {time.perf_counter() - start:.2f}s")
    except (ValueError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except Exception as error:
        logging.exception("Internal failure")
        print(f"internal error: {error}", file=sys.stderr)
        return 1
    if run.command == "verify" and result["equal"] != result["expected"]:
        print("error: verification verdict differs from the expected one", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
