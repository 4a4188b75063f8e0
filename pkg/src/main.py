import argparse
import logging
import os
import sys

from commands import *
from const import *
from errors import *
from log import *
from settings import *
from template import render_output_name
from utils import file_stem

logger = logging.getLogger(APPLICATION)


def default_output(setting, input):
    return render_output_name(
        get_setting(setting),
        directory=os.path.dirname(os.path.abspath(input)),
        sample_stem=file_stem(input),
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog=APPLICATION,
        description="Split a sampled function f(x, y) into g(x) + h(y).",
    )
    parser.add_argument("--version", action="version", version=f"{APPLICATION} {VERSION}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check-arrays", help="look for an array in a sample")
    check.add_argument("input")
    check.add_argument(
        "--max-len",
        type=int,
        default=2,
        help="array length to look for; from 3 on a witness may revisit a point",
    )
    check.add_argument("--tol", type=float, default=None)

    decompose = commands.add_parser("decompose", help="run one decomposition pass")
    decompose.add_argument("input")
    decompose.add_argument("--epsilon", type=float, required=True)
    source = decompose.add_mutually_exclusive_group(required=True)
    source.add_argument("--delta", type=float)
    source.add_argument("--lipschitz", type=float)
    source.add_argument("--auto-delta", action="store_true")
    level = decompose.add_mutually_exclusive_group()
    level.add_argument("--level", type=int)
    level.add_argument("--auto-level", action="store_true")
    decompose.add_argument("--n-max", type=int, default=None)
    decompose.add_argument("--declared-spacing", type=float, default=None)
    decompose.add_argument("--out")

    refine_parser = commands.add_parser("refine", help="refine until the residual is below tol")
    refine_parser.add_argument("input")
    refine_parser.add_argument("--tol", type=float, default=None)
    refine_parser.add_argument("--max-iter", type=int, default=None)
    refine_parser.add_argument("--n-max", type=int, default=None)
    refine_parser.add_argument("--declared-spacing", type=float, default=None)
    refine_parser.add_argument("--out")

    evaluate = commands.add_parser("eval", help="evaluate g(x), h(y) and their sum")
    evaluate.add_argument("decomposition")
    evaluate.add_argument("x", type=float)
    evaluate.add_argument("y", type=float)

    plot = commands.add_parser("plotdata", help="write columns for external plotting")
    plot.add_argument("decomposition")
    plot.add_argument("input")
    plot.add_argument("--out")

    generate = commands.add_parser("generate", help="write a generated sample file")
    generate.add_argument("--kind", required=True, choices=[kind.value for kind in GeneratorKind])
    generate.add_argument("--count", type=int, default=200)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--function", default="zero")
    generate.add_argument("--params", type=float, nargs="*", default=[])
    generate.add_argument("--out")

    suite = commands.add_parser("suite", help="check every intermediate bound on seeded instances")
    suite.add_argument("--count", type=int, default=None)
    suite.add_argument("--seed", type=int, default=None)
    suite.add_argument("--epsilon-ratio", type=float, default=None)
    suite.add_argument("--threads", type=int, default=None)
    return parser


def _or_setting(value, setting, convert):
    return convert(get_setting(setting)) if value is None else value


def dispatch(args):
    if args.command == "check-arrays":
        return cmd_check_arrays(
            args.input, args.max_len, _or_setting(args.tol, "arrayTolerance", float)
        )
    if args.command == "decompose":
        return cmd_decompose(
            args.input,
            args.epsilon,
            args.out or default_output("decompositionOutputName", args.input),
            delta=args.delta,
            lipschitz=args.lipschitz,
            auto_delta=args.auto_delta,
            level=args.level,
            n_max=_or_setting(args.n_max, "nMax", int),
            bins=get_int_setting("histogramBins"),
            declared_spacing=args.declared_spacing,
        )
    if args.command == "refine":
        return cmd_refine(
            args.input,
            args.out or default_output("decompositionOutputName", args.input),
            tol=_or_setting(args.tol, "refineTolerance", float),
            max_iter=_or_setting(args.max_iter, "refineMaxIter", int),
            n_max=_or_setting(args.n_max, "nMax", int),
            epsilon_divisor=get_float_setting("epsilonDivisor"),
            bins=get_int_setting("histogramBins"),
            declared_spacing=args.declared_spacing,
        )
    if args.command == "eval":
        return cmd_eval(args.decomposition, args.x, args.y)
    if args.command == "plotdata":
        return cmd_plotdata(args.decomposition, args.input, args.out)
    if args.command == "generate":
        out = args.out or render_output_name(
            get_setting("sampleOutputName"), kind=args.kind, seed=args.seed
        )
        return cmd_generate(args.kind, out, args.count, args.seed, args.function, args.params)
    if args.command == "suite":
        return cmd_suite(
            _or_setting(args.count, "suiteCount", int),
            _or_setting(args.seed, "suiteSeed", int),
            _or_setting(args.epsilon_ratio, "suiteEpsilonRatio", float),
            _or_setting(args.threads, "maxThreads", int),
        )
    raise ValueError(f"Unknown command {args.command}")


def describe_level_failure(e: LevelNotFound):
    yield str(e)
    if e.witness:
        yield (
            f"bridge obstruction at level {e.best_level}: "
            + " -> ".join(f"({p.x!r}, {p.y!r})" for p in e.witness)
        )


def main(argv=None):
    args = build_parser().parse_args(argv)
    update_level(args.log_level or get_setting("logLevel"))
    try:
        return int(dispatch(args))
    except NoConvergence as e:
        logger.error(str(e))
        return int(ExitCode.NO_CONVERGENCE)
    except LevelNotFound as e:
        for line in describe_level_failure(e):
            logger.error(line)
        return int(ExitCode.NEGATIVE)
    except (DegenerateSample, EmptyColumnNotFound) as e:
        logger.error(str(e))
        return int(ExitCode.NEGATIVE)
    except (
        SampleError, DecompositionFileError, CellIndexOverflow, UnknownFunction, InvalidArgument
    ) as e:
        logger.error(str(e))
        return int(ExitCode.INPUT_ERROR)


if __name__ == "__main__":
    setup_logging()
    install_default_settings()
    sys.exit(main())
