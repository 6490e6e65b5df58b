import argparse
import re
import sys

import biquotient
from biquotient.process import CAMPAIGNS, FAMILIES, FORMATS, CurvatureCampaign, RunConfig
from biquotient.report import Report, WitnessValidationError

import logging

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3

# options whose values may start with a minus sign
TUPLE_OPTIONS = ('--p', '--q', '--ab')

NEGATIVE_VALUE = re.compile(r"^-\d")


def int_list(text):
    """Comma separated integers, as in 1,1,0 or -1,0,1."""
    try:
        return [int(val) for val in text.split(",") if val.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers, got {!r}".format(text))


def join_negative_values(argv):
    """Rewrites '--q -1,0,1' as '--q=-1,0,1', which argparse
    would otherwise read as an option.
    """
    out = []
    idx = 0
    while idx < len(argv):
        token = argv[idx]
        if (
            token in TUPLE_OPTIONS
            and idx + 1 < len(argv)
            and NEGATIVE_VALUE.match(argv[idx + 1])
        ):
            out.append("{}={}".format(token, argv[idx + 1]))
            idx += 2
            continue
        out.append(token)
        idx += 1
    return out


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="root random seed")
    common.add_argument("--workers", type=int, help="worker pool size")
    common.add_argument("-n", "--samples", type=int, help="samples of a campaign")
    common.add_argument("--locus-samples", type=int, help="constructed locus points")
    common.add_argument("--tol-bracket", type=float, dest="bracket_tol")
    common.add_argument("--tol-horiz", type=float, dest="horiz_tol")
    common.add_argument("--margin", type=float)
    common.add_argument("--lam", type=float, help="deformation parameter in (0, 1)")
    common.add_argument("--method", choices=("spectral", "numeric"))
    common.add_argument("--resolution", type=int, help="Y1 grid resolution")
    common.add_argument("--starts", type=int, help="W2 multi-start count")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out", help="output path, standard output by default")
    common.add_argument("-v", "--verbose", action="count", default=0)

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--p", type=int_list, help="Eschenburg p, e.g. 1,1,0")
    params.add_argument("--q", type=int_list, help="Eschenburg q or Bazaikin q")
    params.add_argument("--ab", type=int_list, help="torus AB(a, b), e.g. 1,1")
    params.add_argument("--c", type=int, help="torus C(c)")
    params.add_argument("--left", action="store_true", help="torus left action")

    parser = argparse.ArgumentParser(
        prog="biquotient",
        description="Curvature classification and verification of biquotients.",
    )
    parser.add_argument(
        "--version", action="version", version=biquotient.__version__
    )
    sub = parser.add_subparsers(dest="command")
    sub.required = True

    classify = sub.add_parser("classify", parents=[common, params])
    classify.add_argument("family", choices=FAMILIES)

    scan = sub.add_parser("scan", parents=[common])
    scan.add_argument("family", choices=FAMILIES)
    scan.add_argument("--max", type=int, dest="bound")
    scan.add_argument("--boundary", action="store_true")
    scan.add_argument("--family-n", type=int)
    scan.add_argument("--class", dest="class_filter")
    scan.add_argument("--s", type=int, dest="s_filter")
    scan.add_argument("--ab-max", type=int, default=3)
    scan.add_argument("--c-max", type=int, default=3)
    scan.add_argument("--single-z2", action="store_true")

    verify = sub.add_parser("verify", parents=[common, params])
    verify.add_argument("family", choices=FAMILIES)
    verify.add_argument("--campaign", choices=CAMPAIGNS, default="random")

    report = sub.add_parser("report", parents=[common])
    report.add_argument("input", help="path of a JSON report")

    return parser


def _invalid(msg):
    log.error(msg)
    raise ValueError(msg)


def family_params(args):
    """Parameter dict of a family from the parsed options."""
    if args.family == 'eschenburg':
        if args.p is None or args.q is None:
            _invalid("eschenburg needs --p and --q")
        return {'p': args.p, 'q': args.q}
    if args.family == 'bazaikin':
        if args.q is None:
            _invalid("bazaikin needs --q")
        return {'q': args.q}
    if args.ab is not None:
        if len(args.ab) != 2:
            _invalid("--ab needs two integers a,b")
        return {'kind': 'AB', 'a': args.ab[0], 'b': args.ab[1], 'c': 0}
    if args.c is not None:
        return {'kind': 'C', 'a': 0, 'b': 0, 'c': args.c}
    return {'kind': 'L', 'a': 0, 'b': 0, 'c': 0}


def make_config(args):
    return RunConfig.from_env(
        seed=args.seed,
        workers=args.workers,
        samples=args.samples,
        locus_samples=args.locus_samples,
        bracket_tol=args.bracket_tol,
        horiz_tol=args.horiz_tol,
        margin=args.margin,
        lam=args.lam,
        method=args.method,
        resolution=args.resolution,
        starts=args.starts,
        format=args.format,
    )


def emit(text, out=None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as handle:
            handle.write(text)


def run(args):
    """Executes a parsed command.

    Returns:

        exit code: int
    """
    if args.command == 'report':
        with open(args.input) as handle:
            report = Report.from_json(handle.read())
        emit(report.render(args.format or "text"), args.out)
        return EXIT_FAILED if report.failed else EXIT_OK

    config = make_config(args)
    level = logging.DEBUG if args.verbose > 1 else (logging.INFO if args.verbose else logging.WARNING)
    campaign = CurvatureCampaign(config, log_level=level)
    if args.command == 'classify':
        report = campaign.classify(args.family, family_params(args))
    elif args.command == 'scan':
        report = campaign.scan(
            args.family,
            bound=args.bound,
            boundary=args.boundary,
            family_n=args.family_n,
            class_filter=args.class_filter,
            s_filter=args.s_filter,
            ab_max=args.ab_max,
            c_max=args.c_max,
            single_z2=args.single_z2,
        )
    else:
        report = campaign.verify(args.family, family_params(args), campaign=args.campaign)
    emit(report.render(config.format), args.out)
    return EXIT_FAILED if report.failed else EXIT_OK


def main(argv=None):
    """Console entry point, returns the exit code: 0 on
    success, 2 on invalid input, 3 when a verification fails.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(join_negative_values(argv))
    except SystemExit as err:
        return EXIT_OK if err.code in (0, None) else EXIT_INVALID
    logging.basicConfig(level=logging.WARNING)
    try:
        return run(args)
    except WitnessValidationError as err:
        sys.stderr.write("verification failed: {}\n".format(err))
        return EXIT_FAILED
    except (ValueError, OSError) as err:
        sys.stderr.write("invalid input: {}\n".format(err))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
