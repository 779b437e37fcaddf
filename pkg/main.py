#!/usr/bin/env python3
"""
Degeneracy-locus dual calculator - Poincare dual of the Dirac degeneracy locus
in the ASD moduli space, computed by recursion, by generating function and by
the families index pipeline, with exact three-way certification.
"""

import argparse
import sys

from algebra.scalars import ParamScalar
from algebra.series import j_series
from chern_engine import ROUTES, build_strategies, poincare_dual_class, verify_threeway
from topology.index_theory import degeneracy_dimensions
from utils.errors import ChernDualError
from utils.logger import setup_logger
from utils.manifest import FORMATS, load_manifest
from utils.table_formatter import TableFormatter

EXIT_OK = 0
EXIT_DISCREPANCY = 1
EXIT_INPUT = 2
EXIT_FAILURE = 1
EXIT_INTERRUPTED = 130


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"order must be >= 1, got {value}")
    return value


def int_range(text):
    """'a..b' (inclusive, either order) or a single integer"""
    try:
        if '..' in text:
            low, high = (int(part) for part in text.split('..', 1))
        else:
            low = high = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")
    if low > high:
        low, high = high, low
    return list(range(low, high + 1))


RANGE_OPTIONS = ('--na', '--kappa')


def attach_range_values(argv):
    """
    Glue '--na -3..0' into '--na=-3..0'; argparse would otherwise read a
    value with a leading minus as an option.
    """
    out = []
    tokens = iter(argv)
    for token in tokens:
        if token in RANGE_OPTIONS:
            value = next(tokens, None)
            if value is not None and value.startswith('-') and not value.startswith('--'):
                out.append(f"{token}={value}")
                continue
            out.append(token)
            if value is not None:
                out.append(value)
            continue
        out.append(token)
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog='main.py',
        description="Exact Poincare dual of the Dirac-operator degeneracy locus",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Routes (all exact, compared coefficient by coefficient):
  1. recursion  - Newton recursion for f_{i,2j,2k}
  2. genfun     - exp(x J1/2 + y^2 J2/4 + J3)
  3. newton     - closed-form index character -> power sums -> Newton

Examples:
  %(prog)s dual --manifest tests/fixtures/s2xs2.yaml
  %(prog)s verify --order 12 --symbolic
  %(prog)s verify --order 10 --na -3..0 --kappa 0..5
  %(prog)s series J1 --order 6
  %(prog)s coeffs --na -1 --kappa 1 --order 2 --method genfun
        """
    )
    parser.add_argument('--verbose', '-v', action='store_true', help='Verbose logging')
    sub = parser.add_subparsers(dest='command', required=True)

    def add_format(p):
        p.add_argument('--format', choices=FORMATS, default=None, help='Output format (default: text)')

    dual = sub.add_parser('dual', help='Poincare dual for a manifest')
    dual.add_argument('--manifest', required=True, help='YAML manifest describing X and the spin-u structure')
    dual.add_argument('--method', choices=ROUTES, default='recursion', help='Route used for the f-table')
    add_format(dual)

    verify = sub.add_parser('verify', help='Certify that all routes agree')
    verify.add_argument('--order', type=positive_int, default=None, help='Maximal total degree i+2j+2k (default: 12)')
    verify.add_argument('--symbolic', action='store_true', help='Treat na and kappa as symbols')
    verify.add_argument('--na', type=int_range, default=None, help='Dirac index range, e.g. -4..0')
    verify.add_argument('--kappa', type=int_range, default=None, help='kappa range, e.g. 0..4')
    verify.add_argument('--manifest', default=None, help='Also compare families and closed-form characters')
    verify.add_argument('--max-concurrent', type=positive_int, default=4, help='Parameter points checked at once')
    add_format(verify)

    series = sub.add_parser('series', help='Coefficients of J1, J2 or J3')
    series.add_argument('which', choices=('J1', 'J2', 'J3'))
    series.add_argument('--order', type=positive_int, default=12, help='Truncation order in z')
    add_format(series)

    coeffs = sub.add_parser('coeffs', help='Full f_{i,2j,2k} table')
    coeffs.add_argument('--na', type=int, default=None, help='Dirac index')
    coeffs.add_argument('--kappa', type=int, default=None, help='kappa = -p1(t)/4')
    coeffs.add_argument('--symbolic', action='store_true', help='Keep na and kappa symbolic')
    coeffs.add_argument('--order', type=positive_int, default=12, help='Maximal total degree')
    coeffs.add_argument('--method', choices=ROUTES, default='recursion', help='Route used')
    add_format(coeffs)
    return parser


def cmd_dual(args, logger):
    manifest = load_manifest(args.manifest)
    spinu = manifest.spinu
    logger.info(f"🚀 Dual class for na={spinu.na}, kappa={spinu.kappa}, lambda={list(spinu.lam)}")
    dimensions = degeneracy_dimensions(spinu)
    dual = poincare_dual_class(spinu, method=args.method, verbose=args.verbose)
    expanded = dual.expand(manifest.manifold, spinu.lam)
    formatter = TableFormatter(args.format or manifest.format, verbose=args.verbose)
    sys.stdout.write(formatter.dual_class(dual, dimensions=dimensions, expanded=expanded))
    return EXIT_OK


def cmd_verify(args, logger):
    order, fmt, symbolic = args.order or 12, args.format or 'text', args.symbolic
    structures = []
    if args.manifest:
        manifest = load_manifest(args.manifest)
        structures.append(manifest.spinu)
        order = args.order or manifest.max_order
        fmt = args.format or manifest.format
        symbolic = symbolic or manifest.symbolic
    symbolic = symbolic or (args.na is None and args.kappa is None)
    na_values = args.na if args.na is not None else list(range(-4, 1))
    kappa_values = args.kappa if args.kappa is not None else list(range(0, 5))

    logger.info(f"🎯 Mode: {'symbolic' if symbolic else 'numeric'}, order {order}")
    report = verify_threeway(max_degree=order, symbolic=symbolic,
                             na_values=na_values, kappa_values=kappa_values,
                             max_concurrent=args.max_concurrent,
                             pipeline_structures=structures, verbose=args.verbose)
    sys.stdout.write(TableFormatter(fmt, verbose=args.verbose).report(report))
    logger.info(f"⏱️  Time: {report.duration:.2f}s")
    return EXIT_OK if report.verified else EXIT_DISCREPANCY


def cmd_series(args, logger):
    which = int(args.which[1])
    series = j_series(which, args.order)
    sys.stdout.write(TableFormatter(args.format or 'text', verbose=args.verbose).series(args.which, series))
    return EXIT_OK


def cmd_coeffs(args, logger):
    if args.symbolic:
        na, kappa = ParamScalar.na(), ParamScalar.ka()
    else:
        if args.na is None or args.kappa is None:
            logger.error("coeffs needs --na and --kappa, or --symbolic")
            return EXIT_INPUT
        na, kappa = args.na, args.kappa
    table = build_strategies(args.verbose)[args.method].coefficients(na, kappa, args.order)
    title = f"f_(i,2j,2k) by {args.method}, na={na}, kappa={kappa}"
    sys.stdout.write(TableFormatter(args.format or 'text', verbose=args.verbose).coefficients(table, title))
    return EXIT_OK


COMMANDS = {
    'dual': cmd_dual,
    'verify': cmd_verify,
    'series': cmd_series,
    'coeffs': cmd_coeffs,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(attach_range_values(sys.argv[1:] if argv is None else list(argv)))

    logger = setup_logger(verbose=args.verbose)

    try:
        return COMMANDS[args.command](args, logger)
    except ChernDualError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return e.exit_code
    except KeyboardInterrupt:
        logger.info("🛑 Cancelled by user")
        return EXIT_INTERRUPTED
    except Exception as e:
        logger.error(f"❌ Failed: {e}")
        if args.verbose:
            import traceback
            logger.debug(traceback.format_exc())
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
