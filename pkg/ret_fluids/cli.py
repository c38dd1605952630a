import argparse
import logging
import sys

from ret_fluids.exceptions import ConfigError, RetError
from ret_fluids.scenarios import run_scenario, run_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def build_parser():
    parser = argparse.ArgumentParser(prog='ret-simulate',
                                     description='Run relaxation scenarios of the RET non-Newtonian fluid model')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    for command, help_text in (('run', 'run one case1, case2 or pde scenario'),
                               ('sweep', 'run a parameter sweep')):
        sub = subparsers.add_parser(command, help=help_text)
        sub.add_argument('config', type=str)
        sub.add_argument('--out-dir', type=str, default='.')
        sub.add_argument('--quiet', action='store_true', default=False)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format='%(levelname)s %(name)s: %(message)s')

    runner = run_sweep if args.command == 'sweep' else run_scenario
    try:
        artifacts = runner(args.config, args.out_dir)
    except ConfigError as e:
        print('config error: {}'.format(e), file=sys.stderr)
        return EXIT_CONFIG
    except RetError as e:
        print('solver failure: {}'.format(e), file=sys.stderr)
        return EXIT_SOLVER

    if not args.quiet:
        for path in artifacts:
            print('wrote {}'.format(path))
    return EXIT_OK
