"""Command-line interface for curvetrace."""

import argparse
import json
import logging
import sys
from contextlib import contextmanager
from typing import List, Sequence

from . import __version__
from .config import Config
from .errors import ContractViolation, CurvetraceError, InputError
from .formats import (bundled_names, load_angles, load_dehn, load_graph, load_twists,
                      provenance_header, write_csv, write_json)
from .fourier import intersection_number, isotypes, support_check, twist_phase_check, twist_sign
from .independence import DEFAULT_REL_TOL, build_matrix, rank_report
from .moduli import (build_representation, in_delta, polytope, require_seed, sample_interior,
                     sample_point)
from .suite import Scenario
from .surface import (AnnulusCrossing, CoreLoop, TrinionArc, enumerate_dehn, require_admissible,
                      require_valid_graph, route, validate_dehn, validate_graph)
from .trace_eval import route_words, trace_of_route

logger = logging.getLogger(__name__)


def main():
    """Main CLI entry point."""
    sys.exit(run(sys.argv[1:]))


def run(argv: Sequence[str]) -> int:
    """Dispatch one command line.

    Args:
        argv: Arguments after the program name

    Returns:
        Exit code: 0 success, 1 contract violation, 2 input error
    """
    argv = list(argv)
    if not argv:
        print_help()
        return 0

    command = argv[0]

    commands = {
        'validate': cmd_validate,
        'route': cmd_route,
        'eval': cmd_eval,
        'sample': cmd_sample,
        'delta': cmd_delta,
        'fourier': cmd_fourier,
        'intersect': cmd_intersect,
        'twist-check': cmd_twist_check,
        'independence': cmd_independence,
        'suite': cmd_suite,
        'config': cmd_config,
        'help': lambda _: print_help(),
        '--help': lambda _: print_help(),
        '-h': lambda _: print_help(),
    }

    if command == '--version':
        print(f"curvetrace {__version__}")
        return 0

    if command not in commands:
        print(f"Unknown command: {command}", file=sys.stderr)
        print_help(sys.stderr)
        return 2

    try:
        return commands[command](argv) or 0
    except CurvetraceError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        # argparse usage errors
        return e.code if isinstance(e.code, int) else 2


def print_help(stream=None):
    """Print help message."""
    help_text = f"""
curvetrace {__version__} - trace functions of multicurves on SU(2) character varieties

Usage:
  curvetrace <command> [options]

Commands:
  validate        Check a graph (and optionally a Dehn parameter)
  route           List the components of a multicurve
  eval            Evaluate a trace function at given angles and twists
  sample          Draw a seeded interior representation point
  delta           Classify angles against the moment polytope
  fourier         Isotype table of a trace function
  intersect       Intersection numbers recovered from isotypes
  twist-check     Fractional Dehn twist phase law
  independence    Rank witness for linear independence
  suite           Run the acceptance checks on a surface
  config          Manage configuration
  help            Show this help message

Graphs may be paths or bundled names: {', '.join(bundled_names())}

Examples:
  curvetrace validate genus2
  curvetrace route genus2 m200
  curvetrace fourier genus2 m200 --seed 7
  curvetrace independence one_holed_torus --m-max 2 --t-max 2 --seed 1
  curvetrace suite genus2 --seed 1
"""
    print(help_text, file=stream or sys.stdout)


def _parser(command: str, description: str, seed: bool = False,
            output: bool = True) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=f"curvetrace {command}", description=description)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="-v for progress, -vv for debug output")
    if seed:
        parser.add_argument('--seed', type=int, default=None,
                            help="sampling seed (default: config `seed`)")
        parser.add_argument('--margin', type=float, default=None,
                            help="interior margin (default: config `sampling.margin`)")
    if output:
        parser.add_argument('--output', '-o', default=None, help="write CSV here instead of stdout")
    return parser


def _parse(parser: argparse.ArgumentParser, argv: List[str]):
    args = parser.parse_args(argv[1:])
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s', force=True)
    logger.debug("arguments: %s", vars(args))
    return args


def _settings(args):
    config = Config.load()
    seed = getattr(args, 'seed', None)
    margin = getattr(args, 'margin', None)
    return (config,
            require_seed(config['seed'] if seed is None else seed),
            config['sampling']['margin'] if margin is None else margin)


@contextmanager
def _output(args):
    if args.output:
        try:
            stream = open(args.output, 'w', newline='')
        except OSError as e:
            raise InputError(f"cannot write {args.output}: {e}")
        try:
            yield stream
        finally:
            stream.close()
    else:
        yield sys.stdout


def _emit(args, argv, seed, columns, rows, trailer=()):
    header = provenance_header(['curvetrace'] + list(argv), seed)
    with _output(args) as stream:
        write_csv(stream, header, columns, rows, trailer)
    if args.output:
        print(f"✓ Wrote {args.output}", file=sys.stderr)


def _base_point(config, g, seed, margin):
    sampling = config['sampling']
    return sample_point(g, margin, seed, sampling['max_draws'], sampling['batch_size'])


def _graph(path):
    g = load_graph(path)
    require_valid_graph(g)
    return g


def _curve(g, path):
    d = load_dehn(path)
    require_admissible(g, d)
    return d


def cmd_validate(argv: List[str]) -> int:
    """Check graph invariants and Dehn admissibility."""
    parser = _parser('validate', "Check a graph and optionally a Dehn parameter.", output=False)
    parser.add_argument('graph')
    parser.add_argument('--dehn', default=None)
    args = _parse(parser, argv)

    g = load_graph(args.graph)
    violations = validate_graph(g)
    if not violations and args.dehn:
        violations = validate_dehn(g, load_dehn(args.dehn))
    if violations:
        for violation in violations:
            print(violation)
        print(f"❌ {len(violations)} violation(s)", file=sys.stderr)
        return 2
    print(f"✓ {args.graph}: {len(g.trinions())} trinion(s), "
          f"{len(g.internal_edges())} internal and {len(g.external_edges())} external edge(s), "
          f"Euler characteristic {g.euler_characteristic()}", file=sys.stderr)
    if args.dehn:
        print(f"✓ {args.dehn}: admissible", file=sys.stderr)
    return 0


def cmd_route(argv: List[str]) -> int:
    """List components step by step."""
    parser = _parser('route', "Route a multicurve and list its components.")
    parser.add_argument('graph')
    parser.add_argument('dehn')
    parser.add_argument('--words', action='store_true', help="one symbolic word per component")
    args = _parse(parser, argv)

    g = _graph(args.graph)
    r = route(g, _curve(g, args.dehn))
    trailer = [f"components: {len(r)}"]
    if args.words:
        rows = [[n, word] for n, word in enumerate(route_words(r))]
        _emit(args, argv, None, ['component', 'word'], rows, trailer)
        return 0

    rows = []
    for n, component in enumerate(r.components):
        for s, step in enumerate(component):
            if isinstance(step, TrinionArc):
                rows.append([n, s, 'arc', step.trinion, step.arc_type.label,
                             step.parallel, '', '', step.forward])
            elif isinstance(step, AnnulusCrossing):
                rows.append([n, s, 'crossing', step.edge, '', step.inlet, step.outlet,
                             step.winding, step.forward])
            elif isinstance(step, CoreLoop):
                rows.append([n, s, 'core', step.edge, '', '', '', '', ''])
    columns = ['component', 'step', 'kind', 'where', 'arc', 'index', 'outlet', 'winding', 'forward']
    _emit(args, argv, None, columns, rows, trailer)
    return 0


def cmd_eval(argv: List[str]) -> int:
    """Evaluate a trace function."""
    parser = _parser('eval', "Evaluate T_C(m,t) at given angles and twists.")
    parser.add_argument('graph')
    parser.add_argument('dehn')
    parser.add_argument('--angles', required=True)
    parser.add_argument('--twists', default=None)
    args = _parse(parser, argv)

    g = _graph(args.graph)
    d = _curve(g, args.dehn)
    rep = build_representation(g, load_angles(args.angles, g), load_twists(args.twists, g))
    value = trace_of_route(rep, route(g, d))
    rows = [[n, factor] for n, factor in enumerate(value.factors)]
    rows.append(['total', value.value])
    _emit(args, argv, None, ['component', 'factor'], rows)
    return 0


def cmd_sample(argv: List[str]) -> int:
    """Draw an interior representation point."""
    parser = _parser('sample', "Sample an interior representation point.", seed=True)
    parser.add_argument('graph')
    parser.add_argument('--angles-out', default=None, help="also save angles as JSON")
    parser.add_argument('--twists-out', default=None, help="also save twists as JSON")
    args = _parse(parser, argv)

    config, seed, margin = _settings(args)
    g = _graph(args.graph)
    sampling = config['sampling']
    alpha, theta = sample_interior(g, margin, seed, sampling['max_draws'], sampling['batch_size'])
    rep = build_representation(g, alpha, theta)
    data = rep.to_dict()
    rows = [['angle', e, v] for e, v in data['angles'].items()]
    rows += [['twist', e, v] for e, v in data['twists'].items()]
    for trinion, matrices in data['matrices'].items():
        for name, entries in matrices.items():
            for i, row in enumerate(entries):
                for j, value in enumerate(row):
                    part = 're' if j % 2 == 0 else 'im'
                    rows.append(['matrix', f"{trinion}.{name}[{i}][{j // 2}].{part}", value])
    _emit(args, argv, seed, ['field', 'key', 'value'], rows)
    if args.angles_out:
        write_json(args.angles_out, data['angles'])
    if args.twists_out:
        write_json(args.twists_out, data['twists'])
    return 0


def cmd_delta(argv: List[str]) -> int:
    """Classify angles against the moment polytope."""
    parser = _parser('delta', "Classify angles: interior, boundary or outside.")
    parser.add_argument('graph')
    parser.add_argument('angles')
    args = _parse(parser, argv)

    config, _, _ = _settings(args)
    tol = config['tolerances']['delta_boundary']
    g = _graph(args.graph)
    alpha = load_angles(args.angles, g)
    delta = polytope(g)
    slack = delta.slack(alpha.as_array(delta.edges))
    rows = [[trinion, face, float(s), bool(abs(s) <= tol)]
            for (trinion, face), s in zip(delta.faces, slack)]
    classification = in_delta(g, alpha, tol)
    _emit(args, argv, None, ['trinion', 'face', 'slack', 'tight'], rows,
          [f"classification: {classification.value}"])
    return 0


def cmd_fourier(argv: List[str]) -> int:
    """Isotype table of a trace function."""
    parser = _parser('fourier', "Fourier isotypes along the torus orbit of a sampled point.",
                     seed=True)
    parser.add_argument('graph')
    parser.add_argument('dehn')
    parser.add_argument('--edge', action='append', default=None,
                        help="restrict to this edge's circle action (repeatable)")
    parser.add_argument('--grid', type=int, nargs='+', default=None,
                        help="grid half-width N per analyzed edge, or one N for all")
    args = _parse(parser, argv)

    config, seed, margin = _settings(args)
    g = _graph(args.graph)
    d = _curve(g, args.dehn)
    edges = [e for e in g.internal_edges() if args.edge is None or e in args.edge]
    if args.edge:
        unknown = [e for e in args.edge if e not in g.internal_edges()]
        if unknown:
            raise InputError(f"not an internal edge: {', '.join(unknown)}")
    grid = None
    if args.grid:
        if len(args.grid) == 1:
            grid = {e: args.grid[0] for e in edges}
        elif len(args.grid) == len(edges):
            grid = dict(zip(edges, args.grid))
        else:
            raise InputError(f"--grid takes 1 or {len(edges)} values")

    rep = _base_point(config, g, seed, margin)
    table = isotypes(g, rep, route(g, d), grid, edges=edges)
    rows = [list(k) + [c.real, c.imag, abs(c)] for k, c in table.items()]
    columns = [f"k_{e}" for e in table.edges] + ['real', 'imag', 'modulus']

    trailer = []
    failed = False
    if all(table.grid[e] > table.bound[e] for e in table.edges):
        report = support_check(table, d, config['tolerances']['vanishing'])
        trailer.append(f"support: max |c_k| beyond m = {report.max_modulus:.3e} "
                       f"({'pass' if report.passed else 'FAIL'})")
        failed = not report.passed
    _emit(args, argv, seed, columns, rows, trailer)
    return 1 if failed else 0


def cmd_intersect(argv: List[str]) -> int:
    """Recover intersection numbers with pants curves."""
    parser = _parser('intersect', "Intersection numbers from single-circle isotypes.", seed=True)
    parser.add_argument('graph')
    parser.add_argument('dehn')
    parser.add_argument('--edge', action='append', default=None)
    parser.add_argument('--k-max', type=int, default=None)
    args = _parse(parser, argv)

    config, seed, margin = _settings(args)
    g = _graph(args.graph)
    d = _curve(g, args.dehn)
    edges = args.edge or list(g.internal_edges())
    unknown = [e for e in edges if e not in g.internal_edges()]
    if unknown:
        raise InputError(f"not an internal edge: {', '.join(unknown)}")
    rep = _base_point(config, g, seed, margin)
    r = route(g, d)
    rows = []
    mismatch = False
    for edge in edges:
        found = intersection_number(g, rep, edge, r, args.k_max,
                                    config['tolerances']['nonvanishing'])
        rows.append([edge, found, d.m_of(edge)])
        mismatch = mismatch or found != d.m_of(edge)
    _emit(args, argv, seed, ['edge', 'intersection', 'm'], rows)
    return 1 if mismatch else 0


def cmd_twist_check(argv: List[str]) -> int:
    """Fractional Dehn twist phase law along one edge."""
    parser = _parser('twist-check', "Residual of the fractional twist phase law.", seed=True)
    parser.add_argument('graph')
    parser.add_argument('dehn')
    parser.add_argument('--edge', required=True)
    parser.add_argument('--ell', type=int, nargs='+', default=[1])
    args = _parse(parser, argv)

    config, seed, margin = _settings(args)
    tol = config['tolerances']['vanishing']
    g = _graph(args.graph)
    d = _curve(g, args.dehn)
    rep = _base_point(config, g, seed, margin)
    k = d.m_of(args.edge)
    rows = []
    for ell in args.ell:
        residual = twist_phase_check(g, rep, d, args.edge, ell)
        rows.append([args.edge, k, ell, twist_sign(ell, k), residual])
    _emit(args, argv, seed, ['edge', 'k', 'ell', 'sign', 'residual'], rows)
    return 1 if any(row[-1] > tol for row in rows) else 0


def cmd_independence(argv: List[str]) -> int:
    """Rank witness for the independence of multicurve traces."""
    parser = _parser('independence', "Singular values of the evaluation matrix.", seed=True)
    parser.add_argument('graph')
    parser.add_argument('--m-max', type=int, default=1)
    parser.add_argument('--t-max', type=int, default=1)
    parser.add_argument('--samples', type=int, default=None,
                        help="rows (default: oversampling x columns)")
    parser.add_argument('--tol', type=float, default=None)
    parser.add_argument('--allow-large', action='store_true',
                        help="lift the column cap")
    args = _parse(parser, argv)

    config, seed, margin = _settings(args)
    g = _graph(args.graph)
    params = enumerate_dehn(g, args.m_max, args.t_max)
    samples = args.samples or config['sampling']['oversampling'] * len(params)
    rel_tol = args.tol if args.tol is not None else config['tolerances'].get('rank_rel_tol', DEFAULT_REL_TOL)
    matrix = build_matrix(g, params, samples, seed, margin, threads=Config.thread_count(config),
                          max_columns=config['independence']['max_columns'],
                          allow_large=args.allow_large)
    report = rank_report(matrix, rel_tol)
    top = report.singular_values[0] if report.singular_values.size else 1.0
    rows = [[n, s, s / top if top else 0.0] for n, s in enumerate(report.singular_values)]
    trailer = [f"verdict: {report.verdict} (rank {report.rank} of {report.columns}, "
               f"rel_tol {rel_tol:g})"]
    _emit(args, argv, seed, ['index', 'singular_value', 'relative'], rows, trailer)
    return 0 if report.independent else 1


def _tolerance(text: str):
    key, sep, value = text.partition('=')
    try:
        if not sep:
            raise ValueError(text)
        return key, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")


def cmd_suite(argv: List[str]) -> int:
    """Run the acceptance checks."""
    parser = _parser('suite', "Run the acceptance checks on one surface.")
    parser.add_argument('graph')
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--quick', action='store_true', help="desk-test sweep sizes")
    parser.add_argument('--dehn', action='append', default=[],
                        help="sweep this parameter file instead of the enumeration (repeatable)")
    parser.add_argument('--grid', type=int, default=None,
                        help="lower bound for the Fourier grid half-width of the sweep")
    parser.add_argument('--tol', type=_tolerance, action='append', default=[],
                        metavar='KEY=VALUE', help="override one tolerance (repeatable)")
    args = _parse(parser, argv)

    config, seed, _ = _settings(args)
    scenario = Scenario(graph_path=args.graph, seed=seed, params=tuple(args.dehn),
                        tolerances=dict(args.tol), grid=args.grid, output=args.output,
                        quick=args.quick)
    report = scenario.run(config)
    for name in report.skipped:
        print(f"- skipped {name}: no internal edges", file=sys.stderr)
    _emit(args, [scenario.command] + argv[1:], scenario.seed,
          ['check', 'passed', 'metric', 'detail'], report.rows())
    status = "✓ all checks passed" if report.passed else "❌ some checks failed"
    print(status, file=sys.stderr)
    if not report.passed:
        raise ContractViolation("suite failed: " + ', '.join(
            r.name for r in report.results if not r.passed))
    return 0


def cmd_config(argv: List[str]) -> int:
    """Manage configuration."""
    if len(argv) < 2 or argv[1] == 'show':
        config = Config.load()
        print(f"Configuration from: {Config.get_config_path()}\n", file=sys.stderr)
        print(json.dumps(config, indent=2))
        return 0

    subcommand = argv[1]

    if subcommand == 'set' and len(argv) >= 4:
        key, value = argv[2], argv[3]
        config = Config.set_value(key, value)
        Config.save(config)
        print(f"✓ Set {key} = {value}")
    elif subcommand == 'get' and len(argv) >= 3:
        print(json.dumps(Config.get_value(argv[2])))
    elif subcommand == 'init':
        Config.create_default()
        print(f"✓ Wrote defaults to {Config.get_config_path()}")
    else:
        print("Usage:")
        print("  curvetrace config show")
        print("  curvetrace config get <key>")
        print("  curvetrace config set <key> <value>")
        print("  curvetrace config init")
        return 2
    return 0


if __name__ == '__main__':
    main()
