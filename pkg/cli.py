#!/usr/bin/env python3
"""
Command-line surface of the toolkit.

    python cli.py dist edit kitten sitting
    python cli.py code gen --gamma 16 --eps 0.25 --seed 0 out.code
    python cli.py embed binary --x a --y b --bits 1
    python cli.py verify i2e --cases 500 --seed 1

Exit codes: 0 success, 1 a checked invariant failed, 2 usage error, malformed
input, exhausted budget or guard violation.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from config.settings import Config, get_config
from models.alignment import AlignmentKind
from models.errors import StrembedError
from models.formula import Assignment, Side
from services.alphabet_embed_service import AlphabetEmbedService
from services.code_service import CodeService
from services.gadget_service import GadgetService
from services.indel_edit_service import IndelEditService, apx_block_length
from services.metrics_service import MetricsService
from utils.text_io import (
    format_alignment, format_report, parse_alignment, parse_formula, parse_fraction, parse_ids,
    parse_strings, read_argument
)
from utils.verification import SUITES, VerificationEngine

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _decimal(value: Fraction) -> str:
    return f"{float(value):.6f}".rstrip('0').rstrip('.') if value else '0'


def _emit(args, text_lines: List[str], report: Dict):
    if args.format == 'structured':
        sys.stdout.write(format_report(report))
    else:
        for line in text_lines:
            print(line)


def cmd_dist(args, app_config) -> int:
    metrics = MetricsService(app_config)
    x, y = parse_strings(args.x, args.y, ids=args.ids)
    kind = AlignmentKind(args.kind)
    raw = metrics.distance(kind, x, y)
    report = {'kind': kind.value, 'n': len(x), 'm': len(y), 'distance': raw}
    line = str(raw)
    if args.normalized:
        value = metrics.normalized_distance(kind, x, y)
        report['normalized'] = _decimal(value.normalized)
        report['normalized_exact'] = str(value.normalized)
        line = _decimal(value.normalized)
    lines = [line]
    if args.alignment:
        alignment = metrics.optimal_alignment(kind, x, y)
        report['alignment'] = alignment.to_dict()
        lines.append(format_alignment(alignment, len(x), len(y)).rstrip('\n'))
    _emit(args, lines, report)
    return EXIT_OK


def cmd_code(args, app_config) -> int:
    codes = CodeService(app_config)
    if args.action == 'gen':
        if not args.path:
            raise StrembedError("code gen needs an output path")
        params = codes.plan_parameters(args.gamma, args.eps)
        seed = args.seed if args.seed is not None else app_config.get_default_seed()
        code = codes.generate_code(params, seed)
        codes.save_code(code, args.path)
        report = {'path': args.path, 'seed': seed, 'params': params.to_dict(), 'size': len(code)}
        _emit(args, [f"wrote {len(code)} codewords of length {params.k} over {params.sigma_size} "
                     f"symbols to {args.path}"], report)
        return EXIT_OK

    code = codes.load_code(args.path)
    result = codes.validate_code(code)
    verdict = 'pass' if result.passed else 'fail'
    _emit(args, [f"{verdict}: {result.size} codewords, max pairwise LCS {result.max_pairwise_lcs} "
                 f"(budget {result.params.lcs_budget})"], result.to_dict())
    return EXIT_OK if result.passed else EXIT_FAILED


def _embed_alpha(args, app_config):
    codes = CodeService(app_config)
    alpha = AlphabetEmbedService(MetricsService(app_config))
    if not args.code:
        raise StrembedError("embed alpha needs --code FILE")
    code = codes.load_code(args.code)
    inputs = [v for v in (args.x, args.y) if v is not None]
    if not inputs:
        raise StrembedError("embed alpha needs --x")
    strings = parse_strings(*inputs, ids=args.ids)
    embedded = [alpha.embed(code, s) for s in strings]
    report = {'k': code.k, 'n': len(strings[0]), 'N': len(embedded[0]),
              'ex': list(embedded[0].symbols)}
    lines = [','.join(str(s) for s in embedded[0].symbols)]
    if len(strings) == 2:
        bounds = alpha.embedded_distance_bounds(strings[0], strings[1], code)
        report['ey'] = list(embedded[1].symbols)
        report['bounds'] = {key: (_decimal(v) if isinstance(v, Fraction) else v)
                            for key, v in bounds.items()}
        lines.append(','.join(str(s) for s in embedded[1].symbols))
        lines.append(f"distance {_decimal(bounds['original'])} -> {_decimal(bounds['embedded'])} "
                     f"(floor {_decimal(bounds['floor'])})")
    return lines, report


def _embed_i2e(args, app_config, approximate: bool):
    i2e = IndelEditService(MetricsService(app_config))
    if args.y is None:
        raise StrembedError("embed needs --y")
    values = [args.y] if args.x is None else [args.x, args.y]
    strings = parse_strings(*values, ids=args.ids)
    y = strings[-1]
    if approximate:
        epsilon = parse_fraction(args.eps if args.eps is not None else 1)
        padded = i2e.embed_apx(y, epsilon)
    else:
        padded = i2e.embed_exact(y)
    report = {'embedded': padded.text(), 'N': len(padded), 'n': len(y)}
    lines = [padded.text(), f"N={len(padded)} n={len(y)}"]
    if approximate:
        report['k'] = apx_block_length(epsilon)
        lines[-1] += f" k={report['k']}"
    if args.alignment:
        if args.x is None:
            raise StrembedError("--alignment needs --x")
        a, _, _ = parse_alignment(read_argument(args.alignment))
        x = strings[0]
        if approximate:
            constructed, apx_report = i2e.construct_apx_alignment(x, y, epsilon, a)
            report['construction'] = apx_report.to_dict()
            lines.append(f"constructed cost {apx_report.cost}, S total {apx_report.total_s}")
        else:
            constructed = i2e.construct_exact_alignment(x, y, a)
        lines.append(format_alignment(constructed, len(x), len(padded)).rstrip('\n'))
        report['alignment'] = constructed.to_dict()
    if args.x is not None:
        x = strings[0]
        if approximate:
            window = i2e.apx_distance_window(x, y, epsilon)
            report['window'] = {key: (str(v) if isinstance(v, Fraction) else v) for key, v in window.items()}
            lines.append(f"measured {window['measured']} in [{window['low']}, {window['high']}): "
                         f"{'yes' if window['within'] else 'no'}")
        else:
            recovered = i2e.indel_via_exact_embedding(x, y)
            report['indel_distance'] = recovered
            lines.append(f"indel distance {recovered}")
    return lines, report


def _embed_tiskin(args, app_config):
    i2e = IndelEditService(MetricsService(app_config))
    values = [v for v in (args.x, args.y) if v is not None]
    if not values:
        raise StrembedError("embed tiskin needs a string")
    strings = parse_strings(*values, ids=args.ids)
    embedded = [i2e.tiskin_embed(s) for s in strings]
    report = {'embedded': [e.text() for e in embedded]}
    lines = [e.text() for e in embedded]
    if len(strings) == 2:
        report['edit_distance'] = i2e.edit_via_indel(strings[0], strings[1])
        lines.append(f"edit distance {report['edit_distance']}")
    return lines, report


def _embed_binary(args, app_config):
    gadgets = GadgetService(app_config, MetricsService(app_config))
    if args.x is None or args.y is None:
        raise StrembedError("embed binary needs --x and --y")
    x, y = parse_strings(args.x, args.y, ids=args.ids)
    result = gadgets.binary_reduce_and_recover(x, y, args.bits)
    G, H = result.pop('G'), result.pop('H')
    report = dict(result, G=G.text(), H=H.text())
    lines = [G.text(), H.text(),
             f"N={result['N']} R={result['R']} S={result['S']} M={result['M']} "
             f"depth={result['depth']} recovered={result['recovered']}"]
    return lines, report


def _embed_gadget(args, app_config):
    gadgets = GadgetService(app_config, MetricsService(app_config))
    if not args.formula:
        raise StrembedError("embed gadget needs --formula")
    phi = parse_formula(read_argument(args.formula))
    A = Assignment(Side.U, parse_ids(args.u or ''))
    B = Assignment(Side.V, parse_ids(args.v or ''))
    verdict = gadgets.check_gadget(phi, A, B)
    pair = gadgets.compile_pair(phi, A, B)
    report = dict(verdict, g=pair.g.text(), h=pair.h.text())
    lines = [pair.g.text(), pair.h.text(),
             f"k={pair.k} t={pair.t} f={pair.f} value={int(verdict['value'])} lcs={verdict['lcs']}"]
    return lines, report


def cmd_embed(args, app_config) -> int:
    if args.mode == 'alpha':
        lines, report = _embed_alpha(args, app_config)
    elif args.mode == 'gadget':
        lines, report = _embed_gadget(args, app_config)
    elif args.mode == 'tiskin':
        lines, report = _embed_tiskin(args, app_config)
    elif args.mode == 'binary':
        lines, report = _embed_binary(args, app_config)
    else:
        lines, report = _embed_i2e(args, app_config, approximate=args.mode == 'i2e-apx')
    _emit(args, lines, dict({'mode': args.mode}, **report))
    return EXIT_OK


def cmd_verify(args, app_config) -> int:
    engine = VerificationEngine(app_config)
    overrides = {'epsilon': args.eps, 'depth': args.depth, 'gamma': args.gamma,
                 'max_length': args.max_length}
    if args.suite == 'all':
        reports = [engine.run_suite(suite, args.cases, args.seed, **overrides) for suite in SUITES]
    else:
        reports = [engine.run_suite(args.suite, args.cases, args.seed, **overrides)]

    lines = []
    for report in reports:
        for name, check in report['checks'].items():
            status = 'PASS' if check['pass'] else 'FAIL'
            detail = f"{check['checked']} checked"
            if 'worst_ratio' in check:
                detail += f", worst ratio {check['worst_ratio']}"
            lines.append(f"{status} {report['suite']}.{name} ({detail})")
            if 'counterexample' in check:
                lines.append(f"     counterexample: {check['counterexample']}")
    combined = reports[0] if len(reports) == 1 else {
        'pass': all(r['pass'] for r in reports), 'suites': {r['suite']: r for r in reports}
    }
    _emit(args, lines, combined)
    return EXIT_OK if all(r['pass'] for r in reports) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['text', 'structured'], default='text')
    common.add_argument('--seed', type=int, default=None)
    common.add_argument('--ids', action='store_true', help='inputs are comma-separated symbol ids')

    parser = argparse.ArgumentParser(prog='strembed', description='String-metric reductions toolkit')
    commands = parser.add_subparsers(dest='command', required=True)

    dist = commands.add_parser('dist', parents=[common], help='edit or indel distance')
    dist.add_argument('kind', choices=[k.value for k in AlignmentKind])
    dist.add_argument('x')
    dist.add_argument('y')
    dist.add_argument('--normalized', action='store_true')
    dist.add_argument('--alignment', action='store_true', help='also print an optimal alignment')
    dist.set_defaults(handler=cmd_dist)

    code = commands.add_parser('code', parents=[common], help='generate or check an indel code')
    code.add_argument('action', choices=['gen', 'check'])
    code.add_argument('path', nargs='?')
    code.add_argument('--gamma', type=int, default=16)
    code.add_argument('--eps', default='1/4')
    code.set_defaults(handler=cmd_code)

    embed = commands.add_parser('embed', parents=[common], help='apply one of the embeddings')
    embed.add_argument('mode', choices=['alpha', 'i2e-exact', 'i2e-apx', 'tiskin', 'binary', 'gadget'])
    embed.add_argument('string', nargs='?', help='input string (same as --x)')
    embed.add_argument('--x')
    embed.add_argument('--y')
    embed.add_argument('--code', help='code file for the alphabet embedding')
    embed.add_argument('--eps')
    embed.add_argument('--bits', type=int)
    embed.add_argument('--alignment', help='optimal indel alignment of x and y (text or @file)')
    embed.add_argument('--formula', help='normalized formula in prefix notation (text or @file)')
    embed.add_argument('--u', help='U-assignment bits, e.g. 1,0')
    embed.add_argument('--v', help='V-assignment bits')
    embed.set_defaults(handler=cmd_embed)

    verify = commands.add_parser('verify', parents=[common], help='run a property suite')
    verify.add_argument('suite', choices=list(SUITES) + ['all'])
    verify.add_argument('--cases', type=int)
    verify.add_argument('--eps')
    verify.add_argument('--depth', type=int)
    verify.add_argument('--gamma', type=int)
    verify.add_argument('--max-length', type=int, dest='max_length')
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    app_config = get_config()
    logging.basicConfig(level=getattr(logging, app_config.LOG_LEVEL, logging.WARNING),
                        format=Config.LOG_FORMAT, stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    if getattr(args, 'string', None) is not None and args.x is None:
        args.x = args.string
    try:
        return args.handler(args, app_config)
    except StrembedError as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
