"""
Text boundary of the toolkit: inline strings, symbol-id lists, alignment and
formula text formats, and the `key = value` report layout.
"""

import re
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

from models.alignment import AlignedPair, Alignment, AlignmentKind
from models.errors import FormatError, FormulaError, ParameterError
from models.formula import And, Const, Formula, LitU, LitV, Or
from models.strings import Alphabet, Str

_LITERAL = re.compile(r'^(!?)([uv])(\d+)$')


def parse_fraction(value) -> Fraction:
    """Exact rational from a Fraction, int, '1/4', '0.25' or a float"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10 ** 6)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParameterError(f"not a rational number: {value!r}") from e


def read_argument(value: str) -> str:
    """Inline text, or the contents of a file when the argument starts with @"""
    if value.startswith('@'):
        try:
            with open(value[1:], 'r') as f:
                return f.read().rstrip('\n')
        except OSError as e:
            raise FormatError(f"cannot read {value[1:]}: {e}") from e
    return value


def parse_ids(value: str) -> List[int]:
    """Comma-separated symbol ids, e.g. '0,3,2'; an empty string is the empty word"""
    value = value.strip()
    if not value:
        return []
    try:
        ids = [int(tok) for tok in value.split(',')]
    except ValueError as e:
        raise FormatError(f"malformed symbol-id list {value!r}") from e
    if any(i < 0 for i in ids):
        raise FormatError("symbol ids must be non-negative")
    return ids


def parse_strings(*values: str, ids: bool = False,
                  alphabet: Optional[Alphabet] = None) -> Tuple[Str, ...]:
    """Strings over one shared alphabet, inferred from the inputs unless given"""
    values = [read_argument(v) for v in values]
    if ids:
        symbols = [parse_ids(v) for v in values]
        if alphabet is None:
            size = max((max(s) for s in symbols if s), default=0) + 1
            alphabet = Alphabet(size)
        return tuple(Str(alphabet, s) for s in symbols)
    if alphabet is None:
        alphabet = Alphabet.from_text(*values)
    return tuple(Str(alphabet, alphabet.encode(v)) for v in values)


def format_alignment(a: Alignment, n: int, m: int) -> str:
    """Header `kind n m`, then one `i j [S]` line per pair"""
    lines = [f"{a.kind.value} {n} {m}"]
    for pair in a.pairs:
        lines.append(f"{pair.i} {pair.j} S" if pair.substitution else f"{pair.i} {pair.j}")
    return '\n'.join(lines) + '\n'


def parse_alignment(text: str) -> Tuple[Alignment, int, int]:
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 3:
        raise FormatError("alignment header must read `kind n m`")
    try:
        kind = AlignmentKind(lines[0][0])
        n, m = int(lines[0][1]), int(lines[0][2])
    except ValueError as e:
        raise FormatError(f"malformed alignment header: {e}") from e

    pairs = []
    for fields in lines[1:]:
        if len(fields) not in (2, 3) or (len(fields) == 3 and fields[2] != 'S'):
            raise FormatError(f"malformed alignment line {' '.join(fields)!r}")
        try:
            pairs.append(AlignedPair(int(fields[0]), int(fields[1]), len(fields) == 3))
        except ValueError as e:
            raise FormatError(f"malformed alignment line {' '.join(fields)!r}") from e
    return Alignment(kind, pairs), n, m


def _tokens(text: str) -> Iterator[str]:
    for tok in text.replace('(', ' ( ').replace(')', ' ) ').split():
        yield tok


def parse_formula(text: str) -> Formula:
    """Prefix notation such as `(and (or u0 !v1) 1)`"""
    tokens = list(_tokens(text))
    if not tokens:
        raise FormulaError("empty formula")
    node, used = _parse_node(tokens, 0)
    if used != len(tokens):
        raise FormulaError(f"unexpected trailing input {' '.join(tokens[used:])!r}")
    return node


def _parse_node(tokens: List[str], pos: int) -> Tuple[Formula, int]:
    if pos >= len(tokens):
        raise FormulaError("formula ends too early")
    tok = tokens[pos]
    if tok == '(':
        if pos + 1 >= len(tokens) or tokens[pos + 1] not in ('and', 'or'):
            raise FormulaError("expected `and` or `or` after `(`")
        gate = And if tokens[pos + 1] == 'and' else Or
        children = []
        pos += 2
        while pos < len(tokens) and tokens[pos] != ')':
            child, pos = _parse_node(tokens, pos)
            children.append(child)
        if pos >= len(tokens):
            raise FormulaError("missing `)`")
        if len(children) != 2:
            raise FormulaError(f"gates are binary, got {len(children)} operands")
        return gate(children[0], children[1]), pos + 1
    if tok in ('0', '1'):
        return Const(int(tok)), pos + 1
    match = _LITERAL.match(tok)
    if not match:
        raise FormulaError(f"unknown token {tok!r}")
    negated, side, index = match.groups()
    literal = LitU if side == 'u' else LitV
    return literal(int(index), bool(negated)), pos + 1


def format_formula(node: Formula) -> str:
    if isinstance(node, Const):
        return str(node.value)
    if isinstance(node, (LitU, LitV)):
        prefix = '!' if node.negated else ''
        side = 'u' if isinstance(node, LitU) else 'v'
        return f"{prefix}{side}{node.index}"
    name = 'and' if isinstance(node, And) else 'or'
    return f"({name} {format_formula(node.left)} {format_formula(node.right)})"


def _flatten(prefix: str, value: Any, out: List[Tuple[str, Any]]):
    if isinstance(value, dict):
        for key, inner in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), inner, out)
    elif isinstance(value, (list, tuple)) and any(isinstance(v, (dict, list, tuple)) for v in value):
        for index, inner in enumerate(value):
            _flatten(f"{prefix}.{index}", inner, out)
    else:
        out.append((prefix, value))


def _render_value(value: Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return 'none'
    if isinstance(value, (list, tuple)):
        return ','.join(_render_value(v) for v in value)
    return str(value)


def format_report(report: Dict[str, Any]) -> str:
    """One `key = value` line per leaf; nesting becomes dotted keys"""
    items: List[Tuple[str, Any]] = []
    _flatten('', report, items)
    return ''.join(f"{key} = {_render_value(value)}\n" for key, value in items)


def strings_from_payload(*values, max_length: Optional[int] = None) -> Tuple[Str, ...]:
    """JSON inputs: all plain strings, or all lists of symbol ids"""
    if any(v is None for v in values):
        raise FormatError("missing input string")
    if max_length is not None and any(len(v) > max_length for v in values):
        raise ParameterError(f"inputs are limited to {max_length} symbols")
    if all(isinstance(v, str) for v in values):
        alphabet = Alphabet.from_text(*values)
        return tuple(Str(alphabet, alphabet.encode(v)) for v in values)
    if all(isinstance(v, list) for v in values):
        if not all(isinstance(s, int) and s >= 0 for v in values for s in v):
            raise FormatError("symbol ids must be non-negative integers")
        size = max((max(v) for v in values if v), default=0) + 1
        return tuple(Str(Alphabet(size), v) for v in values)
    raise FormatError("inputs must all be strings or all be symbol-id lists")
