import logging
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import get_config
from models.errors import (
    AlphabetMismatchError, FormulaError, GuardError, ParameterError, RecoveryError
)
from models.formula import (
    And, Assignment, ConcatReduction, Const, Formula, GadgetPair, Gate, LitU, LitV,
    NormalizedFormula, Or, Side, is_leaf, make_gate
)
from models.strings import BINARY, Str
from services.metrics_service import MetricsService

logger = logging.getLogger(__name__)

BASE_K, BASE_T, BASE_F = 2, 2, 1


class GadgetService:
    """Normalized formulas, their LCS gadgets and the binary-alphabet reduction built on them"""

    def __init__(self, app_config=None, metrics: Optional[MetricsService] = None):
        self.config = app_config or get_config()
        self.metrics = metrics or MetricsService(self.config)

    # Formulas

    def evaluate(self, formula: Formula, A: Assignment, B: Assignment) -> bool:
        if isinstance(formula, NormalizedFormula):
            formula = formula.formula
        return _evaluate(formula, A, B)

    def natural_depth(self, formula: Formula) -> int:
        if is_leaf(formula):
            return 1
        return 1 + max(self.natural_depth(formula.left), self.natural_depth(formula.right))

    def is_normalized(self, formula: Formula) -> bool:
        """Alternating gate layers with every literal at the same depth"""
        return _layer_shape(formula) is not None

    def normalize(self, formula: Formula, target_depth: int,
                  top_gate: Optional[Gate] = None) -> NormalizedFormula:
        """
        Pad a formula to target_depth with alternating layers.

        A node whose gate differs from the layer's gate (or a literal above the
        bottom layer) becomes (node GATE identity-tree), where the identity is
        1 under AND and 0 under OR.
        """
        if target_depth < self.natural_depth(formula):
            raise FormulaError(f"target depth {target_depth} is below the natural depth "
                               f"{self.natural_depth(formula)}")
        if target_depth == 1:
            return NormalizedFormula(formula, 1, None)
        if top_gate is None:
            top_gate = Gate.AND if is_leaf(formula) else formula.gate
        padded = _pad(formula, target_depth, Gate(top_gate))
        return NormalizedFormula(padded, target_depth, Gate(top_gate))

    def common_normalization(self, formulas: Sequence[Formula]) -> Tuple[int, Optional[Gate], List[NormalizedFormula]]:
        """Smallest depth and top gate at which every formula normalizes"""
        if not formulas:
            raise FormulaError("no formulas to normalize")
        start = max(self.natural_depth(f) for f in formulas)
        for depth in range(start, 2 * start + 3):
            gates = [None] if depth == 1 else [Gate.AND, Gate.OR]
            for gate in gates:
                try:
                    normalized = [self.normalize(f, depth, gate) for f in formulas]
                except FormulaError:
                    continue
                logger.debug("common normalization at depth %d, top gate %s", depth, gate)
                return depth, gate, normalized
        raise FormulaError("formulas admit no common normalization")

    # Gadgets

    def thresholds(self, phi) -> Tuple[int, int, int]:
        """(t, f, length) of a normalized formula's gadget"""
        phi = self._as_normalized(phi)
        k, t, f = BASE_K, BASE_T, BASE_F
        for level in range(2, phi.depth + 1):
            gate = phi.top_gate if (phi.depth - level) % 2 == 0 else phi.top_gate.alternate
            k, t, f = _combine_shape(gate, k, t, f)
        return t, f, k

    def compile(self, phi, side: str, assignment: Assignment, allow_deep: bool = False) -> Str:
        """g(A, φ) for side 'g' (reads U) or h(B, φ) for side 'h' (reads V)"""
        phi = self._as_normalized(phi)
        self._check_depth(phi.depth, allow_deep)
        expected = {'g': Side.U, 'h': Side.V}.get(side)
        if expected is None:
            raise ParameterError(f"side must be 'g' or 'h', got {side!r}")
        if assignment.side != expected:
            raise ParameterError(f"side {side} reads a {expected.value}-assignment")
        symbols, _, _ = _compile(phi.formula, side, assignment)
        return Str(BINARY, symbols)

    def compile_pair(self, phi, A: Assignment, B: Assignment, allow_deep: bool = False) -> GadgetPair:
        phi = self._as_normalized(phi)
        g = self.compile(phi, 'g', A, allow_deep)
        h = self.compile(phi, 'h', B, allow_deep)
        t, f, _ = self.thresholds(phi)
        return GadgetPair(g, h, t, f, phi.depth)

    def or_gadget(self, left: GadgetPair, right: GadgetPair) -> GadgetPair:
        k, t, f = _shared_shape(left, right)
        g = _or_g(list(left.g.symbols), list(right.g.symbols), k)
        h = _or_h(list(left.h.symbols), list(right.h.symbols), k)
        _, t2, f2 = _combine_shape(Gate.OR, k, t, f)
        return GadgetPair(Str(BINARY, g), Str(BINARY, h), t2, f2, left.depth + 1)

    def and_gadget(self, left: GadgetPair, right: GadgetPair) -> GadgetPair:
        k, t, f = _shared_shape(left, right)
        g = _and_g(list(left.g.symbols), list(right.g.symbols), k, t, f)
        h = _and_h(list(left.h.symbols), list(right.h.symbols), k, t, f)
        _, t2, f2 = _combine_shape(Gate.AND, k, t, f)
        return GadgetPair(Str(BINARY, g), Str(BINARY, h), t2, f2, left.depth + 1)

    def check_gadget(self, phi, A: Assignment, B: Assignment, allow_deep: bool = False) -> Dict:
        """LCS(g, h) against t when φ(A, B) holds and f otherwise"""
        phi = self._as_normalized(phi)
        pair = self.compile_pair(phi, A, B, allow_deep)
        value = self.evaluate(phi.formula, A, B)
        lcs = self.metrics.lcs_length(pair.g, pair.h)
        expected = pair.t if value else pair.f
        return {
            'value': value,
            'lcs': lcs,
            'expected': expected,
            't': pair.t,
            'f': pair.f,
            'k': pair.k,
            'balanced': _balanced(pair.g.symbols) and _balanced(pair.h.symbols),
            'ok': lcs == expected
        }

    # Reductions

    def build_lcs_formula(self, n: int, k_threshold: int, bits_per_symbol: int) -> Formula:
        """
        Formula over U = bits of X and V = bits of Y, both of n symbols, true
        iff LCS(X, Y) >= k_threshold. Bit b of symbol i is variable i*bits + b.
        """
        if n > self.config.FORMULA_MAX_SYMBOLS:
            raise GuardError(f"n={n} exceeds FORMULA_MAX_SYMBOLS={self.config.FORMULA_MAX_SYMBOLS}")
        if n < 0 or k_threshold < 0 or bits_per_symbol < 1:
            raise ParameterError("n and k_threshold must be non-negative and bits_per_symbol positive")
        if k_threshold == 0:
            return Const(1)
        if k_threshold > n:
            return Const(0)
        builder = _LcsFormulaBuilder(n, bits_per_symbol)
        if k_threshold == n:
            return builder.equality()
        if k_threshold == 1:
            return builder.shared_symbol()
        return builder.expand(k_threshold)

    def concat_reduction(self, pairs: Sequence[GadgetPair], M: Optional[int] = None) -> ConcatReduction:
        """G = g_1 0^M 1^M g_2 ... g_n and likewise H, with R = 2M(n-1) + nF and S = T - F"""
        if not pairs:
            raise ParameterError("concat_reduction needs at least one gadget pair")
        shapes = {p.shape for p in pairs}
        if len(shapes) != 1:
            raise ParameterError(f"gadget pairs disagree on (k, t, f): {sorted(shapes)}")
        k, t, f = shapes.pop()
        n = len(pairs)
        if M is None:
            M = n * k
        separator = [0] * M + [1] * M
        g_symbols: List[int] = list(pairs[0].g.symbols)
        h_symbols: List[int] = list(pairs[0].h.symbols)
        for pair in pairs[1:]:
            g_symbols.extend(separator)
            g_symbols.extend(pair.g.symbols)
            h_symbols.extend(separator)
            h_symbols.extend(pair.h.symbols)
        return ConcatReduction(Str(BINARY, g_symbols), Str(BINARY, h_symbols),
                               R=2 * M * (n - 1) + n * f, S=t - f, M=M, thresholds=n)

    def binary_reduce_and_recover(self, x: Str, y: Str, bits: Optional[int] = None) -> Dict:
        """LCS(x, y) recovered as (LCS(G, H) - R) / S from the gadget strings"""
        if x.alphabet != y.alphabet:
            raise AlphabetMismatchError("x and y use different alphabets")
        n = len(x)
        if len(y) != n:
            raise ParameterError("binary reduction needs |x| == |y|")
        if n < 1:
            raise ParameterError("binary reduction needs at least one symbol")
        if n > self.config.RECOVERY_MAX_SYMBOLS:
            raise GuardError(f"n={n} exceeds RECOVERY_MAX_SYMBOLS={self.config.RECOVERY_MAX_SYMBOLS}")
        needed = max(1, (x.alphabet.size - 1).bit_length())
        bits = needed if bits is None else bits
        if bits < needed:
            raise ParameterError(f"{x.alphabet.size} symbols need {needed} bits, got {bits}")
        if bits > self.config.RECOVERY_MAX_BITS:
            raise GuardError(f"bits={bits} exceeds RECOVERY_MAX_BITS={self.config.RECOVERY_MAX_BITS}")

        formulas = [self.build_lcs_formula(n, t, bits) for t in range(1, n + 1)]
        depth, gate, normalized = self.common_normalization(formulas)
        if depth > self.config.RECOVERY_MAX_DEPTH:
            raise GuardError(f"recovery needs depth {depth} > RECOVERY_MAX_DEPTH={self.config.RECOVERY_MAX_DEPTH}")

        A = Assignment(Side.U, symbol_bits(x.symbols, bits))
        B = Assignment(Side.V, symbol_bits(y.symbols, bits))
        pairs = [self.compile_pair(phi, A, B, allow_deep=True) for phi in normalized]
        reduction = self.concat_reduction(pairs)
        kernel = self.metrics.lcs_kernel_used(reduction.G, reduction.H)
        lcs = self.metrics.lcs_length(reduction.G, reduction.H)
        recovered, remainder = reduction.decode(lcs)
        if remainder or not 0 <= recovered <= n:
            raise RecoveryError(
                f"LCS(G,H)={lcs} does not decode: R={reduction.R}, S={reduction.S}, "
                f"quotient={recovered}, remainder={remainder}"
            )
        logger.info("recovered LCS %d from strings of length %d", recovered, reduction.N)
        return {
            'recovered': recovered,
            'lcs_gh': lcs,
            'R': reduction.R,
            'S': reduction.S,
            'M': reduction.M,
            'N': reduction.N,
            'depth': depth,
            'top_gate': gate.value if gate else None,
            'bits': bits,
            'kernel': kernel,
            'G': reduction.G,
            'H': reduction.H
        }

    def _as_normalized(self, phi) -> NormalizedFormula:
        if isinstance(phi, NormalizedFormula):
            if _layer_shape(phi.formula) != (phi.depth, phi.top_gate):
                raise FormulaError("formula does not match its certified depth and top gate")
            return phi
        shape = _layer_shape(phi)
        if shape is None:
            raise FormulaError("formula is not normalized")
        return NormalizedFormula(phi, shape[0], shape[1])

    def _check_depth(self, depth: int, allow_deep: bool):
        if depth > self.config.GADGET_MAX_DEPTH and not allow_deep:
            raise GuardError(f"depth {depth} exceeds GADGET_MAX_DEPTH={self.config.GADGET_MAX_DEPTH}")


def symbol_bits(symbols: Sequence[int], bits: int) -> List[int]:
    """Little-endian bits of every symbol, symbol i occupying slots i*bits .. i*bits+bits-1"""
    return [(s >> b) & 1 for s in symbols for b in range(bits)]


def _evaluate(node: Formula, A: Assignment, B: Assignment) -> bool:
    if isinstance(node, Const):
        return bool(node.value)
    if isinstance(node, LitU):
        return bool(A.value(node.index)) != node.negated
    if isinstance(node, LitV):
        return bool(B.value(node.index)) != node.negated
    if isinstance(node, And):
        return _evaluate(node.left, A, B) and _evaluate(node.right, A, B)
    return _evaluate(node.left, A, B) or _evaluate(node.right, A, B)


def _layer_shape(node: Formula):
    """(depth, top gate) of a normalized formula, None otherwise"""
    if is_leaf(node):
        return 1, None
    left = _layer_shape(node.left)
    right = _layer_shape(node.right)
    if left is None or left != right:
        return None
    depth, child_gate = left
    if child_gate == node.gate:
        return None
    return depth + 1, node.gate


def _const_tree(value: int, depth: int, gate: Gate) -> Formula:
    if depth == 1:
        return Const(value)
    child = _const_tree(value, depth - 1, gate.alternate)
    return make_gate(gate, child, child)


def _pad(node: Formula, depth: int, gate: Gate) -> Formula:
    if depth == 1:
        if not is_leaf(node):
            raise FormulaError("a gate cannot sit on the literal layer")
        return node
    if not is_leaf(node) and node.gate == gate:
        return make_gate(gate, _pad(node.left, depth - 1, gate.alternate),
                         _pad(node.right, depth - 1, gate.alternate))
    return make_gate(gate, _pad(node, depth - 1, gate.alternate),
                     _const_tree(gate.identity, depth - 1, gate.alternate))


def _combine_shape(gate: Gate, k: int, t: int, f: int) -> Tuple[int, int, int]:
    if gate == Gate.OR:
        return 19 * k, 9 * k + t, 9 * k + f
    return 26 * k + 2 * t + 2 * f, 13 * k + 3 * t + f, 13 * k + 2 * t + 2 * f


def _shared_shape(left: GadgetPair, right: GadgetPair) -> Tuple[int, int, int]:
    if left.shape != right.shape:
        raise ParameterError(f"child gadgets disagree on (k, t, f): {left.shape} vs {right.shape}")
    k, t, f = left.shape
    if k % 2 or not (k // 2 <= f < t):
        raise ParameterError(f"gadget shape {left.shape} violates k even and k/2 <= f < t")
    return k, t, f


def _balanced(symbols: Sequence[int]) -> bool:
    return 2 * sum(symbols) == len(symbols)


def _base(node: Formula, side: str, assignment: Assignment) -> List[int]:
    if side == 'g':
        if isinstance(node, Const):
            value = node.value
        elif isinstance(node, LitU):
            value = assignment.value(node.index) ^ node.negated
        else:
            return [0, 1]
    else:
        if isinstance(node, LitV):
            value = assignment.value(node.index) ^ node.negated
        else:
            return [0, 1]
    return [1 - value, value]


def _compile(node: Formula, side: str, assignment: Assignment) -> Tuple[List[int], int, int]:
    if is_leaf(node):
        return _base(node, side, assignment), BASE_T, BASE_F
    s0, t, f = _compile(node.left, side, assignment)
    s1, _, _ = _compile(node.right, side, assignment)
    k = len(s0)
    if isinstance(node, Or):
        out = _or_g(s0, s1, k) if side == 'g' else _or_h(s0, s1, k)
        gate = Gate.OR
    else:
        out = _and_g(s0, s1, k, t, f) if side == 'g' else _and_h(s0, s1, k, t, f)
        gate = Gate.AND
    _, t2, f2 = _combine_shape(gate, k, t, f)
    return out, t2, f2


def _or_g(g0: List[int], g1: List[int], k: int) -> List[int]:
    half = k // 2
    return [1] * (half + 4 * k) + g0 + [1] * (4 * k) + [0] * (4 * k) + g1 + [0] * (4 * k + half)


def _or_h(h0: List[int], h1: List[int], k: int) -> List[int]:
    # right child first on the h side
    half = k // 2
    return [0] * (half + 4 * k) + h1 + [0] * (4 * k) + [1] * (4 * k) + h0 + [1] * (4 * k + half)


def _and_g(g0: List[int], g1: List[int], k: int, t: int, f: int) -> List[int]:
    return ([0] * (t + f) + [1] * (11 * k + t + f) + [0] * (5 * k) + g0
            + [0] * k + [1] * k + [0] * k + g1 + [0] * (5 * k))


def _and_h(h0: List[int], h1: List[int], k: int, t: int, f: int) -> List[int]:
    return ([0] * (t + f) + [0] * (5 * k) + h0 + [0] * k + [1] * k + [0] * k + h1
            + [0] * (5 * k) + [1] * (11 * k + t + f))


class _LcsFormulaBuilder:
    """LCS-threshold predicates over n symbols of `bits` bits each"""

    def __init__(self, n: int, bits: int):
        self.n = n
        self.bits = bits
        self._memo: Dict[Tuple[int, int, int], Formula] = {}

    def _u(self, i: int, b: int, negated: bool = False) -> LitU:
        return LitU(i * self.bits + b, negated)

    def _v(self, j: int, b: int, negated: bool = False) -> LitV:
        return LitV(j * self.bits + b, negated)

    def symbols_equal(self, i: int, j: int) -> Formula:
        return _conjoin([Or(And(self._u(i, b), self._v(j, b)),
                            And(self._u(i, b, True), self._v(j, b, True)))
                         for b in range(self.bits)])

    def _x_is(self, i: int, s: int) -> Formula:
        return _conjoin([self._u(i, b, (s >> b) & 1 == 0) for b in range(self.bits)])

    def _y_is(self, j: int, s: int) -> Formula:
        return _conjoin([self._v(j, b, (s >> b) & 1 == 0) for b in range(self.bits)])

    def equality(self) -> Formula:
        return _conjoin([self.symbols_equal(i, i) for i in range(self.n)])

    def shared_symbol(self) -> Formula:
        return _disjoin([
            And(_disjoin([self._x_is(i, s) for i in range(self.n)]),
                _disjoin([self._y_is(j, s) for j in range(self.n)]))
            for s in range(2 ** self.bits)
        ])

    def expand(self, threshold: int) -> Formula:
        """L(i, j, m) = (X_i = Y_j ∧ L(i+1, j+1, m-1)) ∨ L(i+1, j, m) ∨ L(i, j+1, m)"""
        return self._lcs_at_least(0, 0, threshold)

    def _lcs_at_least(self, i: int, j: int, m: int) -> Formula:
        if m == 0:
            return Const(1)
        if self.n - i < m or self.n - j < m:
            return Const(0)
        key = (i, j, m)
        if key not in self._memo:
            take = _and(self.symbols_equal(i, j), self._lcs_at_least(i + 1, j + 1, m - 1))
            skip = _or(self._lcs_at_least(i + 1, j, m), self._lcs_at_least(i, j + 1, m))
            self._memo[key] = _or(take, skip)
        return self._memo[key]


def _and(a: Formula, b: Formula) -> Formula:
    if a == Const(0) or b == Const(0):
        return Const(0)
    if a == Const(1):
        return b
    if b == Const(1):
        return a
    return And(a, b)


def _or(a: Formula, b: Formula) -> Formula:
    if a == Const(1) or b == Const(1):
        return Const(1)
    if a == Const(0):
        return b
    if b == Const(0):
        return a
    return Or(a, b)


def _conjoin(items: List[Formula]) -> Formula:
    if len(items) == 1:
        return items[0]
    mid = len(items) // 2
    return And(_conjoin(items[:mid]), _conjoin(items[mid:]))


def _disjoin(items: List[Formula]) -> Formula:
    if len(items) == 1:
        return items[0]
    mid = len(items) // 2
    return Or(_disjoin(items[:mid]), _disjoin(items[mid:]))
