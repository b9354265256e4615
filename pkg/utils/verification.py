import logging
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from config.settings import get_config
from models.alignment import AlignedPair, Alignment, AlignmentKind
from models.code import EmbedParams, IndelCode
from models.errors import CodeGenerationError, StrembedError
from models.formula import Assignment, Const, Gate, LitU, LitV, Side, make_gate
from models.strings import Alphabet, BINARY, Str
from services.alignment_service import AlignmentService
from services.alphabet_embed_service import AlphabetEmbedService
from services.code_service import CodeService
from services.gadget_service import GadgetService
from services.indel_edit_service import IndelEditService, apx_guarantees
from services.metrics_service import MetricsService
from services.oracle_service import OracleService
from utils import lcs_kernels
from utils.text_io import parse_fraction

logger = logging.getLogger(__name__)

SUITES = ('metrics', 'code', 'alpha', 'gadgets', 'i2e')


class CheckResult:
    """Pass/fail tally of one invariant with the worst ratio seen and the first counterexample"""

    def __init__(self, name: str, higher_is_worse: bool = True):
        self.name = name
        self.checked = 0
        self.failures = 0
        self.worst: Optional[Fraction] = None
        self.counterexample: Optional[str] = None
        self.higher_is_worse = higher_is_worse

    def record(self, ok: bool, example: Callable[[], str] = None, ratio=None):
        self.checked += 1
        if ratio is not None:
            ratio = Fraction(ratio)
            if self.worst is None or (ratio > self.worst) == self.higher_is_worse and ratio != self.worst:
                self.worst = ratio
        if not ok:
            self.failures += 1
            if self.counterexample is None and example is not None:
                self.counterexample = example()
                logger.warning("%s failed: %s", self.name, self.counterexample)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict:
        report = {'pass': self.passed, 'checked': self.checked, 'failures': self.failures}
        if self.worst is not None:
            report['worst_ratio'] = f"{float(self.worst):.6f}"
        if self.counterexample is not None:
            report['counterexample'] = self.counterexample
        return report


class VerificationEngine:
    """Property suites checking every module against oracles and proven bounds"""

    def __init__(self, app_config=None):
        self.config = app_config or get_config()
        self.metrics = MetricsService(self.config)
        self.oracle = OracleService(self.config)
        self.alignments = AlignmentService()
        self.codes = CodeService(self.config)
        self.alpha = AlphabetEmbedService(self.metrics, self.alignments)
        self.gadgets = GadgetService(self.config, self.metrics)
        self.i2e = IndelEditService(self.metrics, self.alignments)

    def run_suite(self, suite: str, cases: Optional[int] = None, seed: Optional[int] = None,
                  **overrides) -> Dict[str, Any]:
        settings = self.config.get_verify_settings(suite)
        if settings is None:
            raise StrembedError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        if cases is not None:
            settings['cases'] = cases
        settings.update({key: value for key, value in overrides.items()
                         if value is not None and key in settings})
        if seed is None:
            seed = self.config.get_default_seed()

        runner = getattr(self, f"_suite_{suite}")
        checks: List[CheckResult] = runner(np.random.default_rng(seed), settings)
        return {
            'suite': suite,
            'seed': seed,
            'parameters': {key: str(value) for key, value in settings.items()},
            'pass': all(c.passed for c in checks),
            'checks': {c.name: c.to_dict() for c in checks}
        }

    def run_all(self, seed: Optional[int] = None) -> Dict[str, Any]:
        reports = {suite: self.run_suite(suite, seed=seed) for suite in SUITES}
        return {'pass': all(r['pass'] for r in reports.values()), 'suites': reports}

    # Suites

    def _suite_metrics(self, rng, settings) -> List[CheckResult]:
        alphabet = Alphabet(3, ['a', 'b', 'c'])
        oracle_edit = CheckResult('oracle_edit')
        oracle_lcs = CheckResult('oracle_lcs')
        indel_identity = CheckResult('indel_lcs_identity')
        sandwich = CheckResult('edit_indel_sandwich')
        axioms = CheckResult('metric_axioms')
        alignment_cost = CheckResult('optimal_alignment_cost')
        fast_path = CheckResult('fast_path_agreement')
        exhaustive = CheckResult('oracle_exhaustive')

        words = [Str(alphabet, w) for n in range(settings['exhaustive_length'] + 1)
                 for w in product(range(alphabet.size), repeat=n)]
        for x in words:
            for y in words:
                exhaustive.record(
                    self.oracle.brute_edit(x, y) == self.metrics.edit_distance(x, y)
                    and self.oracle.brute_lcs(x, y) == self.metrics.lcs_length(x, y),
                    lambda: f"x={x.text()!r} y={y.text()!r}")

        for _ in range(settings['cases']):
            x = _random_str(rng, alphabet, settings['max_length'])
            y = _random_str(rng, alphabet, settings['max_length'])
            z = _random_str(rng, alphabet, settings['max_length'])
            shown = lambda: f"x={x.text()!r} y={y.text()!r}"
            edit = self.metrics.edit_distance(x, y)
            lcs = self.metrics.lcs_length(x, y)
            indel = self.metrics.indel_distance(x, y)

            if len(x) + len(y) <= self.config.ORACLE_MAX_TOTAL_LENGTH:
                oracle_edit.record(edit == self.oracle.brute_edit(x, y), shown)
                oracle_lcs.record(lcs == self.oracle.brute_lcs(x, y), shown)
            indel_identity.record(indel == len(x) + len(y) - 2 * lcs, shown)
            sandwich.record(edit <= indel <= 2 * edit, shown,
                            Fraction(indel, edit) if edit else None)

            ok = True
            for distance in (self.metrics.edit_distance, self.metrics.indel_distance):
                dxy, dyx = distance(x, y), distance(y, x)
                ok &= (dxy == 0) == (x == y) and dxy == dyx
                ok &= distance(x, z) <= dxy + distance(y, z)
            axioms.record(ok, lambda: f"{shown()} z={z.text()!r}")

            for kind, expected in ((AlignmentKind.EDIT, edit), (AlignmentKind.INDEL, indel)):
                a = self.metrics.optimal_alignment(kind, x, y)
                valid = bool(self.alignments.validate_alignment(a, x, y))
                alignment_cost.record(valid and self.alignments.cost(a, x, y).total == expected,
                                      lambda: f"{kind.value} {shown()}")

        binary = Alphabet(2, ['0', '1'])
        for _ in range(settings['fast_path_cases']):
            length = settings['fast_path_length']
            x = Str(binary, rng.integers(0, 2, size=int(rng.integers(1, length + 1))))
            y = Str(binary, rng.integers(0, 2, size=int(rng.integers(1, length + 1))))
            reference = lcs_kernels.dp_lcs(x.symbols, y.symbols)
            fast = {lcs_kernels.lcs_with_kernel(kernel, x.symbols, y.symbols)
                    for kernel in (lcs_kernels.BIT_PARALLEL, lcs_kernels.RUN_LENGTH)}
            fast_path.record(fast == {reference} and self.metrics.lcs_length(x, y) == reference,
                             lambda: f"|x|={len(x)} |y|={len(y)}")

        return [oracle_edit, oracle_lcs, exhaustive, indel_identity, sandwich, axioms, alignment_cost,
                fast_path]

    def _suite_code(self, rng, settings) -> List[CheckResult]:
        generated = CheckResult('generation_succeeds')
        valid = CheckResult('pairwise_lcs_below_budget')
        lengths = CheckResult('codeword_length_k')
        params = self.codes.plan_parameters(settings['gamma'], settings['epsilon'])
        base_seed = int(rng.integers(0, 2 ** 31))
        failures = 0

        for case in range(settings['cases']):
            seed = base_seed + case
            try:
                code = self.codes.generate_code(params, seed)
            except CodeGenerationError:
                failures += 1
                continue
            report = self.codes.validate_code(code)
            valid.record(report.passed, lambda: f"seed={seed} max_lcs={report.max_pairwise_lcs}",
                         Fraction(report.max_pairwise_lcs) / params.lcs_budget)
            lengths.record(report.lengths_ok, lambda: f"seed={seed}")

        rate = Fraction(settings['cases'] - failures, max(settings['cases'], 1))
        generated.checked = settings['cases']
        generated.failures = 0 if rate >= Fraction(99, 100) else failures
        if generated.failures:
            generated.counterexample = f"success rate {float(rate):.3f}"
        return [generated, valid, lengths]

    def _suite_alpha(self, rng, settings) -> List[CheckResult]:
        params = self.codes.plan_parameters(settings['gamma'], settings['epsilon'])
        code = self.codes.generate_code(params, int(rng.integers(0, 2 ** 31)))
        epsilon = params.epsilon
        gamma = Alphabet(settings['gamma'])

        upper = CheckResult('sandwich_upper')
        lower = CheckResult('sandwich_lower', higher_is_worse=False)
        push = CheckResult('push_scales_cost')
        structured = CheckResult('block_structure_predicate')
        inflation = CheckResult('block_structure_inflation')
        lift = CheckResult('lift_round_trip')
        contracted = CheckResult('contracted_pair')
        plurality = CheckResult('plurality_collision')
        empty_floor = CheckResult('empty_distance_floor')

        bound = (1 + 4 * epsilon) ** 2
        for case in range(settings['cases']):
            x = _random_str(rng, gamma, settings['max_length'], min_length=1)
            y = _random_str(rng, gamma, settings['max_length'], min_length=1)
            shown = lambda: f"x={list(x.symbols)} y={list(y.symbols)}"
            bounds = self.alpha.embedded_distance_bounds(x, y, code)
            ratio = bounds['embedded'] / bounds['original'] if bounds['original'] else None
            upper.record(bounds['upper_ok'], shown, ratio)
            lower.record(bounds['lower_ok'], shown, ratio)

            a = self.metrics.optimal_alignment(AlignmentKind.INDEL, x, y)
            pushed = self.alpha.push_alignment(a, x, y, code)
            ex, ey = self.alpha.embed(code, x), self.alpha.embed(code, y)
            push.record(self.alignments.cost(pushed, ex, ey).total
                        == code.k * self.alignments.cost(a, x, y).total, shown)

        for case in range(settings['alignments']):
            x = _random_str(rng, gamma, settings['max_length'], min_length=1)
            y = _random_str(rng, gamma, settings['max_length'], min_length=1)
            if case % 2:
                y = _mutate(rng, x, gamma)
            ex, ey = self.alpha.embed(code, x), self.alpha.embed(code, y)
            a = _random_alignment(rng, ex, ey)
            shown = lambda: f"x={list(x.symbols)} y={list(y.symbols)} pairs={len(a)}"
            out = self.alpha.block_structure(a, ex, ey, code)
            structured.record(self.alignments.is_block_structured(out, code.k), shown)
            cost_in = self.alignments.cost(a, ex, ey).total
            cost_out = self.alignments.cost(out, ex, ey).total
            inflation.record(cost_out <= bound * cost_in, shown,
                             Fraction(cost_out, cost_in) if cost_in else None)
            lifted = self.alpha.lift_alignment(out, code)
            lift.record(self.alignments.cost(lifted, x, y).total * code.k == cost_out, shown)

        toy = _toy_code(rng)
        embedding = self.alpha.code_embedding(toy)
        for n in range(1, 5):
            X, Y = self.alpha.find_contracted_pair(embedding, n, toy.params.gamma_size, toy.params.sigma_size)
            d = self.metrics.normalized_distance(AlignmentKind.INDEL, embedding(X), embedding(Y)).normalized
            contracted.record(X != Y and d < 1, lambda: f"n={n}")
            X, Y, certified = self.alpha.find_plurality_collision(
                embedding, n, toy.params.gamma_size, toy.params.sigma_size)
            d = self.metrics.normalized_distance(AlignmentKind.INDEL, embedding(X), embedding(Y)).normalized
            plurality.record(X != Y and d <= certified, lambda: f"n={n} distance={d}")
            z = Str(gamma, rng.integers(0, gamma.size, size=n))
            result = self.alpha.empty_distance_floor(self.alpha.code_embedding(code), z, Str.empty(gamma))
            empty_floor.record(result['holds'], lambda: f"n={n}")

        return [upper, lower, push, structured, inflation, lift, contracted, plurality, empty_floor]

    def _suite_gadgets(self, rng, settings) -> List[CheckResult]:
        exactness = CheckResult('lcs_in_t_or_f')
        shape = CheckResult('length_recurrence')
        balanced = CheckResult('balanced')
        invariant_length = CheckResult('length_invariant_across_assignments')
        deep = CheckResult('deep_spot_checks')
        recovery = CheckResult('binary_recovery')
        variables = settings['variables']

        for case in range(settings['cases']):
            depth = int(rng.integers(1, settings['depth'] + 1))
            gate = Gate.AND if rng.integers(2) else Gate.OR
            formula = _random_normalized(rng, depth, gate, variables)
            phi = self.gadgets.normalize(formula, depth, gate if depth > 1 else None)
            t, f, length = self.gadgets.thresholds(phi)
            if 4 ** variables <= 2 ** 16:
                assignments = list(product(product((0, 1), repeat=variables), repeat=2))
            else:
                assignments = _sample_assignments(rng, variables, settings['samples'])
            lengths = set()
            for bits_u, bits_v in assignments:
                A, B = Assignment(Side.U, bits_u), Assignment(Side.V, bits_v)
                verdict = self.gadgets.check_gadget(phi, A, B)
                shown = lambda: f"depth={depth} A={bits_u} B={bits_v}"
                exactness.record(verdict['ok'], shown)
                balanced.record(verdict['balanced'], shown)
                shape.record(verdict['k'] == length and f < t and length <= 30 ** depth, shown)
                lengths.add(verdict['k'])
            invariant_length.record(len(lengths) == 1, lambda: f"depth={depth} lengths={sorted(lengths)}")

        depth = settings['spot_depth']
        for case in range(settings['spot_cases']):
            gate = Gate.AND if rng.integers(2) else Gate.OR
            phi = self.gadgets.normalize(_random_normalized(rng, depth, gate, variables), depth, gate)
            for bits_u, bits_v in _sample_assignments(rng, variables, settings['spot_samples']):
                A, B = Assignment(Side.U, bits_u), Assignment(Side.V, bits_v)
                verdict = self.gadgets.check_gadget(phi, A, B)
                deep.record(verdict['ok'] and verdict['balanced'],
                            lambda: f"depth={depth} A={bits_u} B={bits_v} lcs={verdict['lcs']}")

        pairs = [(Alphabet(4, ['a', 'b', 'c', 'd']), 1)]
        if settings['recovery_n'] >= 2:
            pairs.append((BINARY, 2))
        for alphabet, n in pairs:
            for xs in product(range(alphabet.size), repeat=n):
                for ys in product(range(alphabet.size), repeat=n):
                    x, y = Str(alphabet, xs), Str(alphabet, ys)
                    result = self.gadgets.binary_reduce_and_recover(x, y)
                    recovery.record(result['recovered'] == self.metrics.lcs_length(x, y),
                                    lambda: f"x={xs} y={ys} recovered={result['recovered']}")
        return [exactness, shape, balanced, invariant_length, deep, recovery]

    def _suite_i2e(self, rng, settings) -> List[CheckResult]:
        tiskin = CheckResult('tiskin_identity')
        exact = CheckResult('exact_identity')
        construction = CheckResult('exact_construction_cost')
        equal_deletions = CheckResult('equal_length_deletions')
        window = CheckResult('apx_window')
        s_bounds = CheckResult('apx_s_bounds')
        s_total = CheckResult('apx_s_total_equals_deletions')
        apx_cost = CheckResult('apx_construction_cost')
        cost_bound = CheckResult('apx_cost_bound')
        deletion_budget = CheckResult('apx_deletion_budget')

        pairs = []
        for n in range(settings['exhaustive_n'] + 1):
            for xs in product((0, 1), repeat=n):
                for ys in product((0, 1), repeat=n):
                    pairs.append((Str(BINARY, xs), Str(BINARY, ys)))
        for _ in range(settings['cases']):
            alphabet = Alphabet(int(rng.integers(2, 5)))
            n = int(rng.integers(1, settings['max_length'] + 1))
            pairs.append((Str(alphabet, rng.integers(0, alphabet.size, size=n)),
                          Str(alphabet, rng.integers(0, alphabet.size, size=n))))

        for x, y in pairs:
            shown = lambda: f"x={list(x.symbols)} y={list(y.symbols)}"
            delta = self.metrics.indel_distance(x, y)
            edit = self.metrics.edit_distance(x, y)
            tiskin.record(self.i2e.edit_via_indel(x, y) == edit, shown)
            exact.record(self.i2e.indel_via_exact_embedding(x, y) == delta, shown)

            a = self.metrics.optimal_alignment(AlignmentKind.INDEL, x, y)
            breakdown = self.alignments.cost(a, x, y)
            equal_deletions.record(breakdown.deletions_x == breakdown.deletions_y == delta // 2, shown)
            built = self.i2e.construct_exact_alignment(x, y, a)
            padded = self.i2e.embed_exact(y)
            cost = self.alignments.cost(built, x.over(padded.alphabet), padded).total
            construction.record(cost == len(padded) - len(x) + delta // 2, shown)

        for epsilon in (Fraction(1), Fraction(1, 2), Fraction(1, 4)):
            for x, y in pairs[-settings['cases']:] if settings['cases'] else []:
                shown = lambda: f"epsilon={epsilon} x={list(x.symbols)} y={list(y.symbols)}"
                result = self.i2e.apx_distance_window(x, y, epsilon)
                ratio = Fraction(result['measured']) / result['low'] if result['low'] else None
                window.record(result['within'], shown, ratio)

                a = self.metrics.optimal_alignment(AlignmentKind.INDEL, x, y)
                _, report = self.i2e.construct_apx_alignment(x, y, epsilon, a)
                s_bounds.record(report.bounds_ok, shown)
                s_total.record(report.total_s == report.deletions_x, shown)
                delta = result['indel_distance']
                base = report.padded_length - report.n
                apx_cost.record(base + result['measured'] <= report.cost
                                <= base + delta // 2 + 2 * report.total_s, shown)
                cost_ok, budget_ok = apx_guarantees(report, delta, epsilon)
                cost_bound.record(cost_ok, shown,
                                  Fraction(report.cost - base, delta) if delta else None)
                deletion_budget.record(budget_ok, shown)

        return [tiskin, exact, construction, equal_deletions, window, s_bounds, s_total, apx_cost,
                cost_bound, deletion_budget]


def _random_str(rng, alphabet: Alphabet, max_length: int, min_length: int = 0) -> Str:
    length = int(rng.integers(min_length, max_length + 1))
    return Str(alphabet, rng.integers(0, alphabet.size, size=length))


def _mutate(rng, x: Str, alphabet: Alphabet) -> Str:
    """A few random substitutions, insertions and deletions of x"""
    symbols = list(x.symbols)
    for _ in range(int(rng.integers(1, 4))):
        op = int(rng.integers(3))
        pos = int(rng.integers(0, len(symbols) + 1))
        if op == 0 and pos < len(symbols):
            symbols[pos] = int(rng.integers(alphabet.size))
        elif op == 1:
            symbols.insert(pos, int(rng.integers(alphabet.size)))
        elif symbols and pos < len(symbols):
            del symbols[pos]
    if not symbols:
        symbols = [int(rng.integers(alphabet.size))]
    return Str(alphabet, symbols)


def _random_alignment(rng, ex: Str, ey: Str) -> Alignment:
    """A valid, usually sub-optimal indel alignment of equal symbols"""
    pairs = []
    last_j = 0
    keep = float(rng.uniform(0.3, 1.0))
    for i in range(1, len(ex) + 1):
        if rng.random() > keep:
            continue
        window = range(last_j + 1, min(len(ey), last_j + 8) + 1)
        candidates = [j for j in window if ey.at(j) == ex.at(i)]
        if candidates:
            last_j = candidates[int(rng.integers(len(candidates)))]
            pairs.append(AlignedPair(i, last_j))
    return Alignment(AlignmentKind.INDEL, pairs)


def _sample_assignments(rng, variables: int, count: int) -> List[Tuple]:
    """count random (u bits, v bits) pairs"""
    bits = rng.integers(0, 2, size=(count, 2, variables))
    return [(tuple(int(b) for b in u), tuple(int(b) for b in v)) for u, v in bits]


def _random_normalized(rng, depth: int, gate: Gate, variables: int):
    if depth == 1:
        kind = int(rng.integers(5))
        if kind == 0:
            return Const(int(rng.integers(2)))
        literal = LitU if kind < 3 else LitV
        return literal(int(rng.integers(variables)), bool(rng.integers(2)))
    return make_gate(gate,
                     _random_normalized(rng, depth - 1, gate.alternate, variables),
                     _random_normalized(rng, depth - 1, gate.alternate, variables))


def _toy_code(rng) -> IndelCode:
    """Five distinct words of length 4 over four symbols, more words than symbols"""
    alphabet = Alphabet(4)
    words = set()
    while len(words) < 5:
        words.add(tuple(int(s) for s in rng.integers(0, 4, size=4)))
    params = EmbedParams(5, parse_fraction('1/4'), 4, 4)
    return IndelCode(params, [Str(alphabet, w) for w in sorted(words)])
