import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from models.alignment import AlignedPair, Alignment, AlignmentKind
from models.errors import InvalidAlignmentError, ParameterError, StrembedError
from models.strings import DollarString, Str
from services.alignment_service import AlignmentService
from services.metrics_service import MetricsService
from utils.text_io import parse_fraction

logger = logging.getLogger(__name__)

FULLY = "fully"
PARTIALLY = "partially"
NOT_AVAILABLE = "not"


class ApxBlock:
    """Bookkeeping of one block b_i during the approximate construction"""

    def __init__(self, index: int, availability: str, available: int, cursor_block: int,
                 d_length: int, s: int, k: int):
        self.index = index
        self.availability = availability
        self.available = available
        self.cursor_block = cursor_block
        self.d_length = d_length
        self.s = s
        self.s_bound = math.ceil(d_length / (k + 1))

    def to_dict(self) -> Dict:
        return {
            'index': self.index,
            'availability': self.availability,
            'available': self.available,
            'cursor_block': self.cursor_block,
            'd_length': self.d_length,
            's': self.s,
            's_bound': self.s_bound
        }


class ApxReport:
    def __init__(self, k: int, blocks: List[ApxBlock], deletions_x: int, substitutions: int,
                 cost: int, padded_length: int, n: int):
        self.k = k
        self.blocks = blocks
        self.deletions_x = deletions_x
        self.substitutions = substitutions
        self.cost = cost
        self.padded_length = padded_length
        self.n = n

    @property
    def total_s(self) -> int:
        return sum(b.s for b in self.blocks)

    @property
    def bounds_ok(self) -> bool:
        return all(b.s <= b.s_bound for b in self.blocks)

    def availability(self, index: int) -> str:
        return self.blocks[index - 1].availability

    def to_dict(self) -> Dict:
        return {
            'k': self.k,
            'n': self.n,
            'padded_length': self.padded_length,
            'cost': self.cost,
            'deletions_x': self.deletions_x,
            'substitutions': self.substitutions,
            'total_s': self.total_s,
            'bounds_ok': self.bounds_ok,
            'blocks': [b.to_dict() for b in self.blocks]
        }


def apx_block_length(epsilon) -> int:
    """k = ⌈4/ε⌉ for 0 < ε <= 1"""
    epsilon = parse_fraction(epsilon)
    if not 0 < epsilon <= 1:
        raise ParameterError(f"epsilon must lie in (0, 1], got {epsilon}")
    return math.ceil(4 / epsilon)


def apx_guarantees(report: ApxReport, indel_distance: int, epsilon) -> Tuple[bool, bool]:
    """
    (cost < Ñ - n + (1+ε)·Δ/2, Σ S_i < Δ/k) for a construction on strings at
    indel distance Δ. Identical strings must cost exactly Ñ - n with no S.
    """
    epsilon = parse_fraction(epsilon)
    base = report.padded_length - report.n
    if indel_distance == 0:
        return report.cost == base, report.total_s == 0
    cost_ok = report.cost < base + (1 + epsilon) * Fraction(indel_distance, 2)
    budget_ok = report.total_s < Fraction(indel_distance, report.k)
    return cost_ok, budget_ok


class IndelEditService:
    """Embeddings between the indel and edit metrics"""

    def __init__(self, metrics: Optional[MetricsService] = None,
                 alignments: Optional[AlignmentService] = None):
        self.metrics = metrics or MetricsService()
        self.alignments = alignments or AlignmentService()

    def tiskin_embed(self, x: Str) -> DollarString:
        """x[1] $ x[2] $ ... x[n] $"""
        sentinel = x.alphabet.size
        symbols: List[int] = []
        for s in x.symbols:
            symbols.extend((s, sentinel))
        return DollarString(x.alphabet, symbols)

    def embed_exact(self, y: Str) -> DollarString:
        """$^n Y[1] $^n Y[2] ... Y[n] $^n; Y[i] sits at position i(n+1)"""
        n = len(y)
        sentinel = y.alphabet.size
        symbols = [sentinel] * n
        for s in y.symbols:
            symbols.append(s)
            symbols.extend([sentinel] * n)
        return DollarString(y.alphabet, symbols)

    def embed_apx(self, y: Str, epsilon) -> DollarString:
        """$^n Y[1] $^k ... Y[n] $^k $^n with k = ⌈4/ε⌉"""
        k = apx_block_length(epsilon)
        n = len(y)
        sentinel = y.alphabet.size
        symbols = [sentinel] * n
        for s in y.symbols:
            symbols.append(s)
            symbols.extend([sentinel] * k)
        symbols.extend([sentinel] * n)
        return DollarString(y.alphabet, symbols)

    def construct_exact_alignment(self, x: Str, y: Str, a: Alignment) -> Alignment:
        """
        Edit alignment of x against the exact embedding of y in which no
        character of x is deleted: matches keep their partner, d_0 substitutes
        into the leading sentinels and every later d_i into the sentinel run
        following its block's last match.
        """
        n = self._require_optimal(x, y, a)
        decomposition = self.alignments.block_decompose(a, x, y)
        padded = self.embed_exact(y)
        x_lifted = x.over(padded.alphabet)

        pairs: List[AlignedPair] = []
        for block_x, block_y in zip(decomposition.blocks_x, decomposition.blocks_y):
            for offset, i in enumerate(block_x.m.positions()):
                pairs.append(AlignedPair(i, (block_y.m.first + offset) * (n + 1)))
            base = block_y.m.last * (n + 1) if block_x.index else 0
            for offset, i in enumerate(block_x.d.positions(), 1):
                pairs.append(AlignedPair(i, base + offset, True))

        alignment = Alignment(AlignmentKind.EDIT, pairs)
        self.alignments.require_valid(alignment, x_lifted, padded)
        return alignment

    def construct_apx_alignment(self, x: Str, y: Str, epsilon,
                                a: Alignment) -> Tuple[Alignment, ApxReport]:
        """
        Left-to-right edit alignment of x against the approximate embedding of y.

        A cursor tracks the leftmost unaligned position of the padded string.
        The matching part of every block is matched into what is left of its
        partner: all of it (fully available), its last c characters when only
        c partner characters remain right of the cursor (partially available)
        or nothing (not available). Deletion parts are aligned character by
        character at the cursor. S_i counts characters of d_i landing on a
        non-sentinel of a later block's matching part.
        """
        n = self._require_optimal(x, y, a)
        k = apx_block_length(epsilon)
        padded = self.embed_apx(y, epsilon)
        x_lifted = x.over(padded.alphabet)
        decomposition = self.alignments.block_decompose(a, x, y)

        def position(j: int) -> int:
            return n + (j - 1) * (k + 1) + 1

        owner: Dict[int, int] = {}
        block_starts: List[int] = []
        for block_y in decomposition.blocks_y[1:]:
            block_starts.append(position(block_y.m.first))
            for j in block_y.m.positions():
                owner[position(j)] = block_y.index

        pairs: List[AlignedPair] = []
        blocks: List[ApxBlock] = []
        cursor = 1
        deletions_x = 0

        def place_deletion_part(block_x, index: int) -> int:
            nonlocal cursor
            landed = 0
            for i in block_x.d.positions():
                if cursor > len(padded):
                    raise StrembedError("approximate construction ran past the padded string")
                pairs.append(AlignedPair(i, cursor, x_lifted.at(i) != padded.at(cursor)))
                if owner.get(cursor, 0) > index:
                    landed += 1
                cursor += 1
            return landed

        place_deletion_part(decomposition.blocks_x[0], 0)

        for block_x, block_y in zip(decomposition.blocks_x[1:], decomposition.blocks_y[1:]):
            targets = [position(j) for j in block_y.m.positions()]
            available = sum(1 for q in targets if q >= cursor)
            cursor_block = sum(1 for start in block_starts if start <= cursor)
            if available == len(targets):
                availability = FULLY
            elif available:
                availability = PARTIALLY
            else:
                availability = NOT_AVAILABLE

            m_positions = list(block_x.m.positions())
            missed = len(m_positions) - available
            deletions_x += missed
            for i, q in zip(m_positions[missed:], targets[missed:]):
                pairs.append(AlignedPair(i, q))
            if available:
                cursor = targets[-1] + 1

            s = place_deletion_part(block_x, block_x.index)
            blocks.append(ApxBlock(block_x.index, availability, available, cursor_block,
                                   block_x.d.length, s, k))

        alignment = Alignment(AlignmentKind.EDIT, pairs)
        breakdown = self.alignments.cost(alignment, x_lifted, padded)
        report = ApxReport(k, blocks, deletions_x, breakdown.substitutions,
                           breakdown.total, len(padded), n)
        logger.debug("approximate construction: cost %d, S total %d", report.cost, report.total_s)
        return alignment, report

    def edit_via_indel(self, x: Str, y: Str) -> int:
        """Δ_edit(x, y) as half the indel distance of the sentinel-interleaved strings"""
        distance = self.metrics.indel_distance(self.tiskin_embed(x), self.tiskin_embed(y))
        return distance // 2

    def indel_via_exact_embedding(self, x: Str, y: Str) -> int:
        """Δ_indel(x, y) = 2·(Δ_edit(x, E₂(y)) - (N' - n))"""
        n = _equal_length(x, y)
        padded = self.embed_exact(y)
        distance = self.metrics.edit_distance(x.over(padded.alphabet), padded)
        return 2 * (distance - (len(padded) - n))

    def apx_distance_window(self, x: Str, y: Str, epsilon) -> Dict:
        """Measured k̂ = Δ_edit(x, E₃(y)) - (Ñ - n) with the window [Δ/2, (1+ε)Δ/2) it must fall in"""
        n = _equal_length(x, y)
        epsilon = parse_fraction(epsilon)
        padded = self.embed_apx(y, epsilon)
        measured = self.metrics.edit_distance(x.over(padded.alphabet), padded) - (len(padded) - n)
        delta = self.metrics.indel_distance(x, y)
        low = Fraction(delta, 2)
        high = (1 + epsilon) * Fraction(delta, 2)
        within = measured == 0 if delta == 0 else low <= measured < high
        return {
            'k': apx_block_length(epsilon),
            'padded_length': len(padded),
            'indel_distance': delta,
            'measured': measured,
            'low': low,
            'high': high,
            'within': within
        }

    def _require_optimal(self, x: Str, y: Str, a: Alignment) -> int:
        n = _equal_length(x, y)
        if a.kind != AlignmentKind.INDEL:
            raise InvalidAlignmentError("an indel alignment of x and y is required")
        breakdown = self.alignments.cost(a, x, y)
        if breakdown.total != self.metrics.indel_distance(x, y):
            raise InvalidAlignmentError(
                f"alignment cost {breakdown.total} is not optimal ({self.metrics.indel_distance(x, y)})"
            )
        return n


def _equal_length(x: Str, y: Str) -> int:
    if len(x) != len(y):
        raise ParameterError(f"equal lengths required, got {len(x)} and {len(y)}")
    return len(x)
