from collections import defaultdict
from typing import Dict, List, Tuple

from models.alignment import (
    Alignment, AlignmentKind, Block, BlockDecomposition, CostBreakdown,
    SegmentProfile, Span, ValidationReport
)
from models.errors import InvalidAlignmentError, ParameterError
from models.strings import Str

MONOTONICITY = "monotonicity"
OUT_OF_BOUNDS = "index out of bounds"
UNEQUAL_MATCH = "unequal matched symbols"
INDEL_SUBSTITUTION = "substitution in indel alignment"
EQUAL_SUBSTITUTION = "substitution of equal symbols"


class AlignmentService:
    """Validity, cost accounting and block decompositions of alignments"""

    def validate_alignment(self, a: Alignment, x: Str, y: Str) -> ValidationReport:
        """Report the first violated alignment invariant, if any"""
        prev_i, prev_j = 0, 0
        for index, pair in enumerate(a.pairs):
            if not (1 <= pair.i <= len(x) and 1 <= pair.j <= len(y)):
                return ValidationReport(False, OUT_OF_BOUNDS, index)
            if pair.i <= prev_i or pair.j <= prev_j:
                return ValidationReport(False, MONOTONICITY, index)
            equal = x.at(pair.i) == y.at(pair.j)
            if pair.substitution:
                if a.kind == AlignmentKind.INDEL:
                    return ValidationReport(False, INDEL_SUBSTITUTION, index)
                if equal:
                    return ValidationReport(False, EQUAL_SUBSTITUTION, index)
            elif not equal:
                return ValidationReport(False, UNEQUAL_MATCH, index)
            prev_i, prev_j = pair.i, pair.j
        return ValidationReport(True)

    def require_valid(self, a: Alignment, x: Str, y: Str):
        report = self.validate_alignment(a, x, y)
        if not report:
            raise InvalidAlignmentError(
                f"alignment violates {report.violation} at pair {report.pair_index}"
            )

    def cost(self, a: Alignment, x: Str, y: Str) -> CostBreakdown:
        self.require_valid(a, x, y)
        substitutions = len(a.substitutions)
        matches = len(a.pairs) - substitutions
        return CostBreakdown(
            matches=matches,
            deletions_x=len(x) - len(a.pairs),
            deletions_y=len(y) - len(a.pairs),
            substitutions=substitutions
        )

    def block_decompose(self, a: Alignment, x: Str, y: Str) -> BlockDecomposition:
        """
        Split both strings into blocks b_i = m_i . d_i.

        Each m_i is a maximal run of consecutive matches (i, j), (i+1, j+1), ...
        and d_i is the gap up to the next run. Block 0 has an empty matching
        part and holds whatever precedes the first run.
        """
        self._require_indel(a, x, y)
        runs: List[Tuple[int, int, int]] = []
        for pair in a.pairs:
            if runs:
                first_i, first_j, length = runs[-1]
                if pair.i == first_i + length and pair.j == first_j + length:
                    runs[-1] = (first_i, first_j, length + 1)
                    continue
            runs.append((pair.i, pair.j, 1))

        blocks_x = [Block(0, Span(1, 0), Span(1, (runs[0][0] - 1) if runs else len(x)))]
        blocks_y = [Block(0, Span(1, 0), Span(1, (runs[0][1] - 1) if runs else len(y)))]
        for index, (first_i, first_j, length) in enumerate(runs, 1):
            next_i = runs[index][0] if index < len(runs) else len(x) + 1
            next_j = runs[index][1] if index < len(runs) else len(y) + 1
            blocks_x.append(Block(index, Span(first_i, first_i + length - 1),
                                  Span(first_i + length, next_i - 1)))
            blocks_y.append(Block(index, Span(first_j, first_j + length - 1),
                                  Span(first_j + length, next_j - 1)))
        return BlockDecomposition(blocks_x, blocks_y)

    def segment_profile(self, a: Alignment, ex: Str, ey: Str, k: int) -> SegmentProfile:
        """
        Partition ey into one segment per k-block of ex and charge each block
        cost_A(i) = unmatched characters of the block + unmatched characters
        of its segment.

        A block's segment starts at the first character of the y-block its
        first match lands in when it is the smallest x-block matching that
        y-block, and at its first match otherwise. Segments of blocks without
        matches are empty and sit right after the previous segment.
        """
        if k < 1 or len(ex) % k or len(ey) % k:
            raise ParameterError(f"string lengths {len(ex)}, {len(ey)} are not multiples of k={k}")
        self._require_indel(a, ex, ey)
        n = len(ex) // k

        by_block: Dict[int, List[int]] = defaultdict(list)
        smallest_for_y: Dict[int, int] = {}
        for pair in a.pairs:
            block = (pair.i - 1) // k + 1
            by_block[block].append(pair.j)
            smallest_for_y.setdefault((pair.j - 1) // k + 1, block)

        matched_blocks = sorted(by_block)
        starts: Dict[int, int] = {}
        for position, block in enumerate(matched_blocks):
            first_j = by_block[block][0]
            y_block = (first_j - 1) // k + 1
            if position == 0:
                starts[block] = 1
            elif smallest_for_y[y_block] == block:
                starts[block] = (y_block - 1) * k + 1
            else:
                starts[block] = first_j

        segments: List[Span] = []
        costs: List[int] = []
        prev_end = 0
        for block in range(1, n + 1):
            matches = len(by_block.get(block, ()))
            if block in starts:
                later = [starts[b] for b in matched_blocks if b > block]
                segment = Span(starts[block], later[0] - 1 if later else len(ey))
            elif not matched_blocks and block == 1:
                segment = Span(1, len(ey))
            else:
                segment = Span(prev_end + 1, prev_end)
            segments.append(segment)
            costs.append((k - matches) + (segment.length - matches))
            prev_end = segment.last
        return SegmentProfile(k, segments, costs)

    def is_block_structured(self, a: Alignment, k: int) -> bool:
        """Every k-block is perfectly matched to exactly one opposite block or left unmatched"""
        if a.kind != AlignmentKind.INDEL or k < 1:
            return False
        x_blocks: Dict[int, List] = defaultdict(list)
        y_blocks: Dict[int, set] = defaultdict(set)
        for pair in a.pairs:
            x_blocks[(pair.i - 1) // k].append(pair)
            y_blocks[(pair.j - 1) // k].add((pair.i - 1) // k)
        for pairs in x_blocks.values():
            if len(pairs) != k:
                return False
            if len({(p.j - 1) // k for p in pairs}) != 1:
                return False
            if any((p.i - 1) % k != (p.j - 1) % k for p in pairs):
                return False
        return all(len(sources) == 1 for sources in y_blocks.values())

    def _require_indel(self, a: Alignment, x: Str, y: Str):
        if a.kind != AlignmentKind.INDEL:
            raise InvalidAlignmentError("an indel alignment is required")
        self.require_valid(a, x, y)
