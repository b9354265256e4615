import logging
from fractions import Fraction
from typing import List, Sequence

from config.settings import get_config
from models.alignment import AlignedPair, Alignment, AlignmentKind
from models.errors import AlphabetMismatchError, ParameterError
from models.strings import DistanceValue, Str
from utils import lcs_kernels

logger = logging.getLogger(__name__)


class MetricsService:
    """Exact edit, indel and LCS computations plus optimal-alignment traceback"""

    def __init__(self, app_config=None):
        self.config = app_config or get_config()

    def _check_alphabets(self, x: Str, y: Str):
        if x.alphabet != y.alphabet:
            raise AlphabetMismatchError(
                f"strings use different alphabets ({x.alphabet.size} vs {y.alphabet.size} symbols)"
            )

    def lcs_kernel_used(self, x: Str, y: Str) -> str:
        """Name of the LCS kernel the dispatcher picks for this pair"""
        n, m = len(x), len(y)
        if n * m <= self.config.LCS_DP_MAX_CELLS:
            return lcs_kernels.DP
        return lcs_kernels.choose_kernel(
            n, m,
            lcs_kernels.count_runs(x.symbols), lcs_kernels.count_runs(y.symbols),
            self.config.LCS_DP_MAX_CELLS, self.config.get_kernel_costs()
        )

    def lcs_length(self, x: Str, y: Str) -> int:
        """Length of a longest common subsequence"""
        self._check_alphabets(x, y)
        if len(x) == 0 or len(y) == 0:
            return 0
        kernel = self.lcs_kernel_used(x, y)
        logger.debug("lcs kernel %s for lengths %d x %d", kernel, len(x), len(y))
        return lcs_kernels.lcs_with_kernel(kernel, x.symbols, y.symbols)

    def indel_distance(self, x: Str, y: Str) -> int:
        return len(x) + len(y) - 2 * self.lcs_length(x, y)

    def edit_distance(self, x: Str, y: Str) -> int:
        """Levenshtein distance with unit costs"""
        self._check_alphabets(x, y)
        a, b = x.symbols, y.symbols
        if len(a) < len(b):
            a, b = b, a
        return lcs_kernels.dp_edit_row(a, b)[-1]

    def distance(self, kind, x: Str, y: Str) -> int:
        kind = AlignmentKind(kind)
        if kind == AlignmentKind.EDIT:
            return self.edit_distance(x, y)
        return self.indel_distance(x, y)

    def normalized_distance(self, kind, x: Str, y: Str) -> DistanceValue:
        """Distance divided by |x|+|y| (indel) or max(|x|,|y|) (edit)"""
        kind = AlignmentKind(kind)
        if len(x) == 0 and len(y) == 0:
            raise ParameterError("normalized distance is undefined for two empty strings")
        raw = self.distance(kind, x, y)
        if kind == AlignmentKind.INDEL:
            scale = len(x) + len(y)
        else:
            scale = max(len(x), len(y))
        return DistanceValue(kind.value, raw, Fraction(raw, scale))

    def optimal_alignment(self, kind, x: Str, y: Str) -> Alignment:
        """
        An optimal alignment whose cost equals the distance.

        Ties prefer a match (or, for edit, the diagonal step), then a deletion
        in x, then a deletion in y. Pairs whose table exceeds
        TRACEBACK_FULL_TABLE_MAX_CELLS are split Hirschberg-style.
        """
        kind = AlignmentKind(kind)
        self._check_alphabets(x, y)
        a, b = x.symbols, y.symbols
        if len(a) * len(b) > self.config.TRACEBACK_FULL_TABLE_MAX_CELLS:
            logger.debug("divide-and-conquer traceback for %d x %d", len(a), len(b))
        pairs = self._align(kind, a, b, 0, 0)
        return Alignment(kind, pairs)

    def _align(self, kind: AlignmentKind, a: Sequence[int], b: Sequence[int],
               di: int, dj: int) -> List[AlignedPair]:
        if len(a) <= 1 or len(a) * len(b) <= self.config.TRACEBACK_FULL_TABLE_MAX_CELLS:
            if kind == AlignmentKind.INDEL:
                return _lcs_traceback(a, b, di, dj)
            return _edit_traceback(a, b, di, dj)

        mid = len(a) // 2
        split = _split_column(kind, a, b, mid)
        return (self._align(kind, a[:mid], b[:split], di, dj)
                + self._align(kind, a[mid:], b[split:], di + mid, dj + split))


def _split_column(kind: AlignmentKind, a: Sequence[int], b: Sequence[int], mid: int) -> int:
    """Smallest column where an optimal path crosses row mid"""
    rev_b = b[::-1]
    if kind == AlignmentKind.INDEL:
        forward = lcs_kernels.dp_lcs_row(a[:mid], b)
        backward = lcs_kernels.dp_lcs_row(a[mid:][::-1], rev_b)
        scores = [forward[j] + backward[len(b) - j] for j in range(len(b) + 1)]
        return scores.index(max(scores))
    forward = lcs_kernels.dp_edit_row(a[:mid], b)
    backward = lcs_kernels.dp_edit_row(a[mid:][::-1], rev_b)
    scores = [forward[j] + backward[len(b) - j] for j in range(len(b) + 1)]
    return scores.index(min(scores))


def _lcs_traceback(a: Sequence[int], b: Sequence[int], di: int, dj: int) -> List[AlignedPair]:
    table = lcs_kernels.dp_lcs_table(a, b)
    i, j = len(a), len(b)
    pairs: List[AlignedPair] = []
    while i > 0 and j > 0:
        if a[i - 1] == b[j - 1]:
            pairs.append(AlignedPair(di + i, dj + j))
            i -= 1
            j -= 1
        elif table[i - 1][j] == table[i][j]:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return pairs


def _edit_traceback(a: Sequence[int], b: Sequence[int], di: int, dj: int) -> List[AlignedPair]:
    table = lcs_kernels.dp_edit_table(a, b)
    i, j = len(a), len(b)
    pairs: List[AlignedPair] = []
    while i > 0 and j > 0:
        differs = a[i - 1] != b[j - 1]
        if table[i][j] == table[i - 1][j - 1] + differs:
            pairs.append(AlignedPair(di + i, dj + j, differs))
            i -= 1
            j -= 1
        elif table[i][j] == table[i - 1][j] + 1:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return pairs
