"""
Brute-force reference implementations.

These are exponential on purpose and share no structure with the dynamic
programs in utils/lcs_kernels.py: edit distance is plain bounded recursion,
LCS is enumeration of subsequences of the shorter string.
"""

from itertools import combinations
from typing import Sequence

from config.settings import get_config
from models.alignment import AlignmentKind
from models.errors import AlphabetMismatchError, SizeBoundError
from models.strings import Str


class OracleService:
    def __init__(self, app_config=None):
        self.config = app_config or get_config()

    def brute_edit(self, x: Str, y: Str) -> int:
        """Edit distance by iterative deepening over all edit scripts"""
        self._check(x, y)
        limit = self.config.ORACLE_MAX_TOTAL_LENGTH
        if len(x) + len(y) > limit:
            raise SizeBoundError(f"brute_edit needs |x|+|y| <= {limit}, got {len(x) + len(y)}")
        a, b = x.symbols, y.symbols
        budget = 0
        while not _edit_within(a, b, budget):
            budget += 1
        return budget

    def brute_lcs(self, x: Str, y: Str) -> int:
        """LCS length by enumerating subsequences of the shorter string, longest first"""
        self._check(x, y)
        short, long_ = (x.symbols, y.symbols) if len(x) <= len(y) else (y.symbols, x.symbols)
        limit = self.config.ORACLE_MAX_SUBSEQUENCE_LENGTH
        if len(short) > limit:
            raise SizeBoundError(f"brute_lcs needs min(|x|,|y|) <= {limit}, got {len(short)}")
        for size in range(len(short), 0, -1):
            for candidate in set(combinations(short, size)):
                if _is_subsequence(candidate, long_):
                    return size
        return 0

    def brute_best_alignment(self, kind, x: Str, y: Str) -> int:
        """Cost of a best alignment of the given kind"""
        if AlignmentKind(kind) == AlignmentKind.EDIT:
            return self.brute_edit(x, y)
        return len(x) + len(y) - 2 * self.brute_lcs(x, y)

    def _check(self, x: Str, y: Str):
        if x.alphabet != y.alphabet:
            raise AlphabetMismatchError("oracle inputs use different alphabets")


def _edit_within(a: Sequence[int], b: Sequence[int], budget: int) -> bool:
    """True when a can be edited into b with at most budget operations"""
    start = 0
    while start < len(a) and start < len(b) and a[start] == b[start]:
        start += 1
    a, b = a[start:], b[start:]
    if abs(len(a) - len(b)) > budget:
        return False
    if not a or not b:
        return True
    if budget == 0:
        return False
    return (_edit_within(a[1:], b[1:], budget - 1)
            or _edit_within(a[1:], b, budget - 1)
            or _edit_within(a, b[1:], budget - 1))


def _is_subsequence(candidate: Sequence[int], text: Sequence[int]) -> bool:
    it = iter(text)
    return all(symbol in it for symbol in candidate)
