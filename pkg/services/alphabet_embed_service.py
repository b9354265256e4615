import logging
from collections import Counter, defaultdict
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Set, Tuple

from models.alignment import AlignedPair, Alignment, AlignmentKind
from models.code import IndelCode
from models.errors import (
    AlphabetMismatchError, InvalidAlignmentError, ParameterError, StrembedError
)
from models.strings import Alphabet, Str
from services.alignment_service import AlignmentService
from services.metrics_service import MetricsService
from utils.text_io import parse_fraction

logger = logging.getLogger(__name__)

Embedding = Callable[[Str], Str]


class AlphabetEmbedService:
    """Alphabet reduction E(X) = C(X_1)...C(X_n) and the alignment conversions around it"""

    def __init__(self, metrics: Optional[MetricsService] = None,
                 alignments: Optional[AlignmentService] = None):
        self.metrics = metrics or MetricsService()
        self.alignments = alignments or AlignmentService()

    def embed(self, code: IndelCode, x: Str) -> Str:
        symbols: List[int] = []
        for s in x.symbols:
            if s >= len(code.codewords):
                raise AlphabetMismatchError(f"symbol {s} has no codeword (code size {len(code)})")
            symbols.extend(code.codewords[s].symbols)
        return Str(code.alphabet, symbols)

    def code_embedding(self, code: IndelCode) -> Embedding:
        """The embedding as a plain callable"""
        return lambda x: self.embed(code, x)

    def push_alignment(self, a: Alignment, x: Str, y: Str, code: IndelCode) -> Alignment:
        """Expand every matched symbol pair into k matched offset pairs"""
        if a.kind != AlignmentKind.INDEL:
            raise InvalidAlignmentError("only indel alignments can be pushed through the embedding")
        self.alignments.require_valid(a, x, y)
        k = code.k
        pairs = [AlignedPair((p.i - 1) * k + t, (p.j - 1) * k + t)
                 for p in a.pairs for t in range(1, k + 1)]
        return Alignment(AlignmentKind.INDEL, pairs)

    def block_structure(self, a: Alignment, ex: Str, ey: Str, code: IndelCode,
                        epsilon=None) -> Alignment:
        """
        Convert an alignment of embedded strings into a block-structured one.

        Stage I walks the x-blocks; the first y-block holding more than ε·k
        matches of the current x-block is matched to it perfectly after every
        match touching either block is dropped. Stage II walks the x-blocks
        again and removes the remaining partial matches: the x-block's own
        matches when they spread over several y-blocks, otherwise every match
        of the single y-block they hit.
        """
        k = code.k
        if len(ex) % k or len(ey) % k:
            raise ParameterError(f"embedded lengths {len(ex)}, {len(ey)} are not multiples of k={k}")
        if a.kind != AlignmentKind.INDEL:
            raise InvalidAlignmentError("block_structure expects an indel alignment")
        self.alignments.require_valid(a, ex, ey)
        threshold = parse_fraction(epsilon) * k if epsilon is not None else code.params.lcs_budget
        n = len(ex) // k

        matches: Set[Tuple[int, int]] = {(p.i, p.j) for p in a.pairs}

        for i in range(n):
            per_y = Counter((q - 1) // k for p, q in matches if (p - 1) // k == i)
            significant = [j for j, count in per_y.items() if count > threshold]
            if not significant:
                continue
            j = min(significant)
            if ex.symbols[i * k:(i + 1) * k] != ey.symbols[j * k:(j + 1) * k]:
                raise ParameterError(
                    f"x-block {i + 1} significantly matches a different y-block {j + 1}; "
                    "the strings are not embeddings under this code"
                )
            matches = {(p, q) for p, q in matches
                       if (p - 1) // k != i and (q - 1) // k != j}
            matches.update((i * k + t, j * k + t) for t in range(1, k + 1))
        logger.debug("stage I left %d matches", len(matches))

        for i in range(n):
            own = [(p, q) for p, q in matches if (p - 1) // k == i]
            if not own or _is_perfect(own, k):
                continue
            y_blocks = {(q - 1) // k for _, q in own}
            if len(y_blocks) > 1:
                matches.difference_update(own)
            else:
                j = y_blocks.pop()
                matches = {(p, q) for p, q in matches if (q - 1) // k != j}
        logger.debug("stage II left %d matches", len(matches))

        result = Alignment(AlignmentKind.INDEL, [AlignedPair(p, q) for p, q in sorted(matches)])
        if not self.alignments.validate_alignment(result, ex, ey):
            raise StrembedError("block structuring produced an invalid alignment")
        return result

    def lift_alignment(self, a: Alignment, code: IndelCode) -> Alignment:
        """Collapse a block-structured alignment to one pair per matched block pair"""
        k = code.k
        if not self.alignments.is_block_structured(a, k):
            raise InvalidAlignmentError("alignment is not block-structured")
        pairs = [AlignedPair((p.i - 1) // k + 1, (p.j - 1) // k + 1)
                 for p in a.pairs if (p.i - 1) % k == 0]
        return Alignment(AlignmentKind.INDEL, pairs)

    def find_contracted_pair(self, embedding: Embedding, n: int, gamma: int,
                             sigma: int) -> Tuple[Str, Str]:
        """
        Two constant strings whose embeddings start with the same symbol.

        Their normalized distance is 1 and the shared first symbol makes the
        embedded distance strictly smaller.
        """
        _require_more_symbols(gamma, sigma)
        if n < 1:
            raise ParameterError("n must be positive")
        source = Alphabet(gamma)
        first_seen: Dict[int, Str] = {}
        for g in range(gamma):
            x = Str(source, [g] * n)
            image = embedding(x)
            if len(image) == 0:
                raise ParameterError("embedding maps a non-empty string to the empty string")
            head = image.symbols[0]
            if head in first_seen:
                return first_seen[head], x
            first_seen[head] = x
        raise ParameterError(f"embedding uses more than {sigma} leading symbols")

    def find_plurality_collision(self, embedding: Embedding, n: int, gamma: int,
                                 sigma: int) -> Tuple[Str, Str, Fraction]:
        """Two constant strings whose embeddings share the plurality symbol, with the bound 1 - 1/σ"""
        _require_more_symbols(gamma, sigma)
        if n < 1:
            raise ParameterError("n must be positive")
        source = Alphabet(gamma)
        by_plurality: Dict[int, Str] = {}
        for g in range(gamma):
            x = Str(source, [g] * n)
            image = embedding(x)
            if len(image) == 0:
                raise ParameterError("embedding maps a non-empty string to the empty string")
            counts = Counter(image.symbols)
            top = max(counts.values())
            plurality = min(s for s, c in counts.items() if c == top)
            if plurality in by_plurality:
                return by_plurality[plurality], x, 1 - Fraction(1, sigma)
            by_plurality[plurality] = x
        raise ParameterError(f"embedding uses more than {sigma} plurality symbols")

    def empty_distance_floor(self, embedding: Embedding, z: Str, empty: Str) -> Dict:
        """
        Normalized indel distance between E(Z) and E(Λ) and the floor
        (|E(Z)| - |E(Λ)|) / (|E(Z)| + |E(Λ)|) it can never drop below.
        """
        ez, ee = embedding(z), embedding(empty)
        if len(ez) == 0 and len(ee) == 0:
            raise ParameterError("both embedded strings are empty")
        distance = self.metrics.normalized_distance(AlignmentKind.INDEL, ez, ee).normalized
        total = len(ez) + len(ee)
        floor = Fraction(abs(len(ez) - len(ee)), total)
        return {
            'embedded_distance': distance,
            'original_distance': Fraction(1) if len(z) else Fraction(0),
            'floor': floor,
            'gap_bound': Fraction(2 * len(ee), total),
            'holds': distance >= floor
        }

    def embedded_distance_bounds(self, x: Str, y: Str, code: IndelCode) -> Dict:
        """Normalized distances before and after embedding with the (1 - 48ε) floor"""
        original = self.metrics.normalized_distance(AlignmentKind.INDEL, x, y).normalized
        embedded = self.metrics.normalized_distance(
            AlignmentKind.INDEL, self.embed(code, x), self.embed(code, y)
        ).normalized
        floor = (1 - 48 * code.params.epsilon) * original
        return {
            'original': original,
            'embedded': embedded,
            'floor': floor,
            'upper_ok': embedded <= original,
            'lower_ok': embedded >= floor
        }


def _is_perfect(own: List[Tuple[int, int]], k: int) -> bool:
    if len(own) != k:
        return False
    offsets = defaultdict(set)
    for p, q in own:
        offsets[(q - 1) // k].add((p - q) % k)
    return len(offsets) == 1 and all(d == {0} for d in offsets.values())


def _require_more_symbols(gamma: int, sigma: int):
    if gamma <= sigma:
        raise ParameterError(f"needs |Γ| > |Σ|, got {gamma} <= {sigma}")
