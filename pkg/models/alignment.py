from enum import Enum
from typing import Dict, Iterable, List, NamedTuple, Optional


class AlignmentKind(Enum):
    EDIT = "edit"
    INDEL = "indel"


class AlignedPair(NamedTuple):
    """1-based positions i in x and j in y"""
    i: int
    j: int
    substitution: bool = False


class Span(NamedTuple):
    """1-based inclusive index range; empty when last == first - 1"""
    first: int
    last: int

    @property
    def length(self) -> int:
        return self.last - self.first + 1

    @property
    def is_empty(self) -> bool:
        return self.last < self.first

    def positions(self) -> range:
        return range(self.first, self.last + 1)

    def __contains__(self, position) -> bool:
        return self.first <= position <= self.last


class Alignment:
    def __init__(self, kind, pairs: Iterable = ()):
        self.kind = AlignmentKind(kind)
        self.pairs: List[AlignedPair] = [
            p if isinstance(p, AlignedPair) else AlignedPair(*p) for p in pairs
        ]

    @property
    def matches(self) -> List[AlignedPair]:
        return [p for p in self.pairs if not p.substitution]

    @property
    def substitutions(self) -> List[AlignedPair]:
        return [p for p in self.pairs if p.substitution]

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Alignment):
            return NotImplemented
        return self.kind == other.kind and self.pairs == other.pairs

    def __repr__(self) -> str:
        return f"Alignment({self.kind.value}, pairs={len(self.pairs)})"

    def to_dict(self) -> Dict:
        return {
            'kind': self.kind.value,
            'pairs': [[p.i, p.j, p.substitution] for p in self.pairs]
        }


class CostBreakdown:
    def __init__(self, matches: int, deletions_x: int, deletions_y: int, substitutions: int = 0):
        self.matches = matches
        self.deletions_x = deletions_x
        self.deletions_y = deletions_y
        self.substitutions = substitutions
        self.total = deletions_x + deletions_y + substitutions

    def __repr__(self) -> str:
        return (f"CostBreakdown(total={self.total}, matches={self.matches}, "
                f"deletions_x={self.deletions_x}, deletions_y={self.deletions_y}, "
                f"substitutions={self.substitutions})")

    def to_dict(self) -> Dict:
        return {
            'matches': self.matches,
            'deletions_x': self.deletions_x,
            'deletions_y': self.deletions_y,
            'substitutions': self.substitutions,
            'total': self.total
        }


class ValidationReport:
    def __init__(self, ok: bool, violation: Optional[str] = None, pair_index: Optional[int] = None):
        self.ok = ok
        self.violation = violation
        self.pair_index = pair_index

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        if self.ok:
            return "ValidationReport(ok)"
        return f"ValidationReport(violation={self.violation!r}, pair_index={self.pair_index})"

    def to_dict(self) -> Dict:
        return {'ok': self.ok, 'violation': self.violation, 'pair_index': self.pair_index}


class Block:
    """Block b_i = m_i . d_i; block 0 has an empty matching part"""

    def __init__(self, index: int, m: Span, d: Span):
        self.index = index
        self.m = m
        self.d = d

    @property
    def span(self) -> Span:
        first = self.m.first if not self.m.is_empty else self.d.first
        return Span(first, self.d.last if not self.d.is_empty else self.m.last)

    def __repr__(self) -> str:
        return f"Block({self.index}, m={tuple(self.m)}, d={tuple(self.d)})"

    def to_dict(self) -> Dict:
        return {'index': self.index, 'm': list(self.m), 'd': list(self.d)}


class BlockDecomposition:
    def __init__(self, blocks_x: List[Block], blocks_y: List[Block]):
        self.blocks_x = blocks_x
        self.blocks_y = blocks_y

    @property
    def l(self) -> int:
        """Number of blocks carrying a matching part"""
        return len(self.blocks_x) - 1

    def to_dict(self) -> Dict:
        return {
            'l': self.l,
            'blocks_x': [b.to_dict() for b in self.blocks_x],
            'blocks_y': [b.to_dict() for b in self.blocks_y]
        }


class SegmentProfile:
    """Per x-block segments of the embedded y string and their costs cost_A(i)"""

    def __init__(self, k: int, segments: List[Span], costs: List[int]):
        self.k = k
        self.segments = segments
        self.costs = costs

    @property
    def total(self) -> int:
        return sum(self.costs)

    def to_dict(self) -> Dict:
        return {
            'k': self.k,
            'segments': [list(s) for s in self.segments],
            'costs': self.costs,
            'total': self.total
        }
