from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple, Union

from models.errors import FormulaError
from models.strings import Str


class Gate(Enum):
    AND = "and"
    OR = "or"

    @property
    def alternate(self) -> 'Gate':
        return Gate.OR if self is Gate.AND else Gate.AND

    @property
    def identity(self) -> int:
        """Constant c with (x gate c) == x"""
        return 1 if self is Gate.AND else 0


class Side(Enum):
    U = "U"
    V = "V"


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise FormulaError(f"constants are 0 or 1, got {self.value}")


@dataclass(frozen=True)
class LitU:
    index: int
    negated: bool = False


@dataclass(frozen=True)
class LitV:
    index: int
    negated: bool = False


@dataclass(frozen=True)
class And:
    left: 'Formula'
    right: 'Formula'

    gate = Gate.AND


@dataclass(frozen=True)
class Or:
    left: 'Formula'
    right: 'Formula'

    gate = Gate.OR


Formula = Union[Const, LitU, LitV, And, Or]
LEAF_TYPES = (Const, LitU, LitV)
GATE_TYPES = {Gate.AND: And, Gate.OR: Or}


def is_leaf(node: Formula) -> bool:
    return isinstance(node, LEAF_TYPES)


def make_gate(gate: Gate, left: Formula, right: Formula) -> Formula:
    return GATE_TYPES[gate](left, right)


@dataclass(frozen=True)
class NormalizedFormula:
    """A formula with alternating gate layers and every literal at the same depth"""
    formula: Formula
    depth: int
    top_gate: Union[Gate, None]

    def to_dict(self) -> Dict:
        return {
            'depth': self.depth,
            'top_gate': self.top_gate.value if self.top_gate else None
        }


@dataclass(frozen=True)
class Assignment:
    side: Side
    bits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'side', Side(self.side))
        object.__setattr__(self, 'bits', tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise FormulaError("assignment bits must be 0 or 1")

    def value(self, index: int) -> int:
        if not 0 <= index < len(self.bits):
            raise FormulaError(f"{self.side.value}-variable {index} outside an assignment of {len(self.bits)} bits")
        return self.bits[index]


class GadgetPair:
    """Binary strings g, h with LCS(g, h) in {t, f}"""

    def __init__(self, g: Str, h: Str, t: int, f: int, depth: int = 1):
        self.g = g
        self.h = h
        self.t = t
        self.f = f
        self.depth = depth

    @property
    def k(self) -> int:
        return len(self.g)

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.k, self.t, self.f

    def to_dict(self) -> Dict:
        return {
            'g': self.g.text(),
            'h': self.h.text(),
            't': self.t,
            'f': self.f,
            'k': self.k,
            'depth': self.depth
        }


class ConcatReduction:
    """Separator concatenation G, H of per-threshold gadget pairs with LCS(G, H) = R + S·(#true)"""

    def __init__(self, G: Str, H: Str, R: int, S: int, M: int, thresholds: int):
        self.G = G
        self.H = H
        self.R = R
        self.S = S
        self.M = M
        self.thresholds = thresholds

    @property
    def N(self) -> int:
        return len(self.G)

    def decode(self, lcs: int) -> Tuple[int, int]:
        """(quotient, remainder) of (lcs - R) / S"""
        return divmod(lcs - self.R, self.S)

    def to_dict(self) -> Dict:
        return {
            'N': self.N,
            'R': self.R,
            'S': self.S,
            'M': self.M,
            'thresholds': self.thresholds
        }
