from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from models.errors import AlphabetMismatchError, FormatError, ParameterError

SENTINEL_NAME = '$'


class Alphabet:
    """Dense symbol ids 0..size-1 with optional display names"""

    def __init__(self, size: int, names: Optional[Sequence[str]] = None):
        if size < 1:
            raise ParameterError(f"alphabet size must be positive, got {size}")
        if names is not None:
            names = list(names)
            if len(names) != size:
                raise ParameterError(f"expected {size} symbol names, got {len(names)}")
            if len(set(names)) != size:
                raise ParameterError("symbol names must be distinct")
        self.size = size
        self.names = names
        self._index = {name: i for i, name in enumerate(names)} if names else None

    @classmethod
    def from_text(cls, *texts: str) -> 'Alphabet':
        """Alphabet of the sorted distinct characters of all texts"""
        chars = sorted(set(''.join(texts)))
        if not chars:
            chars = ['a']
        return cls(len(chars), chars)

    def encode(self, text: str) -> List[int]:
        if self._index is None:
            raise FormatError("alphabet has no symbol names to encode text with")
        try:
            return [self._index[ch] for ch in text]
        except KeyError as e:
            raise AlphabetMismatchError(f"character {e.args[0]!r} is not in the alphabet") from None

    def name(self, symbol: int) -> str:
        if self.names is not None:
            return self.names[symbol]
        return str(symbol)

    def render(self, symbols: Iterable[int]) -> str:
        if self.names is not None and all(len(n) == 1 for n in self.names):
            return ''.join(self.names[s] for s in symbols)
        return ' '.join(self.name(s) for s in symbols)

    def with_sentinel(self) -> 'Alphabet':
        """Extension by one reserved symbol with id == self.size"""
        names = self.names if self.names is not None else [str(i) for i in range(self.size)]
        if SENTINEL_NAME in names:
            raise ParameterError("alphabet already uses the sentinel name '$'")
        return Alphabet(self.size + 1, list(names) + [SENTINEL_NAME])

    def extends(self, other: 'Alphabet') -> bool:
        if self.size < other.size:
            return False
        if other.names is None:
            return True
        if self.names is None:
            return False
        return self.names[:other.size] == other.names

    def __eq__(self, other) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.size == other.size and self.names == other.names

    def __hash__(self) -> int:
        return hash((self.size, tuple(self.names) if self.names else None))

    def __repr__(self) -> str:
        return f"Alphabet(size={self.size})"

    def to_dict(self) -> Dict:
        return {'size': self.size, 'names': self.names}


BINARY = Alphabet(2, ['0', '1'])


class Str:
    """A finite sequence of symbol ids over a declared alphabet"""

    def __init__(self, alphabet: Alphabet, symbols: Iterable[int] = ()):
        self.alphabet = alphabet
        self.symbols = tuple(int(s) for s in symbols)
        if self.symbols and (min(self.symbols) < 0 or max(self.symbols) >= alphabet.size):
            raise AlphabetMismatchError(
                f"symbol ids must lie in 0..{alphabet.size - 1}"
            )

    @classmethod
    def from_text(cls, text: str, alphabet: Optional[Alphabet] = None) -> 'Str':
        alphabet = alphabet or Alphabet.from_text(text)
        return cls(alphabet, alphabet.encode(text))

    @classmethod
    def empty(cls, alphabet: Alphabet) -> 'Str':
        return cls(alphabet, ())

    def at(self, i: int) -> int:
        """1-based symbol access, X[i]"""
        if not 1 <= i <= len(self.symbols):
            raise IndexError(f"position {i} outside 1..{len(self.symbols)}")
        return self.symbols[i - 1]

    def substring(self, first: int, last: int) -> 'Str':
        """X[first, last], 1-based and inclusive"""
        return Str(self.alphabet, self.symbols[first - 1:last])

    def over(self, alphabet: Alphabet) -> 'Str':
        """The same symbols re-tagged into an extension alphabet"""
        if not alphabet.extends(self.alphabet):
            raise AlphabetMismatchError("target alphabet does not extend the string's alphabet")
        return Str(alphabet, self.symbols)

    def text(self) -> str:
        return self.alphabet.render(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __add__(self, other: 'Str') -> 'Str':
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError("cannot concatenate strings over different alphabets")
        return Str(self.alphabet, self.symbols + other.symbols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Str):
            return NotImplemented
        return self.alphabet == other.alphabet and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash((self.alphabet, self.symbols))

    def __repr__(self) -> str:
        shown = self.text()
        if len(shown) > 40:
            shown = shown[:37] + '...'
        return f"Str({shown!r}, n={len(self.symbols)})"

    def to_dict(self) -> Dict:
        return {
            'text': self.text(),
            'symbols': list(self.symbols),
            'alphabet_size': self.alphabet.size,
            'length': len(self.symbols)
        }


class DollarString(Str):
    """String over a base alphabet extended by the sentinel $"""

    def __init__(self, base_alphabet: Alphabet, symbols: Iterable[int] = ()):
        super().__init__(base_alphabet.with_sentinel(), symbols)
        self.base_alphabet = base_alphabet

    @property
    def sentinel(self) -> int:
        return self.base_alphabet.size

    def sentinel_count(self) -> int:
        return sum(1 for s in self.symbols if s == self.sentinel)


class DistanceValue:
    def __init__(self, kind: str, raw: int, normalized: Fraction):
        self.kind = kind
        self.raw = raw
        self.normalized = normalized

    def __repr__(self) -> str:
        return f"DistanceValue({self.kind}, raw={self.raw}, normalized={self.normalized})"

    def to_dict(self) -> Dict:
        return {
            'kind': self.kind,
            'raw': self.raw,
            'normalized': str(self.normalized),
            'normalized_float': float(self.normalized)
        }
