from fractions import Fraction
from typing import Dict, List, Optional

from models.strings import Alphabet, Str


class EmbedParams:
    """Parameters of an indel code C ⊆ Σ^k for an alphabet Γ of gamma_size symbols"""

    def __init__(self, gamma_size: int, epsilon: Fraction, sigma_size: int, k: int,
                 snapped: bool = False, requested_epsilon: Optional[Fraction] = None):
        self.gamma_size = gamma_size
        self.epsilon = Fraction(epsilon)
        self.sigma_size = sigma_size
        self.k = k
        self.lcs_budget = self.epsilon * k
        self.snapped = snapped
        self.requested_epsilon = Fraction(requested_epsilon) if requested_epsilon is not None else self.epsilon

    @property
    def code_alphabet(self) -> Alphabet:
        return Alphabet(self.sigma_size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbedParams):
            return NotImplemented
        return (self.gamma_size, self.epsilon, self.sigma_size, self.k) == \
            (other.gamma_size, other.epsilon, other.sigma_size, other.k)

    def __repr__(self) -> str:
        return (f"EmbedParams(gamma={self.gamma_size}, epsilon={self.epsilon}, "
                f"sigma={self.sigma_size}, k={self.k})")

    def to_dict(self) -> Dict:
        return {
            'gamma_size': self.gamma_size,
            'epsilon': str(self.epsilon),
            'sigma_size': self.sigma_size,
            'k': self.k,
            'lcs_budget': str(self.lcs_budget),
            'snapped': self.snapped,
            'requested_epsilon': str(self.requested_epsilon)
        }


class IndelCode:
    """Codewords indexed by Γ-symbol id"""

    def __init__(self, params: EmbedParams, codewords: List[Str]):
        self.params = params
        self.codewords = list(codewords)

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def alphabet(self) -> Alphabet:
        if self.codewords:
            return self.codewords[0].alphabet
        return self.params.code_alphabet

    def codeword(self, symbol: int) -> Str:
        return self.codewords[symbol]

    def __len__(self) -> int:
        return len(self.codewords)

    def to_dict(self) -> Dict:
        return {
            'params': self.params.to_dict(),
            'codewords': [list(c.symbols) for c in self.codewords]
        }


class CodeReport:
    def __init__(self, params: EmbedParams, size: int, max_pairwise_lcs: int,
                 min_pairwise_indel: Optional[int], lengths_ok: bool, distinct: bool):
        self.params = params
        self.size = size
        self.max_pairwise_lcs = max_pairwise_lcs
        self.min_pairwise_indel = min_pairwise_indel
        self.lengths_ok = lengths_ok
        self.distinct = distinct
        self.passed = lengths_ok and distinct and max_pairwise_lcs < params.lcs_budget
        # pairwise indel distance implied by LCS < εk
        self.distance_floor = (2 - 2 * params.epsilon) * params.k
        # no code with more words than symbols stays above this
        self.plurality_ceiling = (1 - Fraction(1, params.sigma_size)) * 2 * params.k

    @property
    def exceeds_alphabet(self) -> bool:
        return self.size > self.params.sigma_size

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict:
        return {
            'pass': self.passed,
            'size': self.size,
            'k': self.params.k,
            'sigma_size': self.params.sigma_size,
            'epsilon': str(self.params.epsilon),
            'lcs_budget': str(self.params.lcs_budget),
            'max_pairwise_lcs': self.max_pairwise_lcs,
            'min_pairwise_indel': self.min_pairwise_indel,
            'distance_floor': str(self.distance_floor),
            'plurality_ceiling': str(self.plurality_ceiling),
            'exceeds_alphabet': self.exceeds_alphabet,
            'lengths_ok': self.lengths_ok,
            'distinct': self.distinct,
            'snapped': self.params.snapped,
            'requested_epsilon': str(self.params.requested_epsilon)
        }
