import logging
import math
import os
from fractions import Fraction
from itertools import combinations
from typing import List, Optional

import numpy as np

from config.settings import get_config
from models.code import CodeReport, EmbedParams, IndelCode
from models.errors import CodeGenerationError, FormatError, ParameterError, StrembedError
from models.strings import Alphabet, Str
from utils.lcs_kernels import bit_parallel_lcs, build_match_masks
from utils.text_io import parse_fraction

logger = logging.getLogger(__name__)

_FLOAT_SLACK = 1e-9


class CodeService:
    """Indel error-correcting codes: parameter planning, greedy random search, validation, files"""

    def __init__(self, app_config=None):
        self.config = app_config or get_config()

    def plan_parameters(self, gamma_size: int, epsilon) -> EmbedParams:
        """
        Smallest block length k in [(2/ε)·log₂|Γ|, 1/ε + (2/ε)·log₂|Γ|] with
        ε·k integral, and |Σ| = ⌈32/ε²⌉.

        When no k in the interval makes ε·k integral, k is the interval's lower
        end and ε is snapped to the nearest multiple of 1/k.
        """
        requested = parse_fraction(epsilon)
        if not 0 < requested < Fraction(1, 2):
            raise ParameterError(f"epsilon must lie in (0, 1/2), got {requested}")
        if gamma_size < 1:
            raise ParameterError(f"gamma_size must be positive, got {gamma_size}")

        log_gamma = math.log2(max(gamma_size, 2))
        low = math.ceil(2 * log_gamma / float(requested) - _FLOAT_SLACK)
        high = math.floor(1 / float(requested) + 2 * log_gamma / float(requested) + _FLOAT_SLACK)

        epsilon_used = requested
        step = requested.denominator
        k = -(-low // step) * step
        snapped = k > high
        if snapped:
            k = low
            budget = max(1, round(requested * k))
            if Fraction(budget, k) >= Fraction(1, 2):
                budget = math.floor(requested * k) or 1
            epsilon_used = Fraction(budget, k)
            logger.warning("no k in [%d, %d] makes %s*k integral; using k=%d and epsilon=%s",
                           low, high, requested, k, epsilon_used)

        sigma_size = math.ceil(32 / epsilon_used ** 2)
        params = EmbedParams(gamma_size, epsilon_used, sigma_size, k,
                             snapped=snapped, requested_epsilon=requested)
        logger.info("planned %r", params)
        return params

    def binomial_bound(self, k: int, epsilon) -> float:
        """2^((ε·log₂(1/ε) + 2ε)·k), checked against binom(k, ⌊εk⌋)"""
        epsilon = parse_fraction(epsilon)
        if k < 1:
            raise ParameterError(f"k must be at least 1, got {k}")
        if not 0 < epsilon < Fraction(1, 2):
            raise ParameterError(f"epsilon must lie in (0, 1/2), got {epsilon}")
        eps = float(epsilon)
        bound = 2.0 ** ((eps * math.log2(1 / eps) + 2 * eps) * k)
        binom = math.comb(k, math.floor(epsilon * k))
        if binom > bound:
            raise StrembedError(f"binom({k}, {math.floor(epsilon * k)}) = {binom} exceeds {bound}")
        return bound

    def generate_code(self, params: EmbedParams, seed: Optional[int] = None) -> IndelCode:
        """
        Greedy random code: sample words uniformly from Σ^k and keep a word when
        its LCS with every kept word stays below ε·k.
        """
        if seed is None:
            seed = self.config.get_default_seed()
        rng = np.random.default_rng(seed)
        attempts_left = self.config.CODE_ATTEMPTS_PER_WORD * params.gamma_size
        kept: List[tuple] = []
        masks = []
        seen = set()

        while len(kept) < params.gamma_size:
            if attempts_left == 0:
                raise CodeGenerationError(
                    f"kept {len(kept)} of {params.gamma_size} codewords before the attempt budget ran out"
                )
            attempts_left -= 1
            candidate = tuple(int(s) for s in rng.integers(0, params.sigma_size, size=params.k))
            if candidate in seen:
                continue
            if all(bit_parallel_lcs(word, candidate, mask) < params.lcs_budget
                   for word, mask in zip(kept, masks)):
                kept.append(candidate)
                masks.append(build_match_masks(candidate))
                seen.add(candidate)

        logger.info("generated %d codewords of length %d (seed %d)", len(kept), params.k, seed)
        alphabet = params.code_alphabet
        return IndelCode(params, [Str(alphabet, word) for word in kept])

    def validate_code(self, code: IndelCode) -> CodeReport:
        k = code.params.k
        words = [c.symbols for c in code.codewords]
        lengths_ok = all(len(w) == k for w in words)
        distinct = len(set(words)) == len(words)
        max_lcs = 0
        min_indel = None
        for a, b in combinations(words, 2):
            lcs = bit_parallel_lcs(a, b) if len(a) >= len(b) else bit_parallel_lcs(b, a)
            max_lcs = max(max_lcs, lcs)
            indel = len(a) + len(b) - 2 * lcs
            min_indel = indel if min_indel is None else min(min_indel, indel)
        report = CodeReport(code.params, len(words), max_lcs, min_indel, lengths_ok, distinct)
        if not report.passed:
            logger.warning("code check failed: max pairwise LCS %d, budget %s",
                           max_lcs, code.params.lcs_budget)
        return report

    def save_code(self, code: IndelCode, path: str):
        """Header `sigma_size k epsilon gamma_size`, then one codeword per line"""
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        params = code.params
        lines = [f"{params.sigma_size} {params.k} {params.epsilon} {params.gamma_size}"]
        lines.extend(' '.join(str(s) for s in word.symbols) for word in code.codewords)
        with open(path, 'w') as f:
            f.write('\n'.join(lines) + '\n')

    def load_code(self, path: str) -> IndelCode:
        try:
            with open(path, 'r') as f:
                lines = f.read().splitlines()
        except OSError as e:
            raise FormatError(f"cannot read code file {path}: {e}") from e

        if not lines:
            raise FormatError(f"code file {path} is empty")
        header = lines[0].split()
        if len(header) != 4:
            raise FormatError("code header must read `sigma_size k epsilon gamma_size`")
        try:
            sigma_size, k, gamma_size = int(header[0]), int(header[1]), int(header[3])
            epsilon = Fraction(header[2])
            words = [[int(tok) for tok in line.split()] for line in lines[1:] if line.strip()]
        except ValueError as e:
            raise FormatError(f"malformed code file {path}: {e}") from e
        if len(words) != gamma_size:
            raise FormatError(f"header announces {gamma_size} codewords, file has {len(words)}")

        params = EmbedParams(gamma_size, epsilon, sigma_size, k)
        alphabet = Alphabet(sigma_size)
        try:
            codewords = [Str(alphabet, w) for w in words]
        except ValueError as e:
            raise FormatError(f"codeword outside the declared alphabet: {e}") from e
        return IndelCode(params, codewords)
