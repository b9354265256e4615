#!/usr/bin/env python3
"""
Unit tests for the alphabet embedding service
"""

import unittest
from fractions import Fraction
import sys
import os

import numpy as np

# Add the project root to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import TestingConfig
from models.alignment import Alignment, AlignmentKind
from models.code import EmbedParams, IndelCode
from models.errors import AlphabetMismatchError, InvalidAlignmentError, ParameterError
from models.strings import Alphabet, Str
from services.alignment_service import AlignmentService
from services.alphabet_embed_service import AlphabetEmbedService
from services.code_service import CodeService
from services.metrics_service import MetricsService


def hand_code(words, gamma, sigma, epsilon=Fraction(1, 4)):
    alphabet = Alphabet(sigma)
    params = EmbedParams(gamma, epsilon, sigma, len(words[0]))
    return IndelCode(params, [Str(alphabet, w) for w in words])


class TestAlphabetEmbedService(unittest.TestCase):
    """Test cases for AlphabetEmbedService class"""

    @classmethod
    def setUpClass(cls):
        """Generate one code shared by all tests"""
        codes = CodeService(TestingConfig)
        cls.code = codes.generate_code(codes.plan_parameters(4, '1/4'), seed=1)

    def setUp(self):
        """Set up test fixtures"""
        self.metrics = MetricsService(TestingConfig)
        self.alignments = AlignmentService()
        self.service = AlphabetEmbedService(self.metrics, self.alignments)
        self.gamma = Alphabet(4)
        self.rng = np.random.default_rng(9)
        # Disjoint codewords of length 4; εk = 1
        self.disjoint = hand_code([[0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11]], 3, 12)

    def random_word(self, max_length=8):
        return Str(self.gamma, self.rng.integers(0, 4, size=self.rng.integers(1, max_length + 1)))

    def test_embed_concatenates_codewords(self):
        """Test that E(X) is the concatenation of codewords"""
        x = Str(self.gamma, [2, 0, 3])
        embedded = self.service.embed(self.code, x)
        k = self.code.k
        self.assertEqual(len(embedded), 3 * k)
        for block, symbol in enumerate(x.symbols):
            self.assertEqual(embedded.symbols[block * k:(block + 1) * k], self.code.codewords[symbol].symbols)
        self.assertEqual(self.service.code_embedding(self.code)(x), embedded)

    def test_embed_rejects_symbol_without_codeword(self):
        """Test that symbols beyond the code size are refused"""
        with self.assertRaises(AlphabetMismatchError):
            self.service.embed(self.code, Str(Alphabet(5), [4]))

    def test_push_scales_cost_and_lift_inverts(self):
        """Test cost(push(A)) = k·cost(A) and lift(push(A)) = A"""
        for _ in range(20):
            x, y = self.random_word(), self.random_word()
            a = self.metrics.optimal_alignment(AlignmentKind.INDEL, x, y)
            ex, ey = self.service.embed(self.code, x), self.service.embed(self.code, y)
            pushed = self.service.push_alignment(a, x, y, self.code)
            self.assertEqual(self.alignments.cost(pushed, ex, ey).total,
                             self.code.k * self.alignments.cost(a, x, y).total)
            self.assertTrue(self.alignments.is_block_structured(pushed, self.code.k))
            self.assertEqual(self.service.lift_alignment(pushed, self.code), a)

    def test_push_rejects_edit_alignment(self):
        """Test that only indel alignments are pushed"""
        x = Str(self.gamma, [0])
        with self.assertRaises(InvalidAlignmentError):
            self.service.push_alignment(Alignment('edit', [(1, 1)]), x, x, self.code)

    def test_block_structure_completes_significant_match(self):
        """Test that a significant partial match becomes perfect and a stray match is dropped"""
        x = Str(Alphabet(3), [0, 1])
        ex = self.service.embed(self.disjoint, x)
        a = Alignment('indel', [(1, 1), (2, 2), (7, 7)])
        out = self.service.block_structure(a, ex, ex, self.disjoint)
        self.assertEqual([(p.i, p.j) for p in out.pairs], [(1, 1), (2, 2), (3, 3), (4, 4)])
        self.assertTrue(self.alignments.is_block_structured(out, 4))

    def test_block_structure_drops_spread_matches(self):
        """Test that insignificant matches spread over several y-blocks are removed"""
        x = Str(Alphabet(3), [0])
        y = Str(Alphabet(3), [0, 0])
        ex, ey = self.service.embed(self.disjoint, x), self.service.embed(self.disjoint, y)
        a = Alignment('indel', [(1, 1), (4, 8)])
        out = self.service.block_structure(a, ex, ey, self.disjoint)
        self.assertEqual(len(out), 0)

    def test_block_structure_bound_on_degraded_alignments(self):
        """Test the predicate and the (1+4ε)² cost bound on thinned optimal alignments"""
        epsilon = self.code.params.epsilon
        for _ in range(20):
            x, y = self.random_word(), self.random_word()
            ex, ey = self.service.embed(self.code, x), self.service.embed(self.code, y)
            pushed = self.service.push_alignment(
                self.metrics.optimal_alignment(AlignmentKind.INDEL, x, y), x, y, self.code)
            keep = self.rng.random(len(pushed)) < 0.6
            thinned = Alignment('indel', [p for p, kept in zip(pushed.pairs, keep) if kept])

            out = self.service.block_structure(thinned, ex, ey, self.code)
            self.assertTrue(self.alignments.is_block_structured(out, self.code.k))
            cost_in = self.alignments.cost(thinned, ex, ey).total
            cost_out = self.alignments.cost(out, ex, ey).total
            self.assertLessEqual(cost_out, (1 + 4 * epsilon) ** 2 * cost_in)

    def test_block_structure_rejects_bad_input(self):
        """Test the length and kind checks"""
        ex = self.service.embed(self.disjoint, Str(Alphabet(3), [0]))
        with self.assertRaises(ParameterError):
            self.service.block_structure(Alignment('indel', []), ex, Str(ex.alphabet, [0]), self.disjoint)
        with self.assertRaises(InvalidAlignmentError):
            self.service.block_structure(Alignment('edit', []), ex, ex, self.disjoint)

    def test_lift_rejects_unstructured(self):
        """Test that lifting needs a block-structured alignment"""
        with self.assertRaises(InvalidAlignmentError):
            self.service.lift_alignment(Alignment('indel', [(1, 1)]), self.disjoint)

    def test_sandwich_bounds(self):
        """Test Δ̃(E(X),E(Y)) <= Δ̃(X,Y) on random pairs"""
        for _ in range(20):
            x, y = self.random_word(), self.random_word()
            bounds = self.service.embedded_distance_bounds(x, y, self.code)
            self.assertTrue(bounds['upper_ok'])
            self.assertTrue(bounds['lower_ok'])
            self.assertLessEqual(bounds['floor'], bounds['embedded'])

    def test_find_contracted_pair(self):
        """Test the contraction witness when |Γ| > |Σ|"""
        toy = hand_code([[0, 1, 2, 3], [0, 2, 1, 3], [1, 0, 0, 0], [2, 2, 2, 2], [3, 3, 3, 3]], 5, 4)
        embedding = self.service.code_embedding(toy)
        for n in (1, 3):
            X, Y = self.service.find_contracted_pair(embedding, n, 5, 4)
            self.assertEqual(X.symbols, (0,) * n)
            self.assertEqual(Y.symbols, (1,) * n)
            distance = self.metrics.normalized_distance('indel', embedding(X), embedding(Y))
            self.assertLess(distance.normalized, 1)

    def test_find_plurality_collision(self):
        """Test the plurality witness and its 1 - 1/|Σ| certificate"""
        toy = hand_code([[0, 1, 2, 3], [0, 2, 1, 3], [1, 0, 0, 0], [2, 2, 2, 2], [3, 3, 3, 3]], 5, 4)
        embedding = self.service.code_embedding(toy)
        X, Y, bound = self.service.find_plurality_collision(embedding, 2, 5, 4)
        self.assertEqual(bound, Fraction(3, 4))
        self.assertNotEqual(X, Y)
        distance = self.metrics.normalized_distance('indel', embedding(X), embedding(Y))
        self.assertLessEqual(distance.normalized, bound)

    def test_demonstrators_need_larger_source_alphabet(self):
        """Test that |Γ| <= |Σ| is refused"""
        embedding = self.service.code_embedding(self.disjoint)
        with self.assertRaises(ParameterError):
            self.service.find_contracted_pair(embedding, 2, 3, 12)
        with self.assertRaises(ParameterError):
            self.service.find_plurality_collision(embedding, 2, 3, 12)

    def test_empty_distance_floor(self):
        """Test the floor for the code embedding and for a padding embedding"""
        result = self.service.empty_distance_floor(
            self.service.code_embedding(self.code), Str(self.gamma, [1, 2]), Str.empty(self.gamma))
        self.assertEqual(result['embedded_distance'], 1)
        self.assertTrue(result['holds'])

        binary = Alphabet(2)
        padded = lambda s: Str(binary, [0, 0] + list(s.symbols))
        result = self.service.empty_distance_floor(padded, Str(binary, [1]), Str.empty(binary))
        self.assertEqual(result['embedded_distance'], Fraction(1, 5))
        self.assertEqual(result['floor'], Fraction(1, 5))
        self.assertEqual(result['original_distance'], 1)
        self.assertEqual(result['gap_bound'], Fraction(4, 5))
        self.assertTrue(result['holds'])


if __name__ == '__main__':
    unittest.main()
