#!/usr/bin/env python3
"""
Unit tests for the brute-force oracles
"""

import unittest
from itertools import product
import sys
import os

# Add the project root to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import TestingConfig
from models.errors import AlphabetMismatchError, SizeBoundError
from models.strings import Alphabet, Str
from services.metrics_service import MetricsService
from services.oracle_service import OracleService
from utils.text_io import parse_strings


class TestOracleService(unittest.TestCase):
    """Test cases for OracleService class"""

    def setUp(self):
        """Set up test fixtures"""
        self.oracle = OracleService(TestingConfig)
        self.metrics = MetricsService(TestingConfig)
        self.binary = Alphabet(2)

    def test_known_values(self):
        """Test the oracles on small known pairs"""
        x, y = parse_strings('kitten', 'sitting')
        self.assertEqual(self.oracle.brute_edit(x, y), 3)
        self.assertEqual(self.oracle.brute_lcs(x, y), 4)
        self.assertEqual(self.oracle.brute_best_alignment('indel', x, y), 5)
        self.assertEqual(self.oracle.brute_best_alignment('edit', x, y), 3)

    def test_exhaustive_agreement_with_dp(self):
        """Test oracles against the DP on every binary pair up to length 4"""
        words = [Str(self.binary, w) for n in range(5) for w in product((0, 1), repeat=n)]
        for x in words:
            for y in words:
                self.assertEqual(self.oracle.brute_edit(x, y), self.metrics.edit_distance(x, y))
                self.assertEqual(self.oracle.brute_lcs(x, y), self.metrics.lcs_length(x, y))

    def test_exhaustive_ternary_agreement_with_dp(self):
        """Test oracles against the DP on every pair over three symbols up to length 4"""
        ternary = Alphabet(3, ['a', 'b', 'c'])
        words = [Str(ternary, w) for n in range(5) for w in product(range(3), repeat=n)]
        self.assertEqual(len(words), 121)
        for x in words:
            for y in words:
                self.assertEqual(self.oracle.brute_edit(x, y), self.metrics.edit_distance(x, y))
                self.assertEqual(self.oracle.brute_lcs(x, y), self.metrics.lcs_length(x, y))

    def test_exhaustive_ternary_length_five(self):
        """Test length-5 ternary words against a fixed set of partners"""
        ternary = Alphabet(3, ['a', 'b', 'c'])
        partners = [Str(ternary, w) for w in ((0, 1, 2, 0, 1), (2, 2, 1, 0, 0), (1, 0, 1))]
        for w in product(range(3), repeat=5):
            x = Str(ternary, w)
            for y in partners:
                self.assertEqual(self.oracle.brute_edit(x, y), self.metrics.edit_distance(x, y))
                self.assertEqual(self.oracle.brute_lcs(x, y), self.metrics.lcs_length(x, y))

    def test_empty_inputs(self):
        """Test the oracles with empty strings"""
        empty = Str.empty(self.binary)
        word = Str(self.binary, [1, 0, 1])
        self.assertEqual(self.oracle.brute_edit(empty, word), 3)
        self.assertEqual(self.oracle.brute_lcs(empty, word), 0)
        self.assertEqual(self.oracle.brute_edit(empty, empty), 0)

    def test_size_bounds(self):
        """Test that inputs over the configured bounds are refused"""
        long_x = Str(self.binary, [0] * 12)
        long_y = Str(self.binary, [1] * 11)
        with self.assertRaises(SizeBoundError):
            self.oracle.brute_edit(long_x, long_y)
        with self.assertRaises(SizeBoundError):
            self.oracle.brute_lcs(Str(self.binary, [0] * 21), Str(self.binary, [1] * 21))

    def test_alphabet_mismatch(self):
        """Test that the oracles reject mixed alphabets"""
        with self.assertRaises(AlphabetMismatchError):
            self.oracle.brute_lcs(Str(self.binary, [0]), Str(Alphabet(3), [2]))


if __name__ == '__main__':
    unittest.main()
