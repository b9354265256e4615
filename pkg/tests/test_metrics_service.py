#!/usr/bin/env python3
"""
Unit tests for the metrics service
"""

import unittest
from fractions import Fraction
import sys
import os

import numpy as np

# Add the project root to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import TestingConfig
from models.alignment import AlignmentKind
from models.errors import AlphabetMismatchError, ParameterError
from models.strings import Alphabet, Str
from services.alignment_service import AlignmentService
from services.metrics_service import MetricsService
from utils import lcs_kernels
from utils.text_io import parse_strings


class SmallTracebackConfig(TestingConfig):
    TRACEBACK_FULL_TABLE_MAX_CELLS = 6


class TestMetricsService(unittest.TestCase):
    """Test cases for MetricsService class"""

    def setUp(self):
        """Set up test fixtures"""
        self.metrics = MetricsService(TestingConfig)
        self.alignments = AlignmentService()
        self.rng = np.random.default_rng(3)

    def test_known_distances(self):
        """Test distances on small known pairs"""
        cases = [
            ('edit', 'kitten', 'sitting', 3),
            ('indel', 'ab', 'ba', 2),
            ('edit', 'ab', 'ba', 2),
            ('indel', 'kitten', 'sitting', 5),
            ('edit', 'flaw', 'lawn', 2),
            ('indel', 'abc', 'abc', 0),
        ]
        for kind, a, b, expected in cases:
            x, y = parse_strings(a, b)
            self.assertEqual(self.metrics.distance(kind, x, y), expected, f"{kind} {a} {b}")

    def test_lcs_length(self):
        """Test LCS on the textbook pair"""
        x, y = parse_strings('ABCBDAB', 'BDCABA')
        self.assertEqual(self.metrics.lcs_length(x, y), 4)
        self.assertEqual(self.metrics.indel_distance(x, y), 7 + 6 - 8)

    def test_empty_strings(self):
        """Test distances involving the empty string"""
        alphabet = Alphabet(3)
        empty = Str.empty(alphabet)
        z = Str(alphabet, [0, 1, 2])
        self.assertEqual(self.metrics.lcs_length(empty, z), 0)
        self.assertEqual(self.metrics.indel_distance(empty, z), 3)
        self.assertEqual(self.metrics.edit_distance(z, empty), 3)
        self.assertEqual(self.metrics.indel_distance(empty, empty), 0)

    def test_normalized_distance(self):
        """Test normalization by |x|+|y| for indel and max length for edit"""
        x, y = parse_strings('ab', 'ba')
        indel = self.metrics.normalized_distance('indel', x, y)
        self.assertEqual(indel.raw, 2)
        self.assertEqual(indel.normalized, Fraction(1, 2))
        edit = self.metrics.normalized_distance(AlignmentKind.EDIT, x, y)
        self.assertEqual(edit.normalized, Fraction(1))

    def test_normalized_distance_both_empty(self):
        """Test that two empty strings have no normalized distance"""
        empty = Str.empty(Alphabet(2))
        with self.assertRaises(ParameterError):
            self.metrics.normalized_distance('indel', empty, empty)

    def test_alphabet_mismatch(self):
        """Test that strings over different alphabets are rejected"""
        x = Str(Alphabet(2), [0, 1])
        y = Str(Alphabet(3), [0, 2])
        with self.assertRaises(AlphabetMismatchError):
            self.metrics.edit_distance(x, y)
        with self.assertRaises(AlphabetMismatchError):
            self.metrics.optimal_alignment('indel', x, y)

    def test_sandwich_and_identity(self):
        """Test Δ_edit <= Δ_indel <= 2Δ_edit and Δ_indel = |x|+|y|-2·LCS on random pairs"""
        alphabet = Alphabet(3)
        for _ in range(100):
            x = Str(alphabet, self.rng.integers(0, 3, size=self.rng.integers(0, 12)))
            y = Str(alphabet, self.rng.integers(0, 3, size=self.rng.integers(0, 12)))
            edit = self.metrics.edit_distance(x, y)
            indel = self.metrics.indel_distance(x, y)
            self.assertLessEqual(edit, indel)
            self.assertLessEqual(indel, 2 * edit)
            self.assertEqual(indel, len(x) + len(y) - 2 * self.metrics.lcs_length(x, y))

    def test_optimal_alignment_cost(self):
        """Test that optimal alignments are valid and cost the distance"""
        alphabet = Alphabet(3)
        for _ in range(60):
            x = Str(alphabet, self.rng.integers(0, 3, size=self.rng.integers(0, 10)))
            y = Str(alphabet, self.rng.integers(0, 3, size=self.rng.integers(0, 10)))
            for kind in AlignmentKind:
                a = self.metrics.optimal_alignment(kind, x, y)
                self.assertTrue(self.alignments.validate_alignment(a, x, y))
                self.assertEqual(self.alignments.cost(a, x, y).total, self.metrics.distance(kind, x, y))

    def test_divide_and_conquer_traceback(self):
        """Test that the linear-space traceback stays optimal"""
        metrics = MetricsService(SmallTracebackConfig)
        alphabet = Alphabet(4)
        for _ in range(40):
            x = Str(alphabet, self.rng.integers(0, 4, size=self.rng.integers(2, 16)))
            y = Str(alphabet, self.rng.integers(0, 4, size=self.rng.integers(0, 16)))
            for kind in AlignmentKind:
                a = metrics.optimal_alignment(kind, x, y)
                self.assertEqual(self.alignments.cost(a, x, y).total, metrics.distance(kind, x, y))

    def test_edit_traceback_marks_substitutions(self):
        """Test that the diagonal step on different symbols is flagged as a substitution"""
        x, y = parse_strings('ab', 'ac')
        a = self.metrics.optimal_alignment('edit', x, y)
        self.assertEqual([(p.i, p.j, p.substitution) for p in a.pairs], [(1, 1, False), (2, 2, True)])

    def test_kernel_dispatch_on_long_inputs(self):
        """Test that long inputs leave the DP and still agree with it"""
        alphabet = Alphabet(2)
        x = Str(alphabet, [0] * 300 + [1] * 300)
        y = Str(alphabet, [1] * 200 + [0] * 400)
        self.assertNotEqual(self.metrics.lcs_kernel_used(x, y), lcs_kernels.DP)
        self.assertEqual(self.metrics.lcs_length(x, y), 300)

        z = Str(alphabet, self.rng.integers(0, 2, size=700))
        w = Str(alphabet, self.rng.integers(0, 2, size=500))
        self.assertEqual(self.metrics.lcs_length(z, w), lcs_kernels.dp_lcs(z.symbols, w.symbols))


if __name__ == '__main__':
    unittest.main()
