#!/usr/bin/env python3
"""
Unit tests for the LCS and edit-distance kernels
"""

import unittest
import sys
import os

import numpy as np

# Add the project root to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import Config
from utils import lcs_kernels


class TestLcsKernels(unittest.TestCase):
    """Test cases for the kernel functions"""

    def setUp(self):
        """Set up test fixtures"""
        self.rng = np.random.default_rng(7)
        # ABCBDAB / BDCABA
        self.x = [0, 1, 2, 1, 3, 0, 1]
        self.y = [1, 3, 2, 0, 1, 0]

    def test_dp_lcs_textbook_example(self):
        """Test the reference DP on the textbook pair"""
        self.assertEqual(lcs_kernels.dp_lcs(self.x, self.y), 4)
        self.assertEqual(lcs_kernels.dp_lcs_row(self.x, self.y)[-1], 4)
        self.assertEqual(lcs_kernels.dp_lcs_table(self.x, self.y)[-1][-1], 4)

    def test_dp_edit_row_and_table(self):
        """Test edit distance rows on kitten/sitting"""
        kitten = [ord(c) for c in 'kitten']
        sitting = [ord(c) for c in 'sitting']
        self.assertEqual(lcs_kernels.dp_edit_row(kitten, sitting)[-1], 3)
        self.assertEqual(lcs_kernels.dp_edit_table(kitten, sitting)[-1][-1], 3)
        self.assertEqual(lcs_kernels.dp_edit_row([], sitting), list(range(8)))

    def test_bit_parallel_matches_dp(self):
        """Test the bit-parallel kernel against the DP on random inputs"""
        for _ in range(200):
            n, m = self.rng.integers(0, 90, size=2)
            x = self.rng.integers(0, 3, size=n).tolist()
            y = self.rng.integers(0, 3, size=m).tolist()
            self.assertEqual(lcs_kernels.bit_parallel_lcs(x, y), lcs_kernels.dp_lcs(x, y))

    def test_bit_parallel_reuses_masks(self):
        """Test that precomputed masks of x give the same answer"""
        masks = lcs_kernels.build_match_masks(self.x)
        self.assertEqual(masks[0], 0b0100001)
        self.assertEqual(lcs_kernels.bit_parallel_lcs(self.x, self.y, masks), 4)

    def test_run_lengths(self):
        """Test run-length encoding"""
        symbols, lengths = lcs_kernels.run_lengths([0, 0, 1, 1, 1, 0])
        self.assertEqual(symbols.tolist(), [0, 1, 0])
        self.assertEqual(lengths.tolist(), [2, 3, 1])
        self.assertEqual(lcs_kernels.count_runs([0, 0, 1, 1, 1, 0]), 3)
        self.assertEqual(lcs_kernels.count_runs([]), 0)

    def test_run_length_matches_dp(self):
        """Test the run-length kernel on repetitive and irregular inputs"""
        for _ in range(200):
            x = np.repeat(self.rng.integers(0, 2, size=self.rng.integers(1, 8)),
                          self.rng.integers(1, 9, size=1)).tolist()
            y = self.rng.integers(0, 3, size=self.rng.integers(0, 40)).tolist()
            self.assertEqual(lcs_kernels.run_length_lcs(x, y), lcs_kernels.dp_lcs(x, y))
            self.assertEqual(lcs_kernels.run_length_lcs(y, x), lcs_kernels.dp_lcs(x, y))

    def test_run_length_long_runs(self):
        """Test closed-form rectangles when runs are longer than their partners"""
        cases = [
            ([0] * 10 + [1] * 3, [1] * 5 + [0] * 12),
            ([0] * 3, [0] * 7),
            ([1] * 7, [0] * 2 + [1] * 2),
            ([0, 1] * 6, [0] * 6 + [1] * 6),
        ]
        for x, y in cases:
            self.assertEqual(lcs_kernels.run_length_lcs(x, y), lcs_kernels.dp_lcs(x, y))

    def test_choose_kernel(self):
        """Test dispatch under the default cost model"""
        costs = Config.get_kernel_costs()
        self.assertEqual(lcs_kernels.choose_kernel(10, 10, 5, 5, 1024, costs), lcs_kernels.DP)
        self.assertEqual(lcs_kernels.choose_kernel(100000, 100000, 10, 10, 1024, costs),
                         lcs_kernels.RUN_LENGTH)
        self.assertEqual(lcs_kernels.choose_kernel(1000, 1000, 500, 500, 1024, costs),
                         lcs_kernels.BIT_PARALLEL)

    def test_lcs_with_kernel_all_agree(self):
        """Test that every named kernel gives the same answer"""
        for kernel in (lcs_kernels.DP, lcs_kernels.BIT_PARALLEL, lcs_kernels.RUN_LENGTH):
            self.assertEqual(lcs_kernels.lcs_with_kernel(kernel, self.y, self.x), 4)

    def test_empty_inputs(self):
        """Test that every kernel returns 0 on an empty side"""
        for kernel in (lcs_kernels.DP, lcs_kernels.BIT_PARALLEL, lcs_kernels.RUN_LENGTH):
            self.assertEqual(lcs_kernels.lcs_with_kernel(kernel, [], [1, 2]), 0)
            self.assertEqual(lcs_kernels.lcs_with_kernel(kernel, [1, 2], []), 0)


if __name__ == '__main__':
    unittest.main()
