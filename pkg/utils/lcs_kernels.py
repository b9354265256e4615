"""
LCS and edit-distance kernels over plain symbol sequences.

Three LCS kernels are provided and must agree exactly:

- ``dp_lcs``: the quadratic reference dynamic program.
- ``bit_parallel_lcs``: one big-integer word operation per symbol of the
  shorter string; fast for long, irregular strings.
- ``run_length_lcs``: numpy over run-length encodings, O(runs(x)*|y| +
  runs(y)*|x|); fast for the long, highly repetitive gadget strings.
"""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

DP = 'dp'
BIT_PARALLEL = 'bitparallel'
RUN_LENGTH = 'rle'


def dp_lcs_row(x: Sequence[int], y: Sequence[int]) -> List[int]:
    """Row of LCS(x, y[:j]) for j = 0..len(y)"""
    prev = [0] * (len(y) + 1)
    for a in x:
        cur = [0]
        for j, b in enumerate(y, 1):
            if a == b:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(prev[j] if prev[j] > cur[j - 1] else cur[j - 1])
        prev = cur
    return prev


def dp_lcs(x: Sequence[int], y: Sequence[int]) -> int:
    return dp_lcs_row(x, y)[-1]


def dp_lcs_table(x: Sequence[int], y: Sequence[int]) -> List[List[int]]:
    table = [[0] * (len(y) + 1)]
    for a in x:
        prev = table[-1]
        cur = [0]
        for j, b in enumerate(y, 1):
            if a == b:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(prev[j] if prev[j] > cur[j - 1] else cur[j - 1])
        table.append(cur)
    return table


def dp_edit_row(x: Sequence[int], y: Sequence[int]) -> List[int]:
    """Row of edit distance D(x, y[:j]) for j = 0..len(y)"""
    prev = list(range(len(y) + 1))
    for i, a in enumerate(x, 1):
        cur = [i]
        for j, b in enumerate(y, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a != b)))
        prev = cur
    return prev


def dp_edit_table(x: Sequence[int], y: Sequence[int]) -> List[List[int]]:
    table = [list(range(len(y) + 1))]
    for i, a in enumerate(x, 1):
        prev = table[-1]
        cur = [i]
        for j, b in enumerate(y, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a != b)))
        table.append(cur)
    return table


def build_match_masks(x: Sequence[int]) -> Dict[int, int]:
    """Bit i of masks[c] is set iff x[i] == c"""
    masks: Dict[int, int] = {}
    for pos, c in enumerate(x):
        masks[c] = masks.get(c, 0) | (1 << pos)
    return masks


def bit_parallel_lcs(x: Sequence[int], y: Sequence[int], masks: Dict[int, int] = None) -> int:
    """LCS length with x packed into one integer; pass precomputed masks of x to reuse them"""
    m = len(x)
    if m == 0 or len(y) == 0:
        return 0
    if masks is None:
        masks = build_match_masks(x)
    full = (1 << m) - 1
    v = full
    for c in y:
        u = v & masks.get(c, 0)
        v = ((v + u) | (v - u)) & full
    return m - bin(v).count('1')


def run_lengths(x: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """Symbols and lengths of the maximal runs of x"""
    arr = np.asarray(x, dtype=np.int64)
    if arr.size == 0:
        return arr, arr
    starts = np.concatenate(([0], np.flatnonzero(np.diff(arr)) + 1))
    lengths = np.diff(np.append(starts, arr.size))
    return arr[starts], lengths


def run_length_lcs(x: Sequence[int], y: Sequence[int]) -> int:
    """
    LCS length over run-length encodings.

    For a pair of runs of lengths p (from x) and q (from y) the DP values on
    the bottom row and right column of the p-by-q rectangle follow from its
    top row and left column in closed form: with different symbols nothing
    inside the rectangle matches, so every cell is max(top, left); with equal
    symbols every cell (a, b) equals top[b - a] + a when b >= a and
    left[a - b] + b otherwise.
    """
    x_syms, x_lens = run_lengths(x)
    y_syms, y_lens = run_lengths(y)
    if x_syms.size == 0 or y_syms.size == 0:
        return 0

    width = int(y_lens.sum())
    steps = np.arange(max(int(x_lens.max()), int(y_lens.max())) + 2, dtype=np.int64)
    y_runs = list(zip(y_syms.tolist(), y_lens.tolist()))
    row = np.zeros(width + 1, dtype=np.int64)

    for c, p in zip(x_syms.tolist(), x_lens.tolist()):
        col = np.zeros(p + 1, dtype=np.int64)
        new_row = np.empty(width + 1, dtype=np.int64)
        j0 = 0
        for d, q in y_runs:
            top = row[j0:j0 + q + 1]
            out = new_row[j0:j0 + q + 1]
            if c != d:
                np.maximum(top, col[p], out=out)
                right = np.maximum(col, top[q])
            else:
                lo = min(p, q + 1)
                out[:lo] = col[p::-1][:lo] + steps[:lo]
                if q >= p:
                    out[p:] = top[:q - p + 1] + p
                right = np.empty(p + 1, dtype=np.int64)
                lo = min(p, q) + 1
                right[:lo] = top[q::-1][:lo] + steps[:lo]
                if p > q:
                    right[q + 1:] = col[1:p - q + 1] + q
            col = right
            j0 += q
        row = new_row
    return int(row[width])


def count_runs(x: Sequence[int]) -> int:
    if len(x) == 0:
        return 0
    return int(run_lengths(x)[0].size)


def choose_kernel(n: int, m: int, runs_x: int, runs_y: int, dp_max_cells: int,
                  costs: Dict[str, float]) -> str:
    """Pick the cheapest LCS kernel under the configured cost model"""
    if n * m <= dp_max_cells:
        return DP
    bit_parallel = min(n, m) * (costs['bitparallel_step'] + costs['bitparallel_word'] * max(n, m) / 64)
    rle = costs['rle_pair'] * runs_x * runs_y + costs['rle_cell'] * (runs_x * m + runs_y * n)
    return RUN_LENGTH if rle < bit_parallel else BIT_PARALLEL


def lcs_with_kernel(kernel: str, x: Sequence[int], y: Sequence[int]) -> int:
    if kernel == DP:
        return dp_lcs(x, y)
    if kernel == RUN_LENGTH:
        return run_length_lcs(x, y)
    if len(x) < len(y):
        x, y = y, x
    return bit_parallel_lcs(x, y)
