"""Pure-Python search kernel.

Hot primitives shared by the brute-force min-rank solver and the
exhaustive encoder searches.  Column vectors are passed around as base-q
integer codes: digit ``r`` of a code is the entry at (0-based) row ``r``,
with row 0 in the least significant position.  For q = 2 the routines run
on plain int bitmasks; odd primes use digit lists.  Semantics are
identical for both paths and must match the compiled backend exactly,
including enumeration order and tie-breaking.
"""

from __future__ import annotations

from itertools import combinations

BACKEND = "python"


def decode_column(code: int, mn: int, q: int) -> tuple[int, ...]:
    """Expand a base-q column code into a tuple of mn digits."""
    digits = []
    for _ in range(mn):
        digits.append(code % q)
        code //= q
    return tuple(digits)


def encode_column(digits, q: int) -> int:
    code = 0
    for d in reversed(list(digits)):
        code = code * q + d
    return code


def _rank_bits(vectors) -> int:
    # Greedy GF(2) elimination keyed by highest set bit.
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                rank += 1
                break
    return rank


def _rank_rows_mod(rows: list[list[int]], q: int) -> int:
    # In-place Gaussian elimination on a list of row lists (mod q).
    if not rows:
        return 0
    n_cols = len(rows[0])
    rank = 0
    row = 0
    m = len(rows)
    for col in range(n_cols):
        if row >= m:
            break
        piv = None
        for r in range(row, m):
            if rows[r][col] % q:
                piv = r
                break
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = pow(rows[row][col], -1, q)
        rows[row] = [(x * inv) % q for x in rows[row]]
        for r in range(m):
            if r != row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % q for a, b in zip(rows[r], rows[row])]
        rank += 1
        row += 1
    return rank


def rank_fq(entries, rows: int, cols: int, q: int) -> int:
    """Rank of a dense row-major matrix over F_q."""
    if rows == 0 or cols == 0:
        return 0
    if q == 2:
        packed = []
        for i in range(rows):
            v = 0
            base = i * cols
            for j in range(cols):
                if entries[base + j] & 1:
                    v |= 1 << j
            packed.append(v)
        return _rank_bits(packed)
    mat = [[entries[i * cols + j] % q for j in range(cols)] for i in range(rows)]
    return _rank_rows_mod(mat, q)


def _project_bits(code: int, keep_rows) -> int:
    v = 0
    for t, r in enumerate(keep_rows):
        if (code >> r) & 1:
            v |= 1 << t
    return v


class _ReceiverView:
    """Per-receiver projections used by the decodability test.

    Receiver i can decode from query set T iff
    rank(L_T restricted off its side rows)
      - rank(L_T restricted off side and demand rows) == |demands|.
    """

    __slots__ = ("n_dem", "proj_a", "proj_b", "q")

    def __init__(self, col_digits, mn, q, demand_rows, side_rows):
        side = set(side_rows)
        dem = set(demand_rows)
        keep_a = [r for r in range(mn) if r not in side]
        keep_b = [r for r in keep_a if r not in dem]
        self.n_dem = len(demand_rows)
        self.q = q
        if q == 2:
            self.proj_a = [_project_bits(c, keep_a) for c in col_digits]
            self.proj_b = [_project_bits(c, keep_b) for c in col_digits]
        else:
            self.proj_a = [tuple(c[r] for r in keep_a) for c in col_digits]
            self.proj_b = [tuple(c[r] for r in keep_b) for c in col_digits]

    def decodable(self, subset) -> bool:
        if self.q == 2:
            ra = _rank_bits([self.proj_a[k] for k in subset])
            rb = _rank_bits([self.proj_b[k] for k in subset])
        else:
            cols_a = [list(self.proj_a[k]) for k in subset]
            cols_b = [list(self.proj_b[k]) for k in subset]
            ra = _rank_rows_mod(cols_a, self.q) if cols_a else 0
            rb = _rank_rows_mod(cols_b, self.q) if cols_b else 0
        return ra - rb == self.n_dem


def min_query_sets(col_codes, mn, q, demands, side, max_size):
    """Smallest query set per receiver for one encoder, or None.

    col_codes: base-q codes of the encoder columns.
    demands/side: per receiver, tuples of 0-based row indices.
    max_size: upper bound on |R_i| (locality cap); the full column set is
    still used for the fast infeasibility test.

    Returns one bitmask per receiver (bit k = column k queried), choosing
    for each receiver the first feasible subset in (size, lexicographic)
    order, or None if some receiver has no feasible subset within the cap.
    """
    ell = len(col_codes)
    if q == 2:
        digits = list(col_codes)
    else:
        digits = [decode_column(c, mn, q) for c in col_codes]
    full = range(ell)
    out = []
    for demand_rows, side_rows in zip(demands, side):
        view = _ReceiverView(digits, mn, q, demand_rows, side_rows)
        if not view.decodable(full):
            return None
        found = None
        lo = len(demand_rows)
        for size in range(lo, min(max_size, ell) + 1):
            for subset in combinations(full, size):
                if view.decodable(subset):
                    found = sum(1 << k for k in subset)
                    break
            if found is not None:
                break
        if found is None:
            return None
        out.append(found)
    return tuple(out)


def minrank_dfs(n: int, q: int, free_rows, stop_at: int = 1):
    """Minimum rank over all matrices with unit diagonal and free entries
    confined to the given rows per column; everything else is zero.

    free_rows: per column i (0-based), sorted 0-based row indices that may
    take arbitrary values.  Columns are filled in ascending order, each
    column's free digits enumerated as an ascending base-q counter with
    the smallest free row in the least significant digit.  Branches whose
    partial column rank already reaches the best known rank are pruned.

    Returns (minrank, witness column codes).
    """
    q_pows = [q**t for t in range(n + 1)]

    def column_code(i: int, counter: int) -> int:
        code = q_pows[i]  # unit diagonal
        v = counter
        for r in free_rows[i]:
            d = v % q
            v //= q
            if d:
                code += d * q_pows[r]
        return code

    best = n + 1
    best_cols: tuple[int, ...] = ()
    col_codes = [0] * n

    if q == 2:
        pivots: dict[int, int] = {}

        def push(code: int):
            v = code
            while v:
                h = v.bit_length() - 1
                if h in pivots:
                    v ^= pivots[h]
                else:
                    pivots[h] = v
                    return h
            return None

        def pop(h):
            if h is not None:
                del pivots[h]

    else:
        basis: list[tuple[list[int], int]] = []

        def push(code: int):
            vec = list(decode_column(code, n, q))
            for bvec, bp in basis:
                if vec[bp]:
                    f = vec[bp]
                    vec = [(a - f * b) % q for a, b in zip(vec, bvec)]
            piv = None
            for r in range(n):
                if vec[r]:
                    piv = r
                    break
            if piv is None:
                return None
            inv = pow(vec[piv], -1, q)
            vec = [(x * inv) % q for x in vec]
            basis.append((vec, piv))
            return len(basis) - 1

        def pop(h):
            if h is not None:
                basis.pop()

    def dfs(depth: int, partial_rank: int):
        nonlocal best, best_cols
        if best <= stop_at:
            return
        if partial_rank >= best:
            return
        if depth == n:
            best = partial_rank
            best_cols = tuple(col_codes)
            return
        n_free = len(free_rows[depth])
        for counter in range(q**n_free):
            code = column_code(depth, counter)
            col_codes[depth] = code
            h = push(code)
            dfs(depth + 1, partial_rank + (0 if h is None else 1))
            pop(h)
            if best <= stop_at:
                return

    dfs(0, 0)
    return best, best_cols
