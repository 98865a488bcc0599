# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel.

Mirrors _pycore exactly: same inputs, same outputs, same enumeration
order and tie-breaking.  Matrices here are tiny (at most a few dozen rows
and columns), so the implementation favours simple dense loops over any
clever packing.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

BACKEND = "compiled"

DEF MAX_ROWS = 64
DEF MAX_COLS = 64


cdef int _mod_inv(int a, int q) noexcept:
    # q is a small prime and a is nonzero mod q.
    cdef int x
    a %= q
    for x in range(1, q):
        if (a * x) % q == 1:
            return x
    return 0


cdef int _rank_dense(int* mat, int rows, int cols, int q) noexcept:
    # Gaussian elimination on a row-major scratch buffer; destroys mat.
    cdef int rank = 0, row = 0, col, r, piv, inv, f, j
    for col in range(cols):
        if row >= rows:
            break
        piv = -1
        for r in range(row, rows):
            if mat[r * cols + col] % q:
                piv = r
                break
        if piv == -1:
            continue
        if piv != row:
            for j in range(cols):
                f = mat[row * cols + j]
                mat[row * cols + j] = mat[piv * cols + j]
                mat[piv * cols + j] = f
        inv = _mod_inv(mat[row * cols + col], q)
        for j in range(cols):
            mat[row * cols + j] = (mat[row * cols + j] * inv) % q
        for r in range(rows):
            if r != row and mat[r * cols + col] % q:
                f = mat[r * cols + col]
                for j in range(cols):
                    mat[r * cols + j] = (mat[r * cols + j] - f * mat[row * cols + j]) % q
                    if mat[r * cols + j] < 0:
                        mat[r * cols + j] += q
        rank += 1
        row += 1
    return rank


def rank_fq(entries, int rows, int cols, int q):
    """Rank of a dense row-major matrix over F_q."""
    if rows == 0 or cols == 0:
        return 0
    cdef int* mat = <int*> malloc(rows * cols * sizeof(int))
    if mat == NULL:
        raise MemoryError()
    cdef int i
    try:
        for i in range(rows * cols):
            mat[i] = entries[i] % q
        return _rank_dense(mat, rows, cols, q)
    finally:
        free(mat)


cdef int _rank_projected(int* proj, int n_keep, int* subset, int size, int q,
                         int* scratch) noexcept:
    # proj is column-major: proj[k * n_keep + t] = digit of column k at
    # kept row t.  Builds the (n_keep x size) scratch matrix and ranks it.
    cdef int s, t, k
    for s in range(size):
        k = subset[s]
        for t in range(n_keep):
            scratch[t * size + s] = proj[k * n_keep + t]
    return _rank_dense(scratch, n_keep, size, q)


def min_query_sets(col_codes, int mn, int q, demands, side, int max_size):
    """Smallest query set per receiver for one encoder, or None.

    Same contract as the pure backend: per receiver, subsets are tried in
    (size, lexicographic) order starting from |demands|; the full column
    set is checked first as a fast infeasibility test.
    """
    cdef int ell = len(col_codes)
    cdef int n_rx = len(demands)
    if ell > MAX_COLS or mn > MAX_ROWS:
        raise ValueError("kernel size limits exceeded")

    cdef int* digits = <int*> malloc(ell * mn * sizeof(int))
    cdef int* proj_a = <int*> malloc(ell * mn * sizeof(int))
    cdef int* proj_b = <int*> malloc(ell * mn * sizeof(int))
    cdef int* scratch = <int*> malloc(mn * ell * sizeof(int))
    cdef int* subset = <int*> malloc((ell + 1) * sizeof(int))
    cdef int* keep_a = <int*> malloc(mn * sizeof(int))
    cdef int* keep_b = <int*> malloc(mn * sizeof(int))
    cdef bint* in_side = <bint*> malloc(mn * sizeof(bint))
    cdef bint* in_dem = <bint*> malloc(mn * sizeof(bint))
    if (digits == NULL or proj_a == NULL or proj_b == NULL or scratch == NULL
            or subset == NULL or keep_a == NULL or keep_b == NULL
            or in_side == NULL or in_dem == NULL):
        raise MemoryError()

    cdef object code_obj
    cdef unsigned long long code
    cdef int k, r, t, i, na, nb, n_dem, lo, size, ra, rb, pos
    cdef bint ok, found_any
    result = []
    try:
        for k in range(ell):
            code_obj = col_codes[k]
            code = code_obj
            for r in range(mn):
                digits[k * mn + r] = <int> (code % q)
                code //= q

        for i in range(n_rx):
            for r in range(mn):
                in_side[r] = 0
                in_dem[r] = 0
            for r in demands[i]:
                in_dem[r] = 1
            for r in side[i]:
                in_side[r] = 1
            n_dem = len(demands[i])
            na = 0
            nb = 0
            for r in range(mn):
                if not in_side[r]:
                    keep_a[na] = r
                    na += 1
                    if not in_dem[r]:
                        keep_b[nb] = r
                        nb += 1
            for k in range(ell):
                for t in range(na):
                    proj_a[k * na + t] = digits[k * mn + keep_a[t]]
                for t in range(nb):
                    proj_b[k * nb + t] = digits[k * mn + keep_b[t]]

            # Fast reject: decodability with every column available.
            for k in range(ell):
                subset[k] = k
            ra = _rank_projected(proj_a, na, subset, ell, q, scratch)
            rb = _rank_projected(proj_b, nb, subset, ell, q, scratch)
            if ra - rb != n_dem:
                return None

            lo = n_dem
            found_any = 0
            size = lo
            while size <= (max_size if max_size < ell else ell):
                # lexicographic combinations of {0..ell-1} of this size
                for t in range(size):
                    subset[t] = t
                while True:
                    ra = _rank_projected(proj_a, na, subset, size, q, scratch)
                    rb = _rank_projected(proj_b, nb, subset, size, q, scratch)
                    if ra - rb == n_dem:
                        found_any = 1
                        break
                    pos = size - 1
                    while pos >= 0 and subset[pos] == ell - size + pos:
                        pos -= 1
                    if pos < 0:
                        break
                    subset[pos] += 1
                    for t in range(pos + 1, size):
                        subset[t] = subset[t - 1] + 1
                if found_any:
                    break
                size += 1
            if not found_any:
                return None
            mask = 0
            for t in range(size):
                mask |= 1 << subset[t]
            result.append(mask)
        return tuple(result)
    finally:
        free(digits)
        free(proj_a)
        free(proj_b)
        free(scratch)
        free(subset)
        free(keep_a)
        free(keep_b)
        free(in_side)
        free(in_dem)


cdef struct DfsState:
    int n
    int q
    int best
    int stop_at
    int n_basis
    # basis vectors, pivot-normalized, stored densely
    int* basis      # n_basis x n
    int* basis_piv  # pivot row per basis vector


cdef int _push_column(DfsState* st, int* col) noexcept:
    # Reduce col against the basis; append if independent.
    # Returns 1 if a new basis vector was added, 0 otherwise.
    cdef int n = st.n, q = st.q
    cdef int j, r, f, piv, inv
    cdef int* vec = st.basis + st.n_basis * n
    memcpy(vec, col, n * sizeof(int))
    for j in range(st.n_basis):
        piv = st.basis_piv[j]
        f = vec[piv]
        if f:
            for r in range(n):
                vec[r] = (vec[r] - f * st.basis[j * n + r]) % q
                if vec[r] < 0:
                    vec[r] += q
    piv = -1
    for r in range(n):
        if vec[r]:
            piv = r
            break
    if piv == -1:
        return 0
    inv = _mod_inv(vec[piv], q)
    for r in range(n):
        vec[r] = (vec[r] * inv) % q
    st.basis_piv[st.n_basis] = piv
    st.n_basis += 1
    return 1


cdef void _dfs(DfsState* st, int depth, int partial_rank,
               list free_rows, int* col, long long* col_codes,
               long long* best_cols, long long* q_pows) except *:
    if st.best <= st.stop_at or partial_rank >= st.best:
        return
    cdef int n = st.n, q = st.q
    if depth == n:
        st.best = partial_rank
        memcpy(best_cols, col_codes, n * sizeof(long long))
        return
    rows = free_rows[depth]
    cdef int n_free = len(rows)
    cdef long long counter, v, code
    cdef long long total = 1
    cdef int t, d, r, added
    for t in range(n_free):
        total *= q
    for counter in range(total):
        for r in range(n):
            col[r] = 0
        col[depth] = 1
        code = q_pows[depth]
        v = counter
        for t in range(n_free):
            d = <int> (v % q)
            v //= q
            r = rows[t]
            col[r] = d
            code += d * q_pows[r]
        col_codes[depth] = code
        added = _push_column(st, col)
        _dfs(st, depth + 1, partial_rank + added, free_rows, col,
             col_codes, best_cols, q_pows)
        if added:
            st.n_basis -= 1
        if st.best <= st.stop_at:
            return


def minrank_dfs(int n, int q, free_rows, int stop_at=1):
    """Minimum rank over unit-diagonal matrices with the given free rows
    per column; identical contract to the pure backend."""
    if n > MAX_ROWS:
        raise ValueError("kernel size limits exceeded")
    cdef DfsState st
    st.n = n
    st.q = q
    st.best = n + 1
    st.stop_at = stop_at
    st.n_basis = 0
    st.basis = <int*> malloc(n * n * sizeof(int))
    st.basis_piv = <int*> malloc(n * sizeof(int))
    cdef int* col = <int*> malloc(n * sizeof(int))
    cdef long long* col_codes = <long long*> malloc(n * sizeof(long long))
    cdef long long* best_cols = <long long*> malloc(n * sizeof(long long))
    cdef long long* q_pows = <long long*> malloc((n + 1) * sizeof(long long))
    if (st.basis == NULL or st.basis_piv == NULL or col == NULL
            or col_codes == NULL or best_cols == NULL or q_pows == NULL):
        raise MemoryError()
    cdef int i
    cdef list rows_list = [tuple(fr) for fr in free_rows]
    try:
        q_pows[0] = 1
        for i in range(n):
            q_pows[i + 1] = q_pows[i] * q
        _dfs(&st, 0, 0, rows_list, col, col_codes, best_cols, q_pows)
        return st.best, tuple(best_cols[i] for i in range(n))
    finally:
        free(st.basis)
        free(st.basis_piv)
        free(col)
        free(col_codes)
        free(best_cols)
        free(q_pows)
