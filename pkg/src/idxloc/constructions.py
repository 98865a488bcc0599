"""Achievability schemes: uncoded transmission, the length-(N-1) cycle
code with all of its rotations, time sharing into vector codes, and the
scalar construction for graphs whose min-rank falls one short of the
receiver count."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .codes import IndexCode, require_plan
from .graphs import (
    SideInformationGraph,
    directed_cycle,
    expand_indices,
    shortest_directed_cycle,
)
from .linalg import FqMatrix, Vector, require_prime


def uncoded(g: SideInformationGraph, m: int = 1, q: int = 2) -> IndexCode:
    """Identity encoder: every receiver queries exactly its own block.

    Rate equals the receiver count and every locality is 1; side
    information is ignored entirely.
    """
    require_prime(q)
    if m < 1:
        raise ValueError("message length must be at least 1")
    exp = expand_indices(g, m)
    mn = m * g.n
    return IndexCode(
        q=q,
        m=m,
        n=g.n,
        matrix=FqMatrix.identity(mn, q),
        queries=tuple(frozenset(d) for d in exp.demands),
    )


def cycle_scalar_code(n: int, q: int, anchor: int = 1) -> IndexCode:
    """Scalar code of length n-1 for the directed n-cycle.

    With anchor 1 the codeword is (x_1+x_2, x_1+x_3, ..., x_1+x_n);
    receivers 1 and n then read a single symbol and everyone else reads
    two adjacent ones, so the localities are (1, 2, ..., 2, 1).  Other
    anchors rotate the construction: anchor a gives locality 1 to
    receivers a and a-1 (indices mod n).
    """
    require_prime(q)
    if n < 3:
        raise ValueError("cycle codes need n >= 3 (2-cycles are handled by "
                         "minrank_deficit_code)")
    if not 1 <= anchor <= n:
        raise ValueError(f"anchor must lie in [1, {n}]")

    # Base construction for anchor 1, built column by column.
    def base_column(k: int) -> list[int]:
        col = [0] * n
        col[0] = 1
        col[k] = 1  # row k (0-based) is message k+1
        return col

    base_cols = [base_column(k) for k in range(1, n)]
    base_queries: list[frozenset[int]] = []
    for i in range(1, n + 1):
        if i == 1:
            base_queries.append(frozenset({1}))
        elif i == n:
            base_queries.append(frozenset({n - 1}))
        else:
            base_queries.append(frozenset({i - 1, i}))

    shift = anchor - 1
    # Receiver ((t - 1 + shift) mod n) + 1 plays the base role t.
    role_of = [0] * (n + 1)
    for t in range(1, n + 1):
        role_of[(t - 1 + shift) % n + 1] = t
    columns: list[Vector] = []
    for col in base_cols:
        rotated = [0] * n
        for receiver in range(1, n + 1):
            rotated[receiver - 1] = col[role_of[receiver] - 1]
        columns.append(tuple(rotated))
    queries = tuple(base_queries[role_of[i] - 1] for i in range(1, n + 1))
    matrix = FqMatrix.from_columns(columns, n, q)
    return IndexCode(q=q, m=1, n=n, matrix=matrix, queries=queries)


def time_share(
    g: SideInformationGraph, codes: list[IndexCode]
) -> IndexCode:
    """Concatenate codes for the same instance into one vector code.

    Code t handles its own block of message components, so the combined
    message length and codeword length are the sums of the parts, and
    each receiver's query set is the union of the per-block queries with
    shifted column indices.
    """
    if not codes:
        raise ValueError("time_share needs at least one code")
    q = codes[0].q
    for c in codes:
        if c.q != q:
            raise ValueError("codes must share one field")
        if c.n != g.n:
            raise ValueError("codes must share the instance's receiver count")
        require_plan(g, c)
    m_total = sum(c.m for c in codes)
    ell_total = sum(c.ell for c in codes)
    mn = m_total * g.n

    columns: list[Vector] = []
    queries: list[set[int]] = [set() for _ in range(g.n)]
    col_offset = 0
    m_offset = 0
    for c in codes:
        for k in range(1, c.ell + 1):
            part = c.column_vector(k)
            lifted = [0] * mn
            for i in range(1, g.n + 1):
                for t in range(1, c.m + 1):
                    lifted[(i - 1) * m_total + m_offset + t - 1] = part[
                        (i - 1) * c.m + t - 1
                    ]
            columns.append(tuple(lifted))
        for i in range(1, g.n + 1):
            queries[i - 1].update(col_offset + k for k in c.queries[i - 1])
        col_offset += c.ell
        m_offset += c.m
    matrix = FqMatrix.from_columns(columns, mn, q)
    return IndexCode(
        q=q,
        m=m_total,
        n=g.n,
        matrix=matrix,
        queries=tuple(frozenset(s) for s in queries),
    )


@dataclass(frozen=True)
class RotationSchedule:
    """Anchor choices for time sharing cycle codes; one anchor per
    message component, so len(anchors) equals the message length of the
    resulting vector code.  certified_optimal is False for message
    lengths where no exact argument pins the best schedule down."""

    n: int
    anchors: tuple[int, ...]
    certified_optimal: bool

    def __post_init__(self) -> None:
        if any(not 1 <= a <= self.n for a in self.anchors):
            raise ValueError("anchors must lie in [1, n]")


def _schedule_profile(n: int, anchors: tuple[int, ...]) -> tuple[Fraction, Fraction]:
    """(r, r_avg) of the time-shared cycle code with these anchors."""
    m = len(anchors)
    ones = [0] * (n + 1)
    for a in anchors:
        ones[a] += 1
        ones[a - 1 if a > 1 else n] += 1
    sizes = [2 * m - ones[i] for i in range(1, n + 1)]
    r = Fraction(max(sizes), m)
    r_avg = Fraction(sum(sizes), m * n)
    return r, r_avg


def plan_rotation_schedule(n: int, m: int) -> RotationSchedule:
    """Pick the anchors used by cycle_vector_code for message length m.

    Covered regimes (rate n-1 is optimal in all of them):
      * n even and m a multiple of n/2: repeat the odd anchors.
      * n odd and m a multiple of n: all n rotations.
      * m below n/2: repeat anchor 1; overall locality 2.
      * n odd and n/2 <= m < n: odd anchors, then n, then even anchors,
        reaching overall locality 2 - 1/m.
    Anything else gets the best of a few candidate schedules and is
    flagged as not certified.
    """
    if n < 3:
        raise ValueError("cycle schedules need n >= 3")
    if m < 1:
        raise ValueError("message length must be at least 1")
    odd_anchors = tuple(range(1, n, 2)) if n % 2 == 0 else tuple(range(1, n - 1, 2))
    if n % 2 == 0 and m % (n // 2) == 0:
        reps = m // (n // 2)
        return RotationSchedule(n, tuple(range(1, n, 2)) * reps, True)
    if n % 2 == 1 and m % n == 0:
        return RotationSchedule(n, tuple(range(1, n + 1)) * (m // n), True)
    if 2 * m < n:
        return RotationSchedule(n, (1,) * m, True)
    if n % 2 == 1 and n <= 2 * m and m < n:
        evens_needed = 2 * m - (n + 1)
        anchors = odd_anchors + (n,) + tuple(range(2, evens_needed + 1, 2))
        if len(anchors) != m:
            raise AssertionError("schedule length mismatch")
        return RotationSchedule(n, anchors, True)

    # Uncovered message length: compare a few deterministic candidates.
    candidates: list[tuple[int, ...]] = [(1,) * m]
    rotation = tuple(range(1, n + 1))
    candidates.append(tuple(rotation[t % n] for t in range(m)))
    spaced = tuple(range(1, n + 1, 2)) + tuple(range(2, n + 1, 2))
    candidates.append(tuple(spaced[t % n] for t in range(m)))
    best = min(candidates, key=lambda a: _schedule_profile(n, a))
    return RotationSchedule(n, best, False)


def cycle_vector_code(n: int, q: int, m: int) -> IndexCode:
    """Length-m vector code for the directed n-cycle at rate n-1,
    time-sharing rotations of the scalar cycle code according to
    plan_rotation_schedule."""
    schedule = plan_rotation_schedule(n, m)
    g = directed_cycle(n)
    return time_share(g, [cycle_scalar_code(n, q, a) for a in schedule.anchors])


def minrank_deficit_code(g: SideInformationGraph, q: int) -> IndexCode:
    """Scalar code of length n-1 built around a shortest directed cycle.

    A 2-cycle {i, j} yields one mixed symbol x_i + x_j plus everything
    else uncoded, so every locality is 1.  A longer shortest cycle gets
    the cycle code on its vertices plus uncoded symbols elsewhere.
    Intended for instances whose min-rank is n-1; raises on acyclic
    input.
    """
    require_prime(q)
    found = shortest_directed_cycle(g)
    if found is None:
        raise ValueError("graph has no directed cycle; its min-rank equals n "
                         "and the uncoded scheme is already optimal")
    n = g.n
    n_c, cycle_vertices = found
    if n_c == 2:
        i, j = cycle_vertices
        mix = [0] * n
        mix[i - 1] = 1
        mix[j - 1] = 1
        columns: list[Vector] = [tuple(mix)]
        queries: list[set[int]] = [set() for _ in range(n)]
        queries[i - 1].add(1)
        queries[j - 1].add(1)
        col = 2
        for t in range(1, n + 1):
            if t in (i, j):
                continue
            unit = [0] * n
            unit[t - 1] = 1
            columns.append(tuple(unit))
            queries[t - 1].add(col)
            col += 1
        matrix = FqMatrix.from_columns(columns, n, q)
        return IndexCode(
            q=q, m=1, n=n, matrix=matrix,
            queries=tuple(frozenset(s) for s in queries),
        )

    base = cycle_scalar_code(n_c, q, 1)
    columns = []
    queries = [set() for _ in range(n)]
    for k in range(1, base.ell + 1):
        part = base.column_vector(k)
        lifted = [0] * n
        for t, v in enumerate(cycle_vertices, start=1):
            lifted[v - 1] = part[t - 1]
        columns.append(tuple(lifted))
    for t, v in enumerate(cycle_vertices, start=1):
        queries[v - 1].update(base.queries[t - 1])
    col = base.ell + 1
    cycle_set = set(cycle_vertices)
    for t in range(1, n + 1):
        if t in cycle_set:
            continue
        unit = [0] * n
        unit[t - 1] = 1
        columns.append(tuple(unit))
        queries[t - 1].add(col)
        col += 1
    matrix = FqMatrix.from_columns(columns, n, q)
    return IndexCode(
        q=q, m=1, n=n, matrix=matrix,
        queries=tuple(frozenset(s) for s in queries),
    )
