"""Exact bounds and ground-truth oracles.

Brute-force min-rank over fitting matrices, the closed-form rate-locality
curve for directed cycles, inequality checks tying query structure to
induced-subproblem min-ranks, and exhaustive encoder searches returning
Pareto frontiers with witness codes.  Everything is exact rational or
integer arithmetic; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from . import _kernel
from .codes import (
    DecodingPlan,
    FittingMatrix,
    IndexCode,
    column_space_contained,
    locality_profile,
    query_partition,
    require_plan,
)
from .graphs import (
    SideInformationGraph,
    expand_indices,
    induced_subgraph,
    shortest_directed_cycle,
)
from .linalg import FqMatrix, null_space_basis, require_prime

DEFAULT_MINRANK_BUDGET = 2**24
DEFAULT_SCALAR_SEARCH_BUDGET = 2**22
DEFAULT_VECTOR_SEARCH_BUDGET = 2**24
NULL_ENUMERATION_LIMIT = 4096


class BudgetExceededError(RuntimeError):
    """The requested enumeration is larger than the configured budget."""


def kernel_backend() -> str:
    return _kernel.backend


def minrank_bruteforce(
    g: SideInformationGraph, q: int, budget: int | None = None
) -> tuple[int, FittingMatrix]:
    """Exact min-rank of the instance over F_q with a witness.

    Enumerates every matrix with unit diagonal, arbitrary entries at
    (j, i) for j in K_i and zeros elsewhere, pruning branches whose
    partial column rank already matches the best candidate.  Refuses to
    start (BudgetExceededError) when the raw search space q**(sum |K_i|)
    exceeds the budget, so a returned answer is always exact.
    """
    require_prime(q)
    budget = DEFAULT_MINRANK_BUDGET if budget is None else budget
    if budget <= 0:
        raise ValueError("budget must be positive")
    total_free = sum(len(k) for k in g.side)
    if q**total_free > budget:
        raise BudgetExceededError(
            f"min-rank search space q^{total_free} exceeds budget {budget}"
        )
    free_rows = tuple(
        tuple(sorted(j - 1 for j in g.side_info(i))) for i in range(1, g.n + 1)
    )
    value, col_codes = _kernel.minrank_dfs(g.n, q, free_rows)
    columns = [_kernel_column(code, g.n, q) for code in col_codes]
    witness = FittingMatrix(FqMatrix.from_columns(columns, g.n, q))
    if not witness.fits(g):
        raise AssertionError("witness does not fit the graph")
    return value, witness


def _kernel_column(code: int, mn: int, q: int) -> tuple[int, ...]:
    digits = []
    for _ in range(mn):
        digits.append(code % q)
        code //= q
    return tuple(digits)


def cycle_tradeoff(n: int, r: Fraction | int) -> Fraction:
    """Optimal rate of the directed n-cycle at overall locality at most r:
    max(n - 1, n(n - 1 - r)/(n - 2))."""
    if n < 3:
        raise ValueError("the closed form needs n >= 3")
    r = Fraction(r)
    if r < 1:
        raise ValueError("locality is at least 1 for any valid scheme")
    return max(Fraction(n - 1), Fraction(n * (n - 1 - r), n - 2))


def min_message_length(n: int) -> int:
    """Smallest message length reaching locality 2(n-1)/n on the n-cycle:
    n for odd n, n/2 for even n (the locality forces divisibility)."""
    if n < 3:
        raise ValueError("needs n >= 3")
    return n if n % 2 == 1 else n // 2


def optimal_cycle_locality_for_m(n: int, m: int) -> Fraction | None:
    """Best overall locality at rate n-1 on the n-cycle for message
    length m, or None where no exact value is established.

    Below n/2 the answer is 2; for odd n with n/2 <= m < n it is
    2 - 1/m; at multiples of the minimum message length it is
    2(n-1)/n.
    """
    if n < 3:
        raise ValueError("needs n >= 3")
    if m < 1:
        raise ValueError("message length must be at least 1")
    if 2 * m < n:
        return Fraction(2)
    if n % 2 == 1 and n <= 2 * m and m < n:
        return 2 - Fraction(1, m)
    if m % min_message_length(n) == 0:
        return Fraction(2 * (n - 1), n)
    return None


def scalar_bounds_minrank_deficit(
    g: SideInformationGraph, q: int, budget: int | None = None
) -> tuple[Fraction, Fraction]:
    """Optimal (r, r_avg) of scalar codes at rate n-1 when the min-rank
    is n-1 and the shortest cycle has length at least 3: r = 2 and
    r_avg = (n + n_c - 2)/n."""
    found = shortest_directed_cycle(g)
    if found is None:
        raise ValueError("graph is acyclic, so its min-rank is n, not n-1")
    n_c = found[0]
    if n_c < 3:
        raise ValueError(
            "shortest cycle has length 2; there locality 1 is achievable "
            "and this bound does not apply"
        )
    value, _ = minrank_bruteforce(g, q, budget)
    if value != g.n - 1:
        raise ValueError(f"min-rank is {value}, not n-1 = {g.n - 1}")
    return Fraction(2), Fraction(g.n + n_c - 2, g.n)


@dataclass(frozen=True)
class ParetoPoint:
    """A nondominated (rate, locality, average locality) triple with a
    decodable witness code realizing it exactly."""

    beta: Fraction
    r: Fraction
    r_avg: Fraction
    witness: IndexCode

    def profile(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.beta, self.r, self.r_avg)


def _dominates(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b)) and a != b


def pareto_merge(points: list[ParetoPoint]) -> list[ParetoPoint]:
    """Nondominated subset of the union, independent of input order.

    Equal profiles collapse to the witness with the smallest canonical
    key, so parallel or repeated runs merge to identical output.
    """
    best_by_profile: dict[tuple, ParetoPoint] = {}
    for p in points:
        key = p.profile()
        current = best_by_profile.get(key)
        if current is None or _witness_key(p.witness) < _witness_key(current.witness):
            best_by_profile[key] = p
    survivors = []
    profiles = list(best_by_profile)
    for prof in profiles:
        if any(_dominates(other, prof) for other in profiles if other != prof):
            continue
        survivors.append(best_by_profile[prof])
    survivors.sort(key=lambda p: p.profile())
    return survivors


def _witness_key(code: IndexCode) -> tuple:
    return (code.matrix.entries, tuple(sorted(tuple(sorted(r)) for r in code.queries)))


def _normalized_column_codes(mn: int, q: int) -> list[int]:
    """Base-q codes of all nonzero columns whose first nonzero entry
    (lowest row index) equals 1; one representative per scaling class."""
    codes = []
    for code in range(1, q**mn):
        c = code
        while c % q == 0:
            c //= q
        if c % q == 1:
            codes.append(code)
    return codes


def _search(
    g: SideInformationGraph,
    q: int,
    m: int,
    ell: int,
    locality_cap: Fraction | int | None,
    budget: int,
) -> list[ParetoPoint]:
    require_prime(q)
    if m < 1 or ell < 1:
        raise ValueError("m and ell must be positive")
    space = q ** (m * g.n * ell)
    if space > budget:
        raise BudgetExceededError(
            f"encoder space q^{m * g.n * ell} exceeds budget {budget}"
        )
    mn = m * g.n
    exp = expand_indices(g, m)
    demands = tuple(
        tuple(sorted(j - 1 for j in exp.demands[i])) for i in range(g.n)
    )
    side = tuple(
        tuple(sorted(s - 1 for s in exp.side_info[i])) for i in range(g.n)
    )
    if locality_cap is None:
        max_size = ell
    else:
        cap = Fraction(locality_cap)
        if cap < 1:
            raise ValueError("locality cap below 1 admits no code")
        max_size = min(ell, int(cap * m))
    codes = _normalized_column_codes(mn, q)

    # Frontier bookkeeping on integer profiles (max |R_i|, sum |R_i|);
    # beta is constant within one call so dominance reduces to these two.
    frontier: list[tuple[int, int, tuple[int, ...], tuple[int, ...]]] = []
    for cols in combinations_with_replacement(codes, ell):
        masks = _kernel.min_query_sets(cols, mn, q, demands, side, max_size)
        if masks is None:
            continue
        sizes = [bin(mask).count("1") for mask in masks]
        mx, sm = max(sizes), sum(sizes)
        dominated = False
        for fmx, fsm, _, _ in frontier:
            if fmx <= mx and fsm <= sm:
                dominated = True
                break
        if dominated:
            continue
        frontier = [
            entry for entry in frontier if not (mx <= entry[0] and sm <= entry[1])
        ]
        frontier.append((mx, sm, cols, masks))

    points = []
    for mx, sm, cols, masks in frontier:
        columns = [_kernel_column(c, mn, q) for c in cols]
        matrix = FqMatrix.from_columns(columns, mn, q)
        queries = tuple(
            frozenset(k + 1 for k in range(ell) if mask >> k & 1) for mask in masks
        )
        witness = IndexCode(q=q, m=m, n=g.n, matrix=matrix, queries=queries)
        profile = locality_profile(witness)
        if (profile.r, profile.r_avg) != (Fraction(mx, m), Fraction(sm, m * g.n)):
            raise AssertionError("witness profile mismatch")
        require_plan(g, witness)
        points.append(
            ParetoPoint(
                beta=Fraction(ell, m), r=profile.r, r_avg=profile.r_avg,
                witness=witness,
            )
        )
    points.sort(key=lambda p: p.profile())
    return points


def exhaustive_scalar_search(
    g: SideInformationGraph,
    q: int,
    ell: int,
    locality_cap: Fraction | int | None = None,
    budget: int | None = None,
) -> list[ParetoPoint]:
    """Pareto frontier over all scalar codes of length exactly ell.

    Enumerates encoders column by column over one representative per
    scaling class (first nonzero entry 1), skipping zero columns; column
    order is fixed to nondecreasing codes since permutations only relabel
    queries.  Every receiver gets its minimum-size query set by subset
    search in increasing cardinality, so the reported profile is the best
    achievable for that encoder.  Deterministic output.
    """
    budget = DEFAULT_SCALAR_SEARCH_BUDGET if budget is None else budget
    return _search(g, q, 1, ell, locality_cap, budget)


def exhaustive_vector_search(
    g: SideInformationGraph,
    q: int,
    m: int,
    ell: int,
    locality_cap: Fraction | int | None = None,
    budget: int | None = None,
) -> list[ParetoPoint]:
    """Pareto frontier over vector codes of message length m and length
    exactly ell; same contract as the scalar search."""
    budget = DEFAULT_VECTOR_SEARCH_BUDGET if budget is None else budget
    return _search(g, q, m, ell, locality_cap, budget)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one converse inequality on one piece of context.

    status is "ok", "violated" or "not_applicable"; lhs and rhs are the
    two sides of the inequality when numeric.
    """

    name: str
    context: str
    status: str
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    note: str = ""

    @property
    def slack(self) -> Fraction | None:
        if self.lhs is None or self.rhs is None:
            return None
        return self.lhs - self.rhs


@dataclass(frozen=True)
class ConverseReport:
    checks: tuple[CheckResult, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.status != "violated" for c in self.checks)

    def by_name(self, name: str) -> list[CheckResult]:
        return [c for c in self.checks if c.name == name]


def _null_supports(fm: FittingMatrix, q: int) -> list[frozenset[int]]:
    """Distinct supports of nonzero null vectors of the fitting matrix,
    enumerated exhaustively when q^nullity is small and sampled from the
    basis (plus pairwise sums) otherwise.  1-based receiver indices."""
    basis = null_space_basis(fm.matrix)
    if not basis:
        return []
    supports: set[frozenset[int]] = set()
    n = fm.matrix.rows
    if q ** len(basis) <= NULL_ENUMERATION_LIMIT:
        total = q ** len(basis)
        for counter in range(1, total):
            v = counter
            vec = [0] * n
            for b in basis:
                c = v % q
                v //= q
                if c:
                    for t in range(n):
                        vec[t] = (vec[t] + c * b[t]) % q
            supports.add(frozenset(t + 1 for t in range(n) if vec[t]))
    else:
        sample = list(basis)
        for a, b in combinations(range(len(basis)), 2):
            sample.append(
                tuple((x + y) % q for x, y in zip(basis[a], basis[b]))
            )
        for vec in sample:
            if any(vec):
                supports.add(frozenset(t + 1 for t in range(n) if vec[t]))
    return sorted(supports, key=lambda s: (len(s), sorted(s)))


def converse_checks(
    g: SideInformationGraph,
    code: IndexCode,
    plan: DecodingPlan,
    budget: int | None = None,
) -> ConverseReport:
    """Evaluate the structural lower bounds a valid code must satisfy.

    Always checked: the count of uniquely queried symbols is at least
    m(2*beta - n*r_avg) whenever every column is queried at all.  For
    scalar codes, each support S of a null vector of the plan's fitting
    matrix is checked against: the query union bound |union R_i| >=
    minrank(G_S); the sum-locality bound sum r_i >= 2 minrank(G_S) when
    the code length equals minrank(G); G_S containing a directed cycle;
    and minrank(G_S) >= |S| - 1 when minrank(G) = n - 1.  Preconditions
    that fail (including search budgets) yield "not_applicable" entries,
    never spurious violations.
    """
    from .codes import fitting_matrix_from_plan  # local to avoid cycle noise

    checks: list[CheckResult] = []
    profile = locality_profile(code)
    part = query_partition(code)
    queried_all = part.unique_all | part.shared_all
    single_query_rhs = code.m * (2 * profile.beta - code.n * profile.r_avg)
    if len(queried_all) == code.ell:
        ok = Fraction(len(part.unique_all)) >= single_query_rhs
        checks.append(
            CheckResult(
                name="single_query_lower_bound",
                context="all receivers",
                status="ok" if ok else "violated",
                lhs=Fraction(len(part.unique_all)),
                rhs=single_query_rhs,
            )
        )
    else:
        checks.append(
            CheckResult(
                name="single_query_lower_bound",
                context="all receivers",
                status="not_applicable",
                note="some codeword symbols are never queried",
            )
        )

    if code.m != 1:
        checks.append(
            CheckResult(
                name="null_support_family",
                context="",
                status="not_applicable",
                note="fitting-matrix checks need a scalar code",
            )
        )
        return ConverseReport(tuple(checks))

    fm = fitting_matrix_from_plan(g, code, plan)
    minrank_g: int | None
    try:
        minrank_g, _ = minrank_bruteforce(g, code.q, budget)
    except BudgetExceededError:
        minrank_g = None
    length_optimal = minrank_g is not None and code.ell == minrank_g
    deficit_one = minrank_g is not None and minrank_g == g.n - 1

    for s in _null_supports(fm, code.q):
        ctx = "S={" + ",".join(str(v) for v in sorted(s)) + "}"
        sub, _ = induced_subgraph(g, s)
        union_queries = set().union(*(code.queries[i - 1] for i in sorted(s)))
        try:
            minrank_s, _ = minrank_bruteforce(sub, code.q, budget)
        except BudgetExceededError:
            minrank_s = None

        if minrank_s is None:
            checks.append(
                CheckResult(
                    name="query_union_minrank", context=ctx,
                    status="not_applicable", note="min-rank budget exceeded",
                )
            )
        else:
            lhs = Fraction(len(union_queries))
            rhs = Fraction(minrank_s)
            checks.append(
                CheckResult(
                    name="query_union_minrank", context=ctx,
                    status="ok" if lhs >= rhs else "violated", lhs=lhs, rhs=rhs,
                )
            )

        if minrank_s is None or not length_optimal:
            note = (
                "min-rank budget exceeded"
                if minrank_s is None
                else "code length differs from the instance min-rank"
            )
            checks.append(
                CheckResult(
                    name="sum_locality_minrank", context=ctx,
                    status="not_applicable", note=note,
                )
            )
        else:
            lhs = sum(
                (profile.per_receiver[i - 1] for i in sorted(s)), Fraction(0)
            )
            rhs = Fraction(2 * minrank_s)
            checks.append(
                CheckResult(
                    name="sum_locality_minrank", context=ctx,
                    status="ok" if lhs >= rhs else "violated", lhs=lhs, rhs=rhs,
                )
            )

        has_cycle = shortest_directed_cycle(sub) is not None
        checks.append(
            CheckResult(
                name="null_support_cycle", context=ctx,
                status="ok" if has_cycle else "violated",
                lhs=Fraction(1 if has_cycle else 0), rhs=Fraction(1),
            )
        )

        if minrank_s is None or not deficit_one:
            note = (
                "min-rank budget exceeded"
                if minrank_s is None
                else "instance min-rank is not n-1"
            )
            checks.append(
                CheckResult(
                    name="induced_minrank_deficit", context=ctx,
                    status="not_applicable", note=note,
                )
            )
        else:
            lhs = Fraction(minrank_s)
            rhs = Fraction(len(s) - 1)
            checks.append(
                CheckResult(
                    name="induced_minrank_deficit", context=ctx,
                    status="ok" if lhs >= rhs else "violated", lhs=lhs, rhs=rhs,
                )
            )

    if not column_space_contained(code.matrix, fm.matrix):
        checks.append(
            CheckResult(
                name="fitting_column_space", context="",
                status="violated",
                note="fitting matrix columns leave the encoder column space",
            )
        )
    else:
        checks.append(
            CheckResult(
                name="fitting_column_space", context="",
                status="ok", lhs=Fraction(0), rhs=Fraction(0),
            )
        )
    return ConverseReport(tuple(checks))
