"""Side-information graphs for broadcast problems with receiver side info.

A problem instance is a directed graph on receivers 1..N with an edge
(i, j) whenever receiver i already knows message j.  Receiver and message
indices are 1-based throughout the public API.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphParseError(ValueError):
    """Raised for malformed graph files; carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class SideInformationGraph:
    """N receivers and, for each, the set of other messages it knows."""

    n: int
    side: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one receiver")
        if len(self.side) != self.n:
            raise ValueError("side-information list length must equal n")
        for i, k in enumerate(self.side, start=1):
            if i in k:
                raise ValueError(f"receiver {i} lists itself as side information")
            for j in k:
                if not 1 <= j <= self.n:
                    raise ValueError(f"receiver {i} lists out-of-range vertex {j}")

    def side_info(self, i: int) -> frozenset[int]:
        """Side-information set K_i of receiver i (1-based)."""
        return self.side[i - 1]

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(1, self.n + 1):
            for j in sorted(self.side[i - 1]):
                yield (i, j)

    def edge_count(self) -> int:
        return sum(len(k) for k in self.side)


def graph_from_side_info(side: Iterable[Iterable[int]]) -> SideInformationGraph:
    side_t = tuple(frozenset(k) for k in side)
    return SideInformationGraph(len(side_t), side_t)


def directed_cycle(n: int) -> SideInformationGraph:
    """The cycle instance: receiver i knows message i+1, receiver n knows 1."""
    if n < 2:
        raise ValueError("a directed cycle needs at least 2 vertices")
    return graph_from_side_info([{i % n + 1} for i in range(1, n + 1)])


def parse_graph(text: str) -> SideInformationGraph:
    """Parse the graph file format.

    First significant line is ``N=<int>``; each following line reads
    ``i: j1 j2 ...`` giving the side information of receiver i (possibly
    empty).  ``#`` starts a comment.  Receivers may be omitted (empty side
    information); duplicate declarations, self-loops and out-of-range
    vertices are errors.
    """
    n: int | None = None
    side: dict[int, set[int]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.startswith("N"):
                raise GraphParseError("expected 'N=<int>' header", line_no)
            _, _, value = line.partition("=")
            try:
                n = int(value.strip())
            except ValueError:
                raise GraphParseError(f"bad receiver count {value.strip()!r}", line_no) from None
            if n < 1:
                raise GraphParseError("receiver count must be positive", line_no)
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise GraphParseError("expected '<receiver>: ...'", line_no)
        try:
            i = int(head.strip())
        except ValueError:
            raise GraphParseError(f"bad receiver id {head.strip()!r}", line_no) from None
        if not 1 <= i <= n:
            raise GraphParseError(f"receiver {i} out of range [1, {n}]", line_no)
        if i in side:
            raise GraphParseError(f"receiver {i} declared twice", line_no)
        members: set[int] = set()
        for tok in tail.split():
            try:
                j = int(tok)
            except ValueError:
                raise GraphParseError(f"bad vertex {tok!r}", line_no) from None
            if j == i:
                raise GraphParseError(f"self-loop at receiver {i}", line_no)
            if not 1 <= j <= n:
                raise GraphParseError(f"vertex {j} out of range [1, {n}]", line_no)
            members.add(j)
        side[i] = members
    if n is None:
        raise GraphParseError("missing 'N=<int>' header")
    return graph_from_side_info([side.get(i, set()) for i in range(1, n + 1)])


def format_graph(g: SideInformationGraph) -> str:
    lines = [f"N={g.n}"]
    for i in range(1, g.n + 1):
        members = " ".join(str(j) for j in sorted(g.side_info(i)))
        lines.append(f"{i}: {members}".rstrip())
    return "\n".join(lines) + "\n"


def induced_subgraph(
    g: SideInformationGraph, vertices: Iterable[int]
) -> tuple[SideInformationGraph, tuple[int, ...]]:
    """Subgraph induced by the given vertices, relabeled to 1..|S|.

    Vertices keep their relative order; the returned tuple maps new label
    t (1-based) to the original vertex mapping[t-1].
    """
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    for v in vs:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} out of range [1, {g.n}]")
    old_to_new = {v: t for t, v in enumerate(vs, start=1)}
    side = [
        {old_to_new[j] for j in g.side_info(v) if j in old_to_new}
        for v in vs
    ]
    return graph_from_side_info(side), tuple(vs)


def has_directed_cycle(g: SideInformationGraph) -> bool:
    """Kahn's algorithm: True iff no topological order exists."""
    indeg = [0] * (g.n + 1)
    for _, j in g.edges():
        indeg[j] += 1
    queue = deque(v for v in range(1, g.n + 1) if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for j in sorted(g.side_info(v)):
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    return seen != g.n


def _bfs_distances(g: SideInformationGraph, source: int) -> list[int]:
    inf = g.n + 1
    dist = [inf] * (g.n + 1)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for j in sorted(g.side_info(v)):
            if dist[j] > dist[v] + 1:
                dist[j] = dist[v] + 1
                queue.append(j)
    return dist


def shortest_directed_cycle(
    g: SideInformationGraph,
) -> tuple[int, tuple[int, ...]] | None:
    """Length and vertex list of a minimum-length directed cycle.

    Returns None iff the graph is acyclic.  Among all minimum-length
    cycles the lexicographically smallest vertex sequence is returned,
    with the cycle rotated so its smallest vertex comes first.
    """
    if not has_directed_cycle(g):
        return None
    dist = {v: _bfs_distances(g, v) for v in range(1, g.n + 1)}
    girth = min(
        dist[j][i] + 1
        for i in range(1, g.n + 1)
        for j in g.side_info(i)
        if dist[j][i] <= g.n
    )

    # Recover the lexicographically smallest witness of that exact length
    # by depth-first search anchored at the cycle's smallest vertex.
    def extend(path: list[int], start: int) -> tuple[int, ...] | None:
        v = path[-1]
        if len(path) == girth:
            return tuple(path) if start in g.side_info(v) else None
        # After appending j the walk back to start takes girth - len(path)
        # edges, so j must be at least that close.
        remaining = girth - len(path)
        for j in sorted(g.side_info(v)):
            if j <= start or j in path:
                continue
            if dist[j][start] > remaining:
                continue
            result = extend(path + [j], start)
            if result is not None:
                return result
        return None

    for start in range(1, g.n + 1):
        witness = extend([start], start)
        if witness is not None:
            return girth, witness
    raise AssertionError("cycle of computed girth not found")


@dataclass(frozen=True)
class IndexExpansion:
    """Scalar-index view of a vector problem with message length m.

    Message i of length m occupies the scalar indices (i-1)*m+1 .. i*m;
    demands partition [m*n] and side_info[i] is the union of the blocks
    receiver i+1 already knows.
    """

    m: int
    demands: tuple[frozenset[int], ...]
    side_info: tuple[frozenset[int], ...]


def expand_indices(g: SideInformationGraph, m: int) -> IndexExpansion:
    """Demand and side-information index sets of the length-m vector problem."""
    if m < 1:
        raise ValueError("message length must be at least 1")
    demands = tuple(
        frozenset(range((i - 1) * m + 1, i * m + 1)) for i in range(1, g.n + 1)
    )
    side = tuple(
        frozenset(
            (j - 1) * m + t for j in g.side_info(i) for t in range(1, m + 1)
        )
        for i in range(1, g.n + 1)
    )
    return IndexExpansion(m, demands, side)


def cycle_length_if_cycle(g: SideInformationGraph) -> int | None:
    """N when the instance is one directed cycle through all vertices, else None."""
    if any(len(k) != 1 for k in g.side):
        return None
    visited = [False] * (g.n + 1)
    v = 1
    for _ in range(g.n):
        if visited[v]:
            return None
        visited[v] = True
        (v,) = g.side_info(v)
    return g.n if v == 1 and all(visited[1:]) else None
