"""Undirected graphs over operator-set indices, with exact searches.

Vertices are the members of an operator set in their set order; edges
record a pairwise cut relation.  Adjacency lives in one int bitmask per
vertex, which keeps the branch-and-bound inner loops to a few word ops.

``max_clique`` and ``chromatic_number`` are exact and deterministic:
runs on equal inputs return identical results, and every witness is
re-verified against the adjacency relation before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .cuts import Partition, cut_anticommute, cut_commute
from .errors import CapExceeded
from .pauli import OperatorSet

CLIQUE_VERTEX_CAP = 128
COLOR_VERTEX_CAP = 64


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph; adjacency[i] is the neighbour bitmask of i."""

    labels: tuple[str, ...]
    adjacency: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.adjacency) != n:
            raise ValueError("labels and adjacency rows disagree in length")
        full = (1 << n) - 1
        for i, row in enumerate(self.adjacency):
            if row & ~full:
                raise ValueError(f"adjacency row {i} references missing vertices")
            if (row >> i) & 1:
                raise ValueError(f"vertex {i} has a self loop")
            for j in range(n):
                if ((row >> j) & 1) != ((self.adjacency[j] >> i) & 1):
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, labels: Iterable[str], edges: Iterable[tuple[int, int]]) -> "Graph":
        labels = tuple(labels)
        adj = [0] * len(labels)
        for i, j in edges:
            if i == j:
                raise ValueError(f"self loop at vertex {i}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(labels, tuple(adj))

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adjacency[i] >> j) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edge list with i < j, sorted."""
        out = []
        for i, row in enumerate(self.adjacency):
            row >>= i + 1
            j = i + 1
            while row:
                if row & 1:
                    out.append((i, j))
                row >>= 1
                j += 1
        return out

    @property
    def edge_count(self) -> int:
        return sum(self.degree(i) for i in range(self.vertex_count)) // 2

    def to_json_obj(self) -> dict:
        return {
            "labels": list(self.labels),
            "edges": [[i, j] for i, j in self.edges()],
        }


@dataclass(frozen=True)
class CliqueResult:
    """Clique number plus one verified witness (sorted vertex indices)."""

    size: int
    witness: tuple[int, ...]


def build_graph(
    sigma: OperatorSet,
    part: Partition,
    relation: Literal["commute", "anticommute"],
) -> Graph:
    """Graph over sigma's members; edges are pairs in the cut relation."""
    if relation not in ("commute", "anticommute"):
        raise ValueError(f"relation must be 'commute' or 'anticommute', got {relation!r}")
    if sigma.width != part.width:
        raise ValueError(
            f"partition width {part.width} does not match operator width {sigma.width}"
        )
    test = cut_commute if relation == "commute" else cut_anticommute
    members = sigma.members
    n = len(members)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if test(members[i], members[j], part):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(sigma.texts(), tuple(adj))


def complement(g: Graph) -> Graph:
    """Same vertices, complemented edge set."""
    n = g.vertex_count
    full = (1 << n) - 1
    adj = tuple((full & ~row) & ~(1 << i) for i, row in enumerate(g.adjacency))
    return Graph(g.labels, adj)


def _greedy_color_order(adj: tuple[int, ...], cand: int) -> list[tuple[int, int]]:
    """Greedy colouring of a candidate bitmask; (vertex, colour) in colour order."""
    order: list[tuple[int, int]] = []
    colour = 0
    rest = cand
    while rest:
        colour += 1
        cls = rest
        while cls:
            v = (cls & -cls).bit_length() - 1
            bit = 1 << v
            cls &= ~adj[v]
            cls &= ~bit
            rest &= ~bit
            order.append((v, colour))
    return order


def _clique_number(adj: tuple[int, ...], n: int) -> int:
    """Branch and bound with greedy colouring upper bounds."""
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order = _greedy_color_order(adj, cand)
        local = cand
        for v, colour in reversed(order):
            if size + colour <= best:
                return
            nxt = local & adj[v]
            if nxt:
                expand(size + 1, nxt)
            elif size + 1 > best:
                best = size + 1
            local &= ~(1 << v)

    if n:
        expand(0, (1 << n) - 1)
    return best


def _has_clique(adj: tuple[int, ...], cand: int, k: int) -> bool:
    """Does the candidate bitmask contain a clique of size k?"""
    if k <= 0:
        return True
    if cand.bit_count() < k:
        return False
    found = False

    def expand(size: int, cand: int) -> None:
        nonlocal found
        if found:
            return
        order = _greedy_color_order(adj, cand)
        local = cand
        for v, colour in reversed(order):
            if found or size + colour < k:
                return
            if size + 1 >= k:
                found = True
                return
            nxt = local & adj[v]
            if nxt:
                expand(size + 1, nxt)
            local &= ~(1 << v)

    expand(0, cand)
    return found


def max_clique(g: Graph, cap: int = CLIQUE_VERTEX_CAP) -> CliqueResult:
    """Exact maximum clique with the lexicographically smallest witness.

    The clique number comes from a colour-bounded branch and bound; the
    witness is then rebuilt greedily, committing the smallest vertex that
    still allows a completion of full size.
    """
    n = g.vertex_count
    if n > cap:
        raise CapExceeded(f"clique search on {n} vertices exceeds cap {cap}")
    if n == 0:
        return CliqueResult(0, ())
    adj = g.adjacency
    size = _clique_number(adj, n)

    witness: list[int] = []
    cand = (1 << n) - 1
    while len(witness) < size:
        probe = cand
        committed = False
        while probe:
            v = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            rest = cand & adj[v] & ~((1 << (v + 1)) - 1)
            if _has_clique(adj, rest, size - len(witness) - 1):
                witness.append(v)
                cand = rest
                committed = True
                break
        if not committed:
            raise RuntimeError("clique witness reconstruction failed")

    for a in witness:
        for b in witness:
            if a != b and not g.has_edge(a, b):
                raise RuntimeError("clique witness failed verification")
    return CliqueResult(size, tuple(witness))


def independence_number(g: Graph, cap: int = CLIQUE_VERTEX_CAP) -> CliqueResult:
    """Exact maximum independent set, via the clique complement duality."""
    result = max_clique(complement(g), cap)
    for a in result.witness:
        for b in result.witness:
            if a != b and g.has_edge(a, b):
                raise RuntimeError("independent-set witness failed verification")
    return result


def _greedy_coloring(adj: tuple[int, ...], n: int) -> list[int]:
    """Saturation-guided greedy proper colouring; deterministic."""
    colours = [-1] * n
    for _ in range(n):
        pick = -1
        pick_key = (-1, -1, 1)
        for v in range(n):
            if colours[v] >= 0:
                continue
            sat = len(
                {colours[u] for u in _neighbours(adj, v) if colours[u] >= 0}
            )
            key = (sat, adj[v].bit_count(), -v)
            if key > pick_key:
                pick_key = key
                pick = v
        banned = {colours[u] for u in _neighbours(adj, pick) if colours[u] >= 0}
        c = 0
        while c in banned:
            c += 1
        colours[pick] = c
    return colours


def _neighbours(adj: tuple[int, ...], v: int):
    row = adj[v]
    while row:
        u = (row & -row).bit_length() - 1
        row &= row - 1
        yield u


def _try_coloring(adj: tuple[int, ...], n: int, k: int) -> list[int] | None:
    """Exact k-colouring by saturation-first backtracking, or None."""
    colours = [-1] * n

    def assign(done: int, palette: int) -> bool:
        if done == n:
            return True
        pick = -1
        pick_key = (-1, -1, 1)
        for v in range(n):
            if colours[v] >= 0:
                continue
            sat = len({colours[u] for u in _neighbours(adj, v) if colours[u] >= 0})
            key = (sat, adj[v].bit_count(), -v)
            if key > pick_key:
                pick_key = key
                pick = v
        banned = {colours[u] for u in _neighbours(adj, pick) if colours[u] >= 0}
        # At most one brand-new colour may be opened, killing palette symmetry.
        for c in range(min(k, palette + 1)):
            if c in banned:
                continue
            colours[pick] = c
            if assign(done + 1, max(palette, c + 1)):
                return True
            colours[pick] = -1
        return False

    return list(colours) if assign(0, 0) else None


def chromatic_number(g: Graph, cap: int = COLOR_VERTEX_CAP) -> tuple[int, tuple[int, ...]]:
    """Exact chromatic number and one proper colouring.

    Iterative deepening from the clique-number lower bound up to a greedy
    upper bound; each probe is a backtracking k-colouring search.
    """
    n = g.vertex_count
    if n > cap:
        raise CapExceeded(f"colouring search on {n} vertices exceeds cap {cap}")
    if n == 0:
        return 0, ()
    adj = g.adjacency
    lower = _clique_number(adj, n)
    greedy = _greedy_coloring(adj, n)
    upper = max(greedy) + 1
    best = greedy
    count = upper
    for k in range(lower, upper):
        attempt = _try_coloring(adj, n, k)
        if attempt is not None:
            best = attempt
            count = k
            break
    for i, j in g.edges():
        if best[i] == best[j]:
            raise RuntimeError("colouring failed verification")
    if len(set(best)) != count:
        raise RuntimeError("colour count failed verification")
    return count, tuple(best)


def export_dot(g: Graph, name: str = "sigma") -> str:
    """Graphviz text; vertex order and edge order are deterministic."""
    lines = [f"graph {name} {{"]
    for i, label in enumerate(g.labels):
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in g.edges():
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
