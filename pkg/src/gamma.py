"""Level graphs, the staircase potential gamma and the tables G^n, H^n.

Each sign gets its own graph. The minus graph is the plus graph of -f, so
levels are always nonnegative tiers floor(|f| / epsilon) and the formulas
only differ by the final sign of gamma.
"""

import logging
import math
from collections import Counter, deque
from dataclasses import dataclass
from typing import List, Optional

import networkx as nx
import numpy as np

from const import *
from geometry import Point, check_positive
from quantize import SCAN_BLOCK, RepresentativeSet, long_end_masks

logger = logging.getLogger(APPLICATION)


@dataclass(frozen=True)
class AugmentedVertex:
    kind: VertexKind
    value: float
    tier: int
    index: int = -1
    point: Optional[Point] = None
    long_horizontal_end: bool = False
    long_vertical_end: bool = False

    @property
    def sign(self):
        if self.kind == VertexKind.SENTINEL_PLUS:
            return Sign.PLUS
        if self.kind == VertexKind.SENTINEL_MINUS:
            return Sign.MINUS
        return Sign.PLUS if self.value >= 0 else Sign.MINUS

    @property
    def level(self):
        """Signed level, tier on the plus side and minus the tier below zero"""
        return self.tier if self.sign == Sign.PLUS else -self.tier

    @property
    def is_real(self):
        return self.kind == VertexKind.REAL


@dataclass(eq=False)
class LevelGraph:
    sign: Sign
    vertices: List[AugmentedVertex]
    graph: nx.Graph
    F: int
    epsilon: float

    @property
    def sentinel(self):
        """Node id of the sentinel, always the last vertex"""
        return len(self.vertices) - 1

    @property
    def edges(self):
        return sorted(tuple(sorted(edge)) for edge in self.graph.edges)

    def real_nodes(self):
        return [k for k, vertex in enumerate(self.vertices) if vertex.is_real]


@dataclass(frozen=True, eq=False)
class TableFunction:
    """Function on a finite projection of V^n"""

    domain: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        domain = np.asarray(self.domain, dtype=float).reshape(-1).copy()
        values = np.asarray(self.values, dtype=float).reshape(-1).copy()
        if len(domain) != len(values):
            raise ValueError(
                f"Table has {len(domain)} arguments but {len(values)} values"
            )
        if len(domain) == 0:
            raise ValueError("Table must not be empty")
        if np.any(np.diff(domain) <= 0):
            raise ValueError("Table domain must be strictly increasing")
        if not (np.isfinite(domain).all() and np.isfinite(values).all()):
            raise ValueError("Table contains non-finite numbers")
        domain.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.domain)

    def lookup(self, arguments):
        """Values at arguments, which must belong to the domain"""
        arguments = np.asarray(arguments, dtype=float)
        positions = np.searchsorted(self.domain, arguments)
        positions = np.clip(positions, 0, len(self.domain) - 1)
        if np.any(self.domain[positions] != arguments):
            raise KeyError("Argument outside of the table domain")
        return self.values[positions]

    def __call__(self, argument):
        return float(self.lookup([argument])[0])

    @property
    def norm(self):
        return float(np.abs(self.values).max())


@dataclass(eq=False)
class GammaField:
    """gamma on all of V together with the graphs it came from.

    The graphs are None when F = 0: every real vertex is then at least one
    step from its sentinel and gamma vanishes identically.
    """

    values: np.ndarray
    F: int
    epsilon: float
    long_vertical: np.ndarray
    long_horizontal: np.ndarray
    plus: Optional[LevelGraph] = None
    minus: Optional[LevelGraph] = None


def level_count(norm, epsilon):
    """F, the number of epsilon levels on each side"""
    check_positive("epsilon", epsilon)
    return math.floor(norm / epsilon)


def tier_of(value, epsilon):
    return math.floor(abs(value) / epsilon)


def level_occupancy(V: RepresentativeSet, epsilon):
    """Histogram of floor(f / epsilon) over V"""
    check_positive("epsilon", epsilon)
    return Counter(int(level) for level in np.floor(V.values / epsilon))


def pad_levels(V: RepresentativeSet, epsilon, delta, F=None) -> List[AugmentedVertex]:
    """Real vertices of V followed by the artificial ones.

    Level i in [-F, F] gets an artificial vertex when no long horizontal end
    of its sign sits on that level. Artificial vertices have no coordinates
    and are always flagged as long horizontal ends.
    """
    check_positive("epsilon", epsilon)
    if F is None:
        F = level_count(V.source.norm, epsilon)
    vertical, horizontal = long_end_masks(V, delta)
    vertices = [
        AugmentedVertex(
            VertexKind.REAL,
            float(value),
            tier_of(value, epsilon),
            index=k,
            point=V.point(k),
            long_horizontal_end=bool(horizontal[k]),
            long_vertical_end=bool(vertical[k]),
        )
        for k, value in enumerate(V.values)
    ]
    covered = {
        (vertex.sign, vertex.tier) for vertex in vertices if vertex.long_horizontal_end
    }
    for level in range(-F, F + 1):
        sign = Sign.PLUS if level >= 0 else Sign.MINUS
        if (sign, abs(level)) in covered:
            continue
        vertices.append(
            AugmentedVertex(
                VertexKind.ARTIFICIAL,
                level * epsilon,
                abs(level),
                long_horizontal_end=True,
            )
        )
    logger.debug(
        f"Padded V^{V.level} with {len(vertices) - len(V)} artificial levels (F={F})"
    )
    return vertices


def _short_pairs(coords, delta):
    """Index pairs (i < j) at Chebyshev distance below delta"""
    pairs = []
    for start in range(0, len(coords), SCAN_BLOCK):
        block = coords[start : start + SCAN_BLOCK]
        distance = np.abs(block[:, None, :] - coords[None, :, :]).max(axis=2)
        rows, cols = np.nonzero(distance < delta)
        rows = rows + start
        keep = rows < cols
        pairs.append(np.column_stack((rows[keep], cols[keep])))
    return np.concatenate(pairs) if pairs else np.zeros((0, 2), dtype=np.int64)


def build_sign_graph(vertices, sign, V: RepresentativeSet, delta, epsilon, F=None) -> LevelGraph:
    check_positive("delta", delta)
    check_positive("epsilon", epsilon)
    sign = Sign(sign)
    if F is None:
        F = level_count(V.source.norm, epsilon)
    members = [vertex for vertex in vertices if vertex.sign == sign]
    sentinel_kind = VertexKind.SENTINEL_PLUS if sign == Sign.PLUS else VertexKind.SENTINEL_MINUS
    sentinel_value = (F + 1) * epsilon if sign == Sign.PLUS else -(F + 1) * epsilon
    members.append(AugmentedVertex(sentinel_kind, sentinel_value, F + 1))

    graph = nx.Graph()
    graph.add_nodes_from(range(len(members)))

    real = [k for k, vertex in enumerate(members) if vertex.is_real]
    if len(real) > 1:
        coords = V.coords[[members[k].index for k in real]]
        real = np.asarray(real)
        pairs = _short_pairs(coords, delta)
        graph.add_edges_from(zip(real[pairs[:, 0]].tolist(), real[pairs[:, 1]].tolist()))

    tiers = {}
    for k, vertex in enumerate(members[:-1]):
        if vertex.long_horizontal_end:
            tiers.setdefault(vertex.tier, []).append(k)
    for tier, nodes in tiers.items():
        for above in tiers.get(tier + 1, ()):
            graph.add_edges_from((node, above) for node in nodes)
    sentinel = len(members) - 1
    graph.add_edges_from((sentinel, node) for node in tiers.get(F, ()))

    logger.debug(
        f"{sign.value} graph: {graph.number_of_nodes()} vertices, "
        f"{graph.number_of_edges()} edges"
    )
    return LevelGraph(sign, members, graph, F, epsilon)


def bfs_depth(G: LevelGraph):
    """Edge distance of every vertex from the sentinel, math.inf when unreachable"""
    depths = [math.inf] * len(G.vertices)
    depths[G.sentinel] = 0
    queue = deque([G.sentinel])
    while queue:
        node = queue.popleft()
        for neighbour in G.graph.adj[node]:
            if depths[neighbour] == math.inf:
                depths[neighbour] = depths[node] + 1
                queue.append(neighbour)
    return depths


def gamma(G: LevelGraph, depths):
    """gamma on the real vertices of G, keyed by their index in V"""
    values = {}
    for node in G.real_nodes():
        depth = depths[node]
        if depth == math.inf:
            level = 0.0
        else:
            level = max((G.F - depth + 1) * G.epsilon, 0.0)
        values[G.vertices[node].index] = level if G.sign == Sign.PLUS else -level
    return values


def compute_gamma(V: RepresentativeSet, epsilon, delta, F=None) -> GammaField:
    check_positive("epsilon", epsilon)
    if F is None:
        F = level_count(V.source.norm, epsilon)
    vertical, horizontal = long_end_masks(V, delta)
    values = np.zeros(len(V))
    if F == 0:
        return GammaField(values, F, epsilon, vertical, horizontal)
    vertices = pad_levels(V, epsilon, delta, F)
    result = GammaField(values, F, epsilon, vertical, horizontal)
    for sign in Sign:
        G = build_sign_graph(vertices, sign, V, delta, epsilon, F)
        depths = bfs_depth(G)
        for index, value in gamma(G, depths).items():
            values[index] = value
        setattr(result, sign.value, G)
    return result


def build_G(V: RepresentativeSet, gamma_values) -> TableFunction:
    """G(u) = gamma at the lowest representative above u"""
    gamma_values = np.asarray(gamma_values, dtype=float)
    # V is sorted by (x, y), so the first hit of every x has the smallest y
    domain, first = np.unique(V.coords[:, 0], return_index=True)
    return TableFunction(domain, gamma_values[first])


def build_H(V: RepresentativeSet, G: TableFunction, values=None) -> TableFunction:
    """H(v) = f(u*, v) - G(u*) with u* the leftmost representative at height v"""
    values = V.values if values is None else np.asarray(values, dtype=float)
    order = np.lexsort((V.coords[:, 0], V.coords[:, 1]))
    domain, first = np.unique(V.coords[order, 1], return_index=True)
    chosen = order[first]
    return TableFunction(domain, values[chosen] - G.lookup(V.coords[chosen, 0]))
