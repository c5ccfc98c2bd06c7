"""Pure simplicial complexes over indexed vertex sets.

Facet-adjacency (dual) graphs, bipartiteness with odd-cycle witnesses,
balanced colorings, decoration checks against exact coefficient matrices,
per-simplex signs and normalized volumes.

Vertices are 1-based indices into an ambient configuration of n points;
only the vertices actually used by some facet participate in balancedness
and decoration checks.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping, Sequence

from .exactlinalg import (
    RationalMatrix,
    determinant,
    format_rational,
    is_oriented,
    parse_rational,
)


@dataclass(frozen=True)
class SimplicialComplex:
    """Pure d-dimensional complex given by its facet list."""

    dimension: int
    n_vertices: int
    facets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d, n = self.dimension, self.n_vertices
        seen = set()
        for f in self.facets:
            if len(f) != d + 1:
                raise ValueError(f"facet {f} does not have {d + 1} vertices")
            if list(f) != sorted(set(f)):
                raise ValueError(f"facet {f} is not strictly increasing")
            if f[0] < 1 or f[-1] > n:
                raise ValueError(f"facet {f} out of vertex range 1..{n}")
            if f in seen:
                raise ValueError(f"duplicate facet {f}")
            seen.add(f)

    @classmethod
    def from_facets(cls, dimension: int, n_vertices: int,
                    facets: Sequence[Sequence[int]]) -> "SimplicialComplex":
        return cls(dimension, n_vertices,
                   tuple(sorted(tuple(sorted(f)) for f in facets)))

    @property
    def used_vertices(self) -> frozenset[int]:
        return frozenset(v for f in self.facets for v in f)

    def skeleton_edges(self) -> set[tuple[int, int]]:
        """Edges of the 1-skeleton (unordered pairs, stored sorted)."""
        edges = set()
        for f in self.facets:
            edges.update(combinations(f, 2))
        return edges

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "n_vertices": self.n_vertices,
            "facets": [list(f) for f in self.facets],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "SimplicialComplex":
        return cls.from_facets(d["dimension"], d["n_vertices"], d["facets"])

    @classmethod
    def from_json(cls, s: str) -> "SimplicialComplex":
        return cls.from_json_dict(json.loads(s))


@dataclass(frozen=True)
class PointConfiguration:
    """Ordered exponent vectors a_1..a_n in Q^d."""

    dimension: int
    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.dimension:
                raise ValueError("point dimension mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "PointConfiguration":
        pts = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not pts:
            raise ValueError("empty configuration")
        return cls(len(pts[0]), pts)

    @property
    def n_points(self) -> int:
        return len(self.points)

    def lifted_matrix(self, facet: Sequence[int]) -> RationalMatrix:
        """(d+1) x (d+1) matrix with a top row of ones over the facet's points."""
        cols = [self.points[v - 1] for v in facet]
        rows = [[Fraction(1)] * len(cols)]
        rows += [[c[i] for c in cols] for i in range(self.dimension)]
        return RationalMatrix(rows)

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "points": [[format_rational(x) for x in p] for p in self.points],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "PointConfiguration":
        return cls(d["dimension"],
                   tuple(tuple(parse_rational(x) for x in p) for p in d["points"]))


@dataclass
class DualGraph:
    """Facet-adjacency graph: nodes are facet indices into the complex."""

    n_nodes: int
    adjacency: dict[int, set[int]]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(
            (a, b) for a, nbrs in self.adjacency.items() for b in nbrs if a < b
        )


@dataclass
class BipartitenessCheck:
    colors: dict[int, int] | None        # facet index -> +1/-1
    odd_cycle: list[int] | None          # facet indices of a witness cycle

    def __bool__(self):
        return self.colors is not None


def dual_graph(K: SimplicialComplex) -> DualGraph:
    """Adjacency graph of facets; edge iff the facets share exactly d vertices."""
    d = K.dimension
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(K.facets))}
    sets = [frozenset(f) for f in K.facets]
    for i, j in combinations(range(len(sets)), 2):
        if len(sets[i] & sets[j]) == d:
            adjacency[i].add(j)
            adjacency[j].add(i)
    return DualGraph(len(sets), adjacency)


def is_bipartite(G: DualGraph) -> BipartitenessCheck:
    """Two-color the dual graph, or return an odd cycle as witness."""
    colors: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for start in range(G.n_nodes):
        if start in colors:
            continue
        colors[start] = 1
        parent[start] = None
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in sorted(G.adjacency[v]):
                if w not in colors:
                    colors[w] = -colors[v]
                    parent[w] = v
                    queue.append(w)
                elif colors[w] == colors[v]:
                    return BipartitenessCheck(None, _odd_cycle(parent, v, w))
    return BipartitenessCheck(colors, None)


def _odd_cycle(parent: Mapping[int, int | None], v: int, w: int) -> list[int]:
    """Reconstruct the cycle through the conflicting edge (v, w)."""
    path_v, path_w = [v], [w]
    av, aw = v, w
    seen = {v: 0}
    while parent[av] is not None:
        av = parent[av]
        seen[av] = len(path_v)
        path_v.append(av)
    while aw not in seen:
        aw = parent[aw]
        path_w.append(aw)
    k = seen[aw]
    return path_v[:k + 1] + list(reversed(path_w[:-1]))


def _component_coloring(K: SimplicialComplex, G: DualGraph,
                        component: list[int]) -> dict[int, int] | None:
    """Propagate a seed facet coloring across one dual-graph component.

    Every facet is a clique, so a proper (d+1)-coloring is rainbow on each
    facet and adjacency forces the new vertex's color.  Within a component
    the coloring is unique up to a global color permutation.
    """
    d = K.dimension
    start = min(component)
    coloring: dict[int, int] = {
        v: c for c, v in enumerate(K.facets[start])
    }
    queue = deque([start])
    visited = {start}
    while queue:
        i = queue.popleft()
        for j in sorted(G.adjacency[i]):
            if j in visited:
                continue
            facet = K.facets[j]
            known = {v: coloring[v] for v in facet if v in coloring}
            used = list(known.values())
            if len(set(used)) != len(used):
                return None
            missing = set(range(d + 1)) - set(used)
            for v in facet:
                if v not in known:
                    if len(missing) != 1:
                        return None
                    coloring[v] = missing.pop()
            visited.add(j)
            queue.append(j)
    # facets may close up inconsistently; verify rainbow-ness
    for i in component:
        if len({coloring[v] for v in K.facets[i]}) != d + 1:
            return None
    return coloring


def balanced_coloring(K: SimplicialComplex) -> dict[int, int] | None:
    """Proper (d+1)-coloring of the 1-skeleton, or None if none exists.

    Each dual-graph component has an essentially unique candidate coloring;
    components are then reconciled by backtracking over color permutations,
    followed by a full verification pass on the 1-skeleton.
    """
    if not K.facets:
        return {}
    d = K.dimension
    G = dual_graph(K)
    components: list[list[int]] = []
    seen: set[int] = set()
    for i in range(G.n_nodes):
        if i in seen:
            continue
        comp = []
        queue = deque([i])
        seen.add(i)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in G.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        components.append(sorted(comp))

    partials = []
    for comp in components:
        coloring = _component_coloring(K, G, comp)
        if coloring is None:
            return None
        partials.append(coloring)

    edges = K.skeleton_edges()

    def consistent(assigned: dict[int, int]) -> bool:
        for a, b in edges:
            ca, cb = assigned.get(a), assigned.get(b)
            if ca is not None and ca == cb:
                return False
        return True

    def backtrack(idx: int, assigned: dict[int, int]) -> dict[int, int] | None:
        if idx == len(partials):
            return dict(assigned)
        base = partials[idx]
        for perm in permutations(range(d + 1)):
            candidate = {v: perm[c] for v, c in base.items()}
            if any(v in assigned and assigned[v] != c
                   for v, c in candidate.items()):
                continue
            merged = dict(assigned)
            merged.update(candidate)
            if not consistent(merged):
                continue
            result = backtrack(idx + 1, merged)
            if result is not None:
                return result
        return None

    result = backtrack(0, {})
    if result is None:
        return None
    # final verification on the full 1-skeleton
    for a, b in edges:
        if result[a] == result[b]:
            return None
    return result


def decoration_from_coloring(coloring: Mapping[int, int], n: int,
                             d: int) -> RationalMatrix:
    """d x n coefficient matrix with column e_{c+1} per vertex of color c.

    Color d maps to the all-minus-ones column.  Vertices absent from the
    coloring (unused by any facet) get the e_1 column; they never enter a
    facet submatrix.
    """
    cols = []
    for v in range(1, n + 1):
        c = coloring.get(v, 0)
        if not 0 <= c <= d:
            raise ValueError(f"color {c} out of range 0..{d}")
        if c == d:
            cols.append([Fraction(-1)] * d)
        else:
            cols.append([Fraction(1) if i == c else Fraction(0)
                         for i in range(d)])
    return RationalMatrix(list(zip(*cols)))


def is_positively_decorated(
    K: SimplicialComplex, C: RationalMatrix
) -> tuple[bool, list[tuple[int, ...]]]:
    """Check every facet submatrix of C for orientation.

    Returns (verdict, failing facets); the report lists all failures, not
    just the first one.
    """
    if C.cols < K.n_vertices:
        raise ValueError("coefficient matrix has fewer columns than vertices")
    if C.rows != K.dimension:
        raise ValueError("coefficient matrix row count must equal dimension")
    failing = []
    for facet in K.facets:
        sub = C.submatrix_columns([v - 1 for v in facet])
        if not is_oriented(sub):
            failing.append(facet)
    return (not failing, failing)


def simplex_signs(
    K: SimplicialComplex, A: PointConfiguration, C: RationalMatrix
) -> dict[tuple[int, ...], int]:
    """Per-facet sign: sign(det lifted A_tau) * sign(det lifted C_tau).

    For a positively decorated complex, adjacent facets receive opposite
    signs.
    """
    signs = {}
    for facet in K.facets:
        det_a = determinant(A.lifted_matrix(facet))
        if det_a == 0:
            raise ValueError(f"degenerate facet {facet}: lifted matrix singular")
        c_sub = C.submatrix_columns([v - 1 for v in facet])
        c_lift = RationalMatrix(
            [[Fraction(1)] * c_sub.cols] + c_sub.to_lists()
        )
        det_c = determinant(c_lift)
        if det_c == 0:
            raise ValueError(f"facet {facet} is not decorated (singular lift)")
        signs[facet] = 1 if (det_a > 0) == (det_c > 0) else -1
    return signs


def normalized_volume(A: PointConfiguration, facet: Sequence[int]) -> Fraction:
    """|det| of the lifted facet matrix: Euclidean volume times d!."""
    return abs(determinant(A.lifted_matrix(tuple(facet))))


def is_unimodular(K: SimplicialComplex, A: PointConfiguration) -> bool:
    return all(normalized_volume(A, f) == 1 for f in K.facets)


def total_normalized_volume(K: SimplicialComplex,
                            A: PointConfiguration) -> Fraction:
    return sum((normalized_volume(A, f) for f in K.facets), Fraction(0))


def coloring_to_json_dict(coloring: Mapping[int, int], n: int) -> dict:
    return {"colors": [coloring.get(v, 0) for v in range(1, n + 1)]}


def coloring_from_json_dict(d: dict) -> dict[int, int]:
    return {v + 1: c for v, c in enumerate(d["colors"])}
