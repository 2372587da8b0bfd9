"""Directed clique complexes of quivers with an edge-multiplicity threshold.

For a threshold N >= 1, the p-simplices are the ordered tuples
(v_0, ..., v_p) of distinct vertices with at least N parallel edges from
v_i to v_j for every i < j.  Loops are ignored.  Tuples that differ in
order are distinct simplices, and the face maps delete one entry at a
time, so the result is an abstract ordered simplicial complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .quiver import Quiver

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Raised for malformed complexes or out-of-range dimension requests."""


@dataclass(frozen=True)
class SimplicialComplex:
    """Ordered simplicial complex, simplices listed per dimension.

    ``simplices_by_dim[p]`` holds the p-simplices in lexicographic order
    of their vertex-index tuples.  ``max_dim`` is the construction cap:
    dimensions above it were never enumerated.
    """

    simplices_by_dim: tuple[tuple[Simplex, ...], ...]
    max_dim: int

    def simplices(self, dim: int) -> tuple[Simplex, ...]:
        if 0 <= dim < len(self.simplices_by_dim):
            return self.simplices_by_dim[dim]
        return ()

    def counts(self) -> list[int]:
        return [len(level) for level in self.simplices_by_dim]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * len(level) for p, level in enumerate(self.simplices_by_dim))

    def check_closure(self) -> None:
        """Every face of every stored simplex must itself be stored."""
        index = [set(level) for level in self.simplices_by_dim]
        for p, level in enumerate(self.simplices_by_dim):
            if p == 0:
                continue
            for simplex in level:
                for i in range(len(simplex)):
                    face = simplex[:i] + simplex[i + 1 :]
                    if face not in index[p - 1]:
                        raise ComplexError(f"missing face {face} of {simplex}")

    def to_json_dict(self) -> dict:
        return {
            "max_dim": self.max_dim,
            "simplices": {
                str(p): [list(s) for s in level]
                for p, level in enumerate(self.simplices_by_dim)
            },
        }


def complex_from_json(data: dict) -> SimplicialComplex:
    try:
        max_dim = int(data["max_dim"])
        raw = data["simplices"]
    except (KeyError, TypeError) as exc:
        raise ComplexError(f"malformed complex record: {exc}") from exc
    levels: list[tuple[Simplex, ...]] = []
    for p in range(max_dim + 1):
        level = raw.get(str(p), [])
        levels.append(tuple(sorted(tuple(int(v) for v in s) for s in level)))
    while len(levels) > 1 and not levels[-1]:
        levels.pop()
    complex_ = SimplicialComplex(tuple(levels), max_dim)
    for p, level in enumerate(complex_.simplices_by_dim):
        for simplex in level:
            if len(simplex) != p + 1 or len(set(simplex)) != p + 1:
                raise ComplexError(f"bad {p}-simplex {simplex}")
    complex_.check_closure()
    return complex_


def threshold_digraph(quiver: Quiver, threshold: int) -> list[list[bool]]:
    """Adjacency of the simple digraph keeping edges with mult >= threshold."""
    n = quiver.size
    return [
        [u != w and quiver.mult[u][w] >= threshold for w in range(n)]
        for u in range(n)
    ]


def directed_clique_complex(
    quiver: Quiver, threshold: int, max_dim: int
) -> SimplicialComplex:
    """Ordered tuples of distinct vertices pairwise connected above threshold.

    Built by depth-first extension of directed cliques: a tuple extends
    by any vertex that receives an edge from each current member.
    """
    if threshold < 1:
        raise ComplexError(f"threshold must be >= 1, got {threshold}")
    if max_dim < 0:
        raise ComplexError(f"max_dim must be >= 0, got {max_dim}")
    adj = threshold_digraph(quiver, threshold)
    n = quiver.size
    levels: list[list[Simplex]] = [[(v,) for v in range(n)]]

    def extend(prefix: tuple[int, ...], candidates: list[int]) -> None:
        depth = len(prefix)  # prefix is a (depth-1)-simplex
        if depth >= 2:
            levels[depth - 1].append(prefix)
        if depth - 1 >= max_dim:
            return
        for w in candidates:
            extend(prefix + (w,), [u for u in candidates if adj[w][u]])

    while len(levels) <= max_dim:
        levels.append([])
    for v in range(n):
        extend((v,), [w for w in range(n) if adj[v][w]])
    trimmed: list[tuple[Simplex, ...]] = []
    for p, level in enumerate(levels[: max_dim + 1]):
        trimmed.append(tuple(sorted(level)))
    while len(trimmed) > 1 and not trimmed[-1]:
        trimmed.pop()
    return SimplicialComplex(tuple(trimmed), max_dim)


def directed_clique_complex_naive(
    quiver: Quiver, threshold: int, max_dim: int
) -> SimplicialComplex:
    """Reference construction scanning all vertex tuples; for cross-checks."""
    adj = threshold_digraph(quiver, threshold)
    n = quiver.size
    levels: list[tuple[Simplex, ...]] = [tuple((v,) for v in range(n))]
    for p in range(1, max_dim + 1):
        found = []
        for combo in permutations(range(n), p + 1):
            if all(adj[combo[i]][combo[j]] for i in range(p + 1) for j in range(i + 1, p + 1)):
                found.append(combo)
        levels.append(tuple(sorted(found)))
    while len(levels) > 1 and not levels[-1]:
        levels.pop()
    return SimplicialComplex(tuple(levels), max_dim)


@dataclass(frozen=True)
class BoundaryMatrix:
    """Signed boundary matrix: rows index (p-1)-simplices, columns p-simplices.

    ``columns[j]`` lists (row, sign) pairs from the alternating face sum;
    ``gf2_columns[j]`` is the same column as a row-index bitmask.
    """

    dimension: int
    n_rows: int
    n_cols: int
    columns: tuple[tuple[tuple[int, int], ...], ...]
    gf2_columns: tuple[int, ...]

    def dense(self) -> list[list[int]]:
        mat = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for i, sign in col:
                mat[i][j] = sign
        return mat


def boundary_matrix(complex_: SimplicialComplex, p: int) -> BoundaryMatrix:
    """Boundary map from p-chains to (p-1)-chains with alternating signs."""
    if p < 1:
        raise ComplexError(f"boundary defined for p >= 1, got {p}")
    faces = complex_.simplices(p - 1)
    cells = complex_.simplices(p)
    row_index = {s: i for i, s in enumerate(faces)}
    columns = []
    masks = []
    for simplex in cells:
        col = []
        mask = 0
        for i in range(len(simplex)):
            face = simplex[:i] + simplex[i + 1 :]
            row = row_index.get(face)
            if row is None:
                raise ComplexError(f"missing face {face} of {simplex}")
            col.append((row, -1 if i % 2 else 1))
            mask ^= 1 << row
        columns.append(tuple(col))
        masks.append(mask)
    return BoundaryMatrix(p, len(faces), len(cells), tuple(columns), tuple(masks))
