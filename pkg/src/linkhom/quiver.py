"""Coloring quivers, in-degree polynomials, and a small-instance isomorphism test.

A quiver here has one vertex per coloring of a fixed diagram, with
``mult[f][g]`` counting the maps in an endomorphism set S that carry
coloring f to coloring g pointwise.  Every row sums to |S|.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .algebra import Biquandle, BqMap, homomorphism_failure
from .diagram import Coloring, LinkDiagram, colorings


class QuiverError(ValueError):
    """Raised for invalid endomorphism sets or oversized isomorphism queries."""


@dataclass(frozen=True)
class Quiver:
    """Vertices are colorings in lexicographic order; mult is the edge-count matrix."""

    vertices: tuple[Coloring, ...]
    mult: tuple[tuple[int, ...], ...]
    endo_count: int

    @property
    def size(self) -> int:
        return len(self.vertices)

    def in_degrees(self) -> list[int]:
        return [sum(row[g] for row in self.mult) for g in range(self.size)]

    def out_degrees(self) -> list[int]:
        return [sum(row) for row in self.mult]

    def to_json_dict(self) -> dict:
        return {
            "vertices": [[v + 1 for v in coloring] for coloring in self.vertices],
            "mult": [list(row) for row in self.mult],
        }

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for i, coloring in enumerate(self.vertices):
            label = ",".join(str(v + 1) for v in coloring)
            lines.append(f'  v{i} [label="[{label}]"];')
        for i, row in enumerate(self.mult):
            for j, count in enumerate(row):
                if count:
                    lines.append(f'  v{i} -> v{j} [label="{count}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def check_endomorphisms(maps: Sequence[BqMap], bq: Biquandle) -> None:
    for f in maps:
        witness = homomorphism_failure(f, bq, bq)
        if witness is not None:
            raise QuiverError(
                f"map {[v + 1 for v in f]} is not an endomorphism "
                f"(fails at pair {tuple(v + 1 for v in witness)})"
            )


def quiver_from_colorings(
    verts: Sequence[Coloring], bq: Biquandle, endos: Sequence[BqMap]
) -> Quiver:
    """Edge-multiplicity matrix of the endomorphism action on a coloring set."""
    check_endomorphisms(endos, bq)
    ordered = tuple(sorted(verts))
    index = {v: i for i, v in enumerate(ordered)}
    mult = [[0] * len(ordered) for _ in ordered]
    for i, coloring in enumerate(ordered):
        for sigma in endos:
            image = tuple(sigma[v] for v in coloring)
            j = index.get(image)
            if j is None:
                raise QuiverError(
                    "endomorphism image leaves the coloring set; inputs inconsistent"
                )
            mult[i][j] += 1
    quiver = Quiver(ordered, tuple(tuple(row) for row in mult), len(endos))
    assert all(sum(row) == len(endos) for row in quiver.mult)
    return quiver


def build_quiver(diagram: LinkDiagram, bq: Biquandle, endos: Sequence[BqMap]) -> Quiver:
    """Coloring quiver of a diagram for the endomorphism set endos."""
    return quiver_from_colorings(colorings(diagram, bq), bq, endos)


InDegreePolynomial = dict[int, int]
"""Exponent-to-coefficient map for the formal variable u."""


def in_degree_polynomial(quiver: Quiver) -> InDegreePolynomial:
    """Multiset of vertex in-degrees as a polynomial in u."""
    poly: InDegreePolynomial = {}
    for deg in quiver.in_degrees():
        poly[deg] = poly.get(deg, 0) + 1
    return poly


def polynomial_to_string(poly: InDegreePolynomial) -> str:
    """Render like ``3u^3 + u^7``; the zero polynomial renders as ``0``."""
    if not poly:
        return "0"
    terms = []
    for exp in sorted(poly):
        coeff = poly[exp]
        if coeff == 0:
            continue
        coeff_part = "" if coeff == 1 and exp > 0 else str(coeff)
        if exp == 0:
            terms.append(str(coeff))
        elif exp == 1:
            terms.append(f"{coeff_part}u")
        else:
            terms.append(f"{coeff_part}u^{exp}")
    return " + ".join(terms) if terms else "0"


def validate_nested(stages: Sequence[Sequence[BqMap]]) -> None:
    """Check that each stage contains the previous one as a set."""
    for i in range(1, len(stages)):
        prev, cur = set(stages[i - 1]), set(stages[i])
        if not prev <= cur:
            missing = sorted(prev - cur)[0]
            raise QuiverError(
                f"stage {i} drops map {[v + 1 for v in missing]}; stages must be nested"
            )


def in_degree_multiset(
    diagram: LinkDiagram, bq: Biquandle, stages: Sequence[Sequence[BqMap]]
) -> list[InDegreePolynomial]:
    """One in-degree polynomial per stage of a nested endomorphism sequence."""
    validate_nested(stages)
    verts = colorings(diagram, bq)
    return [
        in_degree_polynomial(quiver_from_colorings(verts, bq, stage))
        for stage in stages
    ]


def quivers_isomorphic(q1: Quiver, q2: Quiver, limit: int = 10) -> bool:
    """Exhaustive vertex-bijection search; intended for small test instances."""
    if q1.size > limit or q2.size > limit:
        raise QuiverError(f"isomorphism search limited to {limit} vertices")
    if q1.size != q2.size:
        return False
    n = q1.size
    # degree-profile pruning: candidate images must match loop/in/out counts
    def profile(q: Quiver, v: int) -> tuple[int, int, int]:
        return (q.mult[v][v], sum(q.mult[v]), sum(row[v] for row in q.mult))

    prof1 = [profile(q1, v) for v in range(n)]
    prof2 = [profile(q2, v) for v in range(n)]
    if sorted(prof1) != sorted(prof2):
        return False
    for perm in permutations(range(n)):
        if any(prof1[v] != prof2[perm[v]] for v in range(n)):
            continue
        if all(
            q1.mult[u][v] == q2.mult[perm[u]][perm[v]]
            for u in range(n)
            for v in range(n)
        ):
            return True
    return False
