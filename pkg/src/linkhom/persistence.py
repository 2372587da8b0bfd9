"""Persistence of coloring-quiver filtrations: barcodes and stillborn counts.

A nested sequence of endomorphism sets induces a nested sequence of
coloring quivers on a fixed vertex set, hence a filtered directed clique
complex.  Standard GF(2) column reduction over the filtration order
yields the barcode; pairs whose two simplices enter at the same stage
are classes born already dead, tallied in the stillborn matrix instead
of the barcode.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import Biquandle, BqMap
from .cliques import ComplexError, Simplex, SimplicialComplex, directed_clique_complex
from .diagram import LinkDiagram, colorings
from .homology import HomologyError
from .quiver import Quiver, QuiverError, quiver_from_colorings, validate_nested

Interval = tuple[int, int, Optional[int]]
"""(dimension, birth stage, death stage); death None means the class survives."""


class FiltrationError(ValueError):
    """Raised for non-nested stages or malformed filtered complexes."""


def quiver_filtration(
    diagram: LinkDiagram, bq: Biquandle, stages: Sequence[Sequence[BqMap]]
) -> list[Quiver]:
    """One quiver per stage, on the shared (stage-independent) vertex set."""
    try:
        validate_nested(stages)
    except QuiverError as exc:
        raise FiltrationError(str(exc)) from exc
    verts = colorings(diagram, bq)
    quivers = [quiver_from_colorings(verts, bq, stage) for stage in stages]
    for prev, cur in zip(quivers, quivers[1:]):
        assert all(
            prev.mult[i][j] <= cur.mult[i][j]
            for i in range(prev.size)
            for j in range(prev.size)
        ), "edge multiplicities must be monotone along the filtration"
    return quivers


@dataclass(frozen=True)
class FilteredComplex:
    """Final-stage complex plus the stage at which each simplex enters."""

    complex: SimplicialComplex
    entry: dict[Simplex, int]
    num_stages: int  # stages are 0 .. num_stages - 1

    def validate(self) -> None:
        for p, level in enumerate(self.complex.simplices_by_dim):
            for simplex in level:
                stage = self.entry[simplex]
                if not 0 <= stage < self.num_stages:
                    raise FiltrationError(f"entry stage {stage} out of range")
                for i in range(len(simplex)):
                    face = simplex[:i] + simplex[i + 1 :]
                    if p and self.entry[face] > stage:
                        raise FiltrationError(
                            f"face {face} enters after {simplex}; filtration broken"
                        )

    def stage_complex(self, stage: int) -> SimplicialComplex:
        """Sub-level complex of all simplices present at the given stage."""
        levels = tuple(
            tuple(s for s in level if self.entry[s] <= stage)
            for level in self.complex.simplices_by_dim
        )
        return SimplicialComplex(levels, self.complex.max_dim)

    def to_json_dict(self) -> dict:
        return {
            "max_dim": self.complex.max_dim,
            "num_stages": self.num_stages,
            "simplices": {
                str(p): [[list(s), self.entry[s]] for s in level]
                for p, level in enumerate(self.complex.simplices_by_dim)
            },
        }


def filtered_complex_from_json(data: dict) -> FilteredComplex:
    """Parse {"max_dim":…, "num_stages":…, "simplices":{"0":[[[v],stage],…]}}."""
    try:
        max_dim = int(data["max_dim"])
        num_stages = int(data["num_stages"])
        raw = data["simplices"]
    except (KeyError, TypeError) as exc:
        raise FiltrationError(f"malformed filtered complex: {exc}") from exc
    levels: list[tuple[Simplex, ...]] = []
    entry: dict[Simplex, int] = {}
    for p in range(max_dim + 1):
        level = []
        for item in raw.get(str(p), []):
            verts, stage = item
            simplex = tuple(int(v) for v in verts)
            if len(simplex) != p + 1 or len(set(simplex)) != p + 1:
                raise FiltrationError(f"bad {p}-simplex {simplex}")
            level.append(simplex)
            entry[simplex] = int(stage)
        levels.append(tuple(sorted(level)))
    while len(levels) > 1 and not levels[-1]:
        levels.pop()
    complex_ = SimplicialComplex(tuple(levels), max_dim)
    try:
        complex_.check_closure()
    except ComplexError as exc:
        raise FiltrationError(str(exc)) from exc
    fc = FilteredComplex(complex_, entry, num_stages)
    fc.validate()
    return fc


def filtered_complex(
    quivers: Sequence[Quiver], threshold: int, max_dim: int
) -> FilteredComplex:
    """Filtered directed clique complex of a monotone quiver sequence.

    The entry stage of a simplex is the first stage at which every one
    of its ordered vertex pairs meets the multiplicity threshold; all
    vertices enter at stage 0.
    """
    if not quivers:
        raise FiltrationError("need at least one filtration stage")
    final = directed_clique_complex(quivers[-1], threshold, max_dim)
    n = quivers[0].size
    pair_stage: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
    for stage, quiver in enumerate(quivers):
        for u in range(n):
            row = quiver.mult[u]
            for w in range(n):
                if u != w and pair_stage[u][w] is None and row[w] >= threshold:
                    pair_stage[u][w] = stage
    entry: dict[Simplex, int] = {}
    for p, level in enumerate(final.simplices_by_dim):
        for simplex in level:
            if p == 0:
                entry[simplex] = 0
                continue
            stage = 0
            for i in range(len(simplex)):
                for j in range(i + 1, len(simplex)):
                    s = pair_stage[simplex[i]][simplex[j]]
                    assert s is not None
                    stage = max(stage, s)
            entry[simplex] = stage
    fc = FilteredComplex(final, entry, len(quivers))
    fc.validate()
    return fc


@dataclass(frozen=True)
class PersistencePair:
    """Barcode plus stillborn matrix for one filtered complex.

    ``barcode`` maps (dim, birth, death) to multiplicity; ``stillborn``
    has one row per reported dimension 0..max_dim-1 and one column per
    stage.  Bars are reported for dimensions 0..max_dim-1 only: at the
    construction cap the death data for dimension max_dim is incomplete.
    """

    barcode: Counter
    stillborn: tuple[tuple[int, ...], ...]
    num_stages: int
    threshold: Optional[int] = None

    def bars(self, dim: Optional[int] = None) -> list[tuple[Interval, int]]:
        items = sorted(
            self.barcode.items(),
            key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] is None, kv[0][2] or 0),
        )
        if dim is None:
            return items
        return [(bar, mult) for bar, mult in items if bar[0] == dim]

    def to_json_dict(self) -> dict:
        return {
            "bars": [
                {"dim": d, "birth": b, "death": death, "mult": mult}
                for (d, b, death), mult in self.bars()
            ],
            "stillborn": [list(row) for row in self.stillborn],
            "stages": self.num_stages - 1,
            "N": self.threshold,
        }


def persistence_pair(
    fc: FilteredComplex,
    threshold: Optional[int] = None,
    tie_break=None,
) -> PersistencePair:
    """Reduce the filtered boundary matrix over GF(2).

    Global simplex order is (entry stage, dimension, lexicographic
    tuple); dimension-major within a stage keeps faces ahead of cofaces.
    Zero reduced column: positive simplex, a class is born.  Nonzero
    column with low row sigma: the pair kills sigma's class, as a barcode
    interval when the stages differ and as a stillborn count when equal.

    ``tie_break`` optionally replaces the lexicographic order among
    same-stage same-dimension simplices; the output must not depend on it.
    """
    key = tie_break if tie_break is not None else (lambda simplex: simplex)
    cells: list[tuple[int, int, Simplex]] = []
    for p, level in enumerate(fc.complex.simplices_by_dim):
        for simplex in level:
            cells.append((fc.entry[simplex], p, simplex))
    cells.sort(key=lambda cell: (cell[0], cell[1], key(cell[2])))
    position = {simplex: i for i, (_, _, simplex) in enumerate(cells)}

    max_dim = fc.complex.max_dim
    barcode: Counter = Counter()
    stillborn = [[0] * fc.num_stages for _ in range(max(max_dim, 1))]
    low_owner: dict[int, int] = {}
    reduced: list[int] = []
    paired = [False] * len(cells)

    for j, (stage, p, simplex) in enumerate(cells):
        col = 0
        for i in range(len(simplex)):
            face = simplex[:i] + simplex[i + 1 :]
            if face:
                col ^= 1 << position[face]
        while col:
            low = col.bit_length() - 1
            owner = low_owner.get(low)
            if owner is None:
                break
            col ^= reduced[owner]
        reduced.append(col)
        if col:
            low = col.bit_length() - 1
            low_owner[low] = j
            paired[j] = True
            paired[low] = True
            birth_stage, birth_dim, _ = cells[low]
            if birth_stage < stage:
                barcode[(birth_dim, birth_stage, stage)] += 1
            else:
                stillborn[birth_dim][stage] += 1

    for j, (stage, p, simplex) in enumerate(cells):
        if not paired[j] and p < max_dim:
            barcode[(p, stage, None)] += 1

    return PersistencePair(
        barcode,
        tuple(tuple(row) for row in stillborn),
        fc.num_stages,
        threshold,
    )


def persistent_rank(pp: PersistencePair, n: int, i: int, j: int) -> int:
    """Rank of the stage-i-to-stage-j persistent homology in dimension n."""
    m = pp.num_stages - 1
    if not 0 <= i <= j <= m:
        raise HomologyError(f"stages must satisfy 0 <= i <= j <= {m}")
    total = 0
    for (dim, birth, death), mult in pp.barcode.items():
        if dim == n and birth <= i and (death is None or death > j):
            total += mult
    return total


def link_persistence(
    diagram: LinkDiagram,
    bq: Biquandle,
    stages: Sequence[Sequence[BqMap]],
    threshold: int,
    max_dim: int,
    require_empty_start: bool = True,
) -> PersistencePair:
    """Full pipeline: colorings, quiver filtration, clique filtration, reduction."""
    if require_empty_start and stages and len(stages[0]) != 0:
        raise FiltrationError("persistence requires the first stage to be empty")
    quivers = quiver_filtration(diagram, bq, stages)
    fc = filtered_complex(quivers, threshold, max_dim)
    return persistence_pair(fc, threshold)


def render_barcode_text(pp: PersistencePair) -> str:
    """Fixed-width diagram: one bar per distinct interval, multiplicity at the end."""
    m = pp.num_stages - 1
    width = 6
    lines = []
    dims = sorted({bar[0] for bar in pp.barcode})
    for dim in dims:
        lines.append(f"H_{dim}")
        for (d, birth, death), mult in pp.bars(dim):
            end = m + 1 if death is None else death
            row = [" "] * (width * (m + 1) + 1)
            start_col = width * birth
            end_col = width * end
            for c in range(start_col, min(end_col, len(row) - 1) + 1):
                row[c] = "="
            row[start_col] = "|"
            if death is not None:
                row[end_col] = "|"
            arrow = ">" if death is None else ""
            label = "inf" if death is None else str(death)
            lines.append(
                "".join(row) + f"{arrow} [{birth},{label}) x{mult}"
            )
    lines.append("")
    axis = "".join(str(s).ljust(width) for s in range(m + 1))
    lines.append(axis)
    lines.append("")
    lines.append("stillborn matrix (rows = dimensions, columns = stages):")
    for row in pp.stillborn:
        lines.append("  [" + ", ".join(str(v) for v in row) + "]")
    return "\n".join(lines) + "\n"


def render_barcode_svg(pp: PersistencePair) -> str:
    """Static SVG with one horizontal bar per distinct interval."""
    m = pp.num_stages - 1
    bars = pp.bars()
    scale = 80
    left, top, row_h = 60, 30, 22
    width = left + scale * (m + 1) + 80
    height = top + row_h * (len(bars) + 2) + 40
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        '<style>text{font-family:monospace;font-size:12px}</style>',
    ]
    y = top
    current_dim: Optional[int] = None
    for (dim, birth, death), mult in bars:
        if dim != current_dim:
            current_dim = dim
            parts.append(f'<text x="4" y="{y + 14}">H_{dim}</text>')
        x0 = left + scale * birth
        x1 = left + scale * ((m + 1) if death is None else death)
        parts.append(
            f'<line x1="{x0}" y1="{y + 10}" x2="{x1}" y2="{y + 10}" '
            'stroke="steelblue" stroke-width="4"/>'
        )
        parts.append(f'<text x="{x1 + 6}" y="{y + 14}">{mult}</text>')
        y += row_h
    axis_y = y + 10
    parts.append(
        f'<line x1="{left}" y1="{axis_y}" x2="{left + scale * (m + 1)}" '
        f'y2="{axis_y}" stroke="black"/>'
    )
    for s in range(m + 1):
        x = left + scale * s
        parts.append(f'<line x1="{x}" y1="{axis_y - 4}" x2="{x}" y2="{axis_y + 4}" stroke="black"/>')
        parts.append(f'<text x="{x - 3}" y="{axis_y + 18}">{s}</text>')
    rows = ["[" + ", ".join(str(v) for v in row) + "]" for row in pp.stillborn]
    parts.append(
        f'<text x="{left}" y="{axis_y + 38}">stillborn: [' + ", ".join(rows) + "]</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
