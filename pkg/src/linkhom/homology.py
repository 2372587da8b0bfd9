"""Simplicial homology of ordered complexes over GF(2) and over the integers.

GF(2) ranks use bit-packed Gaussian elimination (columns as Python int
bitmasks).  Integer homology reports free rank plus torsion via Smith
normal form.  The top constructed dimension of a capped complex only
admits a lower bound on rank, so requesting it raises unless the caller
opts into the truncation flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cliques import BoundaryMatrix, SimplicialComplex, boundary_matrix


class HomologyError(ValueError):
    """Raised for dimension requests beyond what the complex supports."""


def gf2_rank(columns: Sequence[int]) -> int:
    """Rank of a GF(2) matrix given as column bitmasks (bit i = row i)."""
    pivots: list[int] = []
    rank = 0
    for col in columns:
        cur = col
        for pivot in pivots:
            low = pivot.bit_length()
            if cur >> (low - 1) & 1:
                cur ^= pivot
        if cur:
            pivots.append(cur)
            pivots.sort(key=int.bit_length, reverse=True)
            rank += 1
    return rank


def betti_gf2(complex_: SimplicialComplex, max_hom_dim: int) -> list[int]:
    """GF(2) Betti numbers in dimensions 0..max_hom_dim.

    Needs the complex built at least one dimension above max_hom_dim so
    the image of the next boundary map is available uncapped.
    """
    if max_hom_dim < 0:
        raise HomologyError("homology dimension must be >= 0")
    if max_hom_dim + 1 > complex_.max_dim:
        raise HomologyError(
            f"betti up to dimension {max_hom_dim} needs max_dim >= {max_hom_dim + 1}, "
            f"complex was capped at {complex_.max_dim}"
        )
    ranks = [0] * (max_hom_dim + 2)
    for p in range(1, max_hom_dim + 2):
        if complex_.simplices(p):
            ranks[p] = gf2_rank(boundary_matrix(complex_, p).gf2_columns)
    betti = []
    for p in range(max_hom_dim + 1):
        n_cells = len(complex_.simplices(p))
        kernel = n_cells - ranks[p]  # rank of the zero map for p = 0
        betti.append(kernel - ranks[p + 1])
    return betti


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d_1 | d_2 | ... of an integer matrix, with its rank."""

    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)

    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """Diagonalize over Z by row/column operations, pivoting on small entries.

    Python integers are unbounded, so intermediate growth is safe; the
    divisibility chain d_1 | d_2 | ... is enforced on the diagonal.
    """
    mat = [list(row) for row in matrix]
    n_rows = len(mat)
    n_cols = len(mat[0]) if mat else 0
    factors: list[int] = []
    top = 0
    while top < n_rows and top < n_cols:
        pivot = None
        best = None
        for i in range(top, n_rows):
            for j in range(top, n_cols):
                v = abs(mat[i][j])
                if v and (best is None or v < best):
                    best = v
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        mat[top], mat[pi] = mat[pi], mat[top]
        for row in mat:
            row[top], row[pj] = row[pj], row[top]
        while True:
            reduced = False
            for i in range(top + 1, n_rows):
                if mat[i][top]:
                    q = mat[i][top] // mat[top][top]
                    for j in range(top, n_cols):
                        mat[i][j] -= q * mat[top][j]
                    if mat[i][top]:
                        mat[top], mat[i] = mat[i], mat[top]
                    reduced = True
            for j in range(top + 1, n_cols):
                if mat[top][j]:
                    q = mat[top][j] // mat[top][top]
                    for i in range(top, n_rows):
                        mat[i][j] -= q * mat[i][top]
                    if mat[top][j]:
                        for i in range(n_rows):
                            mat[i][top], mat[i][j] = mat[i][j], mat[i][top]
                    reduced = True
            if not reduced:
                break
        # pivot must divide every remaining entry for the divisibility chain
        d = abs(mat[top][top])
        offender = None
        for i in range(top + 1, n_rows):
            for j in range(top + 1, n_cols):
                if mat[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(top, n_cols):
                mat[top][j] += mat[offender][j]
            continue
        factors.append(d)
        top += 1
    return SmithForm(tuple(factors))


@dataclass(frozen=True)
class HomologyProfile:
    """Integer homology per dimension: free ranks and torsion coefficient lists.

    ``truncated_dim`` marks a top dimension whose reported rank omits the
    unavailable image of the next boundary map (construction cap).
    """

    free: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    truncated_dim: Optional[int] = None

    def group_strings(self) -> list[str]:
        out = []
        for rank, tors in zip(self.free, self.torsion):
            parts = ["Z"] * rank + [f"Z/{d}" for d in tors]
            out.append(" + ".join(parts) if parts else "0")
        return out


def integer_homology(
    complex_: SimplicialComplex, max_hom_dim: int, allow_truncated: bool = False
) -> HomologyProfile:
    """Free rank and torsion of H_0..H_max_hom_dim over the integers."""
    if max_hom_dim < 0:
        raise HomologyError("homology dimension must be >= 0")
    needs = max_hom_dim + 1
    truncated: Optional[int] = None
    if needs > complex_.max_dim:
        if not allow_truncated or needs > complex_.max_dim + 1:
            raise HomologyError(
                f"integer homology up to dimension {max_hom_dim} needs max_dim >= "
                f"{needs}, complex was capped at {complex_.max_dim}"
            )
        truncated = max_hom_dim
    smiths: dict[int, SmithForm] = {}
    for p in range(1, max_hom_dim + 2):
        if p <= complex_.max_dim and complex_.simplices(p):
            smiths[p] = smith_normal_form(boundary_matrix(complex_, p).dense())
        else:
            smiths[p] = SmithForm(())
    free = []
    torsion = []
    for p in range(max_hom_dim + 1):
        n_cells = len(complex_.simplices(p))
        kernel = n_cells - smiths[p].rank if p else n_cells
        free.append(kernel - smiths[p + 1].rank)
        torsion.append(smiths[p + 1].torsion())
    return HomologyProfile(tuple(free), tuple(torsion), truncated)


def boundary_composition_is_zero(complex_: SimplicialComplex, p: int) -> bool:
    """Check d_p . d_{p+1} = 0 over Z (hence over GF(2))."""
    if p < 1 or p + 1 > complex_.max_dim:
        return True
    lower = boundary_matrix(complex_, p)
    upper = boundary_matrix(complex_, p + 1)
    for col in upper.columns:
        acc: dict[int, int] = {}
        for face_row, sign in col:
            for row, sign2 in lower.columns[face_row]:
                acc[row] = acc.get(row, 0) + sign * sign2
        if any(v != 0 for v in acc.values()):
            return False
    return True
