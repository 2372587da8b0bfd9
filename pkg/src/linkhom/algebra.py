"""Finite biquandles: parsing, axiom validation, and endomorphism enumeration.

A biquandle is a finite set with two binary operations (here called
``under`` and ``over``) whose axioms mirror the Reidemeister moves.
Elements are 0-indexed internally; text and JSON formats are 1-indexed,
so the shift happens only at the parse/serialize boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Optional, Sequence

Table = tuple[tuple[int, ...], ...]
BqMap = tuple[int, ...]


class AlgebraError(ValueError):
    """Raised for malformed operation matrices or invalid constructions."""


@dataclass(frozen=True)
class Biquandle:
    """Finite biquandle given by its two n-by-n operation tables.

    ``under[x][y]`` is x acted on from below by y, ``over[x][y]`` is x
    acted on from above by y.  Entries are 0-indexed elements.
    """

    under: Table
    over: Table

    @property
    def n(self) -> int:
        return len(self.under)

    def elements(self) -> range:
        return range(self.n)

    def under_op(self, x: int, y: int) -> int:
        return self.under[x][y]

    def over_op(self, x: int, y: int) -> int:
        return self.over[x][y]

    def over_inverse(self) -> Table:
        """Inverse of each column map of ``over``: x = inv[z][y] iff over[x][y] = z."""
        inv = [[-1] * self.n for _ in range(self.n)]
        for y in range(self.n):
            for x in range(self.n):
                inv[self.over[x][y]][y] = x
        return tuple(tuple(row) for row in inv)

    def under_inverse(self) -> Table:
        """Inverse of each column map of ``under``."""
        inv = [[-1] * self.n for _ in range(self.n)]
        for y in range(self.n):
            for x in range(self.n):
                inv[self.under[x][y]][y] = x
        return tuple(tuple(row) for row in inv)

    def operation_matrix(self) -> list[list[int]]:
        """The n x 2n augmented matrix (under block, then over block), 1-indexed."""
        return [
            [self.under[x][y] + 1 for y in range(self.n)]
            + [self.over[x][y] + 1 for y in range(self.n)]
            for x in range(self.n)
        ]

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines += [" ".join(str(v) for v in row) for row in self.operation_matrix()]
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "under": [[v + 1 for v in row] for row in self.under],
            "over": [[v + 1 for v in row] for row in self.over],
        }


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an axiom check: ok, or the first violated axiom with witness."""

    ok: bool
    axiom: Optional[str] = None
    witness: Optional[tuple[int, ...]] = None

    def describe(self) -> str:
        if self.ok:
            return "valid biquandle"
        witness = ", ".join(str(v + 1) for v in self.witness or ())
        return f"axiom {self.axiom} fails at ({witness})"


def _rows_from_text(text: str) -> list[list[int]]:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in line.replace(",", " ").split()])
        except ValueError as exc:
            raise AlgebraError(f"non-integer entry in row {len(rows) + 1}") from exc
    return rows


def parse_biquandle(text: str) -> Biquandle:
    """Parse the 1-indexed n x 2n operation-matrix text format.

    Accepts an optional leading line holding just ``n``.  Axioms are not
    checked here; use :func:`validate_biquandle`.
    """
    rows = _rows_from_text(text)
    if rows and len(rows[0]) == 1:
        declared = rows[0][0]
        rows = rows[1:]
        if len(rows) != declared:
            raise AlgebraError(f"declared n={declared} but found {len(rows)} rows")
    if not rows:
        raise AlgebraError("empty operation matrix")
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != 2 * n:
            raise AlgebraError(f"row {i + 1} has {len(row)} entries, expected {2 * n}")
        for v in row:
            if not 1 <= v <= n:
                raise AlgebraError(f"entry {v} in row {i + 1} out of range 1..{n}")
    under = tuple(tuple(v - 1 for v in row[:n]) for row in rows)
    over = tuple(tuple(v - 1 for v in row[n:]) for row in rows)
    return Biquandle(under, over)


def biquandle_from_json(data: dict) -> Biquandle:
    """Build a Biquandle from the JSON form {"n":…, "under":[[…]], "over":[[…]]}."""
    try:
        n = int(data["n"])
        under_rows = data["under"]
        over_rows = data["over"]
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"missing biquandle field: {exc}") from exc
    rows = [list(u) + list(o) for u, o in zip(under_rows, over_rows)]
    if len(under_rows) != n or len(over_rows) != n:
        raise AlgebraError("table row count does not match n")
    text = "\n".join(" ".join(str(v) for v in row) for row in rows)
    return parse_biquandle(text)


def load_biquandle(path_or_text: str) -> Biquandle:
    """Parse biquandle text that may be either the matrix format or JSON."""
    stripped = path_or_text.lstrip()
    if stripped.startswith("{"):
        return biquandle_from_json(json.loads(path_or_text))
    return parse_biquandle(path_or_text)


def validate_biquandle(bq: Biquandle) -> ValidationReport:
    """Check the three axiom groups, reporting the first failure with a witness.

    Axiom 1: under[x][x] = over[x][x].
    Axiom 2: every column of both tables is a bijection, and the pair map
    S(x, y) = (over[y][x], under[x][y]) is a bijection on pairs.
    Axiom 3: the three exchange laws hold for every triple.
    """
    n = bq.n
    under, over = bq.under, bq.over

    for x in range(n):
        if under[x][x] != over[x][x]:
            return ValidationReport(False, "1", (x,))

    for y in range(n):
        if len({over[x][y] for x in range(n)}) != n:
            return ValidationReport(False, "2-alpha", (y,))
        if len({under[x][y] for x in range(n)}) != n:
            return ValidationReport(False, "2-beta", (y,))
    seen = set()
    for x in range(n):
        for y in range(n):
            pair = (over[y][x], under[x][y])
            if pair in seen:
                return ValidationReport(False, "2-S", (x, y))
            seen.add(pair)

    for x in range(n):
        for y in range(n):
            for z in range(n):
                if (
                    under[under[x][y]][under[z][y]] != under[under[x][z]][over[y][z]]
                    or over[under[x][y]][under[z][y]] != under[over[x][z]][over[y][z]]
                    or over[over[x][y]][over[z][y]] != over[over[x][z]][under[y][z]]
                ):
                    return ValidationReport(False, "3", (x, y, z))

    return ValidationReport(True)


def alexander_biquandle(m: int, t: int, r: int) -> Biquandle:
    """Biquandle on Z_m with under = t*x + (r-t)*y and over = r*x (mod m).

    Requires t and r to be units mod m.  Element k (0-indexed) stands for
    the residue k+1, so the last element is the zero class; this matches
    the usual 1-indexed operation-matrix convention for Z_m tables.
    """
    if m < 1:
        raise AlgebraError(f"modulus must be positive, got {m}")
    if gcd(t % m if m > 1 else 1, m) != 1:
        raise AlgebraError(f"t={t} is not a unit mod {m}")
    if gcd(r % m if m > 1 else 1, m) != 1:
        raise AlgebraError(f"r={r} is not a unit mod {m}")
    under = tuple(
        tuple((t * (x + 1) + (r - t) * (y + 1) - 1) % m for y in range(m))
        for x in range(m)
    )
    over = tuple(
        tuple((r * (x + 1) - 1) % m for _y in range(m)) for x in range(m)
    )
    return Biquandle(under, over)


def is_homomorphism(f: Sequence[int], source: Biquandle, target: Biquandle) -> bool:
    """True iff f respects both operations: f(x op y) = f(x) op f(y)."""
    witness = homomorphism_failure(f, source, target)
    return witness is None


def homomorphism_failure(
    f: Sequence[int], source: Biquandle, target: Biquandle
) -> Optional[tuple[int, int]]:
    """First pair (x, y) where f breaks either operation, or None."""
    if len(f) != source.n:
        raise AlgebraError(f"map has length {len(f)}, expected {source.n}")
    for v in f:
        if not 0 <= v < target.n:
            raise AlgebraError(f"map value {v} out of range for target of size {target.n}")
    for x in range(source.n):
        for y in range(source.n):
            if f[source.under[x][y]] != target.under[f[x]][f[y]]:
                return (x, y)
            if f[source.over[x][y]] != target.over[f[x]][f[y]]:
                return (x, y)
    return None


def identity_map(bq: Biquandle) -> BqMap:
    return tuple(range(bq.n))


def compose(outer: Sequence[int], inner: Sequence[int]) -> BqMap:
    """Pointwise composition outer after inner."""
    return tuple(outer[v] for v in inner)


def endomorphisms(bq: Biquandle) -> list[BqMap]:
    """All biquandle endomorphisms, in lexicographic order of image tuples.

    Depth-first assignment of f(0), f(1), ... with incremental pruning:
    a partial image survives only while every operation equation among
    already-assigned elements holds.
    """
    n = bq.n
    under, over = bq.under, bq.over
    out: list[BqMap] = []
    image = [0] * n

    def consistent(k: int) -> bool:
        # check all pairs involving position k whose operands and results
        # are already assigned
        for x in range(k + 1):
            for a, b in ((x, k), (k, x)):
                u = under[a][b]
                if u <= k and image[u] != under[image[a]][image[b]]:
                    return False
                o = over[a][b]
                if o <= k and image[o] != over[image[a]][image[b]]:
                    return False
        # equations whose result is k but whose operands were assigned earlier
        for x in range(k):
            for y in range(k):
                if under[x][y] == k and image[k] != under[image[x]][image[y]]:
                    return False
                if over[x][y] == k and image[k] != over[image[x]][image[y]]:
                    return False
        return True

    def extend(k: int) -> Iterator[BqMap]:
        if k == n:
            yield tuple(image)
            return
        for v in range(n):
            image[k] = v
            if consistent(k):
                yield from extend(k + 1)

    out.extend(extend(0))
    return out


def endomorphisms_naive(bq: Biquandle) -> list[BqMap]:
    """Reference scan over all n^n maps; for cross-checking small cases."""
    from itertools import product

    return [
        f
        for f in product(range(bq.n), repeat=bq.n)
        if homomorphism_failure(f, bq, bq) is None
    ]


def map_from_tuple_1indexed(values: Sequence[int]) -> BqMap:
    return tuple(v - 1 for v in values)


def map_to_tuple_1indexed(f: Sequence[int]) -> list[int]:
    return [v + 1 for v in f]
