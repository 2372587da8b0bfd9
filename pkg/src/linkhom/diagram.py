"""Oriented link diagrams at the semi-arc level and biquandle colorings.

A diagram is stored as its classical-crossing incidence only: each
crossing records which semi-arc occupies its over-in, over-out,
under-in and under-out slot.  Virtual crossings impose identity
relations on labels, so semi-arcs simply pass through them and nothing
about them is stored.  Closed components with no classical crossings
are counted in ``free_components``; each contributes one unconstrained
semi-arc.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from .algebra import Biquandle

Coloring = tuple[int, ...]


class DiagramError(ValueError):
    """Raised for malformed or structurally invalid diagram data."""


@dataclass(frozen=True)
class Crossing:
    """One classical crossing; fields are semi-arc indices.

    At every classical crossing the labels obey
    ``under_out = under_in ▷ over_in`` (under table) and
    ``over_out = over_in ▷ under_in`` (over table); which strand is over
    is all that distinguishes the two crossing types.
    """

    over_in: int
    over_out: int
    under_in: int
    under_out: int

    def slots(self) -> tuple[int, int, int, int]:
        return (self.over_in, self.over_out, self.under_in, self.under_out)


@dataclass(frozen=True)
class LinkDiagram:
    semi_arc_count: int
    crossings: tuple[Crossing, ...]
    free_components: int = 0
    name: str = ""
    # optional semi-arc indices singled out for display/regression purposes
    marks: Optional[tuple[int, ...]] = None

    def validate(self) -> None:
        """Check index ranges and slot usage.

        Every constrained semi-arc meets classical crossings at exactly
        two slots.  A semi-arc has one endpoint on an under strand and
        one on an over strand, or both on over strands, depending on the
        crossing types it joins; but no arc can fill two under_in slots
        or two under_out slots, and each crossing consumes four slot
        entries in total.
        """
        n = self.semi_arc_count
        if n < 0 or self.free_components < 0:
            raise DiagramError("negative counts")
        if not self.crossings and self.free_components < 1 and n > 0:
            raise DiagramError("crossingless diagram must consist of free components")
        if 2 * len(self.crossings) + self.free_components != n:
            raise DiagramError(
                f"{len(self.crossings)} crossings and {self.free_components} free "
                f"components require {2 * len(self.crossings) + self.free_components} "
                f"semi-arcs, got {n}"
            )
        total = [0] * n
        under_in_seen = [0] * n
        under_out_seen = [0] * n
        for c in self.crossings:
            for s in c.slots():
                if not 0 <= s < n:
                    raise DiagramError(f"semi-arc index {s} out of range 0..{n - 1}")
                total[s] += 1
            under_in_seen[c.under_in] += 1
            under_out_seen[c.under_out] += 1
        free = self._free_arcs()
        for s in range(n):
            expected = 0 if s in free else 2
            if total[s] != expected:
                raise DiagramError(
                    f"semi-arc {s} fills {total[s]} crossing slots, expected {expected}"
                )
            if under_in_seen[s] > 1:
                raise DiagramError(f"semi-arc {s} is under_in at two crossings")
            if under_out_seen[s] > 1:
                raise DiagramError(f"semi-arc {s} is under_out at two crossings")

    def _free_arcs(self) -> set[int]:
        used = set()
        for c in self.crossings:
            used.update(c.slots())
        return set(range(self.semi_arc_count)) - used

    def to_json_dict(self) -> dict:
        data = {
            "name": self.name,
            "semi_arcs": self.semi_arc_count,
            "free_components": self.free_components,
            "crossings": [
                {"oi": c.over_in, "oo": c.over_out, "ui": c.under_in, "uo": c.under_out}
                for c in self.crossings
            ],
        }
        if self.marks is not None:
            data["marks"] = list(self.marks)
        return data


def diagram_from_json(data: dict) -> LinkDiagram:
    """Build and validate a LinkDiagram from its JSON dict form."""
    try:
        crossings = tuple(
            Crossing(int(c["oi"]), int(c["oo"]), int(c["ui"]), int(c["uo"]))
            for c in data.get("crossings", [])
        )
        diagram = LinkDiagram(
            semi_arc_count=int(data["semi_arcs"]),
            crossings=crossings,
            free_components=int(data.get("free_components", 0)),
            name=str(data.get("name", "")),
            marks=tuple(data["marks"]) if "marks" in data else None,
        )
    except (KeyError, TypeError) as exc:
        raise DiagramError(f"malformed diagram record: {exc}") from exc
    diagram.validate()
    return diagram


def parse_diagram(text: str) -> LinkDiagram:
    """Parse the JSON crossing-code format (see ``diagram_from_json``)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"diagram is not valid JSON: {exc}") from exc
    return diagram_from_json(data)


def _assignment_order(diagram: LinkDiagram) -> list[int]:
    """Breadth-first semi-arc order from arc 0 through crossing adjacency.

    Assigning along this order maximizes forced propagation: arcs that
    share a crossing are visited close together.
    """
    n = diagram.semi_arc_count
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for c in diagram.crossings:
        slots = c.slots()
        for a in slots:
            for b in slots:
                if a != b:
                    adjacency[a].add(b)
    order: list[int] = []
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        while queue:
            arc = queue.pop(0)
            order.append(arc)
            for nxt in sorted(adjacency[arc]):
                if not seen[nxt]:
                    seen[nxt] = True
                    queue.append(nxt)
    return order


def colorings(diagram: LinkDiagram, bq: Biquandle) -> list[Coloring]:
    """All colorings of the diagram by bq, in lexicographic label order.

    Backtracking over semi-arcs with forward propagation: whenever both
    inputs of a crossing are known the outputs are forced through the
    tables, and a known output plus the co-input forces the remaining
    input through the inverse column maps (which exist by the axioms).
    """
    diagram.validate()
    n = diagram.semi_arc_count
    if n == 0:
        return [()]
    under, over = bq.under, bq.over
    alpha_inv = bq.over_inverse()  # x = alpha_inv[z][y] iff over[x][y] = z
    beta_inv = bq.under_inverse()

    crossings = diagram.crossings
    arc_crossings: list[list[int]] = [[] for _ in range(n)]
    for idx, c in enumerate(crossings):
        for s in set(c.slots()):
            arc_crossings[s].append(idx)

    order = _assignment_order(diagram)
    labels: list[Optional[int]] = [None] * n
    results: list[Coloring] = []

    def propagate(cidx: int, trail: list[int]) -> bool:
        """Force labels at one crossing; False on contradiction."""
        c = crossings[cidx]
        oi, oo, ui, uo = (labels[c.over_in], labels[c.over_out],
                          labels[c.under_in], labels[c.under_out])
        changed = True
        while changed:
            changed = False
            if oi is not None and ui is not None:
                forced_uo = under[ui][oi]
                forced_oo = over[oi][ui]
                if uo is None:
                    uo = forced_uo
                    if not _set(c.under_out, uo, trail):
                        return False
                    changed = True
                elif uo != forced_uo:
                    return False
                if oo is None:
                    oo = forced_oo
                    if not _set(c.over_out, oo, trail):
                        return False
                    changed = True
                elif oo != forced_oo:
                    return False
            if uo is not None and oi is not None and ui is None:
                ui = beta_inv[uo][oi]
                if not _set(c.under_in, ui, trail):
                    return False
                changed = True
            if oo is not None and ui is not None and oi is None:
                oi = alpha_inv[oo][ui]
                if not _set(c.over_in, oi, trail):
                    return False
                changed = True
        return True

    def _set(arc: int, value: int, trail: list[int]) -> bool:
        if labels[arc] is None:
            labels[arc] = value
            trail.append(arc)
            return True
        return labels[arc] == value

    def propagate_from(arcs: Iterable[int], trail: list[int]) -> bool:
        pending = list(arcs)
        while pending:
            arc = pending.pop()
            before = len(trail)
            for cidx in arc_crossings[arc]:
                if not propagate(cidx, trail):
                    return False
            pending.extend(trail[before:])
        return True

    def solve(pos: int) -> None:
        while pos < n and labels[order[pos]] is not None:
            pos += 1
        if pos == n:
            results.append(tuple(labels))  # type: ignore[arg-type]
            return
        arc = order[pos]
        for value in range(bq.n):
            trail: list[int] = []
            labels[arc] = value
            trail.append(arc)
            if propagate_from([arc], trail):
                solve(pos + 1)
            for touched in trail:
                labels[touched] = None

    solve(0)
    for coloring in results:
        _verify(diagram, bq, coloring)
    return sorted(results)


def _verify(diagram: LinkDiagram, bq: Biquandle, coloring: Sequence[int]) -> None:
    """Independent re-check of both crossing equations."""
    for c in diagram.crossings:
        if coloring[c.under_out] != bq.under[coloring[c.under_in]][coloring[c.over_in]]:
            raise AssertionError(f"under equation violated at crossing {c}")
        if coloring[c.over_out] != bq.over[coloring[c.over_in]][coloring[c.under_in]]:
            raise AssertionError(f"over equation violated at crossing {c}")


def colorings_naive(diagram: LinkDiagram, bq: Biquandle) -> list[Coloring]:
    """Reference enumeration over all |X|^arcs label vectors."""
    diagram.validate()
    out = []
    for labels in product(range(bq.n), repeat=diagram.semi_arc_count):
        ok = True
        for c in diagram.crossings:
            if labels[c.under_out] != bq.under[labels[c.under_in]][labels[c.over_in]]:
                ok = False
                break
            if labels[c.over_out] != bq.over[labels[c.over_in]][labels[c.under_in]]:
                ok = False
                break
        if ok:
            out.append(labels)
    return out


def counting_invariant(diagram: LinkDiagram, bq: Biquandle) -> int:
    """Number of colorings of the diagram by bq."""
    return len(colorings(diagram, bq))
