"""Deformed toric-code geometry: plaquettes, merged defects, twist sites.

Qubits live on the vertices of a ``rows x cols`` grid, addressed by 1-based
``(row, col)`` throughout the public interface (the zig-zag index
``(row-1)*cols + col`` is provided for cross-referencing). The plaquette
anchored at ``k = (a, b)`` acts as X on ``k`` and ``k+i+j`` and Z on ``k+i``
and ``k+j`` with ``i = (1,0)`` and ``j = (0,1)``.

A defect merges a connected set of plaquettes; its stabilizer is the exact
product of the enclosed squares, which is the same thing as the boundary
form with Pauli-Y attached to the sites the merged squares share. Sites
belonging to exactly three plaquettes of the built lattice are twists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping

from . import gf2
from .errors import LatticeError
from .pauli import PauliOperator, commutes, multiply_all

Coord = tuple[int, int]


def zigzag_index(coord: Coord, cols: int) -> int:
    """1-based zig-zag index: (a-1)*cols + b."""
    a, b = coord
    if a < 1 or b < 1 or b > cols:
        raise IndexError(f"coordinate {coord} out of range for cols={cols}")
    return (a - 1) * cols + b


def zigzag_coord(index: int, cols: int) -> Coord:
    if index < 1:
        raise IndexError(f"zig-zag index must be >= 1, got {index}")
    return ((index - 1) // cols + 1, (index - 1) % cols + 1)


def square_corners(anchor: Coord) -> dict[Coord, str]:
    """Site letters of the square plaquette anchored at ``anchor``."""
    a, b = anchor
    return {(a, b): "X", (a + 1, b): "Z", (a, b + 1): "Z", (a + 1, b + 1): "X"}


def square_color(anchor: Coord) -> str:
    return "dark" if (anchor[0] + anchor[1]) % 2 == 0 else "light"


@dataclass(frozen=True)
class Defect:
    label: str
    members: tuple[Coord, ...]


@dataclass(frozen=True)
class BoundaryTerm:
    label: str
    letters: tuple[tuple[Coord, str], ...]


@dataclass(frozen=True)
class LatticeSpec:
    name: str
    rows: int
    cols: int
    present: frozenset[Coord]
    defects: tuple[Defect, ...] = ()
    dropped_plaquettes: frozenset[Coord] = frozenset()
    boundary: tuple[BoundaryTerm, ...] = ()

    def without_defects(self, labels: Iterable[str] | None = None,
                        name: str | None = None) -> "LatticeSpec":
        drop = set(labels) if labels is not None else {d.label for d in self.defects}
        return LatticeSpec(
            name=name or f"{self.name}-plain",
            rows=self.rows, cols=self.cols, present=self.present,
            defects=tuple(d for d in self.defects if d.label not in drop),
            dropped_plaquettes=self.dropped_plaquettes,
            boundary=self.boundary,
        )

    def with_defects(self, extra: Iterable[Defect], name: str | None = None) -> "LatticeSpec":
        return LatticeSpec(
            name=name or f"{self.name}+",
            rows=self.rows, cols=self.cols, present=self.present,
            defects=self.defects + tuple(extra),
            dropped_plaquettes=self.dropped_plaquettes,
            boundary=self.boundary,
        )


@dataclass(frozen=True)
class Plaquette:
    id: str
    kind: str                      # "square" | "defect" | "boundary"
    color: str | None              # checkerboard parity for squares
    operator: PauliOperator
    members: tuple[Coord, ...]


@dataclass(frozen=True)
class Twist:
    site: Coord
    defect: str
    species: str = "sigma+"


class BuiltLattice:
    """Validated stabilizer set plus twist list for one LatticeSpec."""

    def __init__(self, spec: LatticeSpec, plaquettes: tuple[Plaquette, ...],
                 twists: tuple[Twist, ...], site_order: tuple[Coord, ...]):
        self.spec = spec
        self.plaquettes = plaquettes
        self.twists = twists
        self.site_order = site_order
        self.site_index = {c: i for i, c in enumerate(site_order)}
        self.n = len(site_order)
        self.by_id = {p.id: p for p in plaquettes}

    def operator(self, plaquette_id: str) -> PauliOperator:
        return self.by_id[plaquette_id].operator

    def stabilizers(self) -> list[PauliOperator]:
        return [p.operator for p in self.plaquettes]

    def squares(self) -> list[Plaquette]:
        return [p for p in self.plaquettes if p.kind == "square"]

    def square_id(self, anchor: Coord) -> str:
        return f"A({anchor[0]},{anchor[1]})"

    def pauli_from_letters(self, letters: Mapping[Coord, str], sign: int = 1) -> PauliOperator:
        return PauliOperator.from_letters(
            self.n, {self.site_index[c]: l for c, l in letters.items()}, sign=sign
        )

    def letters_of(self, op: PauliOperator) -> dict[Coord, str]:
        return {self.site_order[j]: op.letter_at(j) for j in op.support}

    def single(self, site: Coord, letter: str) -> PauliOperator:
        return PauliOperator.single(self.n, self.site_index[site], letter)

    def degeneracy(self) -> int:
        masks = [op.x | (op.z << self.n) for op in self.stabilizers()]
        return 2 ** (self.n - gf2.rank(masks))

    def twist_at(self, site: Coord) -> Twist:
        for t in self.twists:
            if t.site == site:
                return t
        raise LatticeError(f"site {site} is not a twist of {self.spec.name}")


def _square_support_ok(anchor: Coord, spec: LatticeSpec) -> bool:
    return all(c in spec.present for c in square_corners(anchor))


def _adjacent(p: Coord, q: Coord) -> bool:
    return abs(p[0] - q[0]) + abs(p[1] - q[1]) == 1


def build(spec: LatticeSpec) -> BuiltLattice:
    """Emit the stabilizer set and twist list; validates everything."""
    site_order = tuple(sorted(spec.present))
    site_index = {c: i for i, c in enumerate(site_order)}
    n = len(site_order)

    def op_from_letters(letters: Mapping[Coord, str]) -> PauliOperator:
        for c in letters:
            if c not in spec.present:
                raise LatticeError(f"{spec.name}: operator touches absent site {c}")
        return PauliOperator.from_letters(n, {site_index[c]: l for c, l in letters.items()})

    merged: dict[Coord, str] = {}
    for d in spec.defects:
        for m in d.members:
            if m in merged:
                raise LatticeError(f"plaquette {m} merged into two defects")
            merged[m] = d.label

    squares: list[Plaquette] = []
    square_anchors: set[Coord] = set()
    for a in range(1, spec.rows):
        for b in range(1, spec.cols):
            anchor = (a, b)
            if anchor in spec.dropped_plaquettes or not _square_support_ok(anchor, spec):
                continue
            square_anchors.add(anchor)
            if anchor in merged:
                continue
            squares.append(Plaquette(
                id=f"A({a},{b})", kind="square", color=square_color(anchor),
                operator=op_from_letters(square_corners(anchor)), members=(anchor,),
            ))

    defect_plaqs: list[Plaquette] = []
    for d in spec.defects:
        for m in d.members:
            if m not in square_anchors:
                raise LatticeError(f"defect {d.label} spans missing plaquette {m}")
        if len(d.members) > 1:
            reach = {d.members[0]}
            frontier = [d.members[0]]
            while frontier:
                cur = frontier.pop()
                for other in d.members:
                    if other not in reach and _adjacent(cur, other):
                        reach.add(other)
                        frontier.append(other)
            if reach != set(d.members):
                raise LatticeError(f"defect {d.label} is not contiguous")
        op = multiply_all(op_from_letters(square_corners(m)) for m in sorted(d.members))
        defect_plaqs.append(Plaquette(
            id=d.label, kind="defect", color=None, operator=op, members=tuple(sorted(d.members)),
        ))

    boundary_plaqs = [
        Plaquette(id=t.label, kind="boundary", color=None,
                  operator=op_from_letters(dict(t.letters)), members=())
        for t in spec.boundary
    ]

    plaquettes = tuple(squares + defect_plaqs + boundary_plaqs)

    ops = [p.operator for p in plaquettes]
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not commutes(ops[i], ops[j]):
                raise LatticeError(
                    f"{spec.name}: stabilizers {plaquettes[i].id} and "
                    f"{plaquettes[j].id} anticommute (malformed defect/boundary)"
                )
    masks = [op.x | (op.z << n) for op in ops]
    if gf2.rank(masks) != len(ops):
        raise LatticeError(f"{spec.name}: emitted stabilizers are GF(2)-dependent")

    twists = _find_twists(spec, square_anchors, merged)
    built = BuiltLattice(spec, plaquettes, twists, site_order)
    return built


def _find_twists(spec: LatticeSpec, square_anchors: set[Coord],
                 merged: dict[Coord, str]) -> tuple[Twist, ...]:
    touching: dict[Coord, list[Coord]] = {}
    for anchor in square_anchors:
        for site in square_corners(anchor):
            touching.setdefault(site, []).append(anchor)
    twists = []
    for site in sorted(touching):
        anchors = touching[site]
        labels = {merged.get(a, f"A{a}") for a in anchors}
        if len(labels) != 3:
            continue
        owners = [
            d.label for d in spec.defects
            if sum(1 for a in anchors if merged.get(a) == d.label) >= 2
        ]
        if not owners:
            # three-plaquette site produced by a dropped boundary plaquette,
            # not by a dislocation: no twist lives here
            continue
        if len(owners) > 1:
            raise LatticeError(f"twist at {site} has no unique owning defect: {owners}")
        twists.append(Twist(site=site, defect=owners[0]))
    per_defect: dict[str, int] = {}
    for t in twists:
        per_defect[t.defect] = per_defect.get(t.defect, 0) + 1
    for label, count in per_defect.items():
        if count % 2:
            raise LatticeError(f"defect {label} hosts an odd twist count ({count})")
    return tuple(twists)


def degeneracy(spec: LatticeSpec) -> int:
    return build(spec).degeneracy()


# -- generic rectangular patch (surface-code style boundary) ----------------

def rectangle_patch(rows: int, cols: int, name: str | None = None) -> LatticeSpec:
    """Full rows x cols patch with alternating boundary half-plaquettes.

    Terms that would make the generator set GF(2)-dependent are pruned
    greedily in a fixed order, so the emitted set is always independent.
    """
    present = frozenset((a, b) for a in range(1, rows + 1) for b in range(1, cols + 1))
    candidates: list[BoundaryTerm] = []
    for b in range(1, cols, 2):
        candidates.append(BoundaryTerm(f"T{b}", (((1, b), "Z"), ((1, b + 1), "X"))))
    for b in range(2, cols, 2):
        candidates.append(BoundaryTerm(f"B{b}", (((rows, b), "X"), ((rows, b + 1), "Z"))))
    for a in range(1, rows, 2):
        candidates.append(BoundaryTerm(f"L{a}", (((a, 1), "Z"), ((a + 1, 1), "X"))))
    for a in range(1, rows, 2):
        candidates.append(BoundaryTerm(f"R{a}", (((a, cols), "X"), ((a + 1, cols), "Z"))))
    candidates.append(BoundaryTerm("C_SW", (((rows, 1), "Z"),)))
    candidates.append(BoundaryTerm("C_SE", (((rows, cols), "X"),)))

    site_index = {c: i for i, c in enumerate(sorted(present))}
    n = rows * cols

    def mask(letters: Iterable[tuple[Coord, str]]) -> int:
        op = PauliOperator.from_letters(n, {site_index[c]: l for c, l in letters})
        return op.x | (op.z << n)

    masks = [mask(tuple(square_corners((a, b)).items()))
             for a in range(1, rows) for b in range(1, cols)]
    kept: list[BoundaryTerm] = []
    current_rank = gf2.rank(masks)
    for term in candidates:
        trial = masks + [mask(term.letters)]
        r = gf2.rank(trial)
        if r > current_rank:
            ok = True
            term_op = PauliOperator.from_letters(
                n, {site_index[c]: l for c, l in term.letters})
            for other in kept:
                other_op = PauliOperator.from_letters(
                    n, {site_index[c]: l for c, l in other.letters})
                if not commutes(term_op, other_op):
                    ok = False
                    break
            if ok:
                kept.append(term)
                masks = trial
                current_rank = r
    return LatticeSpec(
        name=name or f"patch-{rows}x{cols}", rows=rows, cols=cols,
        present=present, boundary=tuple(kept),
    )


# -- config file IO ----------------------------------------------------------

def spec_from_dict(data: dict) -> LatticeSpec:
    rows, cols = data["rows"], data["cols"]
    if data.get("present") in (None, "all"):
        present = {(a, b) for a in range(1, rows + 1) for b in range(1, cols + 1)}
    else:
        present = {tuple(c) for c in data["present"]}
    for c in data.get("absent", []):
        present.discard(tuple(c))
    defects = tuple(
        Defect(d["label"], tuple(sorted(tuple(m) for m in d["members"])))
        for d in data.get("defects", [])
    )
    boundary = tuple(
        BoundaryTerm(t["label"],
                     tuple((tuple(int(v) for v in site.split(",")), letter)
                           for site, letter in t["letters"].items()))
        for t in data.get("boundary", [])
    )
    return LatticeSpec(
        name=data["name"], rows=rows, cols=cols, present=frozenset(present),
        defects=defects,
        dropped_plaquettes=frozenset(tuple(c) for c in data.get("dropped_plaquettes", [])),
        boundary=boundary,
    )


def spec_to_dict(spec: LatticeSpec) -> dict:
    full = {(a, b) for a in range(1, spec.rows + 1) for b in range(1, spec.cols + 1)}
    absent = sorted(full - spec.present)
    return {
        "name": spec.name,
        "rows": spec.rows,
        "cols": spec.cols,
        "present": "all" if not absent else sorted(spec.present),
        "absent": absent,
        "defects": [{"label": d.label, "members": [list(m) for m in d.members]}
                    for d in spec.defects],
        "dropped_plaquettes": [list(c) for c in sorted(spec.dropped_plaquettes)],
        "boundary": [
            {"label": t.label,
             "letters": {f"{c[0]},{c[1]}": l for c, l in t.letters}}
            for t in spec.boundary
        ],
    }


def load_spec(path_or_name: str) -> LatticeSpec:
    """Load a lattice config file, or a built-in spec by name."""
    try:
        ref = resources.files("twistlab.data.lattices") / f"{path_or_name}.json"
        if ref.is_file():
            return spec_from_dict(json.loads(ref.read_text()))
    except (ModuleNotFoundError, TypeError):
        pass
    with open(path_or_name) as fh:
        return spec_from_dict(json.load(fh))


def builtin_names() -> list[str]:
    ref = resources.files("twistlab.data.lattices")
    return sorted(p.name[:-5] for p in ref.iterdir() if p.name.endswith(".json"))
