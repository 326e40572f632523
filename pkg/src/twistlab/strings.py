"""String operators: path-derived Pauli strings, twist charge loops, and
Majorana operators.

A string is an ordered sequence of lettered sites: X where the string runs
oblique-right ("/"), Z where it runs oblique-left ("\\"). A site visited
with both orientations composes to Y (one winding crossing); raw products
that come out with a +-i prefix are rescaled by -i so every emitted
operator is Hermitian, mirroring the -i prefix of the measured twist
charge loops.

Flip bookkeeping: X at site k toggles the plaquettes anchored at k-i and
k-j, Z at k toggles k-i-j and k itself, so an open string flips exactly
its two endpoint plaquettes and a closed one flips nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import LatticeError, PathError
from .lattice import BuiltLattice, Coord, Twist, square_color
from .pauli import (
    PauliOperator,
    commutes,
    hermitian_form,
    is_hermitian,
    multiply,
    scale,
)

ORIENT_LETTER = {"R": "X", "L": "Z"}


@dataclass(frozen=True)
class StringPath:
    """Ordered lettered sites with per-site orientation (R -> X, L -> Z)."""

    sites: tuple[Coord, ...]
    segments: tuple[str, ...]
    closure: str = "open"

    def __post_init__(self):
        if len(self.sites) != len(self.segments):
            raise PathError("one orientation letter per site required")
        for s in self.segments:
            if s not in ("R", "L"):
                raise PathError(f"orientation must be R or L, got {s!r}")

    @staticmethod
    def from_moves(moves: list[tuple[str, Coord]], closure: str = "open") -> "StringPath":
        return StringPath(tuple(c for _, c in moves), tuple(o for o, _ in moves), closure)


@dataclass(frozen=True)
class StringOperator:
    path: StringPath
    operator: PauliOperator
    flipped: frozenset[str]


def from_path(path: StringPath, lattice: BuiltLattice) -> StringOperator:
    """Compose the string operator site by site with exact phases."""
    op = PauliOperator.identity(lattice.n)
    for site, orient in zip(path.sites, path.segments):
        if site not in lattice.site_index:
            raise PathError(f"site {site} is not on the lattice")
        op = multiply(lattice.single(site, ORIENT_LETTER[orient]), op)
    op = hermitian_form(op)
    flipped = frozenset(
        p.id for p in lattice.plaquettes
        if p.kind != "boundary" and not commutes(op, p.operator)
    )
    if path.closure == "closed" and flipped:
        raise PathError(f"closed path flips {sorted(flipped)}")
    return StringOperator(path=path, operator=op, flipped=flipped)


def flips_of(op: PauliOperator, lattice: BuiltLattice) -> frozenset[str]:
    return frozenset(
        p.id for p in lattice.plaquettes
        if p.kind != "boundary" and not commutes(op, p.operator)
    )


# -- plaquette-itinerary moves ------------------------------------------------

def step_between(p: Coord, q: Coord) -> tuple[str, Coord]:
    """Orientation and lettered vertex for dragging an excitation between
    two diagonally adjacent plaquettes."""
    da, db = q[0] - p[0], q[1] - p[1]
    if abs(da) != 1 or abs(db) != 1:
        raise PathError(f"plaquettes {p} and {q} are not diagonal neighbours")
    if da == db:
        # "\" pair: Z at the lower-right anchor of the upper plaquette
        vertex = (max(p[0], q[0]), max(p[1], q[1]))
        return "L", vertex
    vertex = (max(p[0], q[0]), min(p[1], q[1]) + 1)
    return "R", vertex


def moves_for_itinerary(itinerary: list[Coord]) -> list[tuple[str, Coord]]:
    return [step_between(itinerary[k], itinerary[k + 1]) for k in range(len(itinerary) - 1)]


# -- charge strings ----------------------------------------------------------

def charge_string(twist: Twist, lattice: BuiltLattice) -> StringOperator:
    """The Hermitian twist charge loop (the -i-prefixed double winding).

    Its shortest representative has the same Pauli content as the defect
    stabilizer of the area, so that operator is returned, with the path
    spelling out the double winding: Y sites (the self-crossing on the
    dislocation) appear once with each orientation.
    """
    if all(t.site != twist.site for t in lattice.twists):
        raise LatticeError(f"{twist.site} is not a twist site")
    op = lattice.operator(twist.defect)
    moves: list[tuple[str, Coord]] = []
    for site, letter in sorted(lattice.letters_of(op).items()):
        if letter in ("X", "Y"):
            moves.append(("R", site))
        if letter in ("Z", "Y"):
            moves.append(("L", site))
    path = StringPath.from_moves(moves, closure="closed")
    out = from_path(path, lattice)
    if out.operator not in (op, scale(op, 2)):
        raise AssertionError("charge loop does not reproduce the defect stabilizer")
    return StringOperator(path=path, operator=op, flipped=frozenset())


def twist_species(twist: Twist, lattice: BuiltLattice, tableau) -> str:
    """Current generalized charge of a twist read off a state."""
    val = tableau.expectation(charge_string(twist, lattice).operator)
    return {1: "sigma+", -1: "sigma-"}.get(val, "indeterminate")


# -- Majorana operators -------------------------------------------------------

@dataclass(frozen=True)
class MajoranaOperator:
    label: int
    operator: PauliOperator
    anchor: tuple[str, str]


@dataclass(frozen=True)
class MajoranaEncoding:
    """A set of 2k Majorana string operators sharing one anchor pair.

    ``pair_defects[k]`` names the defect whose twist pair is described by
    majoranas 2k+1 and 2k+2; ``fermion_strings[k]`` is the closed loop
    -i c_{2k+1} c_{2k+2} whose sign is the pair's fusion outcome.
    """

    name: str
    anchors: tuple[str, str]
    majoranas: tuple[MajoranaOperator, ...]
    pair_defects: tuple[str, ...]

    def c(self, label: int) -> PauliOperator:
        return self.majoranas[label - 1].operator

    def correlator(self, a: int, b: int) -> PauliOperator:
        """-i c_a c_b, exact."""
        out = scale(multiply(self.c(a), self.c(b)), 3)
        if not is_hermitian(out):
            raise AssertionError(f"-i c{a} c{b} is not Hermitian")
        return out

    def fermion_string(self, pair: int) -> PauliOperator:
        return self.correlator(2 * pair - 1, 2 * pair)

    @property
    def n_pairs(self) -> int:
        return len(self.majoranas) // 2

    def validate(self, lattice: BuiltLattice) -> None:
        cs = self.majoranas
        if len(cs) % 2 or len(cs) != 2 * len(self.pair_defects):
            raise LatticeError("encoding needs one defect per majorana pair")
        anchor_ops = {a: lattice.operator(a) for a in self.anchors}
        for m in cs:
            if not is_hermitian(m.operator):
                raise LatticeError(f"c{m.label} is not Hermitian")
            for p in lattice.plaquettes:
                want = p.id in self.anchors
                if commutes(m.operator, p.operator) == want:
                    raise LatticeError(
                        f"c{m.label} {'must anticommute with' if want else 'must commute with'}"
                        f" {p.id}")
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                if commutes(cs[i].operator, cs[j].operator):
                    raise LatticeError(f"c{cs[i].label} and c{cs[j].label} commute")
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                corr = self.correlator(i + 1, j + 1)
                for p in lattice.plaquettes:
                    if not commutes(corr, p.operator):
                        raise LatticeError(f"-i c{i+1} c{j+1} anticommutes with {p.id}")


def majorana(label: int, letters: dict[Coord, str], lattice: BuiltLattice,
             anchors: tuple[str, str], sign: int = 1) -> MajoranaOperator:
    """Build one Majorana string from an explicit winding (site letters).

    The winding must enclose an odd number of twists, which shows up
    algebraically as anticommutation with both anchor plaquettes.
    """
    op = lattice.pauli_from_letters(letters, sign=sign)
    if not is_hermitian(op):
        raise LatticeError(f"c{label} letters do not form a Hermitian string")
    flips = flips_of(op, lattice)
    if flips != frozenset(anchors):
        raise LatticeError(
            f"c{label} winds an even number of twists or strays from the anchors"
            f" (flips {sorted(flips)})")
    return MajoranaOperator(label=label, operator=op, anchor=anchors)


def load_encoding(name: str, lattice: BuiltLattice) -> MajoranaEncoding:
    ref = resources.files("twistlab.data.encodings") / f"{name}.json"
    data = json.loads(ref.read_text())
    anchors = tuple(data["anchors"])
    cs = []
    for entry in data["majoranas"]:
        letters = {tuple(int(v) for v in site.split(",")): letter
                   for site, letter in entry["letters"].items()}
        cs.append(majorana(entry["label"], letters, lattice, anchors,
                           sign=entry.get("sign", 1)))
    enc = MajoranaEncoding(
        name=name, anchors=anchors, majoranas=tuple(cs),
        pair_defects=tuple(data["pair_defects"]),
    )
    enc.validate(lattice)
    return enc


# -- transmutation routing ----------------------------------------------------

def transmute_path(start: Coord, twist_sites: list[Coord],
                   lattice: BuiltLattice) -> StringPath:
    """Route an excitation from ``start`` around the given twists.

    Convenience router: breadth-first over diagonal moves with lexicographic
    tie-breaking, tunnelling through the defect that owns each requested
    twist (which is what winding the twist does to the charge).
    """
    moves: list[tuple[str, Coord]] = []
    here = start
    for ts in twist_sites:
        twist = lattice.twist_at(ts)
        defect = next(p for p in lattice.plaquettes if p.id == twist.defect)
        here = _route_through_defect(here, defect, lattice, moves)
    return StringPath.from_moves(moves)


def _square_anchors(lattice: BuiltLattice) -> set[Coord]:
    return {p.members[0] for p in lattice.plaquettes if p.kind == "square"}


def _diag_neighbours(p: Coord, anchors: set[Coord]) -> list[Coord]:
    out = []
    for da, db in ((-1, -1), (-1, 1), (1, -1), (1, 1)):
        q = (p[0] + da, p[1] + db)
        if q in anchors:
            out.append(q)
    return sorted(out)


def _route_through_defect(start: Coord, defect, lattice: BuiltLattice,
                          moves: list[tuple[str, Coord]]) -> Coord:
    anchors = _square_anchors(lattice)
    entries: dict[Coord, tuple[Coord, Coord]] = {}
    for m in defect.members:
        for q in _diag_neighbours(m, anchors):
            entries.setdefault(q, (m, q))
    # BFS from start over plain squares to any entry square
    if start not in anchors and start not in entries:
        raise PathError(f"no route from {start} (not a live plaquette)")
    prev: dict[Coord, Coord] = {start: start}
    frontier = [start]
    goal = None
    while frontier:
        cur = frontier.pop(0)
        if cur in entries:
            goal = cur
            break
        for q in _diag_neighbours(cur, anchors):
            if q not in prev:
                prev[q] = cur
                frontier.append(q)
    if goal is None:
        raise PathError(f"no route from {start} into defect {defect.id}")
    chain = [goal]
    while chain[-1] != start:
        chain.append(prev[chain[-1]])
    chain.reverse()
    moves.extend(moves_for_itinerary(chain))
    entry_member = entries[goal][0]
    moves.append(step_between(goal, entry_member))
    # exit through a member of the opposite colour: that crossing is the wind
    want = "light" if square_color(entry_member) == "dark" else "dark"
    for m in sorted(defect.members):
        if square_color(m) != want:
            continue
        for q in _diag_neighbours(m, anchors):
            if q == goal:
                continue
            moves.append(step_between(m, q))
            return q
    raise PathError(f"defect {defect.id} has no opposite-colour exit")
