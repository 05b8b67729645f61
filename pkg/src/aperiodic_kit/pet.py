"""Polygon exchange transformations, torus rotations and their inductions.

The lattice actions studied here are rotations of a torus by a pair of
axis-aligned vectors; each generator is realized exactly as an exchange of
at most four rectangles.  Inducing on an axis window produces first-return
maps, return words, an induced partition, and the natural substitution
sending new letters to the return words they stand for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .geometry import (
    BoundaryHit,
    Point,
    Polygon,
    Region,
    TorusPartition,
    convex_intersection,
    rectangle,
)
from .morphisms import Morphism2d
from .phifield import PhiNumber
from .words import Word2d


class NonReturningPiece(RuntimeError):
    """A window piece failed to return within the iteration bound."""


def _num(x) -> PhiNumber:
    return x if isinstance(x, PhiNumber) else PhiNumber(x)


def _vadd(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


@dataclass(frozen=True)
class Window:
    """Axis strip {x : x_axis < bound} of a fundamental rectangle."""

    axis: int
    bound: PhiNumber

    def __post_init__(self):
        if self.axis not in (1, 2):
            raise ValueError("axis must be 1 or 2")
        object.__setattr__(self, "bound", _num(self.bound))
        if self.bound.sign() <= 0:
            raise ValueError("window bound must be positive")

    def contains(self, x: Point) -> bool:
        return x[self.axis - 1] < self.bound

    def sub_lattice(self, lattice) -> tuple[PhiNumber, PhiNumber]:
        if self.axis == 1:
            return (self.bound, lattice[1])
        return (lattice[0], self.bound)


class PolygonExchange:
    """Piecewise translation exchanging polygon pieces of a rectangle domain."""

    def __init__(self, lattice, pieces):
        self.lattice = (_num(lattice[0]), _num(lattice[1]))
        self.pieces: list[tuple[Polygon, Point]] = [
            (poly, (_num(v[0]), _num(v[1]))) for poly, v in pieces
        ]

    def domain(self) -> Polygon:
        return rectangle(0, 0, self.lattice[0], self.lattice[1])

    def domain_area(self) -> PhiNumber:
        return self.lattice[0] * self.lattice[1]

    def apply(self, x: Point) -> Point:
        """Translate x by its piece's vector; boundary points are undefined."""
        hits = [
            (poly, v) for poly, v in self.pieces if poly.locate(x) != "outside"
        ]
        if not hits:
            raise ValueError(f"{x} outside the domain")
        if len(hits) > 1 or hits[0][0].locate(x) == "boundary":
            raise BoundaryHit(f"{x} lies on a piece boundary")
        return _vadd(x, hits[0][1])

    def __call__(self, x: Point) -> Point:
        return self.apply(x)

    def inverse(self) -> "PolygonExchange":
        return PolygonExchange(
            self.lattice,
            [(poly.translate(v), (-v[0], -v[1])) for poly, v in self.pieces],
        )

    def is_bijective(self) -> bool:
        """Pieces partition the domain and so do their images (exact areas)."""
        for family in (
            [poly for poly, _ in self.pieces],
            [poly.translate(v) for poly, v in self.pieces],
        ):
            total = PhiNumber(0)
            for p in family:
                total = total + p.area()
            if total != self.domain_area():
                return False
            for i in range(len(family)):
                for j in range(i + 1, len(family)):
                    overlap = convex_intersection(family[i], family[j])
                    if overlap is not None and overlap.area().sign() != 0:
                        return False
            box = self.domain()
            for p in family:
                if convex_intersection(p, box) is None:
                    return False
                inter = convex_intersection(p, box)
                if inter.area() != p.area():
                    return False
        return True

    def as_translation(self) -> Optional[Point]:
        """The single vector this PET rotates by, if all pieces agree mod lattice."""
        l1, l2 = self.lattice
        reduced = {
            ((v[0] % l1), (v[1] % l2)) for _, v in self.pieces
        }
        if len(reduced) == 1:
            return next(iter(reduced))
        return None

    @classmethod
    def toral_translation(cls, lattice, vector) -> "PolygonExchange":
        """Rotation x -> x + v on the torus as an exchange of <= 4 rectangles."""
        l1, l2 = _num(lattice[0]), _num(lattice[1])
        v = (_num(vector[0]) % l1, _num(vector[1]) % l2)
        zero = PhiNumber(0)
        xs = [(zero, l1 - v[0], v[0]), (l1 - v[0], l1, v[0] - l1)]
        ys = [(zero, l2 - v[1], v[1]), (l2 - v[1], l2, v[1] - l2)]
        pieces = []
        for x_lo, x_hi, dx in xs:
            if not x_lo < x_hi:
                continue
            for y_lo, y_hi, dy in ys:
                if not y_lo < y_hi:
                    continue
                pieces.append((rectangle(x_lo, y_lo, x_hi, y_hi), (dx, dy)))
        return cls((l1, l2), pieces)


def induced_transformation(
    transform: PolygonExchange, window, bound: int = 64
):
    """First-return map of a PET on a window, with return times.

    The window is an axis strip (a Window) or any convex Polygon inside
    the domain.  Window pieces are pushed forward through the exchange and
    split against the window after every step; the parts landing inside
    have returned and the rest continues.  Returns the induced exchange
    (domain normalized to the strip's rectangle for axis windows) and a
    list of (piece, return time).
    """
    from .geometry import convex_difference

    if isinstance(window, Window):
        new_lattice = window.sub_lattice(transform.lattice)
        window_poly = rectangle(0, 0, new_lattice[0], new_lattice[1])
    else:
        window_poly = window
        _, _, mx, my = window.bbox()
        new_lattice = (mx, my)

    active = [(window_poly, (PhiNumber(0), PhiNumber(0)))]
    returned: list[tuple[Polygon, Point, int]] = []
    for step in range(1, bound + 1):
        moved = []
        for current, tau in active:
            for piece, v in transform.pieces:
                part = convex_intersection(current, piece)
                if part is None:
                    continue
                moved.append((part.translate(v), _vadd(tau, v)))
        active = []
        for current, tau in moved:
            inside = convex_intersection(current, window_poly)
            if inside is not None:
                returned.append(
                    (inside.translate((-tau[0], -tau[1])), tau, step)
                )
            active.extend(
                (outside, tau) for outside in convex_difference(current, window_poly)
            )
        if not active:
            break
    else:
        raise NonReturningPiece(f"no return within {bound} steps")

    pieces = [(poly, tau) for poly, tau, _ in returned]
    times = [(poly, step) for poly, _, step in returned]
    return PolygonExchange(new_lattice, pieces), times


class TorusAction:
    """Commuting pair of torus rotations with axis-aligned step vectors."""

    def __init__(self, lattice, alpha1, alpha2):
        self.lattice = (_num(lattice[0]), _num(lattice[1]))
        a1 = (_num(alpha1[0]), _num(alpha1[1]))
        a2 = (_num(alpha2[0]), _num(alpha2[1]))
        if a1[1].sign() != 0 or a2[0].sign() != 0:
            raise ValueError("generators must be axis-aligned")
        self.alpha1 = (a1[0] % self.lattice[0], PhiNumber(0))
        self.alpha2 = (PhiNumber(0), a2[1] % self.lattice[1])
        self._gens: dict[int, PolygonExchange] = {}

    def generator(self, axis: int) -> PolygonExchange:
        if axis not in (1, 2):
            raise ValueError("axis must be 1 or 2")
        if axis not in self._gens:
            alpha = self.alpha1 if axis == 1 else self.alpha2
            self._gens[axis] = PolygonExchange.toral_translation(self.lattice, alpha)
        return self._gens[axis]

    def translate(self, x: Point, n: tuple[int, int]) -> Point:
        """Exact image of x under the n-th power of the action."""
        n1, n2 = n
        return (
            (x[0] + PhiNumber(n1) * self.alpha1[0]) % self.lattice[0],
            (x[1] + PhiNumber(n2) * self.alpha2[1]) % self.lattice[1],
        )

    def step_vector(self, n: tuple[int, int]) -> Point:
        return (
            (PhiNumber(n[0]) * self.alpha1[0]) % self.lattice[0],
            (PhiNumber(n[1]) * self.alpha2[1]) % self.lattice[1],
        )


def induce_action(action: TorusAction, window: Window) -> TorusAction:
    """First-return lattice action on an axis window.

    Both generators are induced; the transversal generator never leaves an
    axis strip, so its return time is 1 and the interesting induction
    happens along the window's axis.  The induced generators must again be
    single rotations of the smaller torus, which is checked exactly.
    """
    new_lattice = window.sub_lattice(action.lattice)
    alphas = {}
    for axis in (1, 2):
        induced, _ = induced_transformation(action.generator(axis), window)
        vector = induced.as_translation()
        if vector is None:
            raise ValueError(f"induced generator {axis} is not a rotation")
        alphas[axis] = vector
    return TorusAction(new_lattice, alphas[1], alphas[2])


# ---------------------------------------------------------------------------
# coding


def code(partition: TorusPartition, x: Point) -> int:
    """Label of the atom containing x; boundary points are undefined."""
    return partition.locate(x)


def config_patch(
    partition: TorusPartition,
    action: TorusAction,
    x: Point,
    shape: tuple[int, int],
    offset: tuple[int, int] = (0, 0),
) -> Word2d:
    """Rectangular patch of the coding of x's orbit, anchored at offset."""
    columns = []
    for i in range(shape[0]):
        column = []
        for j in range(shape[1]):
            n = (offset[0] + i, offset[1] + j)
            try:
                column.append(code(partition, action.translate(x, n)))
            except BoundaryHit as exc:
                raise BoundaryHit(f"orbit point at step {n}: {exc}") from None
        columns.append(column)
    return Word2d(columns)


def first_return_time(action: TorusAction, window: Window, x: Point, axis: int) -> int:
    step = (1, 0) if axis == 1 else (0, 1)
    y = x
    for k in range(1, 1 << 20):
        y = action.translate(y, step)
        if window.contains(y):
            return k
    raise NonReturningPiece("orbit never returned to the window")


def return_word(
    partition: TorusPartition, action: TorusAction, window: Window, x: Point
) -> Word2d:
    """Code block swept before the orbit of x first returns to the window."""
    if not window.contains(x):
        raise ValueError(f"{x} is not in the window")
    r = first_return_time(action, window, x, 1)
    s = first_return_time(action, window, x, 2)
    return config_patch(partition, action, x, (r, s))


# ---------------------------------------------------------------------------
# refinement machinery


def _shifted_atom_pieces(partition: TorusPartition, shift: Point, box: Polygon):
    """Pairs (label, cell') with cell' = (atom cell + k*lattice - shift) cut to the box.

    x lies in cell' exactly when x + shift reduces into that atom cell, so
    refining against these pieces encodes the coding of a shifted point.
    """
    from .geometry import bbox_overlap

    l1, l2 = partition.lattice
    out = []
    for label, cell in partition.cells():
        for k1 in (-1, 0, 1):
            for k2 in (-1, 0, 1):
                moved = cell.translate(
                    (PhiNumber(k1) * l1 - shift[0], PhiNumber(k2) * l2 - shift[1])
                )
                if not bbox_overlap(moved, box):
                    continue
                piece = convex_intersection(moved, box)
                if piece is not None:
                    out.append((label, piece))
    return out


def _refine_by_codes(partition, action, support, base_cells):
    """Split base cells so the codes of all shifted copies are constant.

    ``support`` lists lattice steps n; each output entry is a convex cell
    together with the map n -> label along it.
    """
    from .geometry import bbox_overlap

    domain = rectangle(0, 0, *_cover_bbox(base_cells))
    current = [(cell, {}) for cell in base_cells]
    for n in support:
        shift = action.step_vector(n)
        overlay = _shifted_atom_pieces(partition, shift, domain)
        refined = []
        for cell, codes in current:
            for label, piece in overlay:
                if not bbox_overlap(cell, piece):
                    continue
                part = convex_intersection(cell, piece)
                if part is None:
                    continue
                new_codes = dict(codes)
                new_codes[n] = label
                refined.append((part, new_codes))
        current = refined
    return current


def _cover_bbox(cells):
    xs = []
    ys = []
    for c in cells:
        _, _, x1, y1 = c.bbox()
        xs.append(x1)
        ys.append(y1)
    return max(xs), max(ys)


def enumerate_language(
    partition: TorusPartition, action: TorusAction, shape: tuple[int, int]
) -> set[Word2d]:
    """Exactly the allowed shape-patterns of the coded action.

    A pattern is allowed when the cells coding it have a common point, so
    the partition is refined by action-shifted copies of itself over the
    pattern support and the labels of surviving cells are read off.
    """
    support = [(i, j) for i in range(shape[0]) for j in range(shape[1])]
    base = [cell for _, cell in partition.cells()]
    words = set()
    for _, codes in _refine_by_codes(partition, action, support, base):
        words.add(
            Word2d([[codes[(i, j)] for j in range(shape[1])] for i in range(shape[0])])
        )
    return words


def induced_partition(
    partition: TorusPartition, action: TorusAction, window: Window
):
    """Return-word partition of the window and the natural substitution.

    Atoms of the result are the maximal regions of the window on which the
    return word is constant; the substitution maps the letter of each
    region to its return word.  Letters are numbered by (area of the word,
    then lexicographic on the cells read column by column, bottom to top),
    which makes one-dimensional return words follow the shortlex order.
    """
    gen_along = action.generator(window.axis)
    _, time_pieces = induced_transformation(gen_along, window)
    new_lattice = window.sub_lattice(action.lattice)
    window_poly = rectangle(0, 0, new_lattice[0], new_lattice[1])

    collected: dict[Word2d, list[Polygon]] = {}
    for piece, steps in time_pieces:
        if window.axis == 2:
            r, s = 1, steps
        else:
            r, s = steps, 1
        support = [(i, j) for i in range(r) for j in range(s)]
        for cell, codes in _refine_by_codes(partition, action, support, [piece]):
            word = Word2d([[codes[(i, j)] for j in range(s)] for i in range(r)])
            collected.setdefault(word, []).append(cell)

    def word_key(w: Word2d):
        flat = tuple(letter for col in w.columns for letter in col)
        return (len(flat), flat)

    ordered = sorted(collected, key=word_key)
    atoms = {
        b: Region(sorted(collected[w], key=lambda c: c.vertices))
        for b, w in enumerate(ordered)
    }
    rule = {b: w for b, w in enumerate(ordered)}
    alphabet_size = max(partition.labels()) + 1
    morphism = Morphism2d(rule, len(ordered), alphabet_size)
    return TorusPartition(new_lattice, atoms), morphism
