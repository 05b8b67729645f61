"""Exact convex-polygon geometry over Q(phi) and labeled torus partitions.

Everything here is exact: vertices are pairs of PhiNumber, areas come from
the shoelace formula, and predicates never see a float.  A torus partition
keeps its atoms as unions of convex cells inside the fundamental rectangle
of a diagonal lattice; non-convex atoms are represented by several cells
glued along edges that no cutting segment covers.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .phifield import PhiNumber

Point = tuple[PhiNumber, PhiNumber]
Segment = tuple[Point, Point]


class DegenerateArrangement(ValueError):
    """Segment input that cannot cut the torus (zero length)."""


class NoConsistentLabeling(ValueError):
    """No labeling of the atoms matches the reference domino languages."""


class AmbiguousLabeling(ValueError):
    """Several labelings match the reference domino languages."""


class ZeroFactor(ValueError):
    """Rescaling factor must be nonzero."""


class BoundaryHit(ValueError):
    """A point lies on a partition or piece boundary where maps are undefined."""


def _num(x) -> PhiNumber:
    return x if isinstance(x, PhiNumber) else PhiNumber(x)


def pt(x, y) -> Point:
    return (_num(x), _num(y))


def _dot(n: Point, p: Point) -> PhiNumber:
    return n[0] * p[0] + n[1] * p[1]


def _cross(o: Point, a: Point, b: Point) -> PhiNumber:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class Polygon:
    """Convex polygon; vertices counterclockwise, canonical start, positive area."""

    __slots__ = ("vertices", "_bbox")

    def __init__(self, vertices: Sequence[Point]):
        vs = _normalize_ring(list(vertices))
        if vs is None:
            raise ValueError("degenerate polygon")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "_bbox", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polygon is immutable")

    def __eq__(self, other):
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        coords = ", ".join(f"({v[0]},{v[1]})" for v in self.vertices)
        return f"Polygon[{coords}]"

    def area(self) -> PhiNumber:
        total = PhiNumber(0)
        vs = self.vertices
        for i in range(len(vs)):
            p, q = vs[i], vs[(i + 1) % len(vs)]
            total = total + (p[0] * q[1] - q[0] * p[1])
        return total / PhiNumber(2)

    def edges(self) -> list[Segment]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def translate(self, v: Point) -> "Polygon":
        return Polygon([(p[0] + v[0], p[1] + v[1]) for p in self.vertices])

    def scale(self, factor: PhiNumber) -> "Polygon":
        return Polygon([(p[0] * factor, p[1] * factor) for p in self.vertices])

    def locate(self, x: Point) -> str:
        """'interior', 'boundary' or 'outside' for this convex polygon."""
        on_edge = False
        vs = self.vertices
        for i in range(len(vs)):
            s = _cross(vs[i], vs[(i + 1) % len(vs)], x).sign()
            if s < 0:
                return "outside"
            if s == 0:
                on_edge = True
        return "boundary" if on_edge else "interior"

    def bbox(self) -> tuple[PhiNumber, PhiNumber, PhiNumber, PhiNumber]:
        if self._bbox is None:
            xs = [v[0] for v in self.vertices]
            ys = [v[1] for v in self.vertices]
            object.__setattr__(self, "_bbox", (min(xs), min(ys), max(xs), max(ys)))
        return self._bbox


def bbox_overlap(a: Polygon, b: Polygon) -> bool:
    ax0, ay0, ax1, ay1 = a.bbox()
    bx0, by0, bx1, by1 = b.bbox()
    return not (ax1 <= bx0 or bx1 <= ax0 or ay1 <= by0 or by1 <= ay0)


def _normalize_ring(vs: list[Point]) -> Optional[tuple[Point, ...]]:
    if len(vs) < 3:
        return None
    # orientation via signed area
    doubled = PhiNumber(0)
    for i in range(len(vs)):
        p, q = vs[i], vs[(i + 1) % len(vs)]
        doubled = doubled + (p[0] * q[1] - q[0] * p[1])
    s = doubled.sign()
    if s == 0:
        return None
    if s < 0:
        vs = vs[::-1]
    # drop repeated and collinear vertices
    out: list[Point] = []
    for v in vs:
        if out and v == out[-1]:
            continue
        out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            a = out[i - 1]
            b = out[i]
            c = out[(i + 1) % len(out)]
            if _cross(a, b, c).sign() == 0:
                out.pop(i)
                changed = True
                break
    if len(out) < 3:
        return None
    start = min(range(len(out)), key=lambda i: out[i])
    return tuple(out[start:] + out[:start])


def polygon_or_none(vertices: Sequence[Point]) -> Optional[Polygon]:
    try:
        return Polygon(vertices)
    except ValueError:
        return None


def rectangle(x0, y0, x1, y1) -> Polygon:
    return Polygon([pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)])


def clip(poly: Polygon, normal: Point, offset: PhiNumber) -> Optional[Polygon]:
    """poly intersected with the halfplane <normal, x> <= offset; None if flat."""
    offset = _num(offset)
    out: list[Point] = []
    vs = poly.vertices
    values = [_dot(normal, v) - offset for v in vs]
    for i in range(len(vs)):
        cur, nxt = vs[i], vs[(i + 1) % len(vs)]
        vc, vn = values[i], values[(i + 1) % len(vs)]
        if vc.sign() <= 0:
            out.append(cur)
        if (vc.sign() < 0 < vn.sign()) or (vn.sign() < 0 < vc.sign()):
            t = vc / (vc - vn)
            out.append(
                (cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1]))
            )
    return polygon_or_none(out) if out else None


def convex_intersection(a: Polygon, b: Polygon) -> Optional[Polygon]:
    result: Optional[Polygon] = a
    for p, q in b.edges():
        # inward side of edge (p, q) of a CCW polygon: cross(q-p, x-p) >= 0,
        # i.e. <n, x> <= <n, p> for n = (qy - py, px - qx)
        normal = (q[1] - p[1], p[0] - q[0])
        result = clip(result, normal, _dot(normal, p))
        if result is None:
            return None
    return result


def convex_difference(a: Polygon, b: Polygon) -> list[Polygon]:
    """a minus b as convex pieces with disjoint interiors."""
    pieces = []
    rest: Optional[Polygon] = a
    for p, q in b.edges():
        if rest is None:
            break
        normal = (q[1] - p[1], p[0] - q[0])
        offset = _dot(normal, p)
        outside = clip(rest, (-normal[0], -normal[1]), -offset)
        if outside is not None:
            pieces.append(outside)
        rest = clip(rest, normal, offset)
    return pieces


class Region:
    """Union of convex cells with pairwise disjoint interiors."""

    __slots__ = ("cells",)

    def __init__(self, cells: Iterable[Polygon]):
        object.__setattr__(self, "cells", tuple(cells))

    def __setattr__(self, name, value):
        raise AttributeError("Region is immutable")

    def __eq__(self, other):
        return isinstance(other, Region) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"Region({len(self.cells)} cells, area {self.area()})"

    def area(self) -> PhiNumber:
        total = PhiNumber(0)
        for c in self.cells:
            total = total + c.area()
        return total

    def translate(self, v: Point) -> "Region":
        return Region(c.translate(v) for c in self.cells)

    def intersection_area(self, other: "Region") -> PhiNumber:
        total = PhiNumber(0)
        for a in self.cells:
            for b in other.cells:
                piece = convex_intersection(a, b)
                if piece is not None:
                    total = total + piece.area()
        return total

    def equals_up_to_null(self, other: "Region") -> bool:
        """Zero-area symmetric difference."""
        mine, theirs = self.area(), other.area()
        return mine == theirs and self.intersection_area(other) == mine


# ---------------------------------------------------------------------------
# lines, intervals and edge bookkeeping


def _canonical_line(p: Point, q: Point):
    """Hashable key (A, B, C) for the line through p and q: A x + B y = C.

    Scaled so the first nonzero of (A, B) is 1; the parameter of a point on
    the line is its dot product with the direction (-B, A).
    """
    a = p[1] - q[1]
    b = q[0] - p[0]
    c = a * p[0] + b * p[1]
    if a.sign() != 0:
        return (PhiNumber(1), b / a, c / a)
    return (PhiNumber(0), PhiNumber(1), c / b)


def _line_param(line, x: Point) -> PhiNumber:
    _, b, _ = line
    d = (-b, PhiNumber(1)) if line[0] == PhiNumber(1) else (PhiNumber(1), PhiNumber(0))
    return _dot(d, x)


def _merge_intervals(intervals):
    merged = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged


def _interval_minus(lo, hi, covered) -> bool:
    """True iff (lo, hi) has an uncovered open sub-interval."""
    cursor = lo
    for clo, chi in covered:
        if chi <= cursor:
            continue
        if clo >= hi:
            break
        if clo > cursor:
            return True
        cursor = max(cursor, chi)
        if cursor >= hi:
            return False
    return cursor < hi


# ---------------------------------------------------------------------------
# torus partitions


class TorusPartition:
    """Labeled partition of the torus of a diagonal lattice l1 Z x l2 Z."""

    def __init__(self, lattice, atoms: dict[int, Region]):
        self.lattice = (_num(lattice[0]), _num(lattice[1]))
        self.atoms = dict(atoms)
        self._cuts: Optional[list[Segment]] = None

    def labels(self) -> list[int]:
        return sorted(self.atoms)

    def cells(self):
        for label in sorted(self.atoms):
            for cell in self.atoms[label].cells:
                yield label, cell

    def domain(self) -> Polygon:
        return rectangle(0, 0, self.lattice[0], self.lattice[1])

    def total_area(self) -> PhiNumber:
        total = PhiNumber(0)
        for _, cell in self.cells():
            total = total + cell.area()
        return total

    def covolume(self) -> PhiNumber:
        return self.lattice[0] * self.lattice[1]

    def relabel(self, mapping: dict[int, int]) -> "TorusPartition":
        return TorusPartition(
            self.lattice, {mapping[a]: r for a, r in self.atoms.items()}
        )

    def reduce_point(self, x: Point) -> Point:
        return (x[0] % self.lattice[0], x[1] % self.lattice[1])

    # -- boundary ------------------------------------------------------

    def cuts(self) -> list[Segment]:
        """Maximal boundary pieces: edge parts whose two sides differ.

        Edges of cells are grouped by supporting line (lines on the far
        fundamental-domain boundary are translated onto their seam twin),
        then swept; a piece separating two cells of one atom is interior
        glue, everything else is a genuine cut of the torus.
        """
        if self._cuts is None:
            self._cuts = self._compute_cuts()
        return self._cuts

    def _seam_canonical(self, line, edge_points):
        l1, l2 = self.lattice
        zero = PhiNumber(0)
        a, b, c = line
        shift = (zero, zero)
        if a == PhiNumber(1) and b == zero and c == l1:  # x = l1 -> x = 0
            shift = (-l1, zero)
            line = (a, b, zero)
        elif a == zero and b == PhiNumber(1) and c == l2:  # y = l2 -> y = 0
            shift = (zero, -l2)
            line = (a, b, zero)
        pts = [(p[0] + shift[0], p[1] + shift[1]) for p in edge_points]
        return line, pts

    def _compute_cuts(self) -> list[Segment]:
        by_line: dict = {}
        for label, cell in self.cells():
            for p, q in cell.edges():
                line = _canonical_line(p, q)
                line, (tp, tq) = self._seam_canonical(line, (p, q))
                # which side of the line does the cell interior lie on
                a, b, _ = line
                normal = (a, b)
                inner = _dot(normal, _inner_point(cell)) - _dot(normal, tp)
                side = inner.sign()
                lo, hi = sorted((_line_param(line, tp), _line_param(line, tq)))
                by_line.setdefault(line, []).append((lo, hi, side, label, tp, tq))
        cuts: list[Segment] = []
        for line, entries in by_line.items():
            points = sorted({e[0] for e in entries} | {e[1] for e in entries})
            for lo, hi in zip(points, points[1:]):
                covering = [e for e in entries if e[0] <= lo and hi <= e[1]]
                sides = {e[2] for e in covering}
                labels = {e[3] for e in covering}
                if len(sides) == 2 and len(labels) == 1:
                    continue  # interior glue within one atom
                if not covering:
                    continue
                cuts.append(_segment_on_line(line, lo, hi))
        return _merge_cut_segments(cuts)

    def on_boundary(self, x: Point) -> bool:
        """True iff the (reduced) point lies on a cut of the partition."""
        x = self.reduce_point(x)
        l1, l2 = self.lattice
        zero = PhiNumber(0)
        candidates = [x]
        if x[0] == zero:
            candidates.append((x[0] + l1, x[1]))
        if x[1] == zero:
            candidates.append((x[0], x[1] + l2))
        if x[0] == zero and x[1] == zero:
            candidates.append((x[0] + l1, x[1] + l2))
        for p, q in self.cuts():
            line = _canonical_line(p, q)
            for cand in candidates:
                a, b, c = line
                if (a * cand[0] + b * cand[1] - c).sign() != 0:
                    continue
                t = _line_param(line, cand)
                lo, hi = sorted((_line_param(line, p), _line_param(line, q)))
                if lo <= t <= hi:
                    return True
        return False

    def locate(self, x: Point) -> int:
        """Label of the atom whose interior contains the reduced point."""
        if self.on_boundary(x):
            raise BoundaryHit(f"point {x} lies on the partition boundary")
        x = self.reduce_point(x)
        for label, cell in self.cells():
            if cell.locate(x) != "outside":
                return label
        raise ValueError(f"point {x} not located in any atom")

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "lattice": [str(self.lattice[0]), str(self.lattice[1])],
            "atoms": {
                str(label): [
                    [[str(v[0]), str(v[1])] for v in cell.vertices]
                    for cell in region.cells
                ]
                for label, region in sorted(self.atoms.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "TorusPartition":
        from .phifield import parse_phi

        lattice = tuple(parse_phi(s) for s in data["lattice"])
        atoms = {
            int(label): Region(
                Polygon([(parse_phi(x), parse_phi(y)) for x, y in cell])
                for cell in cells
            )
            for label, cells in data["atoms"].items()
        }
        return cls(lattice, atoms)


def _inner_point(cell: Polygon) -> Point:
    n = PhiNumber(len(cell.vertices))
    sx = PhiNumber(0)
    sy = PhiNumber(0)
    for v in cell.vertices:
        sx = sx + v[0]
        sy = sy + v[1]
    return (sx / n, sy / n)


def _segment_on_line(line, lo, hi) -> Segment:
    a, b, c = line
    if a == PhiNumber(1):
        # param t = -b*x + y on x + b*y = c  =>  y = (t + b*c) / (1 + b*b)
        def at(t):
            y = (t + b * c) / (PhiNumber(1) + b * b)
            return (c - b * y, y)

    else:
        def at(t):
            return (t, c)

    return (at(lo), at(hi))


def _merge_cut_segments(cuts: list[Segment]) -> list[Segment]:
    by_line: dict = {}
    for p, q in cuts:
        line = _canonical_line(p, q)
        lo, hi = sorted((_line_param(line, p), _line_param(line, q)))
        by_line.setdefault(line, []).append((lo, hi))
    merged = []
    for line, intervals in by_line.items():
        for lo, hi in _merge_intervals(intervals):
            merged.append(_segment_on_line(line, lo, hi))
    return merged


# ---------------------------------------------------------------------------
# arrangement of segments on the torus


def _clip_segment_to_box(p: Point, q: Point, l1, l2) -> Optional[Segment]:
    d = (q[0] - p[0], q[1] - p[1])
    t_lo, t_hi = PhiNumber(0), PhiNumber(1)
    for normal, bound in (
        ((PhiNumber(-1), PhiNumber(0)), PhiNumber(0)),
        ((PhiNumber(1), PhiNumber(0)), l1),
        ((PhiNumber(0), PhiNumber(-1)), PhiNumber(0)),
        ((PhiNumber(0), PhiNumber(1)), l2),
    ):
        nd = _dot(normal, d)
        np_ = _dot(normal, p) - bound
        if nd.sign() == 0:
            if np_.sign() > 0:
                return None
            continue
        t_star = -np_ / nd
        if nd.sign() > 0:
            t_hi = min(t_hi, t_star)
        else:
            t_lo = max(t_lo, t_star)
    if not t_lo < t_hi:
        return None
    return (
        (p[0] + t_lo * d[0], p[1] + t_lo * d[1]),
        (p[0] + t_hi * d[0], p[1] + t_hi * d[1]),
    )


def _reduce_segments(segments, l1, l2) -> list[Segment]:
    """All lattice translates of the segments clipped to the closed box."""
    pieces = {}
    for p, q in segments:
        p = (_num(p[0]), _num(p[1]))
        q = (_num(q[0]), _num(q[1]))
        if p == q:
            raise DegenerateArrangement(f"zero-length segment at {p}")
        min_x, max_x = min(p[0], q[0]), max(p[0], q[0])
        min_y, max_y = min(p[1], q[1]), max(p[1], q[1])
        k1_lo = ((-max_x) / l1).floor()
        k1_hi = ((l1 - min_x) / l1).floor() + 1
        k2_lo = ((-max_y) / l2).floor()
        k2_hi = ((l2 - min_y) / l2).floor() + 1
        for k1 in range(k1_lo, k1_hi + 1):
            for k2 in range(k2_lo, k2_hi + 1):
                shift = (PhiNumber(k1) * l1, PhiNumber(k2) * l2)
                piece = _clip_segment_to_box(
                    (p[0] + shift[0], p[1] + shift[1]),
                    (q[0] + shift[0], q[1] + shift[1]),
                    l1,
                    l2,
                )
                if piece is None:
                    continue
                key = tuple(sorted(piece))
                pieces[key] = piece
    return list(pieces.values())


def partition_from_segments(segments, lattice) -> TorusPartition:
    """Faces of the arrangement of the segments' translates on the torus.

    Convex cells come from splitting the fundamental rectangle along every
    supporting line; cells are then glued back together across every edge
    piece not covered by an input segment (including across the seam of
    the fundamental domain), and each resulting face becomes an atom with
    a provisional label.
    """
    l1, l2 = _num(lattice[0]), _num(lattice[1])
    zero = PhiNumber(0)
    one = PhiNumber(1)
    pieces = _reduce_segments(segments, l1, l2)

    # distinct supporting lines, skipping the box boundary (no area to split)
    boundary_lines = {
        (one, zero, zero), (one, zero, l1), (zero, one, zero), (zero, one, l2),
    }
    lines = []
    seen = set()
    for p, q in pieces:
        line = _canonical_line(p, q)
        if line in boundary_lines or line in seen:
            continue
        seen.add(line)
        lines.append(line)

    cells = [rectangle(0, 0, l1, l2)]
    for a, b, c in lines:
        nxt = []
        for cell in cells:
            lower = clip(cell, (a, b), c)
            upper = clip(cell, (-a, -b), -c)
            nxt.extend(x for x in (lower, upper) if x is not None)
        cells = nxt

    # covered intervals per line (seam-canonicalized), from the cut segments
    helper = TorusPartition((l1, l2), {})
    covered: dict = {}
    for p, q in pieces:
        line = _canonical_line(p, q)
        line, (tp, tq) = helper._seam_canonical(line, (p, q))
        lo, hi = sorted((_line_param(line, tp), _line_param(line, tq)))
        covered.setdefault(line, []).append((lo, hi))
    covered = {line: _merge_intervals(iv) for line, iv in covered.items()}

    # glue cells along shared edge pieces not covered by segments
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    edge_table: dict = {}
    for idx, cell in enumerate(cells):
        for p, q in cell.edges():
            line = _canonical_line(p, q)
            line, (tp, tq) = helper._seam_canonical(line, (p, q))
            lo, hi = sorted((_line_param(line, tp), _line_param(line, tq)))
            edge_table.setdefault(line, []).append((lo, hi, idx))
    for line, entries in edge_table.items():
        cov = covered.get(line, [])
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                lo = max(entries[i][0], entries[j][0])
                hi = min(entries[i][1], entries[j][1])
                if not lo < hi:
                    continue
                if entries[i][2] == entries[j][2]:
                    continue
                if _interval_minus(lo, hi, cov):
                    ri, rj = find(entries[i][2]), find(entries[j][2])
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[Polygon]] = {}
    for idx, cell in enumerate(cells):
        groups.setdefault(find(idx), []).append(cell)
    regions = [Region(sorted(cells_, key=lambda c: c.vertices)) for cells_ in groups.values()]
    regions.sort(key=lambda r: r.cells[0].vertices)
    return TorusPartition((l1, l2), {i: r for i, r in enumerate(regions)})


# ---------------------------------------------------------------------------
# relabeling and comparison


def relabel_to_match(partition: TorusPartition, horizontal, vertical, action) -> TorusPartition:
    """Unique relabeling making the coded dominoes land in the references.

    ``horizontal`` and ``vertical`` are sets of (left, right) and
    (bottom, top) letter pairs; the partition's own domino languages are
    computed exactly from the action and a bijective letter map is searched
    so that every coded domino lies in the references.
    """
    from .pet import enumerate_language

    labels = partition.labels()
    h_pairs = {
        (w[0, 0], w[1, 0]) for w in enumerate_language(partition, action, (2, 1))
    }
    v_pairs = {
        (w[0, 0], w[0, 1]) for w in enumerate_language(partition, action, (1, 2))
    }
    targets = sorted({a for pair in horizontal | vertical for a in pair})
    if len(targets) < len(labels):
        raise NoConsistentLabeling("reference alphabet smaller than atom count")

    order = sorted(
        labels,
        key=lambda a: -sum(a in p for p in h_pairs | v_pairs),
    )
    solutions = []
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def consistent(a, t):
        if (a, a) in h_pairs and (t, t) not in horizontal:
            return False
        if (a, a) in v_pairs and (t, t) not in vertical:
            return False
        for b, tb in assignment.items():
            if (a, b) in h_pairs and (t, tb) not in horizontal:
                return False
            if (b, a) in h_pairs and (tb, t) not in horizontal:
                return False
            if (a, b) in v_pairs and (t, tb) not in vertical:
                return False
            if (b, a) in v_pairs and (tb, t) not in vertical:
                return False
        return True

    def search(i):
        if len(solutions) > 1:
            return
        if i == len(order):
            solutions.append(dict(assignment))
            return
        a = order[i]
        for t in targets:
            if t in used:
                continue
            if not consistent(a, t):
                continue
            assignment[a] = t
            used.add(t)
            search(i + 1)
            del assignment[a]
            used.discard(t)

    search(0)
    if not solutions:
        raise NoConsistentLabeling("no labeling matches the reference dominoes")
    if len(solutions) > 1:
        raise AmbiguousLabeling("several labelings match the reference dominoes")
    return partition.relabel(solutions[0])


def is_equal_up_to_relabeling(p: TorusPartition, q: TorusPartition):
    """Label map a -> b with atom_p(a) = atom_q(b) up to null sets, or None."""
    if p.lattice != q.lattice or len(p.atoms) != len(q.atoms):
        return None
    mapping = {}
    for a, region in p.atoms.items():
        matches = [
            b for b, other in q.atoms.items() if region.equals_up_to_null(other)
        ]
        if len(matches) != 1:
            return None
        mapping[a] = matches[0]
    if len(set(mapping.values())) != len(mapping):
        return None
    return mapping


def rescale(partition: TorusPartition, factor, translation=(0, 0)) -> TorusPartition:
    """Map atoms by x -> factor*x + t and reduce into the scaled lattice."""
    factor = _num(factor)
    if factor.sign() == 0:
        raise ZeroFactor("rescale factor must be nonzero")
    t = (_num(translation[0]), _num(translation[1]))
    scale_abs = factor if factor.sign() > 0 else -factor
    new_lattice = (partition.lattice[0] * scale_abs, partition.lattice[1] * scale_abs)
    box = rectangle(0, 0, new_lattice[0], new_lattice[1])
    atoms = {}
    for label, region in partition.atoms.items():
        cells = []
        for cell in region.cells:
            mapped = Polygon(
                [(v[0] * factor + t[0], v[1] * factor + t[1]) for v in cell.vertices]
            )
            min_x, min_y, max_x, max_y = mapped.bbox()
            k1_lo = (min_x / new_lattice[0]).floor()
            k1_hi = (max_x / new_lattice[0]).floor() + 1
            k2_lo = (min_y / new_lattice[1]).floor()
            k2_hi = (max_y / new_lattice[1]).floor() + 1
            for k1 in range(k1_lo, k1_hi + 1):
                for k2 in range(k2_lo, k2_hi + 1):
                    shift = (PhiNumber(k1) * new_lattice[0], PhiNumber(k2) * new_lattice[1])
                    piece = convex_intersection(mapped, box.translate(shift))
                    if piece is not None:
                        cells.append(piece.translate((-shift[0], -shift[1])))
        atoms[label] = Region(sorted(cells, key=lambda c: c.vertices))
    return TorusPartition(new_lattice, atoms)
