"""Wang tile sets, rectangle/torus tiling search, and admissibility.

A tile is a 4-tuple of color tokens in (right, top, left, bottom) order;
tokens are opaque strings so that fused tiles can carry concatenated
colors.  Two complete search backends are provided: a backtracking solver
scanning cells bottom-up row-major (the default; it returns the
lexicographically least solution in tile-index order along that scan), and
an exact-cover reduction solved by Algorithm X.  Tests hold the two
backends to identical satisfiability verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .words import Word2d

RIGHT, TOP, LEFT, BOTTOM = 0, 1, 2, 3

Tile = tuple[str, str, str, str]


class UnknownTileIndex(KeyError):
    """A pattern refers to a tile index outside the tile set."""


class SingularLattice(ValueError):
    """A periodicity test needs a nonsingular integer lattice basis."""


class WangTileSet:
    """Indexed list of Wang tiles with color bookkeeping."""

    def __init__(self, tiles: Iterable[Sequence[str]]):
        self.tiles: tuple[Tile, ...] = tuple(
            (str(t[0]), str(t[1]), str(t[2]), str(t[3])) for t in tiles
        )

    def __len__(self):
        return len(self.tiles)

    def __getitem__(self, index: int) -> Tile:
        try:
            return self.tiles[index]
        except IndexError:
            raise UnknownTileIndex(index) from None

    def __eq__(self, other):
        return isinstance(other, WangTileSet) and self.tiles == other.tiles

    def __hash__(self):
        return hash(self.tiles)

    def __repr__(self):
        return f"WangTileSet({len(self.tiles)} tiles)"

    def vertical_colors(self) -> set[str]:
        return {t[RIGHT] for t in self.tiles} | {t[LEFT] for t in self.tiles}

    def horizontal_colors(self) -> set[str]:
        return {t[TOP] for t in self.tiles} | {t[BOTTOM] for t in self.tiles}

    def to_json(self) -> dict:
        return {"tiles": [list(t) for t in self.tiles]}

    @classmethod
    def from_json(cls, data: dict) -> "WangTileSet":
        return cls([tuple(t) for t in data["tiles"]])


@dataclass
class TilingInstance:
    """A rectangle (or quotient torus) to fill with tiles of a set.

    ``fixed`` pins tile indices at positions inside the shape.  When
    ``wrap`` is a nonsingular 2x2 integer matrix (columns generate a
    sublattice of Z^2), the instance is the quotient torus and the shape is
    derived from the lattice, not taken from ``shape``.
    """

    tileset: WangTileSet
    shape: tuple[int, int]
    fixed: dict[tuple[int, int], int] = field(default_factory=dict)
    wrap: Optional[tuple[tuple[int, int], tuple[int, int]]] = None

    def __post_init__(self):
        n1, n2 = self.shape
        for (x, y), t in self.fixed.items():
            if not (0 <= x < n1 and 0 <= y < n2):
                raise ValueError(f"fixed cell {(x, y)} outside shape {self.shape}")
            if not (0 <= t < len(self.tileset)):
                raise UnknownTileIndex(t)


def _hnf(basis) -> tuple[int, int, int]:
    """Lower-triangular lattice basis (a, c, d): columns (a, c) and (0, d).

    Accepts any 2x2 integer matrix whose columns generate the lattice.
    """
    (m00, m01), (m10, m11) = basis
    det = m00 * m11 - m01 * m10
    if det == 0:
        raise SingularLattice(f"basis {basis} is singular")
    # column operations until the top-right entry vanishes
    while m01 != 0:
        if m00 == 0 or (m01 != 0 and abs(m01) < abs(m00)):
            m00, m01 = m01, m00
            m10, m11 = m11, m10
        q = m01 // m00
        m01 -= q * m00
        m11 -= q * m10
    if m00 < 0:
        m00, m10 = -m00, -m10
    if m11 < 0:
        m11 = -m11
    return m00, m10 % m11, m11


def _torus_cells(basis):
    """Representatives and reduction map for Z^2 modulo the lattice."""
    a, c, d = _hnf(basis)

    def reduce(pos):
        x, y = pos
        k = x // a
        x -= k * a
        y -= k * c
        return x, y % d

    return (a, d), reduce


def _neighbor(shape, wrap_reduce, pos, dx, dy):
    x, y = pos[0] + dx, pos[1] + dy
    if wrap_reduce is not None:
        return wrap_reduce((x, y))
    if 0 <= x < shape[0] and 0 <= y < shape[1]:
        return (x, y)
    return None


def _scan_order(shape):
    return [(x, y) for y in range(shape[1]) for x in range(shape[0])]


def _near_fixed_order(shape, fixed):
    """Cells sorted by distance from the fixed block, for fast refutations."""
    def distance(cell):
        x, y = cell
        return min(max(abs(x - fx), abs(y - fy)) for fx, fy in fixed)

    return sorted(_scan_order(shape), key=lambda c: (distance(c), c[1], c[0]))


def _solve_backtracking(
    instance: TilingInstance, collect_all=False, limit=None, near_fixed=False
):
    """Complete DFS over cells bottom-up row-major, tile indices ascending.

    ``near_fixed`` reorders the scan outward from the fixed cells; the
    search stays complete, only existence queries should use it since the
    first solution found is then least along a different cell order.
    """
    tiles = instance.tileset.tiles
    if instance.wrap is not None:
        shape, reduce = _torus_cells(instance.wrap)
    else:
        shape, reduce = instance.shape, None
    if shape[0] == 0 or shape[1] == 0:
        empty = Word2d([])
        return [empty] if collect_all else empty
    if not tiles:
        return [] if collect_all else None
    if near_fixed and instance.fixed and instance.wrap is None:
        order = _near_fixed_order(shape, instance.fixed)
    else:
        order = _scan_order(shape)
    fixed = dict(instance.fixed)
    if instance.wrap is not None:
        fixed = {}
        for cell, t in instance.fixed.items():
            cell = reduce(cell)
            if cell in fixed and fixed[cell] != t:
                return [] if collect_all else None
            fixed[cell] = t

    # candidate lists indexed by required (left, bottom) colors
    by_lb: dict[tuple[Optional[str], Optional[str]], list[int]] = {}
    for idx, t in enumerate(tiles):
        for key in (
            (t[LEFT], t[BOTTOM]),
            (t[LEFT], None),
            (None, t[BOTTOM]),
            (None, None),
        ):
            by_lb.setdefault(key, []).append(idx)

    assignment: dict[tuple[int, int], int] = {}
    solutions: list[Word2d] = []

    def candidates(cell):
        left_nb = _neighbor(shape, reduce, cell, -1, 0)
        bottom_nb = _neighbor(shape, reduce, cell, 0, -1)
        want_left = tiles[assignment[left_nb]][RIGHT] if left_nb in assignment else None
        want_bottom = tiles[assignment[bottom_nb]][TOP] if bottom_nb in assignment else None
        base = by_lb.get((want_left, want_bottom), [])
        if cell in fixed:
            base = [t for t in base if t == fixed[cell]]
        # width/height-1 torus: the cell is its own neighbor
        if left_nb == cell:
            base = [t for t in base if tiles[t][RIGHT] == tiles[t][LEFT]]
        if bottom_nb == cell:
            base = [t for t in base if tiles[t][TOP] == tiles[t][BOTTOM]]
        # constraints from already-assigned right/top neighbors (fixed cells
        # ahead of the scan, or wrap-around)
        right_nb = _neighbor(shape, reduce, cell, 1, 0)
        top_nb = _neighbor(shape, reduce, cell, 0, 1)
        want_right = None
        want_top = None
        if right_nb is not None:
            if right_nb in assignment:
                want_right = tiles[assignment[right_nb]][LEFT]
            elif right_nb in fixed:
                want_right = tiles[fixed[right_nb]][LEFT]
        if top_nb is not None:
            if top_nb in assignment:
                want_top = tiles[assignment[top_nb]][BOTTOM]
            elif top_nb in fixed:
                want_top = tiles[fixed[top_nb]][BOTTOM]
        if want_right is not None:
            base = [t for t in base if tiles[t][RIGHT] == want_right]
        if want_top is not None:
            base = [t for t in base if tiles[t][TOP] == want_top]
        return base

    n_cells = len(order)
    stack: list[tuple[tuple[int, int], list[int], int]] = []
    depth = 0
    cand = candidates(order[0])
    ptr = 0
    while True:
        cell = order[depth]
        if ptr < len(cand):
            assignment[cell] = cand[ptr]
            ptr += 1
            if depth + 1 == n_cells:
                word = Word2d(
                    [[assignment[(x, y)] for y in range(shape[1])] for x in range(shape[0])]
                )
                if not collect_all:
                    return word
                solutions.append(word)
                if limit is not None and len(solutions) >= limit:
                    return solutions
                del assignment[cell]
                continue
            stack.append((cell, cand, ptr))
            depth += 1
            cand = candidates(order[depth])
            ptr = 0
            continue
        # exhausted this cell: backtrack
        assignment.pop(cell, None)
        if not stack:
            return solutions if collect_all else None
        _, cand, ptr = stack.pop()
        depth -= 1
        assignment.pop(order[depth], None)


def _exact_cover_rows(instance: TilingInstance):
    """Option table of the exact-cover reduction.

    One primary item per cell.  For every shared edge e and color c there is
    a secondary item (e, c): the tile on the lesser side covers exactly the
    item of its own edge color, the tile on the greater side covers the
    items of every OTHER color, so two options collide precisely when their
    colors on e differ.
    """
    tiles = instance.tileset.tiles
    if instance.wrap is not None:
        shape, reduce = _torus_cells(instance.wrap)
        fixed = {}
        for cell, t in instance.fixed.items():
            cell = reduce(cell)
            if cell in fixed and fixed[cell] != t:
                return None, None
            fixed[cell] = t
    else:
        shape, reduce = instance.shape, None
        fixed = dict(instance.fixed)
    vcolors = sorted({t[RIGHT] for t in tiles} | {t[LEFT] for t in tiles})
    hcolors = sorted({t[TOP] for t in tiles} | {t[BOTTOM] for t in tiles})
    cells = _scan_order(shape)
    options = {}
    for cell in cells:
        right_nb = _neighbor(shape, reduce, cell, 1, 0)
        top_nb = _neighbor(shape, reduce, cell, 0, 1)
        left_nb = _neighbor(shape, reduce, cell, -1, 0)
        bottom_nb = _neighbor(shape, reduce, cell, 0, -1)
        choices = [fixed[cell]] if cell in fixed else range(len(tiles))
        for t in choices:
            tile = tiles[t]
            if right_nb == cell and tile[RIGHT] != tile[LEFT]:
                continue
            if top_nb == cell and tile[TOP] != tile[BOTTOM]:
                continue
            items = [("cell", cell)]
            if right_nb is not None and right_nb != cell:
                items.append(("h", cell, right_nb, tile[RIGHT]))
            if left_nb is not None and left_nb != cell:
                items.extend(
                    ("h", left_nb, cell, c) for c in vcolors if c != tile[LEFT]
                )
            if top_nb is not None and top_nb != cell:
                items.append(("v", cell, top_nb, tile[TOP]))
            if bottom_nb is not None and bottom_nb != cell:
                items.extend(
                    ("v", bottom_nb, cell, c) for c in hcolors if c != tile[BOTTOM]
                )
            options[(cell, t)] = items
    primary = {("cell", cell) for cell in cells}
    return options, primary


def _algorithm_x(options, primary):
    """Deterministic Algorithm X over dict-of-sets; yields solutions."""
    columns: dict = {}
    for oid, items in options.items():
        for item in items:
            columns.setdefault(item, set()).add(oid)
    for item in primary:
        columns.setdefault(item, set())

    solution = []

    def select(oid):
        removed = []
        for item in options[oid]:
            if item not in columns:
                continue
            col = columns.pop(item)
            removed.append((item, col))
            for other in col:
                if other == oid:
                    continue
                for j in options[other]:
                    if j in columns:
                        columns[j].discard(other)
        return removed

    def restore(removed):
        for item, col in reversed(removed):
            columns[item] = col
            for other in col:
                for j in options[other]:
                    if j in columns:
                        columns[j].add(other)

    def search():
        active = [item for item in columns if item in primary]
        if not active:
            yield list(solution)
            return
        item = min(active, key=lambda it: (len(columns[it]), it))
        for oid in sorted(columns[item]):
            solution.append(oid)
            removed = select(oid)
            yield from search()
            restore(removed)
            solution.pop()

    return search()


def _solve_exact_cover(instance: TilingInstance):
    tiles = instance.tileset.tiles
    if instance.wrap is not None:
        shape, _ = _torus_cells(instance.wrap)
    else:
        shape = instance.shape
    if shape[0] == 0 or shape[1] == 0:
        return Word2d([])
    if not tiles:
        return None
    options, primary = _exact_cover_rows(instance)
    if options is None:
        return None
    for chosen in _algorithm_x(options, primary):
        grid = {cell: t for cell, t in chosen}
        return Word2d(
            [[grid[(x, y)] for y in range(shape[1])] for x in range(shape[0])]
        )
    return None


def solve(instance: TilingInstance, backend: str = "backtracking") -> Optional[Word2d]:
    """A valid assignment extending the instance, or None.

    The backtracking backend returns the lexicographically least solution
    in tile-index order along the bottom-up row-major cell scan; the
    exact-cover backend is a complete independent check of satisfiability.
    ``backend="both"`` runs the two and insists they agree.
    """
    if backend == "backtracking":
        return _solve_backtracking(instance)
    if backend == "exact_cover":
        return _solve_exact_cover(instance)
    if backend == "both":
        first = _solve_backtracking(instance)
        second = _solve_exact_cover(instance)
        if (first is None) != (second is None):
            raise AssertionError(
                f"solver backends disagree on {instance}: "
                f"backtracking={first!r} exact_cover={second!r}"
            )
        if second is not None and not is_valid_pattern(instance.tileset, second):
            raise AssertionError("exact-cover backend produced an invalid pattern")
        return first
    raise ValueError(f"unknown backend {backend!r}")


def solve_all(instance: TilingInstance, limit: Optional[int] = None) -> list[Word2d]:
    """Every valid assignment (used for small enumerations only)."""
    return _solve_backtracking(instance, collect_all=True, limit=limit)


def is_valid_pattern(tileset: WangTileSet, w: Word2d) -> bool:
    """True iff all shared edges of the pattern agree in color."""
    n1, n2 = w.shape
    tiles = tileset.tiles
    for (x, y), letter in w:
        if not (0 <= letter < len(tiles)):
            raise UnknownTileIndex(letter)
    for x in range(n1):
        for y in range(n2):
            t = tiles[w[x, y]]
            if x + 1 < n1 and t[RIGHT] != tiles[w[x + 1, y]][LEFT]:
                return False
            if y + 1 < n2 and t[TOP] != tiles[w[x, y + 1]][BOTTOM]:
                return False
    return True


def admits_surrounding(
    tileset: WangTileSet, u: Word2d, r: int, backend: str = "backtracking"
) -> bool:
    """True iff u extends to a valid pattern with an r-cell margin."""
    for _, letter in u:
        if not (0 <= letter < len(tileset)):
            raise UnknownTileIndex(letter)
    n1, n2 = u.shape
    fixed = {(x + r, y + r): u[x, y] for x in range(n1) for y in range(n2)}
    instance = TilingInstance(tileset, (n1 + 2 * r, n2 + 2 * r), fixed)
    if backend == "backtracking":
        return _solve_backtracking(instance, near_fixed=True) is not None
    return solve(instance, backend=backend) is not None


_DOMINO_CACHE: dict = {}


def _domino_check(task) -> tuple[tuple[int, int], bool]:
    tiles, direction, r, u, v = task
    tileset = WangTileSet(tiles)
    word = Word2d([[u], [v]]) if direction == 1 else Word2d([[u, v]])
    return (u, v), admits_surrounding(tileset, word, r)


def dominoes_with_surrounding(
    tileset: WangTileSet, direction: int, r: int, jobs: int | None = None
) -> set[tuple[int, int]]:
    """Ordered index pairs whose domino in the direction has an r-surrounding."""
    from .jobs import parallel_map

    key = (tileset.tiles, direction, r)
    if key in _DOMINO_CACHE:
        return set(_DOMINO_CACHE[key])
    if direction not in (1, 2):
        raise ValueError("direction must be 1 or 2")
    edge = (RIGHT, LEFT) if direction == 1 else (TOP, BOTTOM)
    tasks = [
        (tileset.tiles, direction, r, u, v)
        for u in range(len(tileset))
        for v in range(len(tileset))
        if tileset[u][edge[0]] == tileset[v][edge[1]]
    ]
    found = {
        pair for pair, good in parallel_map(_domino_check, tasks, jobs) if good
    }
    _DOMINO_CACHE[key] = set(found)
    return found


def exists_periodic_tiling(tileset: WangTileSet, basis) -> bool:
    """True iff the quotient torus of the basis lattice admits a valid tiling."""
    instance = TilingInstance(tileset, (1, 1), {}, wrap=tuple(map(tuple, basis)))
    return solve(instance) is not None


def sublattice_bases(max_index: int):
    """Canonical bases of all sublattices of Z^2 of index 1..max_index.

    Hermite forms with columns (a, c) and (0, d), ad = n, 0 <= c < d.
    """
    for n in range(1, max_index + 1):
        for d in range(1, n + 1):
            if n % d:
                continue
            a = n // d
            for c in range(d):
                yield ((a, 0), (c, d))


def _pattern_check(task) -> tuple[tuple, bool]:
    tiles, r, columns = task
    tileset = WangTileSet(tiles)
    word = Word2d(columns)
    return columns, admits_surrounding(tileset, word, r)


def patterns_with_surrounding(
    tileset: WangTileSet, shape: tuple[int, int], r: int, jobs: int | None = None
) -> set[Word2d]:
    """All shape-patterns admitting a surrounding of radius r."""
    from .jobs import parallel_map

    candidates = solve_all(TilingInstance(tileset, shape))
    tasks = [(tileset.tiles, r, w.columns) for w in candidates]
    return {
        Word2d(columns)
        for columns, good in parallel_map(_pattern_check, tasks, jobs)
        if good
    }
