"""Brute-force oracles used by tests, independent of the library's own paths.

The preimage parser enumerates every centered block decomposition of a
finite window under a rule table: all anchors, all block scaffolds
(column widths and row heights drawn from the rule's image shapes), and
all letters per block consistent with the window on overlap.
"""

from __future__ import annotations

from itertools import product

from aperiodic_kit.morphisms import Morphism2d
from aperiodic_kit.words import Word2d


def _splittings(total: int, start_offset: int, sizes: list[int]):
    """Sequences of sizes tiling [start_offset, total) from start_offset <= 0."""

    def rec(position, acc):
        if position >= total:
            yield tuple(acc)
            return
        for s in sizes:
            acc.append(s)
            yield from rec(position + s, acc)
            acc.pop()

    yield from rec(start_offset, [])


def centered_preimage_candidates(
    m: Morphism2d, window: Word2d, language_check=None
):
    """Distinct centered decompositions of the window under the rule table.

    A candidate is (anchor, interior letters): the anchor positions the
    image of the preimage's origin letter over the window's (0,0) cell,
    and the interior letters are those of blocks lying entirely inside
    the window (boundary blocks are cut off and their letters are not
    determined by the window).  A configuration-level centered preimage
    restricts to such a candidate, so recognizability predicts at most
    one candidate per language window.

    ``language_check(patch)`` may reject candidates whose interior patch
    cannot occur in the subshift at all; preimages of the definition are
    configurations of the subshift, so this keeps the oracle faithful
    while pruning decompositions that exist only locally.
    """
    width, height = window.shape
    widths = sorted({m.image(a).shape[0] for a in range(m.domain_size)})
    heights = sorted({m.image(a).shape[1] for a in range(m.domain_size)})
    by_shape: dict = {}
    for a in range(m.domain_size):
        by_shape.setdefault(m.image(a).shape, []).append(a)

    candidates = set()
    for kx, ky in product(range(max(widths)), range(max(heights))):
        for col_widths in _splittings(width, -kx, widths):
            if kx >= col_widths[0]:
                continue  # anchor must fall inside the first block
            xs = [-kx]
            for w in col_widths:
                xs.append(xs[-1] + w)
            for row_heights in _splittings(height, -ky, heights):
                if ky >= row_heights[0]:
                    continue
                ys = [-ky]
                for h in row_heights:
                    ys.append(ys[-1] + h)
                interior = {}
                feasible = True
                for i, w in enumerate(col_widths):
                    for j, h in enumerate(row_heights):
                        matches = [
                            a
                            for a in by_shape.get((w, h), [])
                            if _block_matches(m, window, a, xs[i], ys[j])
                        ]
                        if not matches:
                            feasible = False
                            break
                        inside = (
                            xs[i] >= 0
                            and ys[j] >= 0
                            and xs[i] + w <= width
                            and ys[j] + h <= height
                        )
                        if inside:
                            if len(matches) > 1:
                                raise AssertionError(
                                    "two letters share a full image block"
                                )
                            interior[(i, j)] = matches[0]
                    if not feasible:
                        break
                if not feasible:
                    continue
                patch = _interior_patch(interior)
                if patch is not None and language_check is not None:
                    if not language_check(patch):
                        continue
                candidates.add(
                    (
                        (kx, ky),
                        tuple(sorted((xs[i], ys[j], a) for (i, j), a in interior.items())),
                    )
                )
    return candidates


def _interior_patch(interior: dict):
    """Interior block letters as a word in block coordinates, if rectangular."""
    if not interior:
        return None
    cols = sorted({i for i, _ in interior})
    rows = sorted({j for _, j in interior})
    if len(cols) * len(rows) != len(interior):
        return None
    try:
        return Word2d(
            [[interior[(i, j)] for j in rows] for i in cols]
        )
    except KeyError:
        return None


def _block_matches(m, window, letter, x0, y0) -> bool:
    image = m.image(letter)
    width, height = window.shape
    for dx in range(image.shape[0]):
        for dy in range(image.shape[1]):
            x, y = x0 + dx, y0 + dy
            if 0 <= x < width and 0 <= y < height:
                if window[x, y] != image[dx, dy]:
                    return False
    return True


def candidates_consistent(candidates) -> bool:
    """True iff all candidates share one anchor and agree on shared blocks.

    Finite windows cannot determine the block scaffold at their far edges,
    so distinct candidates legitimately differ by boundary refinements;
    recognizability at the window scale means they never conflict.
    """
    candidates = list(candidates)
    if len({k for k, _ in candidates}) > 1:
        return False
    for i in range(len(candidates)):
        a = {(x, y): letter for x, y, letter in candidates[i][1]}
        for j in range(i + 1, len(candidates)):
            for (x, y, letter) in candidates[j][1]:
                if a.get((x, y), letter) != letter:
                    return False
    return True


def translate_overlap_agrees(w: Word2d, p: tuple[int, int]) -> bool:
    """True iff w agrees with its translate by p wherever both are defined."""
    px, py = p
    n1, n2 = w.shape
    for x in range(n1):
        for y in range(n2):
            if 0 <= x + px < n1 and 0 <= y + py < n2:
                if w[x, y] != w[x + px, y + py]:
                    return False
    return True


def periodic_admissible_extension(
    w: Word2d, p: tuple[int, int], h_pairs, v_pairs, margin: int = 4
) -> bool:
    """Can w extend to a p-periodic pattern with all dominoes allowed?

    Complete backtracking over the inflated support with the letters at z
    and z + p identified.
    """
    n1, n2 = w.shape
    width, height = n1 + 2 * margin, n2 + 2 * margin
    px, py = p

    # representative for each periodicity class inside the domain
    def canon(cell):
        x, y = cell
        if px or py:
            # walk back along p while staying in the domain
            while 0 <= x - px < width and 0 <= y - py < height and (
                (x - px, y - py) < (x, y)
            ):
                x, y = x - px, y - py
            while 0 <= x + px < width and 0 <= y + py < height and (
                (x + px, y + py) < (x, y)
            ):
                x, y = x + px, y + py
        return (x, y)

    fixed = {}
    for x in range(n1):
        for y in range(n2):
            cell = canon((x + margin, y + margin))
            if cell in fixed and fixed[cell] != w[x, y]:
                return False
            fixed[cell] = w[x, y]

    order = [(x, y) for y in range(height) for x in range(width)]
    assignment: dict = {}

    right_of = {}
    above_of = {}
    for a, b in h_pairs:
        right_of.setdefault(a, set()).add(b)
    for a, b in v_pairs:
        above_of.setdefault(a, set()).add(b)

    def candidates(cell):
        key = canon(cell)
        if key in assignment:
            return [assignment[key]]
        x, y = cell
        choices = [fixed[key]] if key in fixed else list(range(19))
        left = assignment.get(canon((x - 1, y)))
        below = assignment.get(canon((x, y - 1)))
        if left is not None:
            allowed = right_of.get(left, set())
            choices = [c for c in choices if c in allowed]
        if below is not None:
            allowed = above_of.get(below, set())
            choices = [c for c in choices if c in allowed]
        return choices

    def backtrack(i):
        if i == len(order):
            return True
        cell = order[i]
        key = canon(cell)
        if key in assignment:
            # identified with an earlier cell; just re-check local edges
            x, y = cell
            value = assignment[key]
            left = assignment.get(canon((x - 1, y)))
            below = assignment.get(canon((x, y - 1)))
            if left is not None and value not in right_of.get(left, set()):
                return False
            if below is not None and value not in above_of.get(below, set()):
                return False
            return backtrack(i + 1)
        for value in candidates(cell):
            assignment[key] = value
            if backtrack(i + 1):
                return True
            del assignment[key]
        return False

    return backtrack(0)
