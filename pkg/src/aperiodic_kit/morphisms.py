"""2-dimensional morphisms: rule tables sending letters to rectangular words.

Application assembles a block matrix of letter images, which is defined only
when image widths agree along every column of the argument and image heights
agree along every row.  Language generation, the seed graph and periodic
seeds are all computed by iterating a rule table on letters.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from .words import Language2d, Word2d, occurs_at, subwords


class UnknownLetter(KeyError):
    """A word uses a letter outside the morphism's domain."""


class UndefinedImage(ValueError):
    """Blockwise image assembly failed: inconsistent image shapes."""


class NotStabilized(RuntimeError):
    """Language generation still growing at the iteration bound."""


class NotExpansive(ValueError):
    """Operation requires an expansive morphism."""


class Morphism2d:
    """Rule table ``letter -> Word2d`` between integer-range alphabets."""

    def __init__(
        self,
        rule: Mapping[int, Word2d | Iterable[Iterable[int]]],
        domain_size: int | None = None,
        codomain_size: int | None = None,
    ):
        table = {}
        for letter, image in rule.items():
            table[int(letter)] = image if isinstance(image, Word2d) else Word2d(image)
        self.rule = table
        self.domain_size = domain_size if domain_size is not None else (
            max(table) + 1 if table else 0
        )
        if codomain_size is None:
            used = set()
            for image in table.values():
                used |= image.letters()
            codomain_size = max(used) + 1 if used else 0
        self.codomain_size = codomain_size
        if set(table) != set(range(self.domain_size)):
            raise ValueError("rule must cover exactly the letters 0..domain_size-1")

    @classmethod
    def identity(cls, size: int) -> "Morphism2d":
        return cls({a: Word2d.single(a) for a in range(size)}, size, size)

    @classmethod
    def from_permutation(cls, mapping: Mapping[int, int]) -> "Morphism2d":
        size = len(mapping)
        return cls({a: Word2d.single(b) for a, b in mapping.items()}, size, size)

    def __eq__(self, other):
        if not isinstance(other, Morphism2d):
            return NotImplemented
        return self.domain_size == other.domain_size and self.rule == other.rule

    def __hash__(self):
        return hash((self.domain_size, tuple(sorted((k, v) for k, v in self.rule.items()))))

    def image(self, letter: int) -> Word2d:
        try:
            return self.rule[letter]
        except KeyError:
            raise UnknownLetter(letter) from None

    def __call__(self, u: Word2d) -> Word2d:
        return self.apply(u)

    def apply(self, u: Word2d) -> Word2d:
        """Blockwise image of u; origin at the image of u's cell (0, 0)."""
        n1, n2 = u.shape
        if n1 == 0:
            return Word2d([])
        images = [[self.image(u[x, y]) for y in range(n2)] for x in range(n1)]
        widths = []
        for x in range(n1):
            w = images[x][0].shape[0]
            if any(images[x][y].shape[0] != w for y in range(n2)):
                raise UndefinedImage(f"image widths disagree in column {x}")
            widths.append(w)
        heights = []
        for y in range(n2):
            h = images[0][y].shape[1]
            if any(images[x][y].shape[1] != h for x in range(n1)):
                raise UndefinedImage(f"image heights disagree in row {y}")
            heights.append(h)
        columns = []
        for x in range(n1):
            for i in range(widths[x]):
                col = []
                for y in range(n2):
                    col.extend(images[x][y].columns[i])
                columns.append(tuple(col))
        return Word2d(columns)

    def iterate(self, letter: int, n: int) -> Word2d:
        w = Word2d.single(letter)
        for _ in range(n):
            w = self.apply(w)
        return w

    def to_json(self) -> dict:
        return {
            "domain": self.domain_size,
            "codomain": self.codomain_size,
            "rule": {str(a): w.to_json() for a, w in sorted(self.rule.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Morphism2d":
        return cls(
            {int(a): Word2d(cols) for a, cols in data["rule"].items()},
            data.get("domain"),
            data.get("codomain"),
        )

    def __repr__(self):
        return (
            f"Morphism2d(<{self.domain_size} letters -> "
            f"words over {self.codomain_size} letters>)"
        )


def compose(m1: Morphism2d, m2: Morphism2d) -> Morphism2d:
    """Rule table of ``letter -> m1(m2(letter))``."""
    if m2.codomain_size > m1.domain_size:
        raise UnknownLetter(
            f"codomain {m2.codomain_size} exceeds domain {m1.domain_size}"
        )
    return Morphism2d(
        {a: m1.apply(w) for a, w in m2.rule.items()},
        m2.domain_size,
        m1.codomain_size,
    )


def is_expansive(m: Morphism2d, bound: int = 12) -> bool:
    """True iff iterated images of every letter grow in both directions.

    Once some power sends every letter to an image of width and height at
    least 2, shapes at least double every further power, so checking powers
    up to ``bound`` decides expansiveness for any reasonable rule table.
    """
    if m.domain_size != m.codomain_size:
        raise ValueError("expansiveness needs domain = codomain")
    words = {a: Word2d.single(a) for a in range(m.domain_size)}
    for _ in range(bound):
        words = {a: m.apply(w) for a, w in words.items()}
        if all(min(w.shape) >= 2 for w in words.values()):
            return True
    return False


def is_primitive(m: Morphism2d) -> bool:
    """True iff some power of the rule makes every letter see every letter."""
    if m.domain_size != m.codomain_size:
        raise ValueError("primitivity needs domain = codomain")
    k = m.domain_size
    if k == 0:
        return False
    reach = [frozenset(m.image(a).letters()) for a in range(k)]
    step = list(reach)
    # Wielandt bound: a primitive k x k matrix has a positive power by (k-1)^2 + 1
    for _ in range((k - 1) ** 2 + 1):
        if all(len(r) == k for r in step):
            return True
        step = [frozenset().union(*(reach[b] for b in r)) if r else frozenset() for r in step]
    return False


def language(m: Morphism2d, shape: tuple[int, int], bound: int = 40) -> Language2d:
    """All factors of the given shape occurring in iterated letter images.

    Iterates the rule on every letter and extracts subwords until the
    collected set is unchanged by a further iteration.  For a primitive
    rule the sequence of sets is eventually constant, so the first repeat
    is the full factor set; a still-growing set at ``bound`` raises.
    Results are cached per (rule, shape); rule tables are never mutated.
    """
    return set(_language_cached(m, shape, bound))


@lru_cache(maxsize=None)
def _language_cached(m: Morphism2d, shape: tuple[int, int], bound: int) -> frozenset:
    s1, s2 = shape
    words = {a: Word2d.single(a) for a in range(m.domain_size)}
    seen: Language2d = set()
    for _ in range(bound):
        words = {a: m.apply(w) for a, w in words.items()}
        current = set(seen)
        for w in words.values():
            if w.shape[0] >= s1 and w.shape[1] >= s2:
                current |= subwords(w, shape)
        if current == seen and seen:
            return frozenset(seen)
        seen = current
    raise NotStabilized(f"language at shape {shape} still growing after {bound} iterations")


def seeds(m: Morphism2d) -> Language2d:
    """2x2 words lying on a cycle of the factor graph of the rule.

    The graph has every 2x2 word as a vertex and an edge ``u -> v`` when v
    is a factor of the image of u (if that image is defined).  Vertices on
    cycles are those inside a strongly connected component of size > 1 or
    carrying a self-loop.
    """
    if m.domain_size != m.codomain_size:
        raise ValueError("seed graph needs domain = codomain")
    alphabet = range(m.domain_size)
    vertices = [
        Word2d([[a, b], [c, d]])
        for a, b, c, d in product(alphabet, repeat=4)
    ]
    index = {w: i for i, w in enumerate(vertices)}
    edges: list[list[int]] = []
    for u in vertices:
        try:
            img = m.apply(u)
        except UndefinedImage:
            edges.append([])
            continue
        if img.shape[0] < 2 or img.shape[1] < 2:
            edges.append([])
            continue
        edges.append(sorted({index[v] for v in subwords(img, (2, 2))}))

    on_cycle = _cycle_vertices(len(vertices), edges)
    return {vertices[i] for i in on_cycle}


def _cycle_vertices(n: int, edges: list[list[int]]) -> set[int]:
    """Vertices on some directed cycle (iterative Tarjan SCC)."""
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    result: set[int] = set()
    counter = 0
    for root in range(n):
        if index_of[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                index_of[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for j in range(ei, len(edges[v])):
                w = edges[v][j]
                if index_of[w] == -1:
                    work[-1] = (v, j + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index_of[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                if len(component) > 1 or v in edges[v]:
                    result.update(component)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return result


def periodic_seeds(m: Morphism2d, max_period: int) -> list[tuple[Word2d, int]]:
    """2x2 language words that regenerate themselves under a power of m.

    A pair ``(u, k)`` is reported when u reoccurs in ``m^k(u)`` straddling
    the corner where the four letter-image blocks meet, i.e. at position
    ``shape(m^k(u(0,0))) - (1, 1)``: growing such a word by powers of m^k
    then converges to a configuration of the plane fixed by m^k.  Each u is
    reported once, with the least witnessing k.
    """
    if not is_expansive(m):
        raise NotExpansive("periodic seeds need an expansive morphism")
    found = []
    for u in sorted(language(m, (2, 2)), key=lambda w: w.columns):
        corner = Word2d.single(u[0, 0])
        image = u
        for k in range(1, max_period + 1):
            corner = m.apply(corner)
            image = m.apply(image)
            pos = (corner.shape[0] - 1, corner.shape[1] - 1)
            if occurs_at(u, image, pos):
                found.append((u, k))
                break
    return found
