"""Finite reduced root systems in simple-root coordinates.

Roots are integer tuples of length ``rank`` giving coefficients over the
simple roots.  The invariant form is stored as a rational Gram matrix on
the simple roots, normalized so that the short roots of every simple
component have squared length 2.  Simple roots are numbered as in Bourbaki;
for ``G2`` the first simple root is the short one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Root = tuple[int, ...]
Weight = tuple[Fraction, ...]

FAMILIES = "ABCDEFG"


class SpecParseError(ValueError):
    """A model or Dynkin string could not be parsed.

    ``token`` is the offending substring and ``position`` its 0-based offset.
    """

    def __init__(self, message: str, token: str, position: int):
        super().__init__(f"{message}: {token!r} at position {position}")
        self.token = token
        self.position = position


class RootSystemError(ValueError):
    pass


def _check_rank(family: str, rank: int) -> str | None:
    if family == "A" and rank >= 1:
        return None
    if family in "BC" and rank >= 2:
        return None
    if family == "D" and rank >= 3:
        return None
    if family == "G" and rank == 2:
        return None
    if family == "F" and rank == 4:
        return None
    if family == "E" and rank in (6, 7, 8):
        return None
    return f"invalid rank {rank} for family {family}"


@dataclass(frozen=True)
class DynkinSpec:
    """Ordered list of simple components, e.g. ``(("A", 1), ("A", 1))``."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.components:
            raise RootSystemError("a Dynkin spec needs at least one component")
        for family, rank in self.components:
            if family not in FAMILIES:
                raise RootSystemError(f"unknown family {family!r} in component {family}{rank}")
            problem = _check_rank(family, rank)
            if problem:
                raise RootSystemError(f"{problem} (component {family}{rank})")

    @classmethod
    def parse(cls, text: str, offset: int = 0) -> DynkinSpec:
        """Parse ``"A2"``, ``"b3"``, ``"A1xA1"``; ``offset`` shifts reported positions."""
        if not text:
            raise SpecParseError("empty Dynkin spec", text, offset)
        for n, ch in enumerate(text):
            if ch.isspace():
                raise SpecParseError("whitespace is not allowed", ch, offset + n)
        components = []
        pos = 0
        for chunk in text.lower().split("x"):
            where = offset + pos
            if not chunk:
                raise SpecParseError("empty component", "x", where)
            family = chunk[0].upper()
            digits = chunk[1:]
            if family not in FAMILIES:
                raise SpecParseError("unknown family letter", chunk[0], where)
            if not digits or not digits.isdigit() or not digits.isascii():
                bad = digits or chunk
                raise SpecParseError("expected a rank after the family letter", bad, where + (1 if digits else 0))
            rank = int(digits)
            problem = _check_rank(family, rank)
            if problem:
                raise SpecParseError(problem, chunk, where)
            components.append((family, rank))
            pos += len(chunk) + 1
        return cls(tuple(components))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    def __str__(self) -> str:
        return "x".join(f"{f}{r}" for f, r in self.components)


def _simple_lengths(family: str, rank: int) -> list[int]:
    if family == "B":
        return [4] * (rank - 1) + [2]
    if family == "C":
        return [2] * (rank - 1) + [4]
    if family == "G":
        return [2, 6]
    if family == "F":
        return [4, 4, 2, 2]
    return [2] * rank


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    if family == "D":
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if family == "E":
        return [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, rank - 1)]
    return [(i, i + 1) for i in range(rank - 1)]


def component_gram(family: str, rank: int) -> list[list[Fraction]]:
    lengths = _simple_lengths(family, rank)
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = Fraction(lengths[i])
    for i, j in _edges(family, rank):
        # joined nodes: <a_i, a_j> = -max(|a_i|^2, |a_j|^2) / 2
        gram[i][j] = gram[j][i] = -Fraction(max(lengths[i], lengths[j]), 2)
    return gram


def expected_root_count(family: str, rank: int) -> int:
    n = rank
    return {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "G": 12,
        "F": 48,
        "E": {6: 72, 7: 126, 8: 240}.get(n, 0),
    }[family]


def height(root: Sequence[int]) -> int:
    return sum(root)


def root_order_key(root: Root) -> tuple:
    """Total order on positive roots: height, then coordinates lexicographically
    from the first simple root (so ``alpha_1`` precedes ``alpha_2``)."""
    return (height(root), tuple(-c for c in root))


def negate(v: Sequence) -> tuple:
    return tuple(-c for c in v)


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


@dataclass(frozen=True)
class RootSystem:
    """Immutable root system.  Equality and hashing go through ``spec`` only."""

    spec: DynkinSpec
    roots: tuple[Root, ...] = field(compare=False, repr=False)
    positive_roots: tuple[Root, ...] = field(compare=False, repr=False)
    gram: tuple[tuple[Fraction, ...], ...] = field(compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def negative_roots(self) -> tuple[Root, ...]:
        return tuple(negate(r) for r in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def component_ranges(self) -> tuple[range, ...]:
        out, start = [], 0
        for _, r in self.spec.components:
            out.append(range(start, start + r))
            start += r
        return tuple(out)

    def component_of(self, root: Root) -> int:
        for n, span in enumerate(self.component_ranges):
            if any(root[i] for i in span):
                return n
        raise ValueError(f"{root} is zero")

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.root_set

    def is_positive(self, root: Root) -> bool:
        return all(c >= 0 for c in root)

    def simple_root(self, i: int) -> Root:
        """Simple root ``alpha_i`` with the 1-based index ``i``."""
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def inner_product(self, x: Sequence, y: Sequence) -> Fraction:
        return inner_product(self, x, y)

    def norm2(self, x: Sequence) -> Fraction:
        return inner_product(self, x, x)

    def coroot_pairing(self, alpha: Root) -> tuple[int, ...]:
        """Integers ``alpha_i(H_alpha) = 2<alpha_i, alpha>/<alpha, alpha>``."""
        cache = self.__dict__.setdefault("_coroot_pairing", {})
        if alpha not in cache:
            n2 = self.norm2(alpha)
            out = []
            for i in range(self.rank):
                v = 2 * sum((self.gram[i][j] * alpha[j] for j in range(self.rank)), Fraction(0)) / n2
                assert v.denominator == 1
                out.append(int(v))
            cache[alpha] = tuple(out)
        return cache[alpha]

    def cartan_integer(self, beta: Root, alpha: Root) -> int:
        """``2<beta, alpha>/<alpha, alpha>``, an integer for roots."""
        return sum(b * w for b, w in zip(beta, self.coroot_pairing(tuple(alpha))))

    def reflect(self, alpha: Root, beta: Root) -> Root:
        c = self.cartan_integer(beta, alpha)
        return tuple(b - c * a for a, b in zip(alpha, beta))

    def highest_root(self, component: int = 0) -> Root:
        span = self.component_ranges[component]
        return max((r for r in self.positive_roots if any(r[i] for i in span)), key=height)


def inner_product(rs: RootSystem, x: Sequence, y: Sequence) -> Fraction:
    """Exact ``x^T gram y`` for weight vectors in simple-root coordinates."""
    n = rs.rank
    if len(x) != n or len(y) != n:
        raise ValueError(f"dimension mismatch: expected vectors of length {n}, got {len(x)} and {len(y)}")
    total = Fraction(0)
    for i in range(n):
        if not x[i]:
            continue
        row = rs.gram[i]
        total += x[i] * sum((row[j] * y[j] for j in range(n) if y[j] and row[j]), Fraction(0))
    return total


def _positive_roots(gram: list[list[Fraction]]) -> list[Root]:
    rank = len(gram)
    simple = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    known = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(rank):
                if beta == simple[i]:
                    continue
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) not in known:
                        break
                    p += 1
                pairing = sum(beta[j] * gram[j][i] for j in range(rank))
                cartan = 2 * pairing / gram[i][i]
                q = p - cartan
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(known, key=root_order_key)


@lru_cache(maxsize=None)
def build_root_system(spec: DynkinSpec | str) -> RootSystem:
    """Build the full reduced root system of ``spec`` (a ``DynkinSpec`` or string)."""
    if isinstance(spec, str):
        spec = DynkinSpec.parse(spec)
    rank = spec.rank
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    positives: list[Root] = []
    start = 0
    for family, r in spec.components:
        block = component_gram(family, r)
        for i in range(r):
            for j in range(r):
                gram[start + i][start + j] = block[i][j]
        for root in _positive_roots(block):
            positives.append((0,) * start + root + (0,) * (rank - start - r))
        start += r
    positives.sort(key=root_order_key)
    roots = tuple(positives) + tuple(negate(r) for r in positives)
    rs = RootSystem(
        spec=spec,
        roots=roots,
        positive_roots=tuple(positives),
        gram=tuple(tuple(row) for row in gram),
    )
    for (family, r), span in zip(spec.components, rs.component_ranges):
        count = sum(1 for x in roots if any(x[i] for i in span))
        if count != expected_root_count(family, r):
            raise RootSystemError(f"component {family}{r}: built {count} roots")
    members = rs.root_set
    for a in roots:
        w = rs.coroot_pairing(a)
        for b in roots:
            c = sum(x * y for x, y in zip(b, w))
            if tuple(y - c * x for x, y in zip(a, b)) not in members:
                raise RootSystemError(f"reflection of {b} in {a} left the root set")
    return rs


def root_string(rs: RootSystem, alpha: Root, beta: Root) -> tuple[int, int]:
    """``(p, q)`` with ``beta - p*alpha, ..., beta + q*alpha`` the alpha-string through beta."""
    alpha, beta = tuple(alpha), tuple(beta)
    if not rs.is_root(alpha) or not rs.is_root(beta):
        raise ValueError("root_string needs two roots of the system")
    if alpha == beta or alpha == negate(beta):
        raise ValueError("root string undefined for alpha = +/- beta")
    p = 0
    while rs.is_root(tuple(b - (p + 1) * a for a, b in zip(alpha, beta))):
        p += 1
    q = 0
    while rs.is_root(tuple(b + (q + 1) * a for a, b in zip(alpha, beta))):
        q += 1
    return p, q


def as_weight(values: Iterable) -> Weight:
    return tuple(Fraction(v) for v in values)
