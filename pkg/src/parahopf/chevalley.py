"""Chevalley bases of semisimple Lie algebras with exact integer structure constants.

Signs are fixed by the extraspecial-pair convention: for each non-simple
positive root ``xi`` let ``(a, b)`` be the pair of positive roots with
``a + b = xi``, ``a`` before ``b``, and ``a`` as early as possible in the
root order (``rootsys.root_order_key``).  Then ``N[a, b] = p + 1`` with
``p`` maximal such that ``b - p*a`` is a root.  Every other constant follows
from antisymmetry, ``N[-a, -b] = -N[a, b]``, the cyclic rule for
``a + b + c = 0`` and the four-root relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import numpy as np

from .rootsys import Root, RootSystem, add, negate, root_string, sub


@dataclass(frozen=True, order=True)
class RootVector:
    root: Root

    def __str__(self) -> str:
        return f"X{list(self.root)}"


@dataclass(frozen=True, order=True)
class Coroot:
    """Simple coroot ``H_{alpha_i}``; ``index`` is 1-based."""

    index: int

    def __str__(self) -> str:
        return f"H{self.index}"


BasisIndex = Union[RootVector, Coroot]


class AlgebraElement:
    """Finitely supported rational combination of Chevalley basis vectors."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: ChevalleyAlgebra, coeffs: Mapping[BasisIndex, object] | None = None):
        self.algebra = algebra
        clean = {}
        for key, value in (coeffs or {}).items():
            if key not in algebra.position:
                raise ValueError(f"{key} is not a basis vector of {algebra.rs.spec}")
            value = Fraction(value)
            if value:
                clean[key] = value
        self.coeffs: dict[BasisIndex, Fraction] = clean

    def _check(self, other: AlgebraElement) -> None:
        if not isinstance(other, AlgebraElement) or other.algebra.rs != self.algebra.rs:
            raise ValueError("operands belong to different algebras")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return AlgebraElement(self.algebra, out)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __mul__(self, scalar) -> AlgebraElement:
        s = Fraction(scalar)
        return AlgebraElement(self.algebra, {k: s * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra.rs == other.algebra.rs and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        order = self.algebra.position
        terms = sorted(self.coeffs.items(), key=lambda kv: order[kv[0]])
        return " + ".join(f"{v}*{k}" for k, v in terms)

    def vector(self) -> list[Fraction]:
        out = [Fraction(0)] * self.algebra.dim
        for k, v in self.coeffs.items():
            out[self.algebra.position[k]] = v
        return out


def _structure_constants(rs: RootSystem) -> dict[tuple[Root, Root], int]:
    """Structure constants ``N[a, b]`` for all roots ``a, b`` with ``a + b`` a root."""
    rank = rs.rank
    positive = rs.positive_roots
    order = {r: n for n, r in enumerate(positive)}
    table: dict[tuple[Root, Root], int] = {}
    norm = {r: rs.norm2(r) for r in rs.roots}

    def n(x: Root, y: Root) -> int:
        s = add(x, y)
        if not rs.is_root(s):
            return 0
        xp, yp = rs.is_positive(x), rs.is_positive(y)
        if xp and yp:
            return table[(x, y)]
        if not xp and not yp:
            return -table[(negate(x), negate(y))]
        z = negate(s)
        # N[x,y]/|z|^2 = N[y,z]/|x|^2 = N[z,x]/|y|^2 whenever x + y + z = 0
        if rs.is_positive(z) == xp:
            value = norm[z] / norm[y] * n(z, x)
        else:
            value = norm[z] / norm[x] * n(y, z)
        assert value.denominator == 1
        return int(value)

    zero = (0,) * rank
    for xi in positive:
        if sum(xi) < 2:
            continue
        pairs = []
        for a in positive:
            b = sub(xi, a)
            if b in order and order[a] < order[b]:
                pairs.append((a, b))
        a0, b0 = min(pairs, key=lambda ab: order[ab[0]])
        p, _ = root_string(rs, a0, b0)
        n0 = p + 1
        table[(a0, b0)] = n0
        table[(b0, a0)] = -n0
        for a, b in pairs:
            if (a, b) == (a0, b0):
                continue
            total = Fraction(0)
            d = sub(b, a0)
            if d != zero and rs.is_root(d):
                total += Fraction(n(b, negate(a0)) * n(a, negate(b0))) / norm[d]
            d = sub(a, a0)
            if d != zero and rs.is_root(d):
                total += Fraction(n(negate(a0), a) * n(b, negate(b0))) / norm[d]
            value = norm[xi] / n0 * total
            assert value.denominator == 1, (a, b, value)
            table[(a, b)] = int(value)
            table[(b, a)] = -int(value)

    full = {}
    for x in rs.roots:
        for y in rs.roots:
            if rs.is_root(add(x, y)):
                full[(x, y)] = n(x, y)
    return full


class ChevalleyAlgebra:
    """Chevalley basis of the semisimple Lie algebra attached to ``rs``.

    The basis is ordered as positive roots (root order), negative roots in the
    same order, then simple coroots ``H_1 .. H_rank``.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n_table: dict[tuple[Root, Root], int] = _structure_constants(rs)
        self.coroot_coords: dict[Root, tuple[int, ...]] = {}
        for r in rs.roots:
            n2 = rs.norm2(r)
            coords = []
            for i in range(rs.rank):
                c = r[i] * rs.gram[i][i] / n2
                assert c.denominator == 1
                coords.append(int(c))
            self.coroot_coords[r] = tuple(coords)

        self.basis: tuple[BasisIndex, ...] = (
            tuple(RootVector(r) for r in rs.positive_roots)
            + tuple(RootVector(r) for r in rs.negative_roots)
            + tuple(Coroot(i + 1) for i in range(rs.rank))
        )
        self.position: dict[BasisIndex, int] = {b: k for k, b in enumerate(self.basis)}
        self._table = self._basis_brackets()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def n(self, alpha: Root, beta: Root) -> int:
        """``N[alpha, beta]``, zero when ``alpha + beta`` is not a root."""
        return self.n_table.get((tuple(alpha), tuple(beta)), 0)

    def _basis_brackets(self) -> list[list[tuple[tuple[int, int], ...]]]:
        rs, pos = self.rs, self.position
        dim = self.dim
        table = [[()] * dim for _ in range(dim)]
        for i, bi in enumerate(self.basis):
            for j, bj in enumerate(self.basis):
                if isinstance(bi, RootVector) and isinstance(bj, RootVector):
                    a, b = bi.root, bj.root
                    if a == negate(b):
                        out = tuple(
                            (pos[Coroot(k + 1)], c) for k, c in enumerate(self.coroot_coords[a]) if c
                        )
                    else:
                        nab = self.n(a, b)
                        out = ((pos[RootVector(add(a, b))], nab),) if nab else ()
                elif isinstance(bi, Coroot) and isinstance(bj, RootVector):
                    c = rs.cartan_integer(bj.root, rs.simple_root(bi.index))
                    out = ((j, c),) if c else ()
                elif isinstance(bi, RootVector) and isinstance(bj, Coroot):
                    c = rs.cartan_integer(bi.root, rs.simple_root(bj.index))
                    out = ((i, -c),) if c else ()
                else:
                    out = ()
                table[i][j] = out
        return table

    def basis_bracket(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        """Sparse ``[e_i, e_j]`` as ``((k, coeff), ...)`` over basis positions."""
        return self._table[i][j]

    def element(self, coeffs: Mapping[BasisIndex, object] | None = None) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def x(self, root: Iterable[int]) -> AlgebraElement:
        return AlgebraElement(self, {RootVector(tuple(root)): 1})

    def h(self, index: int) -> AlgebraElement:
        return AlgebraElement(self, {Coroot(index): 1})

    def h_root(self, root: Iterable[int]) -> AlgebraElement:
        """``H_alpha`` expanded over the simple coroots."""
        coords = self.coroot_coords[tuple(root)]
        return AlgebraElement(self, {Coroot(k + 1): c for k, c in enumerate(coords)})

    def from_vector(self, vec: Iterable) -> AlgebraElement:
        return AlgebraElement(self, {self.basis[k]: v for k, v in enumerate(vec) if v})

    def bracket(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        return bracket(self, a, b)



def _unit(dim: int, i: int) -> list[int]:
    v = [0] * dim
    v[i] = 1
    return v


@lru_cache(maxsize=None)
def build_chevalley_algebra(rs: RootSystem) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(rs)


def bracket(alg: ChevalleyAlgebra, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    for e in (a, b):
        if not isinstance(e, AlgebraElement) or e.algebra.rs != alg.rs:
            raise ValueError("bracket operands must belong to this algebra")
    pos = alg.position
    out: dict[int, Fraction] = {}
    for ka, va in a.coeffs.items():
        i = pos[ka]
        for kb, vb in b.coeffs.items():
            for k, c in alg.basis_bracket(i, pos[kb]):
                out[k] = out.get(k, 0) + va * vb * c
    return AlgebraElement(alg, {alg.basis[k]: v for k, v in out.items()})


def adjoint_matrix(alg: ChevalleyAlgebra, a: AlgebraElement) -> np.ndarray:
    """Matrix of ``x -> [a, x]`` (columns are images of basis vectors), dtype object."""
    dim = alg.dim
    mat = np.full((dim, dim), Fraction(0), dtype=object)
    pos = alg.position
    for key, v in a.coeffs.items():
        i = pos[key]
        for j in range(dim):
            for k, c in alg.basis_bracket(i, j):
                mat[k, j] += v * c
    return mat


def killing_form(alg: ChevalleyAlgebra, a: AlgebraElement, b: AlgebraElement) -> Fraction:
    """``trace(ad a . ad b)``."""
    pos = alg.position
    total = Fraction(0)
    for ka, va in a.coeffs.items():
        i = pos[ka]
        for kb, vb in b.coeffs.items():
            j = pos[kb]
            # sum over basis x of the x-coefficient of [a, [b, x]]
            acc = 0
            for x in range(alg.dim):
                for y, c1 in alg.basis_bracket(j, x):
                    for z, c2 in alg.basis_bracket(i, y):
                        if z == x:
                            acc += c1 * c2
            total += va * vb * acc
    return total


@dataclass
class AxiomReport:
    integrality: bool
    negation_antisymmetry: bool
    swap_antisymmetry: bool
    string_magnitude: bool
    coroot_pairing: bool
    jacobi: bool
    killing_proportional: bool
    killing_constants: list[Fraction] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all((self.integrality, self.negation_antisymmetry, self.swap_antisymmetry,
                    self.string_magnitude, self.coroot_pairing, self.jacobi, self.killing_proportional))

    def as_dict(self) -> dict:
        return {
            "integrality": self.integrality,
            "negation_antisymmetry": self.negation_antisymmetry,
            "swap_antisymmetry": self.swap_antisymmetry,
            "string_magnitude": self.string_magnitude,
            "coroot_pairing": self.coroot_pairing,
            "jacobi": self.jacobi,
            "killing_proportional": self.killing_proportional,
            "killing_constants": [str(c) for c in self.killing_constants],
            "failures": list(self.failures),
            "ok": self.ok,
        }


def jacobi_failures(dim: int, bracket_of, limit: int = 10) -> list[tuple[int, int, int]]:
    """Ordered basis triples where ``[[a,b],c] + [[b,c],a] + [[c,a],b] != 0``.

    ``bracket_of(i, j)`` returns the sparse bracket of basis vectors ``i, j``.
    """
    bad = []
    for i in range(dim):
        for j in range(dim):
            ij = bracket_of(i, j)
            for k in range(dim):
                acc: dict[int, int] = {}
                for x, c in ij:
                    for y, d in bracket_of(x, k):
                        acc[y] = acc.get(y, 0) + c * d
                for x, c in bracket_of(j, k):
                    for y, d in bracket_of(x, i):
                        acc[y] = acc.get(y, 0) + c * d
                for x, c in bracket_of(k, i):
                    for y, d in bracket_of(x, j):
                        acc[y] = acc.get(y, 0) + c * d
                if any(acc.values()):
                    bad.append((i, j, k))
                    if len(bad) >= limit:
                        return bad
    return bad


def hcoroot_form(rs: RootSystem, i: int, j: int) -> Fraction:
    """Invariant form on simple coroots: ``4<a_i, a_j>/(|a_i|^2 |a_j|^2)`` (0-based)."""
    g = rs.gram
    return 4 * g[i][j] / (g[i][i] * g[j][j])


def verify_chevalley_axioms(alg: ChevalleyAlgebra) -> AxiomReport:
    rs = alg.rs
    failures: list[str] = []

    integrality = all(isinstance(v, int) for v in alg.n_table.values())
    negation = swap = magnitude = True
    for (a, b), v in alg.n_table.items():
        if alg.n(negate(a), negate(b)) != -v:
            negation = False
            failures.append(f"N[-a,-b] != -N[a,b] for a={a}, b={b}")
        if alg.n(b, a) != -v:
            swap = False
            failures.append(f"N[b,a] != -N[a,b] for a={a}, b={b}")
        p, _ = root_string(rs, a, b)
        if abs(v) != p + 1:
            magnitude = False
            failures.append(f"|N[a,b]| != p+1 for a={a}, b={b}")
    # every pair with a + b a root must be present
    for a in rs.roots:
        for b in rs.roots:
            if rs.is_root(add(a, b)) and (a, b) not in alg.n_table:
                integrality = False
                failures.append(f"missing N[a,b] for a={a}, b={b}")

    coroot_ok = True
    for a in rs.roots:
        for b in rs.roots:
            lhs = sum(c * pr for c, pr in zip(alg.coroot_coords[b], a_pairings(rs, a)))
            if Fraction(lhs) != 2 * rs.inner_product(a, b) / rs.norm2(b):
                coroot_ok = False
                failures.append(f"a(H_b) mismatch for a={a}, b={b}")

    bad = jacobi_failures(alg.dim, alg.basis_bracket)
    for t in bad:
        failures.append("Jacobi fails on " + ", ".join(str(alg.basis[x]) for x in t))

    kappa_ok, constants = _killing_check(alg, failures)
    return AxiomReport(
        integrality=integrality,
        negation_antisymmetry=negation,
        swap_antisymmetry=swap,
        string_magnitude=magnitude,
        coroot_pairing=coroot_ok,
        jacobi=not bad,
        killing_proportional=kappa_ok,
        killing_constants=constants,
        failures=failures,
    )


def a_pairings(rs: RootSystem, a: Root) -> tuple[int, ...]:
    """``a(H_{alpha_i})`` for each simple coroot."""
    return tuple(rs.cartan_integer(a, rs.simple_root(i + 1)) for i in range(rs.rank))


def killing_constants(alg: ChevalleyAlgebra) -> list[Fraction]:
    rs = alg.rs
    out = []
    for span in rs.component_ranges:
        i = span.start
        out.append(killing_form(alg, alg.h(i + 1), alg.h(i + 1)) / hcoroot_form(rs, i, i))
    return out


def _killing_check(alg: ChevalleyAlgebra, failures: list[str]) -> tuple[bool, list[Fraction]]:
    rs = alg.rs
    constants = killing_constants(alg)
    comp = {}
    for n, span in enumerate(rs.component_ranges):
        for i in span:
            comp[i] = n
    ok = all(c > 0 for c in constants)
    for i in range(rs.rank):
        for j in range(rs.rank):
            k = killing_form(alg, alg.h(i + 1), alg.h(j + 1))
            want = constants[comp[i]] * hcoroot_form(rs, i, j) if comp[i] == comp[j] else 0
            if k != want:
                ok = False
                failures.append(f"Killing form mismatch on H{i + 1}, H{j + 1}")
    return ok, constants


def n_table_dump(alg: ChevalleyAlgebra) -> list[dict]:
    """Deterministic list of ``{"alpha", "beta", "n"}`` rows in basis order."""
    order = {b.root: k for k, b in enumerate(alg.basis) if isinstance(b, RootVector)}
    rows = sorted(alg.n_table.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]]))
    return [{"alpha": list(a), "beta": list(b), "n": v} for (a, b), v in rows]
