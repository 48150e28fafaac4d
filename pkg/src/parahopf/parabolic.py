"""Parabolic subalgebras from crossed Dynkin nodes, the delta weight, and the
affine action of the unipotent radical on torsion vectors.

A crossed set ``S`` of (1-based) simple-root indices determines the
parabolic containing every positive root space and the negative root spaces
of roots with zero coefficient on every node of ``S``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .chevalley import (
    BasisIndex,
    ChevalleyAlgebra,
    Coroot,
    RootVector,
    jacobi_failures,
)
from .rootsys import Root, RootSystem, Weight, add, height, negate

TorsionVector = dict  # Root (in noncompact_negative) -> Fraction


class SplitError(ValueError):
    """A proposed subalgebra/complement split is not reductive."""

    def __init__(self, message: str, pair: tuple[BasisIndex, BasisIndex] | None = None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class ParabolicData:
    rs: RootSystem
    crossed: frozenset[int]
    compact_roots: tuple[Root, ...]
    noncompact_positive: tuple[Root, ...]
    noncompact_negative: tuple[Root, ...]
    delta: Weight
    langlands_dims: tuple[int, int, int, int]

    @property
    def label(self) -> str:
        nodes = ",".join(str(i) for i in sorted(self.crossed))
        return f"{self.rs.spec}|crossed={nodes}" if nodes else str(self.rs.spec)

    def is_compact(self, root: Root) -> bool:
        return all(root[i - 1] == 0 for i in self.crossed)

    @property
    def effective(self) -> bool:
        """No simple component lies entirely in the parabolic."""
        return all(any(i - 1 in span for i in self.crossed) for span in self.rs.component_ranges)

    def delta_pairing(self, root: Sequence) -> Fraction:
        return self.rs.inner_product(self.delta, root)


def build_parabolic(rs: RootSystem, crossed: Iterable[int]) -> ParabolicData:
    crossed = frozenset(crossed)
    for i in crossed:
        if not isinstance(i, int) or not 1 <= i <= rs.rank:
            raise ValueError(f"crossed node {i} out of range 1..{rs.rank}")

    def compact(r: Root) -> bool:
        return all(r[i - 1] == 0 for i in crossed)

    compact_roots = tuple(r for r in rs.roots if compact(r))
    pos = tuple(r for r in rs.positive_roots if not compact(r))
    neg = tuple(negate(r) for r in pos)
    total = [Fraction(0)] * rs.rank
    for r in neg:
        for k, c in enumerate(r):
            total[k] += c
    delta = tuple(t / 2 for t in total)
    dims = (len(compact_roots) + rs.rank - len(crossed), len(crossed), len(pos), len(neg))
    return ParabolicData(rs, crossed, compact_roots, pos, neg, delta, dims)


def all_crossed_sets(rank: int, include_empty: bool = False) -> list[frozenset[int]]:
    out = []
    for size in range(0 if include_empty else 1, rank + 1):
        out.extend(frozenset(c) for c in itertools.combinations(range(1, rank + 1), size))
    return out


@dataclass
class DeltaReport:
    pairings: dict[Root, Fraction]
    violations: list[Root]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_delta_compactness(pd: ParabolicData) -> DeltaReport:
    pairings = {r: pd.delta_pairing(r) for r in pd.rs.roots}
    violations = [r for r, v in pairings.items() if (v == 0) != pd.is_compact(r)]
    return DeltaReport(pairings, violations)


def two_delta_identity(pd: ParabolicData) -> bool:
    """Sum of the noncompact negative roots equals ``2*delta``."""
    total = [0] * pd.rs.rank
    for r in pd.noncompact_negative:
        total = [a + b for a, b in zip(total, r)]
    return tuple(Fraction(t) for t in total) == tuple(2 * d for d in pd.delta)


@dataclass
class Effectivity:
    effective: bool
    generated_dim: int


def _check_same(alg: ChevalleyAlgebra, pd: ParabolicData) -> None:
    if alg.rs != pd.rs:
        raise ValueError(f"algebra over {alg.rs.spec} does not match parabolic over {pd.rs.spec}")


def generated_subalgebra(alg: ChevalleyAlgebra, roots: Iterable[Root]) -> tuple[set[Root], list[list[Fraction]]]:
    """Bracket closure of the root vectors ``X_r``.

    The closure of weight vectors is graded by weight; root spaces are lines,
    so it is tracked as a set of roots plus a row-reduced basis of its Cartan
    part (coordinates over the simple coroots).
    """
    have = set(roots)
    cartan: list[list[Fraction]] = []
    pivots: list[int] = []
    queue = list(have)
    while queue:
        nxt = []
        for a in queue:
            for b in list(have):
                s = add(a, b)
                if all(c == 0 for c in s):
                    vec = [Fraction(c) for c in alg.coroot_coords[a]]
                    _insert_row(cartan, pivots, vec)
                elif alg.n(a, b) and s not in have:
                    have.add(s)
                    nxt.append(s)
        queue = nxt
    # [h, X_r] is a multiple of X_r, and [h, h'] = 0, so nothing else is generated
    return have, cartan


def _insert_row(rows: list[list[Fraction]], pivots: list[int], vec: list[Fraction]) -> bool:
    vec = list(vec)
    for row, p in zip(rows, pivots):
        if vec[p]:
            f = vec[p] / row[p]
            vec = [x - f * y for x, y in zip(vec, row)]
    for p, x in enumerate(vec):
        if x:
            rows.append(vec)
            pivots.append(p)
            return True
    return False


def effectivity_check(alg: ChevalleyAlgebra, pd: ParabolicData) -> Effectivity:
    _check_same(alg, pd)
    noncompact = pd.noncompact_positive + pd.noncompact_negative
    have, cartan = generated_subalgebra(alg, noncompact)
    return Effectivity(pd.effective, len(have) + len(cartan))


@dataclass
class MutatedAlgebra:
    """Bracket table on the original basis with the complement made abelian."""

    algebra: ChevalleyAlgebra
    subalgebra: frozenset[BasisIndex]
    complement: frozenset[BasisIndex]
    table: list[list[tuple[tuple[int, int], ...]]] = field(repr=False)

    @property
    def basis(self) -> tuple[BasisIndex, ...]:
        return self.algebra.basis

    def basis_bracket(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        return self.table[i][j]

    def jacobi_failures(self, limit: int = 10) -> list[tuple[int, int, int]]:
        return jacobi_failures(len(self.basis), self.basis_bracket, limit)


def sharpe_mutation(alg: ChevalleyAlgebra, subalg_basis: Iterable[BasisIndex],
                    complement_basis: Iterable[BasisIndex]) -> MutatedAlgebra:
    sub_set, comp_set = frozenset(subalg_basis), frozenset(complement_basis)
    basis = alg.basis
    if sub_set & comp_set or (sub_set | comp_set) != set(basis):
        raise SplitError("subalgebra and complement must partition the Chevalley basis")
    pos = alg.position
    sub_pos = {pos[b] for b in sub_set}
    comp_pos = {pos[b] for b in comp_set}
    for i in sub_pos:
        for j in sub_pos:
            for k, _ in alg.basis_bracket(i, j):
                if k not in sub_pos:
                    raise SplitError(f"subalgebra not closed: [{basis[i]}, {basis[j]}] has a "
                                     f"{basis[k]} component", (basis[i], basis[j]))
        for j in comp_pos:
            for k, _ in alg.basis_bracket(i, j):
                if k not in comp_pos:
                    raise SplitError(f"complement not invariant: [{basis[i]}, {basis[j]}] has a "
                                     f"{basis[k]} component", (basis[i], basis[j]))
    dim = alg.dim
    table = [[() if (i in comp_pos and j in comp_pos) else alg.basis_bracket(i, j)
              for j in range(dim)] for i in range(dim)]
    return MutatedAlgebra(alg, sub_set, comp_set, table)


def reductive_split(alg: ChevalleyAlgebra, pd: ParabolicData) -> tuple[set[BasisIndex], set[BasisIndex]]:
    """``m + a`` (compact root vectors and all coroots) against the noncompact root vectors."""
    sub_part = {RootVector(r) for r in pd.compact_roots} | {Coroot(i + 1) for i in range(pd.rs.rank)}
    comp = set(alg.basis) - sub_part
    return sub_part, comp


@dataclass(frozen=True)
class AffineField:
    """Affine vector field ``T -> constant + linear(T)`` on torsion vectors.

    ``linear[(a, b)]`` is the coefficient of ``T_b`` in the ``d/dT_a``
    component.  Zero entries are never stored.
    """

    beta: Root | None
    constant: Mapping[Root, Fraction]
    linear: Mapping[tuple[Root, Root], Fraction]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineField):
            return NotImplemented
        return dict(self.constant) == dict(other.constant) and dict(self.linear) == dict(other.linear)

    def __hash__(self):
        return hash((frozenset(self.constant.items()), frozenset(self.linear.items())))

    def scaled(self, c) -> AffineField:
        c = Fraction(c)
        if not c:
            return AffineField(None, {}, {})
        return AffineField(self.beta, {k: c * v for k, v in self.constant.items()},
                           {k: c * v for k, v in self.linear.items()})

    def apply_linear(self, t: Mapping[Root, Fraction]) -> dict[Root, Fraction]:
        out: dict[Root, Fraction] = {}
        for (a, b), c in self.linear.items():
            v = t.get(b, 0)
            if v:
                out[a] = out.get(a, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def __call__(self, t: Mapping[Root, Fraction]) -> dict[Root, Fraction]:
        out = self.apply_linear(t)
        for k, v in self.constant.items():
            out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v}

    def flow(self, t: Mapping[Root, Fraction], s) -> dict[Root, Fraction]:
        """Exact time-``s`` flow.

        ``T(s) = sum_k s^k L^k T / k! + sum_k s^(k+1) L^k b / (k+1)!``; both
        series are finite because ``L`` is nilpotent.
        """
        s = Fraction(s)
        out = dict(t)
        term = dict(t)
        k = 0
        while term:
            k += 1
            term = {a: v * s / k for a, v in self.apply_linear(term).items()}
            for a, v in term.items():
                out[a] = out.get(a, 0) + v
        term = {a: v * s for a, v in self.constant.items()}
        k = 1
        while term:
            for a, v in term.items():
                out[a] = out.get(a, 0) + v
            k += 1
            term = {a: v * s / k for a, v in self.apply_linear(term).items()}
        return {a: out.get(a, Fraction(0)) for a in t}


def field_bracket(x: AffineField, y: AffineField) -> AffineField:
    """Lie bracket of vector fields, ``[X, Y] = DY.X - DX.Y``."""
    const: dict[Root, Fraction] = {}
    for k, v in y.apply_linear(x.constant).items():
        const[k] = const.get(k, 0) + v
    for k, v in x.apply_linear(y.constant).items():
        const[k] = const.get(k, 0) - v
    lin: dict[tuple[Root, Root], Fraction] = {}
    for (a, b), c in y.linear.items():
        for (b2, d), e in x.linear.items():
            if b2 == b:
                lin[(a, d)] = lin.get((a, d), 0) + c * e
    for (a, b), c in x.linear.items():
        for (b2, d), e in y.linear.items():
            if b2 == b:
                lin[(a, d)] = lin.get((a, d), 0) - c * e
    return AffineField(None, {k: v for k, v in const.items() if v}, {k: v for k, v in lin.items() if v})


def torsion_constant(pd: ParabolicData, beta: Root) -> Fraction:
    """``-4<delta, beta>/<beta, beta>``, the rate on ``T_{-beta}``."""
    return -4 * pd.delta_pairing(beta) / pd.rs.norm2(beta)


def torsion_action_fields(alg: ChevalleyAlgebra, pd: ParabolicData) -> list[AffineField]:
    _check_same(alg, pd)
    neg = set(pd.noncompact_negative)
    fields = []
    for beta in pd.noncompact_positive:
        const = {negate(beta): torsion_constant(pd, beta)}
        lin = {}
        for a in pd.noncompact_negative:
            target = add(a, beta)
            if target in neg:
                c = alg.n(beta, a)
                if c:
                    lin[(a, target)] = Fraction(c)
        fields.append(AffineField(beta, const, lin))
    return fields


def zero_torsion(pd: ParabolicData) -> TorsionVector:
    return {a: Fraction(0) for a in pd.noncompact_negative}


def _check_torsion(pd: ParabolicData, t: Mapping[Root, object]) -> dict[Root, Fraction]:
    if set(t) != set(pd.noncompact_negative):
        raise ValueError("torsion vector keys must be exactly the noncompact negative roots")
    return {a: Fraction(t[a]) for a in pd.noncompact_negative}


def apply_word(fields: Sequence[AffineField], word: Sequence[tuple[Root, Fraction]],
               t: Mapping[Root, object]) -> dict[Root, Fraction]:
    by_beta = {f.beta: f for f in fields}
    out = {a: Fraction(v) for a, v in t.items()}
    for beta, s in word:
        out = by_beta[beta].flow(out, s)
    return out


def normalize_torsion(alg: ChevalleyAlgebra, pd: ParabolicData,
                      t: Mapping[Root, object]) -> list[tuple[Root, Fraction]]:
    """Word ``[(beta, s), ...]`` whose successive flows carry ``t`` to zero.

    Roots are processed by ascending height: the flow along ``X_beta`` moves
    ``T_{-beta}`` at the constant nonzero rate ``torsion_constant`` and only
    otherwise touches coordinates of larger height.
    """
    t = _check_torsion(pd, t)
    fields = {f.beta: f for f in torsion_action_fields(alg, pd)}
    word = []
    for beta in sorted(pd.noncompact_positive, key=height):
        value = t[negate(beta)]
        if not value:
            continue
        s = -value / torsion_constant(pd, beta)
        t = fields[beta].flow(t, s)
        assert t[negate(beta)] == 0
        word.append((beta, s))
    return word


@dataclass
class ConsistencyReport:
    identity_one: list[dict]
    identity_two: list[dict]
    homomorphism_failures: list[tuple[Root, Root]]

    @property
    def printed_one_holds(self) -> bool:
        return all(x["printed"] for x in self.identity_one)

    @property
    def corrected_one_holds(self) -> bool:
        return all(x["corrected"] for x in self.identity_one)

    @property
    def two_holds(self) -> bool:
        return all(x["holds"] for x in self.identity_two)

    @property
    def homomorphism(self) -> bool:
        return not self.homomorphism_failures


def check_field_homomorphism(alg: ChevalleyAlgebra, pd: ParabolicData,
                             fields: list[AffineField] | None = None) -> list[tuple[Root, Root]]:
    """Pairs where ``[X~_b, X~_c] != N[b, c] X~_{b+c}``."""
    fields = fields or torsion_action_fields(alg, pd)
    by_beta = {f.beta: f for f in fields}
    bad = []
    for b in pd.noncompact_positive:
        for c in pd.noncompact_positive:
            lhs = field_bracket(by_beta[b], by_beta[c])
            s = add(b, c)
            rhs = by_beta[s].scaled(alg.n(b, c)) if s in by_beta else AffineField(None, {}, {})
            if lhs != rhs:
                bad.append((b, c))
    return bad


def verify_consistency_identities(alg: ChevalleyAlgebra, pd: ParabolicData) -> ConsistencyReport:
    _check_same(alg, pd)
    rs = alg.rs
    n = alg.n

    def ratio(r: Root) -> Fraction:
        return pd.delta_pairing(r) / rs.norm2(r)

    neg_or_zero = set(pd.noncompact_negative) | {(0,) * rs.rank}
    one, two = [], []
    for b in pd.noncompact_positive:
        for c in pd.noncompact_positive:
            s = add(b, c)
            if not rs.is_root(s):
                continue
            ms = negate(s)
            lhs_printed = ratio(b) * n(c, ms) + ratio(c) * n(b, ms)
            lhs_corrected = ratio(b) * n(c, ms) - ratio(c) * n(b, ms)
            rhs = ratio(s) * n(b, c)
            one.append({"beta": b, "gamma": c, "printed": lhs_printed == rhs,
                        "corrected": lhs_corrected == rhs})
            for a in pd.noncompact_negative:
                if add(a, s) not in neg_or_zero:
                    continue
                lhs = n(b, add(a, c)) * n(c, a) - n(c, add(a, b)) * n(b, a)
                two.append({"beta": b, "gamma": c, "alpha": a, "lhs": lhs,
                            "rhs": n(b, c) * n(s, a), "holds": lhs == n(b, c) * n(s, a)})
    return ConsistencyReport(one, two, check_field_homomorphism(alg, pd))
