"""Contraction spectra on the nilradical and multiplicative resonances.

Eigenvalues are handled in log form ``mu = log|lambda| + 2*pi*i*turns``.
Exact inputs are :class:`LogEigenvalue` values with rational log-modulus and
rational turns; anything else is treated as a complex number and compared
with an absolute tolerance in log form.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .parabolic import ParabolicData
from .rootsys import Root, RootSystem, add

TOL = 1e-9


class ContractionError(ValueError):
    pass


class LogEigenvalue(NamedTuple):
    """``exp(log_modulus + 2*pi*i*turns)`` with exact rational parts."""

    log_modulus: Fraction
    turns: Fraction = Fraction(0)

    @property
    def value(self) -> complex:
        return cmath.exp(complex(float(self.log_modulus), 2 * math.pi * float(self.turns)))


@dataclass(frozen=True)
class ContractionSigma:
    """Cartan element ``sigma`` in simple-root coordinates.

    ``imag`` is measured in turns, i.e. the imaginary part is ``2*pi*imag``.
    """

    real: tuple[Fraction, ...]
    imag: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "real", tuple(Fraction(c) for c in self.real))
        imag = self.imag if self.imag is not None else (0,) * len(self.real)
        if len(imag) != len(self.real):
            raise ValueError("real and imaginary coefficient lists differ in length")
        object.__setattr__(self, "imag", tuple(Fraction(c) for c in imag))


@dataclass
class Spectrum:
    """``mu[beta] = -<beta, sigma>`` on the ``-beta`` weight space of the nilradical."""

    entries: dict[Root, LogEigenvalue]

    @property
    def strictly_contracting(self) -> bool:
        return bool(self.entries) and all(m.log_modulus < 0 for m in self.entries.values())

    def eigenvalues(self) -> list[LogEigenvalue]:
        return list(self.entries.values())


def contraction_spectrum(rs: RootSystem, pd: ParabolicData, sigma: ContractionSigma) -> Spectrum:
    if pd.rs != rs:
        raise ValueError("parabolic data belongs to a different root system")
    if len(sigma.real) != rs.rank:
        raise ValueError(f"sigma needs {rs.rank} coefficients, got {len(sigma.real)}")
    return Spectrum({
        b: LogEigenvalue(-rs.inner_product(b, sigma.real), -rs.inner_product(b, sigma.imag))
        for b in pd.noncompact_positive
    })


def canonical_contracting_sigma(rs: RootSystem, pd: ParabolicData) -> ContractionSigma:
    """``-delta``, checked to pair positively with every noncompact positive root."""
    if not pd.noncompact_positive:
        raise ContractionError("no noncompact positive roots: the parabolic is the whole group")
    sigma = ContractionSigma(tuple(-d for d in pd.delta))
    for b in pd.noncompact_positive:
        if rs.inner_product(b, sigma.real) <= 0:
            raise ContractionError(f"-delta does not contract the {b} weight space")
    return sigma


@dataclass(frozen=True, order=True)
class ConnectionModuli:
    """``lambda_i = lambda_j lambda_k lambda^alpha`` (1-based indices)."""

    i: int
    j: int
    k: int
    alpha: tuple[int, ...]

    def as_list(self) -> list:
        return [self.i, self.j, self.k, list(self.alpha)]


@dataclass(frozen=True, order=True)
class PoincareDulac:
    """``lambda_j = lambda^alpha`` with ``sum(alpha) >= 2`` (1-based ``j``)."""

    j: int
    alpha: tuple[int, ...]

    def as_list(self) -> list:
        return [self.j, list(self.alpha)]


@dataclass(frozen=True)
class AdditiveRootRelation:
    lhs: tuple[Root, ...]
    rhs: tuple[Root, ...]

    def as_dict(self) -> dict:
        return {"lhs": [list(r) for r in self.lhs], "rhs": [list(r) for r in self.rhs]}


class _Logs:
    """Negated log-moduli ``r_m > 0`` and turns, exact or floating."""

    def __init__(self, lambdas: Sequence):
        if not lambdas:
            raise ContractionError("need at least one eigenvalue")
        self.exact = all(isinstance(x, LogEigenvalue) for x in lambdas)
        self.r, self.turns = [], []
        for n, lam in enumerate(lambdas, 1):
            if self.exact:
                r, t = -Fraction(lam.log_modulus), Fraction(lam.turns)
                if r <= 0:
                    raise ContractionError(f"eigenvalue {n} has modulus >= 1")
            else:
                z = lam.value if isinstance(lam, LogEigenvalue) else complex(lam)
                if z == 0:
                    raise ContractionError(f"eigenvalue {n} is zero")
                if abs(z) >= 1:
                    raise ContractionError(f"eigenvalue {n} has modulus {abs(z)} >= 1")
                r, t = -math.log(abs(z)), cmath.phase(z) / (2 * math.pi)
            self.r.append(r)
            self.turns.append(t)

    def zero(self, x) -> bool:
        return x == 0 if self.exact else abs(x) < TOL

    def integral(self, x) -> bool:
        if self.exact:
            return x.denominator == 1
        return abs(x - round(x)) * 2 * math.pi < TOL

    def solutions(self, budget):
        """Nonnegative ``alpha`` with ``sum(alpha_m r_m) == budget``.

        Each coordinate is bounded by ``floor(budget / r_m)``.
        """
        n = len(self.r)
        if budget < 0 and not self.zero(budget):
            return
        alpha = [0] * n

        def rec(m, remaining):
            if m == n:
                if self.zero(remaining):
                    yield tuple(alpha)
                return
            top = remaining / self.r[m]
            top = math.floor(top) if self.exact else math.floor(top + TOL)
            for a in range(max(top, 0) + 1):
                alpha[m] = a
                yield from rec(m + 1, remaining - a * self.r[m])
            alpha[m] = 0

        yield from rec(0, budget)

    def turns_of(self, alpha) -> object:
        return sum((a * t for a, t in zip(alpha, self.turns)), Fraction(0) if self.exact else 0.0)


def affine_moduli_dimension(lambdas: Sequence) -> tuple[int, list[ConnectionModuli]]:
    """Count relations ``lambda_i = lambda_j lambda_k lambda^alpha`` over ordered ``(j, k)``."""
    logs = _Logs(lambdas)
    n = len(logs.r)
    found = []
    for i, j, k in itertools.product(range(n), repeat=3):
        budget = logs.r[i] - logs.r[j] - logs.r[k]
        for alpha in logs.solutions(budget):
            twist = logs.turns[i] - logs.turns[j] - logs.turns[k] - logs.turns_of(alpha)
            if logs.integral(twist):
                found.append(ConnectionModuli(i + 1, j + 1, k + 1, alpha))
    found.sort()
    return len(found), found


def poincare_dulac_resonances(lambdas: Sequence) -> list[PoincareDulac]:
    logs = _Logs(lambdas)
    found = []
    for j in range(len(logs.r)):
        for alpha in logs.solutions(logs.r[j]):
            if sum(alpha) < 2:
                continue
            if logs.integral(logs.turns[j] - logs.turns_of(alpha)):
                found.append(PoincareDulac(j + 1, alpha))
    found.sort()
    return found


def additive_relations(pd: ParabolicData, max_terms: int = 2) -> list[AdditiveRootRelation]:
    """Pairs of distinct multisets of noncompact positive roots with equal sums."""
    if max_terms < 2:
        raise ValueError("max_terms must be at least 2")
    roots = pd.noncompact_positive
    order = {r: n for n, r in enumerate(roots)}
    zero = (0,) * pd.rs.rank
    by_sum: dict[Root, list[tuple[Root, ...]]] = {}
    for size in range(1, max_terms + 1):
        for combo in itertools.combinations_with_replacement(roots, size):
            total = zero
            for r in combo:
                total = add(total, r)
            by_sum.setdefault(total, []).append(combo)

    def key(ms):
        return (len(ms), [order[r] for r in ms])

    out = []
    for total in sorted(by_sum, key=lambda s: (sum(s), tuple(-c for c in s))):
        group = sorted(by_sum[total], key=key)
        for a, b in itertools.combinations(group, 2):
            out.append(AdditiveRootRelation(a, b))
    return out


@dataclass
class HopfReport:
    model: str
    sigma: ContractionSigma
    spectrum: Spectrum
    relations: list[AdditiveRootRelation]
    relations_satisfied: bool
    moduli_count: int
    moduli_relations: list[ConnectionModuli]
    resonances: list[PoincareDulac]
    extra: dict = field(default_factory=dict)

    @property
    def strictly_contracting(self) -> bool:
        return self.spectrum.strictly_contracting

    @property
    def flat_geometry_exists(self) -> bool:
        return self.strictly_contracting

    @property
    def generic_admissible(self) -> bool:
        return not self.relations

    def as_dict(self) -> dict:
        spec = []
        for b, m in self.spectrum.entries.items():
            z = m.value
            spec.append({
                "root": list(b),
                "log_modulus": str(m.log_modulus),
                "turns": str(m.turns),
                "eigenvalue": [z.real, z.imag],
            })
        return {
            "model": self.model,
            "sigma": {"real": [str(c) for c in self.sigma.real], "imag_turns": [str(c) for c in self.sigma.imag]},
            "strictly_contracting": self.strictly_contracting,
            "spectrum": spec,
            "additive_relations": [r.as_dict() for r in self.relations],
            "additive_relations_satisfied": self.relations_satisfied,
            "affine_moduli": {"count": self.moduli_count, "relations": [r.as_list() for r in self.moduli_relations]},
            "poincare_dulac": [r.as_list() for r in self.resonances],
            "linearizable": not self.resonances,
            "flat_geometry_exists": self.flat_geometry_exists,
            "generic_admissible": self.generic_admissible,
        }


def spectrum_satisfies(spectrum: Spectrum, relation: AdditiveRootRelation) -> bool:
    def total(side):
        return (sum((spectrum.entries[r].log_modulus for r in side), Fraction(0)),
                sum((spectrum.entries[r].turns for r in side), Fraction(0)))
    return total(relation.lhs) == total(relation.rhs)


def hopf_report(rs: RootSystem, pd: ParabolicData, sigma: ContractionSigma | None = None) -> HopfReport:
    if pd.rs != rs:
        raise ValueError("parabolic data belongs to a different root system")
    if not pd.effective:
        raise ContractionError(f"{pd.label} is not effective: some simple factor has no crossed node")
    if not pd.noncompact_positive:
        raise ContractionError("no noncompact positive roots")
    if sigma is None:
        sigma = canonical_contracting_sigma(rs, pd)
    spectrum = contraction_spectrum(rs, pd, sigma)
    relations = additive_relations(pd, 2)
    satisfied = all(spectrum_satisfies(spectrum, r) for r in relations)
    if spectrum.strictly_contracting:
        count, moduli = affine_moduli_dimension(spectrum.eigenvalues())
        resonances = poincare_dulac_resonances(spectrum.eigenvalues())
    else:
        count, moduli, resonances = 0, [], []
    return HopfReport(pd.label, sigma, spectrum, relations, satisfied, count, moduli, resonances)
