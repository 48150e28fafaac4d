"""Invariant suites run by ``parahopf verify``."""

from __future__ import annotations

import random
import zlib
from fractions import Fraction

from .chevalley import build_chevalley_algebra, verify_chevalley_axioms
from .hopf import (
    ContractionError,
    additive_relations,
    canonical_contracting_sigma,
    contraction_spectrum,
    hopf_report,
    spectrum_satisfies,
)
from .parabolic import (
    ParabolicData,
    all_crossed_sets,
    apply_word,
    build_parabolic,
    check_delta_compactness,
    effectivity_check,
    normalize_torsion,
    reductive_split,
    sharpe_mutation,
    torsion_action_fields,
    torsion_constant,
    two_delta_identity,
    verify_consistency_identities,
)
from .rootsys import RootSystem, expected_root_count, negate, root_string


def _suite(checks: dict[str, bool]) -> dict:
    return {"checks": checks, "passed": all(checks.values())}


def rootsys_suite(rs: RootSystem) -> dict:
    roots = rs.root_set
    counts = all(
        sum(1 for r in rs.roots if any(r[i] for i in span)) == expected_root_count(f, n)
        for (f, n), span in zip(rs.spec.components, rs.component_ranges)
    )
    negation = all(negate(r) in roots and tuple(2 * c for c in r) not in roots for r in rs.roots)
    sign = all(all(c >= 0 for c in r) or all(c <= 0 for c in r) for r in rs.roots)
    closure = all(rs.reflect(a, b) in roots for a in rs.roots for b in rs.roots)
    strings = True
    for a in rs.roots:
        for b in rs.roots:
            if a == b or a == negate(b):
                continue
            p, q = root_string(rs, a, b)
            if p - q != rs.cartan_integer(b, a):
                strings = False
    return _suite({
        "root_counts": counts,
        "negation_closed_and_reduced": negation,
        "sign_coherent": sign,
        "reflection_closure": closure,
        "string_cartan_consistency": strings,
    })


def chevalley_suite(rs: RootSystem) -> dict:
    report = verify_chevalley_axioms(build_chevalley_algebra(rs))
    checks = {k: v for k, v in report.as_dict().items() if isinstance(v, bool) and k != "ok"}
    return _suite(checks)


def parabolic_checks(pd: ParabolicData, samples: int) -> dict[str, bool]:
    alg = build_chevalley_algebra(pd.rs)
    rs = pd.rs
    partition = (
        len(pd.compact_roots) + len(pd.noncompact_positive) + len(pd.noncompact_negative) == len(rs.roots)
        and set(pd.compact_roots) | set(pd.noncompact_positive) | set(pd.noncompact_negative) == rs.root_set
    )
    dims = sum(pd.langlands_dims) == alg.dim
    eff = effectivity_check(alg, pd)
    consistency = verify_consistency_identities(alg, pd)
    fields = torsion_action_fields(alg, pd)
    rng = random.Random(zlib.crc32(pd.label.encode()))
    round_trip = True
    for _ in range(samples):
        t = {a: Fraction(rng.randint(-20, 20), rng.randint(1, 12)) for a in pd.noncompact_negative}
        residual = apply_word(fields, normalize_torsion(alg, pd, t), t)
        if any(residual.values()):
            round_trip = False
    try:
        mutation = not sharpe_mutation(alg, *reductive_split(alg, pd)).jacobi_failures(limit=1)
    except ValueError:
        mutation = False
    return {
        "partition": partition,
        "langlands_dims": dims,
        "two_delta": two_delta_identity(pd),
        "delta_compactness": check_delta_compactness(pd).ok,
        "generation_iff_effective": (eff.generated_dim == alg.dim) == eff.effective,
        "field_homomorphism": consistency.homomorphism,
        "field_independence": all(torsion_constant(pd, b) != 0 for b in pd.noncompact_positive),
        "identity_one_corrected": consistency.corrected_one_holds,
        "identity_two": consistency.two_holds,
        "normalization_round_trip": round_trip,
        "mutation_jacobi": mutation,
    }


def hopf_checks(pd: ParabolicData) -> dict[str, bool] | None:
    rs = pd.rs
    if not pd.effective or not pd.noncompact_positive:
        return None
    sigma = canonical_contracting_sigma(rs, pd)
    spectrum = contraction_spectrum(rs, pd, sigma)
    positivity = all(rs.inner_product(b, sigma.real) > 0 for b in pd.noncompact_positive)
    relations = additive_relations(pd, 2)
    try:
        report = hopf_report(rs, pd, sigma)
        consistent = report.strictly_contracting == report.flat_geometry_exists and \
            report.generic_admissible == (not relations)
    except ContractionError:
        consistent = False
    return {
        "sigma_positivity": positivity,
        "strictly_contracting": spectrum.strictly_contracting,
        "additive_relations_satisfied": all(spectrum_satisfies(spectrum, r) for r in relations),
        "report_consistent": consistent,
    }


def verify_model(rs: RootSystem, crossed_sets: list[frozenset[int]] | None, samples: int = 20) -> dict:
    if crossed_sets is None:
        crossed_sets = all_crossed_sets(rs.rank)
    pds = [build_parabolic(rs, c) for c in crossed_sets]
    parabolics = {pd.label: parabolic_checks(pd, samples) for pd in pds}
    hopf = {}
    for pd in pds:
        checks = hopf_checks(pd)
        if checks is not None:
            hopf[pd.label] = checks
    suites = {
        "rootsys": rootsys_suite(rs),
        "chevalley": chevalley_suite(rs),
        "parabolic": {"parabolics": parabolics,
                      "passed": all(all(c.values()) for c in parabolics.values())},
        "hopf": {"parabolics": hopf, "passed": all(all(c.values()) for c in hopf.values())},
    }
    return {"suites": suites, "passed": all(s["passed"] for s in suites.values())}
