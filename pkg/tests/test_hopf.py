import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parahopf.hopf import (
    ConnectionModuli,
    ContractionError,
    ContractionSigma,
    LogEigenvalue,
    PoincareDulac,
    additive_relations,
    affine_moduli_dimension,
    canonical_contracting_sigma,
    contraction_spectrum,
    hopf_report,
    poincare_dulac_resonances,
    spectrum_satisfies,
)
from parahopf.parabolic import all_crossed_sets, build_parabolic
from parahopf.rootsys import build_root_system

from oracles import brute_force_resonances

F = Fraction


def model(spec, crossed):
    rs = build_root_system(spec)
    return rs, build_parabolic(rs, crossed)


def as_complex(modulus, turns):
    return cmath.rect(float(modulus), 2 * math.pi * float(turns))


def implementation(lams):
    zs = [as_complex(m, t) for m, t in lams]
    _, moduli = affine_moduli_dimension(zs)
    return sorted((r.i, r.j, r.k, r.alpha) for r in moduli), sorted((r.j, r.alpha) for r in poincare_dulac_resonances(zs))


def test_spectrum_a2_borel():
    rs, pd = model("A2", {1, 2})
    spec = contraction_spectrum(rs, pd, ContractionSigma((1, 1)))
    assert {b: m.log_modulus for b, m in spec.entries.items()} == {(1, 0): -1, (0, 1): -1, (1, 1): -2}
    assert spec.strictly_contracting


def test_spectrum_zero_sigma():
    rs, pd = model("A2", {1, 2})
    spec = contraction_spectrum(rs, pd, ContractionSigma((0, 0)))
    assert all(m == LogEigenvalue(F(0), F(0)) for m in spec.entries.values())
    assert not spec.strictly_contracting


def test_spectrum_indexing_parabolic():
    rs, pd = model("A2", {1})
    spec = contraction_spectrum(rs, pd, ContractionSigma((1, 0)))
    assert set(spec.entries) == {(1, 0), (1, 1)}


def test_spectrum_imaginary_turns():
    rs, pd = model("A2", {1, 2})
    spec = contraction_spectrum(rs, pd, ContractionSigma((1, 1), (F(1, 4), 0)))
    m = spec.entries[(1, 0)]
    assert m.log_modulus == -1
    assert m.turns == -rs.inner_product((1, 0), (F(1, 4), 0))
    assert m.value == pytest.approx(cmath.exp(complex(-1, 2 * math.pi * float(m.turns))))


def test_spectrum_wrong_rank():
    rs, pd = model("A2", {1, 2})
    with pytest.raises(ValueError):
        contraction_spectrum(rs, pd, ContractionSigma((1, 1, 1)))


def test_canonical_sigma_examples():
    rs, pd = model("A2", {1, 2})
    sigma = canonical_contracting_sigma(rs, pd)
    assert sigma.real == (1, 1)
    assert [rs.inner_product(b, sigma.real) for b in pd.noncompact_positive] == [1, 1, 2]
    rs, pd = model("A2", {1})
    sigma = canonical_contracting_sigma(rs, pd)
    assert rs.inner_product((1, 0), sigma.real) == F(3, 2)
    assert rs.inner_product((1, 1), sigma.real) == F(3, 2)
    assert rs.inner_product((0, 1), sigma.real) == 0
    rs, pd = model("B2", {1, 2})
    sigma = canonical_contracting_sigma(rs, pd)
    assert len(pd.noncompact_positive) == 4
    assert all(rs.inner_product(b, sigma.real) > 0 for b in pd.noncompact_positive)


def test_canonical_sigma_rejects_trivial_parabolic():
    rs, pd = model("A2", ())
    with pytest.raises(ContractionError):
        canonical_contracting_sigma(rs, pd)


def test_additive_relations_examples():
    _, pd = model("A2", {1, 2})
    rels = additive_relations(pd)
    assert [(r.lhs, r.rhs) for r in rels] == [(((1, 1),), ((1, 0), (0, 1)))]
    _, pd = model("A1", {1})
    assert additive_relations(pd) == []
    _, pd = model("A1xA1", {1, 2})
    assert additive_relations(pd) == []
    _, pd = model("A3", {2})
    rels = additive_relations(pd)
    assert len(rels) == 1
    sides = {frozenset(rels[0].lhs), frozenset(rels[0].rhs)}
    assert sides == {frozenset({(0, 1, 0), (1, 1, 1)}), frozenset({(0, 1, 1), (1, 1, 0)})}


def test_additive_relations_max_terms():
    _, pd = model("A2", {1, 2})
    with pytest.raises(ValueError):
        additive_relations(pd, 1)
    three = additive_relations(pd, 3)
    assert len(three) > 1
    for r in three:
        assert sorted(r.lhs) != sorted(r.rhs)
        assert tuple(map(sum, zip(*r.lhs))) == tuple(map(sum, zip(*r.rhs)))


@pytest.mark.parametrize("spec", ["A3", "B3", "C3", "G2", "D4"])
def test_additive_relations_satisfied_by_every_spectrum(spec):
    rng = random.Random(spec)
    rs = build_root_system(spec)
    for crossed in all_crossed_sets(rs.rank):
        pd = build_parabolic(rs, crossed)
        sigma = ContractionSigma(tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rs.rank)),
                                 tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rs.rank)))
        spectrum = contraction_spectrum(rs, pd, sigma)
        assert all(spectrum_satisfies(spectrum, r) for r in additive_relations(pd, 3))


def test_moduli_examples():
    assert affine_moduli_dimension([0.5, 0.25]) == (1, [ConnectionModuli(2, 1, 1, (0, 0))])
    assert affine_moduli_dimension([0.5, 0.5])[0] == 0
    assert affine_moduli_dimension([0.5, 0.125]) == (1, [ConnectionModuli(2, 1, 1, (1, 0))])


def test_pd_examples():
    assert poincare_dulac_resonances([0.5, 0.25]) == [PoincareDulac(2, (2, 0))]
    assert poincare_dulac_resonances([0.5, 1 / 3]) == []
    assert poincare_dulac_resonances([0.5, 0.25, 0.125]) == [
        PoincareDulac(2, (2, 0, 0)), PoincareDulac(3, (1, 1, 0)), PoincareDulac(3, (3, 0, 0))]


def test_rotation_breaks_resonance():
    # 1/4 vs (1/2 i)^2 = -1/4
    assert poincare_dulac_resonances([0.5j, 0.25]) == []
    assert poincare_dulac_resonances([0.5j, -0.25]) == [PoincareDulac(2, (2, 0))]


def test_exact_log_inputs():
    lams = [LogEigenvalue(F(-1), F(1, 3)), LogEigenvalue(F(-2), F(2, 3)), LogEigenvalue(F(-3), F(0))]
    assert poincare_dulac_resonances(lams) == [
        PoincareDulac(2, (2, 0, 0)), PoincareDulac(3, (1, 1, 0)), PoincareDulac(3, (3, 0, 0))]
    # float path on the same data agrees
    assert poincare_dulac_resonances([x.value for x in lams]) == poincare_dulac_resonances(lams)
    assert affine_moduli_dimension([x.value for x in lams]) == affine_moduli_dimension(lams)


def test_prime_moduli_are_nonresonant():
    lams = [F(1, 2), F(1, 3), F(1, 5), F(1, 7)]
    assert affine_moduli_dimension([float(x) for x in lams]) == (0, [])
    assert poincare_dulac_resonances([float(x) for x in lams]) == []


@pytest.mark.parametrize("bad", [[1.0], [0.5, 1.5], [0.0], [0.5, 2j], []])
def test_rejects_non_contracting(bad):
    with pytest.raises(ContractionError):
        affine_moduli_dimension(bad)
    with pytest.raises(ContractionError):
        poincare_dulac_resonances(bad)


def test_rejects_exact_non_contracting():
    with pytest.raises(ContractionError):
        poincare_dulac_resonances([LogEigenvalue(F(0), F(0))])


def test_oracle_known_cases():
    moduli, pd = brute_force_resonances([(F(1, 2), F(0)), (F(1, 4), F(0))])
    assert moduli == [(2, 1, 1, (0, 0))]
    assert pd == [(2, (2, 0))]


def random_lams(rng, n):
    out = []
    for _ in range(n):
        modulus = F(1, 2 ** rng.randint(0, 3) * 3 ** rng.randint(0, 2))
        if modulus == 1:
            modulus = F(rng.choice([2, 3, 4]), 5)
        out.append((modulus, F(rng.randint(0, 5), rng.choice([1, 2, 3, 4, 6]))))
    return out


def test_oracle_agreement_sample():
    rng = random.Random(7)
    for _ in range(150):
        lams = random_lams(rng, rng.randint(1, 4))
        assert implementation(lams) == brute_force_resonances(lams)


lam_strategy = st.tuples(
    st.sampled_from([F(1, 2), F(1, 3), F(1, 4), F(1, 6), F(1, 8), F(1, 9), F(2, 3), F(1, 12)]),
    st.sampled_from([F(0), F(1, 2), F(1, 3), F(1, 4), F(2, 3)]),
)


@settings(max_examples=60, deadline=None)
@given(st.lists(lam_strategy, min_size=1, max_size=4), st.randoms())
def test_permutation_equivariance(lams, rnd):
    perm = list(range(len(lams)))
    rnd.shuffle(perm)
    permuted = [lams[p] for p in perm]
    base_m, base_pd = implementation(lams)
    new_m, new_pd = implementation(permuted)
    # position q in the permuted list holds original index perm[q]
    back = {q + 1: perm[q] + 1 for q in range(len(perm))}

    def unpermute_alpha(alpha):
        out = [0] * len(alpha)
        for q, a in enumerate(alpha):
            out[perm[q]] = a
        return tuple(out)

    assert sorted((back[i], back[j], back[k], unpermute_alpha(a)) for i, j, k, a in new_m) == base_m
    assert sorted((back[j], unpermute_alpha(a)) for j, a in new_pd) == base_pd


def test_report_a2_borel():
    rs, pd = model("A2", {1, 2})
    report = hopf_report(rs, pd)
    assert report.strictly_contracting and report.flat_geometry_exists
    assert [m.log_modulus for m in report.spectrum.eigenvalues()] == [-1, -1, -2]
    assert report.relations_satisfied
    assert not report.generic_admissible
    d = report.as_dict()
    assert d["model"] == "A2|crossed=1,2"
    assert d["spectrum"][2]["eigenvalue"][0] == pytest.approx(math.exp(-2))


def test_report_projective_model():
    rs, pd = model("A2", {1})
    report = hopf_report(rs, pd)
    assert [m.log_modulus for m in report.spectrum.eigenvalues()] == [F(-3, 2), F(-3, 2)]
    assert report.relations == []
    assert report.generic_admissible


def test_report_grassmannian():
    rs, pd = model("A3", {2})
    report = hopf_report(rs, pd)
    assert not report.generic_admissible
    assert report.strictly_contracting


def test_report_rejects_noneffective_and_trivial():
    rs, pd = model("A1xA1", {1})
    with pytest.raises(ValueError):
        hopf_report(rs, pd)
    rs, pd = model("A2", ())
    with pytest.raises(ValueError):
        hopf_report(rs, pd)


def test_report_noncontracting_sigma():
    rs, pd = model("A2", {1, 2})
    report = hopf_report(rs, pd, ContractionSigma((1, -1)))
    assert not report.strictly_contracting
    assert not report.flat_geometry_exists
    assert report.moduli_count == 0
