from fractions import Fraction

import pytest

from parahopf.rootsys import (
    DynkinSpec,
    RootSystemError,
    SpecParseError,
    build_root_system,
    expected_root_count,
    inner_product,
    negate,
    root_string,
)

REQUIRED = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2"]


def test_a1():
    rs = build_root_system("A1")
    assert set(rs.roots) == {(1,), (-1,)}


def test_a2_roots():
    rs = build_root_system("A2")
    assert set(rs.roots) == {(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)}
    assert rs.positive_roots == ((1, 0), (0, 1), (1, 1))


def test_g2_roots():
    rs = build_root_system("G2")
    assert len(rs.roots) == 12
    assert rs.highest_root() == (3, 2)


@pytest.mark.parametrize("spec", REQUIRED + ["F4", "E6", "A1xA1", "A2xB2"])
def test_root_counts(spec):
    rs = build_root_system(spec)
    for (family, rank), span in zip(rs.spec.components, rs.component_ranges):
        assert sum(1 for r in rs.roots if any(r[i] for i in span)) == expected_root_count(family, rank)


def test_closed_form_counts():
    assert [expected_root_count("A", n) for n in (1, 2, 3)] == [2, 6, 12]
    assert expected_root_count("B", 3) == expected_root_count("C", 3) == 18
    assert expected_root_count("D", 4) == 24


def test_inner_products():
    a2 = build_root_system("A2")
    assert inner_product(a2, (1, 0), (1, 0)) == 2
    assert inner_product(a2, (1, 0), (0, 1)) == -1
    g2 = build_root_system("G2")
    assert inner_product(g2, (0, 1), (0, 1)) == 6
    assert inner_product(g2, (1, 0), (1, 0)) == 2


def test_inner_product_rational_weights():
    a2 = build_root_system("A2")
    assert inner_product(a2, (Fraction(-1), Fraction(-1, 2)), (0, 1)) == 0


def test_inner_product_dimension_mismatch():
    with pytest.raises(ValueError):
        inner_product(build_root_system("A2"), (1, 0, 0), (1, 0))


@pytest.mark.parametrize("spec", REQUIRED)
def test_gram_symmetric_positive_definite(spec):
    rs = build_root_system(spec)
    g = [list(row) for row in rs.gram]
    n = len(g)
    assert all(g[i][j] == g[j][i] for i in range(n) for j in range(n))
    # exact Sylvester criterion via fraction Gaussian elimination
    m = [row[:] for row in g]
    for k in range(n):
        assert m[k][k] > 0
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            m[i] = [a - f * b for a, b in zip(m[i], m[k])]


@pytest.mark.parametrize("spec", REQUIRED)
def test_short_roots_have_length_two(spec):
    rs = build_root_system(spec)
    assert min(rs.norm2(r) for r in rs.roots) == 2


def test_product_components_are_orthogonal():
    rs = build_root_system("A1xA1")
    assert rs.gram == ((2, 0), (0, 2))
    assert set(rs.roots) == {(1, 0), (0, 1), (-1, 0), (0, -1)}


@pytest.mark.parametrize(
    "alpha,beta,expected",
    [((1, 0), (0, 1), (0, 1)), ((1, 0), (1, 1), (1, 0))],
)
def test_a2_root_strings(alpha, beta, expected):
    assert root_string(build_root_system("A2"), alpha, beta) == expected


def test_g2_root_string():
    assert root_string(build_root_system("G2"), (1, 0), (0, 1)) == (0, 3)


def test_root_string_rejects_proportional():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        root_string(rs, (1, 0), (1, 0))
    with pytest.raises(ValueError):
        root_string(rs, (1, 0), (-1, 0))


@pytest.mark.parametrize("spec", REQUIRED)
def test_root_invariants(spec):
    rs = build_root_system(spec)
    roots = rs.root_set
    for a in rs.roots:
        assert negate(a) in roots
        assert tuple(2 * c for c in a) not in roots
        assert all(c >= 0 for c in a) or all(c <= 0 for c in a)
        for b in rs.roots:
            assert rs.reflect(a, b) in roots
            if b != a and b != negate(a):
                p, q = root_string(rs, a, b)
                assert p - q == 2 * rs.inner_product(b, a) / rs.norm2(a)


def test_positive_roots_are_nonnegative():
    rs = build_root_system("B3")
    assert set(rs.positive_roots) == {r for r in rs.roots if all(c >= 0 for c in r)}


@pytest.mark.parametrize("text,components", [
    ("A2", (("A", 2),)),
    ("b3", (("B", 3),)),
    ("A1xA1", (("A", 1), ("A", 1))),
    ("a1XA1", (("A", 1), ("A", 1))),
])
def test_parse(text, components):
    assert DynkinSpec.parse(text).components == components


@pytest.mark.parametrize("text,token,position", [
    ("A0", "a0", 0),
    ("B1", "b1", 0),
    ("G3", "g3", 0),
    ("A2xQ3", "q", 3),
    ("A 2", " ", 1),
    ("A2x", "x", 3),
    ("E9", "e9", 0),
])
def test_parse_errors(text, token, position):
    with pytest.raises(SpecParseError) as info:
        DynkinSpec.parse(text)
    assert info.value.token.lower() == token
    assert info.value.position == position


def test_invalid_component_names_offender():
    with pytest.raises(RootSystemError, match="D2"):
        DynkinSpec((("A", 1), ("D", 2)))


def test_build_is_cached_and_equal():
    assert build_root_system("A2") is build_root_system("A2")
    assert build_root_system(DynkinSpec.parse("a2")) == build_root_system("A2")
