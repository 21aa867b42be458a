import itertools

import pytest
from hypothesis import given, strategies as st

from motent import CountingError, EnumerationCapError, PreconditionError, TruncatedSeries
from motent import ffcount
from motent.ffcount import (
    FqVarietyDef,
    affine_space,
    build_field,
    closed_point_counts,
    closed_points_by_orbits,
    count_points,
    cycle_counts_from_closed,
    cycle_enumerate,
    frobenius_orbits,
    hasse_weil_zeta,
    is_irreducible,
    least_irreducible,
    local_hw_entropy,
    point,
    product,
    projection_degree_triples,
    projective_space,
    rational_points,
    zeta_data_from_counts,
)


def curve(q, eq="y^2 - x^3 - x"):
    return FqVarietyDef.from_text(f"q={q} kind=affine vars=x,y\n{eq}\n")


def gm(q):
    return curve(q, "x*y - 1")


def rational_zeta(num, den, n):
    return list((TruncatedSeries.from_coeffs(num, n) * TruncatedSeries.from_coeffs(den, n).inverse()).coeffs)


@pytest.mark.parametrize("p,m", [(2, 1), (2, 4), (3, 3), (5, 2), (7, 1)])
def test_field_tables_agree_with_schoolbook_product(p, m):
    F = build_field(p, m)
    assert is_irreducible(list(F.modulus), p) and F.modulus == least_irreducible(p, m)
    pairs = itertools.product(range(F.order), repeat=2) if F.order <= 32 else [(a, (7 * a + 3) % F.order) for a in range(F.order)]
    for a, b in pairs:
        assert F.mul(a, b) == F.mul_poly(a, b)
    assert all(F.add(a, F.neg(a)) == 0 for a in range(F.order))
    assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, F.order))


def test_least_irreducible_examples():
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(2, 3) == (1, 1, 0, 1)
    assert least_irreducible(3, 2) == (1, 0, 1)


def test_build_field_rejects_non_primes():
    with pytest.raises(PreconditionError):
        build_field(4, 1)


def test_multiplicative_group_counts():
    assert [count_points(gm(3), m) for m in range(1, 7)] == [3**m - 1 for m in range(1, 7)]
    assert [count_points(gm(4), m) for m in range(1, 4)] == [4**m - 1 for m in range(1, 4)]


def test_projective_counts():
    for q, n in [(2, 1), (3, 2), (4, 1)]:
        X = projective_space(q, n)
        assert [count_points(X, m) for m in range(1, 4)] == [sum(q ** (m * k) for k in range(n + 1)) for m in range(1, 4)]


def test_elliptic_curve_over_f5():
    zd = hasse_weil_zeta(curve(5), 8)
    # affine part of a curve with a_5 = 2: Z = (1 - 2t + 5t^2)/(1 - 5t)
    assert list(zd.zeta.series.coeffs) == rational_zeta([1, -2, 5], [1, -5], 8)
    assert list(zd.zeta.series.coeffs[:5]) == [1, 3, 20, 100, 500]


def test_supersingular_curve_over_f3():
    zd = hasse_weil_zeta(curve(3), 8)
    assert list(zd.zeta.series.coeffs) == rational_zeta([1, 0, 3], [1, -3], 8)


def test_projective_conic_over_f2():
    X = FqVarietyDef.from_text("q=2 kind=projective vars=x,y,z\nx^2 + y*z\n")
    assert [count_points(X, m) for m in range(1, 5)] == [2**m + 1 for m in range(1, 5)]


def test_point_and_empty():
    assert hasse_weil_zeta(point(3), 4).zeta.series == TruncatedSeries.geometric(1, 4)
    assert count_points(FqVarietyDef.from_text("q=3 kind=affine vars=x\n3*x + 1\n"), 2) == 0


def test_cycle_counts_match_zeta():
    for X in (curve(3), curve(5), gm(3), projective_space(3, 1), affine_space(5, 1)):
        zd = hasse_weil_zeta(X, 8)
        assert [int(c) for c in zd.zeta.series.coeffs] == cycle_counts_from_closed(list(zd.closed_points), 8)
        assert [c for _, c in cycle_enumerate(X, 8)] == [int(c) for c in zd.zeta.series.coeffs]


def test_closed_points_by_orbits():
    for X in (curve(3), gm(3), curve(5)):
        a = closed_point_counts([count_points(X, m) for m in range(1, 3)])
        assert closed_points_by_orbits(X, 2) == a
    # x^2 + x + 1 over F_2 has one closed point of degree 2
    X = FqVarietyDef.from_text("q=2 kind=affine vars=x\nx^2 + x + 1\n")
    assert [len(o) for o in frobenius_orbits(X, 2)] == [2]
    assert hasse_weil_zeta(X, 4).closed_points == (0, 1, 0, 0)


def test_non_integral_closed_points_raise():
    with pytest.raises(CountingError):
        closed_point_counts([1, 2])
    with pytest.raises(CountingError):
        zeta_data_from_counts([2, 1])


def test_rational_points_of_p1():
    assert rational_points(projective_space(2, 1)) == [(0, 1), (1, 0), (1, 1)]


def test_projection_degree_triples_preserve_degree():
    for deg_x, residue, deg_fx in projection_degree_triples(gm(2), (0,), 4):
        assert deg_x == residue * deg_fx


def test_product_zeta_is_witt_product():
    for X, Y in [(gm(2), affine_space(2, 1)), (curve(2), affine_space(2, 1)), (curve(3), point(3))]:
        N = 6
        assert hasse_weil_zeta(product(X, Y), N).zeta == hasse_weil_zeta(X, N).zeta * hasse_weil_zeta(Y, N).zeta


def test_product_needs_same_field():
    with pytest.raises(PreconditionError):
        product(gm(2), gm(3))


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("MOTENT_ENUM_CAP", "100")
    ffcount._count_cached.cache_clear()
    try:
        with pytest.raises(EnumerationCapError):
            count_points(gm(5), 3)
    finally:
        monkeypatch.delenv("MOTENT_ENUM_CAP")
        ffcount._count_cached.cache_clear()


def test_local_entropy_routes_agree():
    # A_n = N_n / n and B_n = -N_n
    S = local_hw_entropy(curve(5), 6)
    N = [count_points(curve(5), m) for m in range(1, 7)]
    assert all(S.regular[n] * n == N[n - 1] and S.logpart[n] == -N[n - 1] for n in range(1, 7))


def test_definition_text_roundtrip(tmp_path):
    X = curve(5)
    path = tmp_path / "e.def"
    path.write_text(X.to_text())
    Y = FqVarietyDef.load(path)
    assert (Y.q, Y.polys, Y.kind) == (X.q, X.polys, X.kind) and Y.name == "e"


@pytest.mark.parametrize("text", ["", "q=6 kind=affine vars=x\nx\n", "q=3 kind=cone vars=x\n", "q=3 kind=projective vars=x,y\nx^2 + y\n", "kind=affine vars=x\n"])
def test_bad_definitions(text):
    with pytest.raises(Exception):
        FqVarietyDef.from_text(text)


polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 3)), st.integers(-2, 2), max_size=4)


@given(st.sampled_from([2, 3, 4]), st.lists(polys, min_size=1, max_size=2), st.integers(1, 2))
def test_fibre_counts_equal_brute_force(q, ps, m):
    lines = []
    for d in ps:
        terms = [f"{c}*x^{a}*y^{b}" for (a, b), c in d.items() if c]
        lines.append(" + ".join(terms) or "0")
    X = FqVarietyDef.from_text(f"q={q} kind=affine vars=x,y\n" + "\n".join(lines) + "\n")
    assert count_points(X, m, "fibers") == count_points(X, m, "brute")
