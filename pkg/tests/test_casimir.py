from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Symbol, expand, ff

from lie_center.brauer import gamma
from lie_center.casimir import (
    capelli_C, capelli_hc_expected, capelli_identity_holds, dm_u, e_star, factorial_e, finite_algebra, h_star,
    hc_image_rhs, hc_project, lambda_ring, poly_to_json, stirling2, symmetrized_casimirs,
)
from lie_center.classical import GL, O, SP, make_algebra

F = Fraction


def gens(spec):
    alg = finite_algebra(spec)
    return alg, (lambda i, j: sum((alg.basis_element(b) * c for b, c in spec.generator(i, j).items()), alg.scalar(0)))


def test_hc_basic():
    spec = make_algebra(GL, 2)
    alg, E = gens(spec)
    R, lam, u = lambda_ring(2)
    assert hc_project(spec, alg.scalar(1)) == 1
    assert hc_project(spec, E(1, 1)) == lam[0]
    assert hc_project(spec, E(1, 2) * E(2, 1)) == lam[0] - lam[1]
    assert hc_project(spec, E(2, 1) * E(1, 2)) == 0


def test_casimir_gl2_by_hand():
    spec = make_algebra(GL, 2)
    alg, E = gens(spec)
    expected = E(1, 1) * E(2, 2) - (E(1, 2) * E(2, 1) + E(2, 1) * E(1, 2)) * F(1, 2)
    assert symmetrized_casimirs(spec, 2) == expected
    assert symmetrized_casimirs(spec, 1) == E(1, 1) + E(2, 2)


@pytest.mark.parametrize("family,N,m,kind", [
    (GL, 2, 2, "delta"), (GL, 2, 3, "phi"), (GL, 3, 3, "delta"), (GL, 3, 2, "phi"),
    (SP, 2, 2, None), (SP, 4, 2, None), (O, 3, 2, None), (O, 4, 2, None),
])
def test_casimir_routes_agree(family, N, m, kind):
    spec = make_algebra(family, N)
    direct = symmetrized_casimirs(spec, m, kind)
    assert direct == symmetrized_casimirs(spec, m, kind, "trace")
    alg = finite_algebra(spec)
    for b in range(spec.dim):
        assert not direct.commutator(alg.basis_element(b))


def test_casimir_guards():
    with pytest.raises(ValueError):
        symmetrized_casimirs(make_algebra(O, 3), 2, "delta")
    with pytest.raises(ValueError):
        symmetrized_casimirs(make_algebra(SP, 2), 3)


def test_shifted_polynomials():
    R, lam, u = lambda_ring(2)
    assert e_star(1, lam) == h_star(1, lam) == lam[0] + lam[1]
    assert e_star(2, lam) == lam[0] * (lam[1] - 1)
    R1, lam1, _ = lambda_ring(1)
    assert h_star(2, lam1) == lam1[0] * (lam1[0] + 1)
    with pytest.raises(ValueError):
        e_star(-1, lam)


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_shifted_symmetry(N, k):
    R, lam, _ = lambda_ring(N)
    spec = make_algebra(GL, N)
    for p in (e_star(k, lam), h_star(k, lam), hc_image_rhs(spec, k), hc_image_rhs(spec, k, "phi")):
        for i in range(N - 1):
            swapped = p.compose([(lam[i], lam[i + 1] - 1), (lam[i + 1], lam[i] + 1)])
            assert swapped == p


def test_stirling():
    assert stirling2(3, 2) == 3
    assert all(stirling2(m, 1) == stirling2(m, m) == 1 for m in range(1, 7))
    with pytest.raises(ValueError):
        stirling2(2, 3)
    x = Symbol("x")
    for m in range(1, 7):
        assert expand(sum(stirling2(m, k) * ff(x, k) for k in range(1, m + 1)) - x ** m) == 0


def test_hc_rhs_examples():
    R, lam, _ = lambda_ring(3)
    assert hc_image_rhs(make_algebra(GL, 3), 1) == e_star(1, lam)
    sp2 = make_algebra(SP, 2)
    R1, (l1,), _ = lambda_ring(1)
    pattern = [l1, 0 * l1, -l1]
    expected = e_star(1, pattern) * 1 + e_star(2, pattern)
    assert hc_image_rhs(sp2, 2) == expected
    for spec in (sp2, make_algebra(SP, 4), make_algebra(O, 3), make_algebra(O, 4), make_algebra(O, 5)):
        assert hc_image_rhs(spec, 3) == 0


@pytest.mark.parametrize("family,N", [(SP, 2), (SP, 4), (O, 3), (O, 4), (O, 5)])
def test_hc_bcd(family, N):
    spec = make_algebra(family, N)
    assert hc_project(spec, symmetrized_casimirs(spec, 2)) == hc_image_rhs(spec, 2)


def test_dm_u_small():
    for N in (3, 4, 5):
        spec = make_algebra(O, N)
        alg = finite_algebra(spec)
        assert dm_u(spec, 1) == alg.u() * (gamma(1).evaluate(N) * N)
    sp2 = make_algebra(SP, 2)
    alg = finite_algebra(sp2)
    assert dm_u(sp2, 1, "fcirc") == alg.u() * 3
    assert dm_u(sp2, 1, "symmetrizer") == alg.u() * 3


def test_dm_u_central():
    o3 = make_algebra(O, 3)
    alg = finite_algebra(o3)
    for z in dm_u(o3, 2).u_coefficients().values():
        for b in range(o3.dim):
            assert not z.commutator(alg.basis_element(b))


def test_capelli_n1():
    sp2 = make_algebra(SP, 2)
    C = capelli_C(sp2)
    coeffs = C.u_coefficients()
    assert sorted(coeffs) == [0, 2] and coeffs[2] == 1
    R, (l1,), u = lambda_ring(1)
    image = hc_project(sp2, C)
    assert image == u ** 2 - (l1 + 1) ** 2
    assert image.compose(l1, R.zero) == u ** 2 - 1
    assert image == capelli_hc_expected(sp2)


def test_capelli_guard():
    with pytest.raises(ValueError):
        capelli_C(make_algebra(O, 3))


def test_factorial_e():
    R, (l1,), u = lambda_ring(1)
    a = [R(j * j) for j in range(1, 5)]
    assert factorial_e(0, [l1 * l1], a) == 1
    assert factorial_e(1, [l1 * l1], a) == l1 * l1 - 1
    assert capelli_identity_holds(1) and capelli_identity_holds(2)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_hc_matches_rhs_at_points(weight):
    # evaluating both sides at integer weights gives the same numbers
    spec = make_algebra(GL, 2)
    R, lam, _ = lambda_ring(2)
    z = symmetrized_casimirs(spec, 2, "phi")
    point = dict(zip(lam, weight))
    lhs = hc_project(spec, z)
    rhs = hc_image_rhs(spec, 2, "phi")
    for x, v in point.items():
        lhs, rhs = lhs.compose(x, R(v)), rhs.compose(x, R(v))
    assert lhs == rhs


def test_poly_json_is_sorted():
    R, lam, u = lambda_ring(2)
    data = poly_to_json(lam[0] * F(1, 2) + u ** 2 - 3)
    assert data == sorted(data, key=lambda t: t["exponents"])
    assert {t["coefficient"] for t in data} == {"1/2", "1/1", "-3/1"}
