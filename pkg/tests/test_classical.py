from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lie_center.classical import (
    GL, O, SP, bracket, coordinates, critical_level, dual_coxeter, element_matrix, f_circ, generator_matrix,
    invariant_form, make_algebra, transpose_t,
)

F = Fraction
SMALL = [(GL, 1), (GL, 2), (GL, 3), (O, 2), (O, 3), (O, 4), (O, 5), (SP, 2), (SP, 4)]


def basis_coords(spec):
    return [{b: F(1)} for b in range(spec.dim)]


@pytest.mark.parametrize("family,N,dim", [(GL, 2, 4), (SP, 2, 3), (O, 4, 6), (GL, 3, 9), (O, 3, 3), (O, 5, 10), (SP, 4, 10)])
def test_dimensions(family, N, dim):
    spec = make_algebra(family, N)
    assert spec.dim == dim
    assert len({b.label for b in spec.basis}) == dim


def test_bad_sizes():
    with pytest.raises(ValueError):
        make_algebra(SP, 3)
    with pytest.raises(ValueError):
        make_algebra(GL, 0)
    with pytest.raises(ValueError):
        make_algebra("e8", 4)


def test_generator_matrices():
    assert generator_matrix(make_algebra(GL, 2), 1, 2) == {(1, 2): 1}
    assert generator_matrix(make_algebra(SP, 2), 1, 1) == {(1, 1): 1, (2, 2): -1}
    assert generator_matrix(make_algebra(O, 3), 1, 2) == {(1, 2): 1, (2, 3): -1}
    with pytest.raises(IndexError):
        generator_matrix(make_algebra(GL, 2), 3, 1)


@pytest.mark.parametrize("family,N", [(O, 3), (O, 4), (O, 5), (SP, 2), (SP, 4)])
def test_skew_symmetry(family, N):
    spec = make_algebra(family, N)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            m = generator_matrix(spec, i, j)
            t = transpose_t(family, N, m)
            total = {k: m.get(k, 0) + t.get(k, 0) for k in set(m) | set(t)}
            assert not any(total.values())


@pytest.mark.parametrize("family,N", [(O, 4), (SP, 4)])
def test_resolved_generators(family, N):
    # F_j'i' is -F_ij (o) or -eps_i eps_j F_ij (sp) as returned matrices
    spec = make_algebra(family, N)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            a = generator_matrix(spec, i, j)
            b = generator_matrix(spec, N - j + 1, N - i + 1)
            sign = 1
            if family == SP:
                sign = (1 if i <= N // 2 else -1) * (1 if j <= N // 2 else -1)
            assert {k: -sign * v for k, v in a.items()} == b


def test_brackets():
    gl2 = make_algebra(GL, 2)
    e11, e12 = gl2.generator(1, 1), gl2.generator(1, 2)
    assert bracket(gl2, e11, e12) == e12
    sp2 = make_algebra(SP, 2)
    assert bracket(sp2, sp2.generator(1, 1), sp2.generator(1, 2)) == {b: 2 * v for b, v in sp2.generator(1, 2).items()}
    for x in basis_coords(sp2):
        assert bracket(sp2, x, x) == {}


def test_forms():
    gl2 = make_algebra(GL, 2)
    assert invariant_form(gl2, gl2.generator(1, 1), gl2.generator(1, 1)) == F(1, 2)
    sp2 = make_algebra(SP, 2)
    assert invariant_form(sp2, sp2.generator(1, 1), sp2.generator(1, 1)) == 2
    o3 = make_algebra(O, 3)
    assert invariant_form(o3, o3.generator(1, 2), o3.generator(2, 1)) == 1


def test_gl_form_matches_central_term():
    spec = make_algebra(GL, 3)
    for i in range(1, 4):
        for j in range(1, 4):
            for k in range(1, 4):
                for l in range(1, 4):
                    expected = F(int(k == j and i == l)) - F(int(i == j and k == l), 3)
                    assert invariant_form(spec, spec.generator(i, j), spec.generator(k, l)) == expected


@pytest.mark.parametrize("family,N", [(GL, 4), (GL, 5), (O, 5), (SP, 4)])
def test_form_invariance_exhaustive(family, N):
    spec = make_algebra(family, N)
    basis = basis_coords(spec)
    for x in basis:
        for y in basis:
            xy = bracket(spec, x, y)
            for z in basis:
                assert invariant_form(spec, xy, z) + invariant_form(spec, y, bracket(spec, x, z)) == 0


@pytest.mark.parametrize("family,N", [(GL, 2), (GL, 3), (O, 4), (SP, 2), (SP, 4), (O, 5)])
def test_jacobi(family, N):
    spec = make_algebra(family, N)
    basis = basis_coords(spec)
    for x in basis:
        for y in basis:
            for z in basis:
                total = {}
                for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                    for k, v in bracket(spec, a, bracket(spec, b, c)).items():
                        total[k] = total.get(k, 0) + v
                assert not any(total.values())


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_coordinates_roundtrip(case, data):
    spec = make_algebra(*case)
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=spec.dim, max_size=spec.dim))
    coords = {b: F(c) for b, c in enumerate(coeffs) if c}
    assert coordinates(spec, element_matrix(spec, coords)) == coords


def test_coordinates_rejects_non_members():
    with pytest.raises(ValueError):
        coordinates(make_algebra(O, 3), {(1, 1): F(1)})


def test_levels():
    assert critical_level(make_algebra(GL, 3)) == -3
    assert critical_level(make_algebra(SP, 2)) == -2
    assert critical_level(make_algebra(O, 4)) == -2
    assert dual_coxeter(make_algebra(SP, 4)) == 3


def test_f_circ_layout():
    sp2 = make_algebra(SP, 2)
    fc = f_circ(sp2)
    assert len(fc) == 3
    assert fc[1] == [{}, {}, {}]
    assert [row[1] for row in fc] == [{}, {}, {}]
    assert fc[0][0] == sp2.generator(1, 1) and fc[0][2] == sp2.generator(1, 2)
    assert fc[2][0] == sp2.generator(2, 1) and fc[2][2] == sp2.generator(2, 2)
    fc5 = f_circ(make_algebra(SP, 4))
    assert len(fc5) == 5 and fc5[2] == [{}] * 5
    with pytest.raises(ValueError):
        f_circ(make_algebra(O, 4))
