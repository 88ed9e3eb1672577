from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from lie_center import brauer as br
from lie_center.brauer import diagram_operator, jm_dimension
from lie_center.classical import GL, O, SP
from lie_center.ratfunc import PoleError, RationalFunction

W = RationalFunction.omega()
F = Fraction


def test_parse_format_roundtrip():
    for m in (1, 2, 3):
        for d in br.all_diagrams(m):
            assert br.parse_diagram(br.format_diagram(d)) == d
    with pytest.raises(ValueError):
        br.parse_diagram("2 T1-B1")


def test_diagram_counts():
    # (2m - 1)!! diagrams
    assert [len(br.all_diagrams(m)) for m in (1, 2, 3, 4)] == [1, 3, 15, 105]


def test_compose_examples():
    e = br.eps(2, 1, 2)
    s = br.s(2, 1, 2)
    assert br.compose(e, e) == (1, e)
    assert br.compose(s, s) == (0, br.identity(2))
    assert br.compose(s, e) == (0, e)
    assert br.compose(e, s) == (0, e)


def test_symmetrizer_m2():
    s2 = br.symmetrizer(2)
    expected = (
        F(1, 2) * br.BrauerElement.of(br.identity(2))
        + F(1, 2) * br.BrauerElement.of(br.s(2, 1, 2))
        - br.BrauerElement.of(br.eps(2, 1, 2), 1 / W)
    )
    assert s2 == expected


@pytest.mark.parametrize("m", [2, 3])
def test_idempotents(m):
    s = br.symmetrizer(m)
    h, a = br.group_symmetrizers(m)
    assert s * s == s
    assert h * h == h
    assert a * a == a
    assert h * a == br.BrauerElement(m)


@pytest.mark.parametrize("m", [2, 3])
def test_symmetrizer_absorbs_generators(m):
    s = br.symmetrizer(m)
    for a in range(1, m):
        sd = br.BrauerElement.of(br.s(m, a, a + 1))
        ed = br.BrauerElement.of(br.eps(m, a, a + 1))
        assert sd * s == s and s * sd == s
        assert ed * s == br.BrauerElement(m)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 4), st.data())
def test_associativity(m, data):
    ds = br.all_diagrams(m)
    a, b, c = (br.BrauerElement.of(data.draw(st.sampled_from(ds))) for _ in range(3))
    assert (a * b) * c == a * (b * c)


def test_gamma():
    assert br.gamma(2) == W / (W + 2)
    assert br.gamma(1).evaluate(5) == F(4, 5)
    with pytest.raises(PoleError):
        br.gamma(3).evaluate(-4)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_symmetrizer_congruence(m):
    h, _ = br.group_symmetrizers(m)
    assert br.in_Jm(br.gamma(m) * br.symmetrizer(m) - h)
    if m == 2:
        # J_2 is spanned by the identity and s + eps, so s on its own is outside
        assert not br.in_Jm(br.BrauerElement.of(br.s(2, 1, 2)))


def test_odd_symmetrizers_in_J3():
    h, _ = br.group_symmetrizers(3)
    assert br.in_Jm(br.symmetrizer(3))
    assert br.in_Jm(h)


def test_jm_dimensions():
    assert [jm_dimension(m) for m in (2, 3, 4)] == [2, 14, 99]


def test_transposition_is_involution():
    for d in br.all_diagrams(3):
        for a in (1, 2, 3):
            assert br.transpose_diagram(br.transpose_diagram(d, a), a) == d


@pytest.mark.parametrize("family,N", [(O, 2), (O, 3), (O, 4), (SP, 2), (SP, 4)])
@pytest.mark.parametrize("m", [2, 3])
def test_action_is_multiplicative(family, N, m):
    omega = N if family == O else -N
    ds = br.all_diagrams(m)
    for d1 in ds:
        for d2 in ds:
            loops, d = br.compose(d1, d2)
            lhs = diagram_operator(d1, family, N) @ diagram_operator(d2, family, N)
            assert lhs == omega ** loops * diagram_operator(d, family, N)


@pytest.mark.parametrize("family,N", [(O, 3), (O, 4), (SP, 2), (SP, 4)])
def test_action_commutes_with_transposition(family, N):
    for m in (2, 3):
        for d in br.all_diagrams(m):
            for a in range(1, m + 1):
                lhs = diagram_operator(br.transpose_diagram(d, a), family, N)
                assert lhs == br.partial_transpose(diagram_operator(d, family, N), a, family)


def test_symplectic_action_twists_permutations():
    # s_ab acts as -P in the symplectic case, so h^(m) becomes the matrix antisymmetrizer
    for N in (2, 4):
        h_sp, _ = br.group_images(2, SP, N)
        _, a_gl = br.group_images(2, GL, N)
        assert h_sp == a_gl


def test_gl_action_rejects_contractions():
    with pytest.raises(ValueError):
        diagram_operator(br.eps(2, 1, 2), GL, 3)


def test_symplectic_symmetrizer_guard():
    with pytest.raises(ValueError):
        br.symmetrizer_image(2, SP, 2)


def test_partial_trace_small():
    P = diagram_operator(br.s(2, 1, 2), GL, 3)
    assert br.partial_trace(P, [2]) == br.TensorOperator.identity(3, 1)
    assert br.partial_trace(br.TensorOperator.identity(3, 2), [1, 2]).entries == {((), ()): 9}


@pytest.mark.parametrize("N", [2, 3, 4])
def test_partial_trace_identities(N):
    for m in (2, 3):
        H, A = br.group_images(m, GL, N)
        for ell in range(1, m):
            h_l, a_l = br.group_images(ell, GL, N)
            tail = range(ell + 1, m + 1)
            assert br.partial_trace(A, tail) == F(comb(N, m), comb(N, ell)) * a_l
            assert br.partial_trace(H, tail) == F(comb(N + m - 1, m), comb(N + ell - 1, ell)) * h_l
            lhs = br.gamma(m).evaluate(N) * br.partial_trace(br.symmetrizer_image(m, O, N), tail)
            rhs = F(comb(N + m - 2, m), comb(N + ell - 2, ell)) * br.gamma(ell).evaluate(N) * br.symmetrizer_image(ell, O, N)
            assert lhs == rhs


def test_symplectic_partial_trace():
    N, m = 4, 2
    lhs = br.gamma(m).evaluate(-N) * br.partial_trace(br.symmetrizer_image(m, SP, N), [2])
    rhs = F(comb(N + 1, m), comb(N + 1, 1)) * br.gamma(1).evaluate(-N) * br.symmetrizer_image(1, SP, N)
    assert lhs == rhs


def test_ratfunc_arithmetic():
    x = (W + 1) / (W * W - 1)
    assert x == 1 / (W - 1)
    assert x.evaluate(3) == F(1, 2)
    with pytest.raises(PoleError):
        x.evaluate(1)
    assert (W ** 2 - 1) / (W - 1) == W + 1
    assert hash(W + 1 - 1) == hash(W)
