"""Casimir elements of U(g), Harish-Chandra images and the symplectic Capelli determinant.

Finite enveloping algebra words use generators ``(block, b)`` where block 0
holds lowering, 1 Cartan and 2 raising basis elements, so the PBW order is
triangular.  A commuting spectral parameter ``u`` is the generator
``U_GEN`` and always sorts last.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence

from sympy import QQ
from sympy.functions.combinatorial.numbers import stirling
from sympy.polys.rings import ring
from sympy.utilities.iterables import multiset_permutations

from .brauer import gamma, group_images, symmetrizer_image
from .classical import GL, O, SP, LieAlgebraSpec, f_circ
from .pbw import ONE, PBWEngine, add_into, scaled
from .ratfunc import p_mul
from .vectors import TraceEvaluator, delta_phi_sym, gbinom

LOWER, CARTAN, RAISE, U_BLOCK = 0, 1, 2, 3
U_GEN = (U_BLOCK, 0)


def _block(spec: LieAlgebraSpec, b: int) -> int:
    i, j = spec.label(b)
    return CARTAN if i == j else (RAISE if i < j else LOWER)


class FiniteAlgebra:
    """U(g)[u] with the triangular PBW order."""

    def __init__(self, spec: LieAlgebraSpec):
        self.spec = spec
        self.blocks = [_block(spec, b) for b in range(spec.dim)]
        self.engine = PBWEngine(self._bracket)

    def _bracket(self, x, y):
        if x[0] == U_BLOCK or y[0] == U_BLOCK or x == y:
            return {}, Fraction(0)
        lin = {(self.blocks[d], d): v for d, v in self.spec.structure[x[1]][y[1]].items()}
        return lin, Fraction(0)

    def gen(self, b: int) -> tuple:
        return (self.blocks[b], b)

    def element(self, raw) -> "FiniteUEAElement":
        return FiniteUEAElement(self, self.engine.normal_form(dict(raw)))

    def basis_element(self, b: int) -> "FiniteUEAElement":
        return FiniteUEAElement(self, {(self.gen(b),): Fraction(1)})

    def u(self) -> "FiniteUEAElement":
        return FiniteUEAElement(self, {(U_GEN,): Fraction(1)})

    def scalar(self, c) -> "FiniteUEAElement":
        c = Fraction(c)
        return FiniteUEAElement(self, {ONE: c} if c else {})


@lru_cache(maxsize=None)
def finite_algebra(spec: LieAlgebraSpec) -> FiniteAlgebra:
    return FiniteAlgebra(spec)


@dataclass(eq=False)
class FiniteUEAElement:
    algebra: FiniteAlgebra
    terms: Dict[tuple, Fraction]

    def _coerce(self, other):
        if isinstance(other, FiniteUEAElement):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different algebras")
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        out = dict(self.terms)
        add_into(out, self._coerce(other).terms)
        return FiniteUEAElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return FiniteUEAElement(self.algebra, scaled(self.terms, -1))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, FiniteUEAElement):
            return FiniteUEAElement(self.algebra, self.algebra.engine.mul(self.terms, self._coerce(other).terms))
        return FiniteUEAElement(self.algebra, scaled(self.terms, Fraction(other)))

    def __rmul__(self, other):
        return FiniteUEAElement(self.algebra, scaled(self.terms, Fraction(other)))

    def __eq__(self, other):
        return self.terms == self._coerce(other).terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        spec = self.algebra.spec
        parts = []
        for w, c in sorted(self.terms.items()):
            names = ["u" if g == U_GEN else "%s%d%d" % ((spec.letter,) + spec.label(g[1])) for g in w]
            parts.append(f"({c})" + ("*" + "*".join(names) if names else ""))
        return " + ".join(parts)

    def u_coefficients(self) -> Dict[int, "FiniteUEAElement"]:
        """``{k: coefficient of u^k}``."""
        out: dict = {}
        for w, c in self.terms.items():
            k = sum(1 for g in w if g == U_GEN)
            out.setdefault(k, {})[w[: len(w) - k]] = c
        return {k: FiniteUEAElement(self.algebra, t) for k, t in sorted(out.items())}

    def commutator(self, other: "FiniteUEAElement") -> "FiniteUEAElement":
        return self * other - other * self


# lambda polynomials ---------------------------------------------------------

@lru_cache(maxsize=None)
def lambda_ring(rank: int):
    """Polynomial ring Q[l1..l_rank, u]; returns (ring, [l1..l_rank], u)."""
    names = [f"l{i}" for i in range(1, rank + 1)] + ["u"]
    R, *gens = ring(",".join(names), QQ)
    return R, gens[:-1], gens[-1]


def poly_to_json(p) -> list:
    """Deterministic serialization: sorted [exponents, "p/q"] pairs."""
    out = []
    for exps, c in sorted(p.terms()):
        c = Fraction(int(c.numerator), int(c.denominator))
        out.append({"exponents": list(exps), "coefficient": f"{c.numerator}/{c.denominator}"})
    return out


def _q(c) -> "QQ":
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def hc_project(spec: LieAlgebraSpec, z: FiniteUEAElement):
    """Harish-Chandra projection: keep purely Cartan (and u) words, substitute weights."""
    R, lam, u = lambda_ring(spec.rank)
    total = R.zero
    for w, c in z.terms.items():
        mono = R.one
        for g in w:
            if g == U_GEN:
                mono *= u
                continue
            if g[0] != CARTAN:
                mono = None
                break
            i = spec.label(g[1])[0]
            mono *= lam[i - 1]
        if mono is not None:
            total += mono * _q(c)
    return total


# Casimir elements -------------------------------------------------------------

def _finite_words(alg: FiniteAlgebra, raw_loop_words: dict) -> dict:
    out: dict = {}
    for w, c in raw_loop_words.items():
        add_into(out, {tuple(alg.gen(b) for _, b in w): c})
    return out


def _trace_product(alg: FiniteAlgebra, op, entry, m: int, shifts: Optional[List[Fraction]] = None) -> FiniteUEAElement:
    """tr op (X_1 + u + s_1) ... (X_m + u + s_m); without shifts, tr op X_1 ... X_m."""
    ev = TraceEvaluator(op, entry)
    raw: dict = {}
    for chosen in itertools.product((False, True), repeat=m):
        if shifts is None and not all(chosen):
            continue
        positions = tuple(a + 1 for a in range(m) if chosen[a])
        # scalar factors (u + s_a) for the positions not carrying X
        upoly = (Fraction(1),)
        for a in range(m):
            if not chosen[a]:
                upoly = p_mul(upoly, (Fraction(shifts[a]), Fraction(1)))
        if positions:
            words = _finite_words(alg, ev.words(tuple((p, 0) for p in positions)))
        else:
            words = {ONE: Fraction(op.trace())}
        for k, coef in enumerate(upoly):
            if coef:
                add_into(raw, {w + (U_GEN,) * k: c * coef for w, c in words.items()})
    return alg.element(raw)


def _symmetrize_poly(alg: FiniteAlgebra, poly) -> FiniteUEAElement:
    raw: dict = {}
    for mono, c in sorted(poly.items()):
        gens = [alg.gen(b) for b in mono]
        weight = Fraction(1, factorial(len(gens)))
        for _, grp in itertools.groupby(sorted(gens)):
            weight *= factorial(len(list(grp)))
        for perm in multiset_permutations(sorted(gens)):
            add_into(raw, {tuple(perm): c * weight})
    return alg.element(raw)


def symmetrized_casimirs(spec: LieAlgebraSpec, m: int, kind: Optional[str] = None, route: str = "direct") -> FiniteUEAElement:
    """The symmetrization of Delta_m ("delta") or Phi_m ("phi") in U(g).

    Routes: "direct" symmetrizes the commutative coefficient, "trace" uses
    tr A^(m) E.. / tr H^(m) X.. and "symmetrizer" (o, sp) uses
    gamma_m(omega) tr S^(m) F...
    """
    if kind is None:
        kind = "phi" if spec.family == O else "delta"
    if kind not in ("delta", "phi"):
        raise ValueError(f"unknown kind {kind!r}")
    if spec.family == O and kind == "delta" or spec.family == SP and kind == "phi":
        raise ValueError(f"{kind} is not used for {spec.family}")
    if spec.family != GL and m % 2:
        raise ValueError("o/sp Casimirs need even m")
    alg = finite_algebra(spec)
    if m == 0:
        return alg.scalar(1)
    if route == "direct":
        delta, phi = delta_phi_sym(spec, m)
        return _symmetrize_poly(alg, (delta if kind == "delta" else phi).get(m, {}))
    N = spec.N
    if route == "trace":
        # the Brauer element h^(m) acts through the family's own representation;
        # for sp that image is the matrix antisymmetrizer
        h, a = group_images(m, spec.family, N)
        op = a if (spec.family == GL and kind == "delta") else h
        return _trace_product(alg, op, spec.generator, m)
    if route == "symmetrizer" and spec.family != GL:
        omega = N if spec.family == O else -N
        return _trace_product(alg, symmetrizer_image(m, spec.family, N), spec.generator, m) * gamma(m).evaluate(omega)
    raise ValueError(f"unknown route {route!r}")


# shifted symmetric polynomials ------------------------------------------------

def e_star(k: int, xs: Sequence):
    if k < 0:
        raise ValueError("k must be nonnegative")
    one = xs[0].ring.one if xs else 1
    total = 0 * one
    for idx in itertools.combinations(range(len(xs)), k):
        term = one
        for j, i in enumerate(idx):
            term = term * (xs[i] - j)
        total += term
    return total


def h_star(k: int, xs: Sequence):
    if k < 0:
        raise ValueError("k must be nonnegative")
    one = xs[0].ring.one if xs else 1
    total = 0 * one
    for idx in itertools.combinations_with_replacement(range(len(xs)), k):
        term = one
        for j, i in enumerate(idx):
            term = term * (xs[i] + j)
        total += term
    return total


def stirling2(m: int, k: int) -> int:
    if k < 0 or m < 0 or k > m:
        raise ValueError("need 0 <= k <= m")
    return int(stirling(m, k, kind=2))


def _stirling_sum(m: int, size, values, shifted) -> object:
    total = 0 * values[0].ring.one
    top = gbinom(size, m)
    for k in range(1, m + 1):
        if gbinom(size, k) == 0:
            # only reachable when k exceeds the number of variables, where e*_k = 0
            continue
        total += shifted(k, values) * _q(stirling2(m, k) * top / gbinom(size, k))
    return total


def hc_image_rhs(spec: LieAlgebraSpec, m: int, kind: Optional[str] = None):
    """Right-hand side of the Harish-Chandra image formulas."""
    _, lam, _ = lambda_ring(spec.rank)
    N, n = spec.N, spec.rank
    if spec.family == GL:
        kind = kind or "delta"
        if kind == "delta":
            return _stirling_sum(m, N, lam, e_star)
        return _stirling_sum(m, -N, lam, h_star)
    neg = [-x for x in reversed(lam)]
    if spec.family == SP:
        zero = 0 * lam[0]
        return _stirling_sum(m, 2 * n + 1, lam + [zero] + neg, e_star)
    if N % 2:
        return _stirling_sum(m, -2 * n, lam + neg, h_star)
    first = lam[: n - 1] + neg
    second = lam + neg[1:]
    half = _q(Fraction(1, 2))
    return (_stirling_sum(m, -2 * n + 1, first, h_star) + _stirling_sum(m, -2 * n + 1, second, h_star)) * half


# D_m(u) and the Capelli-type determinant -------------------------------------------

def dm_u(spec: LieAlgebraSpec, m: int, route: str = "auto") -> FiniteUEAElement:
    """D_m(u) as an element of U(g)[u]; coefficients via ``u_coefficients``."""
    if spec.family not in (O, SP):
        raise ValueError("D_m(u) is defined for o_N and sp_2n")
    alg = finite_algebra(spec)
    shifts = [Fraction(m - 1 - 2 * a, 2) for a in range(m)]
    N = spec.N
    if spec.family == O:
        if route not in ("auto", "symmetrizer"):
            raise ValueError("o_N uses the symmetrizer route")
        return _trace_product(alg, symmetrizer_image(m, O, N), spec.generator, m, shifts) * gamma(m).evaluate(N)
    if route == "auto":
        route = "symmetrizer" if m <= spec.rank else "fcirc"
    if route == "symmetrizer":
        if m > spec.rank:
            raise ValueError("the symplectic symmetrizer route needs m <= n")
        return _trace_product(alg, symmetrizer_image(m, SP, N), spec.generator, m, shifts) * gamma(m).evaluate(-N)
    if route != "fcirc":
        raise ValueError(f"unknown route {route!r}")
    fc = f_circ(spec)
    _, a = group_images(m, GL, N + 1)
    return _trace_product(alg, a, lambda i, j: fc[i - 1][j - 1], m, shifts)


def capelli_C(spec: LieAlgebraSpec) -> FiniteUEAElement:
    """Symmetrized determinant C(u) of u + F° for sp_2n, as an element of U(g)[u].

    The double sum over (sigma, tau) is accumulated row by row over pairs
    (used rows, used columns); the sign of each partial permutation is
    updated by counting larger indices already used.
    """
    if spec.family != SP:
        raise ValueError("capelli_C is defined for sp_2n only")
    alg = finite_algebra(spec)
    n = spec.rank
    size = 2 * n + 1
    fc = f_circ(spec)
    states = {(0, 0): {ONE: Fraction(1)}}
    for k in range(size):
        c = Fraction(n - k)
        nxt: dict = {}
        for (rows, cols), terms in states.items():
            for r in range(size):
                if rows >> r & 1:
                    continue
                sr = (-1) ** bin(rows >> (r + 1)).count("1")
                for s in range(size):
                    if cols >> s & 1:
                        continue
                    sign = sr * (-1) ** bin(cols >> (s + 1)).count("1")
                    factor: dict = {(alg.gen(b),): v for b, v in fc[r][s].items()}
                    if r == s:
                        factor[(U_GEN,)] = Fraction(1)
                        if c:
                            factor[ONE] = c
                    if not factor:
                        continue
                    prod_terms = alg.engine.mul(terms, factor)
                    if prod_terms:
                        add_into(nxt.setdefault((rows | 1 << r, cols | 1 << s), {}), prod_terms, sign)
        states = {k2: v for k2, v in nxt.items() if v}
    full = (1 << size) - 1
    total = states.get((full, full), {})
    out: dict = {}
    for w, c in total.items():
        if not w or w[-1] != U_GEN:
            raise ArithmeticError("u C(u) is not divisible by u")
        out[w[:-1]] = c / factorial(size)
    return FiniteUEAElement(alg, out)


def factorial_e(k: int, xs: Sequence, a: Sequence):
    """Factorial elementary symmetric polynomial e_k(x | a).

    e_k(x | a) = sum over i_1 < ... < i_k of prod_j (x_{i_j} - a_{i_j - j + 1}).
    """
    if k < 0 or k > len(xs):
        return 0
    one = xs[0].ring.one if xs else 1
    total = 0 * one
    for idx in itertools.combinations(range(len(xs)), k):
        term = one
        for j, i in enumerate(idx):
            term = term * (xs[i] - a[i - j])
        total += term
    return total


def capelli_identity_holds(n: int) -> bool:
    """Check prod (u^2 - l_i^2) = sum_k (-1)^k e_k(l^2 | a) prod_{j <= n-k} (u^2 - j^2)."""
    R, lam, u = lambda_ring(n)
    sq = [x * x for x in lam]
    lhs = R.one
    for x in sq:
        lhs *= u * u - x
    a = [R(j * j) for j in range(1, 2 * n + 2)]
    rhs = R.zero
    for k in range(n + 1):
        tail = R.one
        for j in range(1, n - k + 1):
            tail *= u * u - j * j
        rhs += (-1) ** k * factorial_e(k, sq, a) * tail
    return lhs == rhs


def capelli_hc_expected(spec: LieAlgebraSpec):
    R, lam, u = lambda_ring(spec.rank)
    n = spec.rank
    out = R.one
    for i, x in enumerate(lam, start=1):
        li = x + (n - i + 1)
        out *= u * u - li * li
    return out


def finite_to_json(e: FiniteUEAElement) -> list:
    spec = e.algebra.spec
    out = []
    for w, c in sorted(e.terms.items()):
        word = []
        for g in w:
            if g == U_GEN:
                word.append({"gen": "u"})
            else:
                i, j = spec.label(g[1])
                word.append({"gen": spec.letter, "i": i, "j": j})
        out.append({"coefficient": f"{c.numerator}/{c.denominator}", "word": word})
    return out
