"""Enveloping algebra of C T + t^{-1} g[t^{-1}] and the vacuum module.

Generators are tuples: a current X_b[r] is ``(r, b)`` and the derivation is
``T_GEN``.  Tuple comparison gives the PBW order: currents by mode (most
negative first) then basis index, with T last, so ``e * 1`` in the vacuum
module is simply the part of ``e`` without a trailing T.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, Optional, Tuple

from sympy.utilities.iterables import multiset_permutations

from .classical import GL, LieAlgebraSpec
from .pbw import ONE, PBWEngine, add_into, scaled

T_GEN = (float("inf"), 0)


def is_T(g) -> bool:
    return g == T_GEN


def current(b: int, r: int):
    return (r, b)


class LoopAlgebra:
    """U(C T + g[t, t^-1] + C K) at a fixed level, with cached straightening."""

    def __init__(self, spec: LieAlgebraSpec, level: Fraction):
        self.spec = spec
        self.level = Fraction(level)
        self.engine = PBWEngine(self._bracket)
        self._act_cache: dict = {}

    def __repr__(self):
        return f"LoopAlgebra({self.spec!r}, K={self.level})"

    def _bracket(self, x, y):
        if x == y:
            return {}, Fraction(0)
        if is_T(x):
            s, c = y
            return ({(s - 1, c): Fraction(-s)} if s else {}), Fraction(0)
        if is_T(y):
            r, b = x
            return ({(r - 1, b): Fraction(r)} if r else {}), Fraction(0)
        (r, b), (s, c) = x, y
        lin = {(r + s, d): v for d, v in self.spec.structure[b][c].items()}
        scalar = Fraction(0)
        if r + s == 0 and r:
            scalar = r * self.level * self.spec.form_table[b][c]
        return lin, scalar

    def element(self, terms) -> "UEAElement":
        return UEAElement(self, self.engine.normal_form(dict(terms)))

    def one(self) -> "UEAElement":
        return UEAElement(self, {ONE: Fraction(1)})

    def zero(self) -> "UEAElement":
        return UEAElement(self, {})

    def gen(self, b: int, r: int) -> "UEAElement":
        return UEAElement(self, {((r, b),): Fraction(1)})

    def T(self) -> "UEAElement":
        return UEAElement(self, {(T_GEN,): Fraction(1)})

    def entry(self, i: int, j: int, r: int) -> "UEAElement":
        """E_ij[r] or F_ij[r] written in the canonical basis."""
        return UEAElement(self, {((r, b),): c for b, c in self.spec.generator(i, j).items()})

    # vacuum module -----------------------------------------------------

    def _act_word(self, b: int, s: int, w) -> dict:
        if not w:
            return {}
        key = (b, s, w)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        (r, c), rest = w[0], w[1:]
        out: dict = {}
        # X[s] (Y[r] rest) = [X[s], Y[r]] rest + Y[r] (X[s] rest)
        mode = s + r
        for d, v in self.spec.structure[b][c].items():
            if mode >= 0:
                add_into(out, self._act_word(d, mode, rest), v)
            else:
                add_into(out, self.engine.times_word({((mode, d),): Fraction(1)}, rest), v)
        if mode == 0 and s:
            add_into(out, {rest: Fraction(1)}, s * self.level * self.spec.form_table[b][c])
        inner = self._act_word(b, s, rest)
        if inner:
            add_into(out, self.engine.mul({(w[0],): Fraction(1)}, inner))
        self._act_cache[key] = out
        return out

    def act(self, b: int, s: int, v: "UEAElement") -> "UEAElement":
        """X_b[s] . v in the vacuum module, for s >= 0."""
        if s < 0:
            raise ValueError("act needs a nonnegative mode")
        _check_vacuum(v)
        out: dict = {}
        for w, c in v.terms.items():
            add_into(out, self._act_word(b, s, w), c)
        return UEAElement(self, out)


@lru_cache(maxsize=None)
def _loop_algebra(spec: LieAlgebraSpec, level: Fraction) -> LoopAlgebra:
    return LoopAlgebra(spec, level)


def loop_algebra(spec: LieAlgebraSpec, level=None) -> LoopAlgebra:
    """Shared algebra instance for (spec, level); level defaults to critical."""
    return _loop_algebra(spec, spec.critical_level if level is None else Fraction(level))


@dataclass(eq=False)
class UEAElement:
    algebra: LoopAlgebra
    terms: Dict[tuple, Fraction]

    @property
    def spec(self) -> LieAlgebraSpec:
        return self.algebra.spec

    def _coerce(self, other) -> "UEAElement":
        if isinstance(other, UEAElement):
            if other.algebra is not self.algebra:
                raise ValueError("elements live in different algebras (spec or level mismatch)")
            return other
        return UEAElement(self.algebra, {ONE: Fraction(other)} if other else {})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        add_into(out, other.terms)
        return UEAElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.algebra, scaled(self.terms, -1))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            other = self._coerce(other)
            return UEAElement(self.algebra, self.algebra.engine.mul(self.terms, other.terms))
        return UEAElement(self.algebra, scaled(self.terms, Fraction(other)))

    def __rmul__(self, other):
        return UEAElement(self.algebra, scaled(self.terms, Fraction(other)))

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.algebra is other.algebra and self.terms == other.terms
        return self.terms == self._coerce(other).terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return format_element(self)

    def mode_sums(self) -> set:
        return {sum(g[0] if not is_T(g) else -1 for g in w) for w in self.terms}

    def vacuum(self) -> "UEAElement":
        """Apply to the vacuum vector: drop words that end in T."""
        return UEAElement(self.algebra, {w: c for w, c in self.terms.items() if not (w and is_T(w[-1]))})

    def T_coefficients(self) -> Dict[int, "UEAElement"]:
        """Split into ``{k: coefficient of T^k}`` (T is always rightmost)."""
        out: dict = {}
        for w, c in self.terms.items():
            k = 0
            while k < len(w) and is_T(w[len(w) - 1 - k]):
                k += 1
            out.setdefault(k, {})[w[: len(w) - k]] = c
        return {k: UEAElement(self.algebra, t) for k, t in sorted(out.items())}


def normal_form(e: UEAElement) -> UEAElement:
    return UEAElement(e.algebra, e.algebra.engine.normal_form(e.terms))


def multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    return a * b


def _check_vacuum(v: UEAElement) -> None:
    for w in v.terms:
        for g in w:
            if is_T(g) or g[0] >= 0:
                raise ValueError("vacuum elements may only contain negative modes")


def apply_T(v: UEAElement) -> UEAElement:
    """The derivation T on the vacuum module: T(X[-r]) = r X[-r-1], T(1) = 0."""
    _check_vacuum(v)
    raw: dict = {}
    for w, c in v.terms.items():
        for k, (r, b) in enumerate(w):
            add_into(raw, {w[:k] + ((r - 1, b),) + w[k + 1:]: c * -r})
    return v.algebra.element(raw)


def act(spec: LieAlgebraSpec, b: int, s: int, v: UEAElement, K=None) -> UEAElement:
    alg = v.algebra if K is None else loop_algebra(spec, Fraction(K))
    if alg is not v.algebra:
        v = UEAElement(alg, v.terms)
    return alg.act(b, s, v)


def symmetrize(algebra: LoopAlgebra, gens: Iterable) -> UEAElement:
    """Symmetrization map on a commutative monomial given as a list of generators."""
    gens = sorted(gens)
    n = len(gens)
    raw: dict = {}
    for perm in multiset_permutations(gens):
        add_into(raw, {tuple(perm): Fraction(1)})
    # each distinct ordering occurs prod(mult!) times among the n! permutations
    weight = Fraction(1, factorial(n))
    for g, grp in itertools.groupby(gens):
        weight *= factorial(len(list(grp)))
    return algebra.element(scaled(raw, weight))


def apply_theta(e: UEAElement) -> UEAElement:
    """The automorphism E_ij[r] -> -E_ji[r] of the gl_N loop algebra (T fixed)."""
    spec = e.spec
    if spec.family != GL:
        raise ValueError("theta is defined for gl_N only")
    raw: dict = {}
    for w, c in e.terms.items():
        sign = 1
        new = []
        for g in w:
            if is_T(g):
                new.append(g)
            else:
                r, b = g
                i, j = spec.label(b)
                new.append((r, spec.index_of(j, i)))
                sign = -sign
        add_into(raw, {tuple(new): c * sign})
    return e.algebra.element(raw)


@dataclass
class CentralityResult:
    ok: bool
    witness: Optional[Tuple[Tuple[int, int], int, UEAElement]] = None

    def __bool__(self):
        return self.ok


def verify_centrality(spec: LieAlgebraSpec, v: UEAElement, K=None) -> CentralityResult:
    """Check g[t] v = 0 using the generators X[0], X[1] for every basis X."""
    level = spec.critical_level if K is None else Fraction(K)
    alg = loop_algebra(spec, level)
    v = UEAElement(alg, v.terms)
    for s in (0, 1):
        for b in range(spec.dim):
            res = alg.act(b, s, v)
            if res:
                return CentralityResult(False, (spec.label(b), s, res))
    return CentralityResult(True)


def fraction_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def gen_json(spec: LieAlgebraSpec, g) -> dict:
    if is_T(g):
        return {"gen": "T"}
    r, b = g
    i, j = spec.label(b)
    return {"gen": spec.letter, "i": i, "j": j, "mode": r}


def to_json(e: UEAElement) -> list:
    return [
        {"coefficient": fraction_str(c), "word": [gen_json(e.spec, g) for g in w]}
        for w, c in sorted(e.terms.items())
    ]


def from_json(algebra: LoopAlgebra, data: list) -> UEAElement:
    spec = algebra.spec
    raw: dict = {}
    for term in data:
        word = []
        for g in term["word"]:
            if g["gen"] == "T":
                word.append(T_GEN)
            else:
                word.append((g["mode"], spec.index_of(g["i"], g["j"])))
        add_into(raw, {tuple(word): Fraction(term["coefficient"])})
    return algebra.element(raw)


def format_element(e: UEAElement) -> str:
    if not e.terms:
        return "0"
    spec = e.spec
    parts = []
    for w, c in sorted(e.terms.items()):
        names = []
        for g in w:
            if is_T(g):
                names.append("T")
            else:
                i, j = spec.label(g[1])
                names.append(f"{spec.letter}{i}{j}[{g[0]}]")
        parts.append(f"({c})" + ("*" + "*".join(names) if names else ""))
    return " + ".join(parts)
