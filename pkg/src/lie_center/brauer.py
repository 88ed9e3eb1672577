"""Brauer algebra B_m(omega), its tensor-space actions, and partial traces.

Dots of an m-diagram are numbered ``0..m-1`` (top row) and ``m..2m-1``
(bottom row); a diagram stores the partner of every dot.  The product
``d1 * d2`` places ``d1`` under ``d2``.  Under the tensor-space actions the
top row indexes columns (input) and the bottom row indexes rows (output),
which makes ``rho(d1 * d2) = rho(d1) @ rho(d2)``.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Tuple

from .classical import GL, O, SP, LieAlgebraSpec, epsilon, prime
from .ratfunc import PoleError, RationalFunction

W = RationalFunction.omega()


@dataclass(frozen=True, order=True)
class Diagram:
    m: int
    partner: Tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        if len(p) != 2 * self.m or any(p[p[x]] != x or p[x] == x for x in range(2 * self.m)):
            raise ValueError("not a perfect matching on 2m dots")

    def edges(self) -> List[Tuple[int, int]]:
        return [(x, y) for x, y in enumerate(self.partner) if x < y]

    def top_pairs(self) -> List[Tuple[int, int]]:
        return [(x, y) for x, y in self.edges() if y < self.m]

    def bottom_pairs(self) -> List[Tuple[int, int]]:
        m = self.m
        return [(x - m, y - m) for x, y in self.edges() if x >= m]

    def verticals(self) -> List[Tuple[int, int]]:
        """(top position, bottom position) of every through-strand."""
        m = self.m
        return [(x, y - m) for x, y in self.edges() if x < m <= y]

    def horizontal_count(self) -> int:
        return len(self.top_pairs())

    def is_permutation(self) -> bool:
        return not self.top_pairs()

    def __str__(self):
        return format_diagram(self)


def _label(m: int, x: int) -> str:
    return f"T{x + 1}" if x < m else f"B{x - m + 1}"


def format_diagram(d: Diagram) -> str:
    return f"{d.m} " + " ".join(f"{_label(d.m, x)}-{_label(d.m, y)}" for x, y in d.edges())


def parse_diagram(text: str) -> Diagram:
    """Parse ``"m T1-B2 T2-B1 ..."`` (1-based dot labels)."""
    parts = text.replace(",", " ").split()
    if not parts:
        raise ValueError("empty diagram")
    m = int(parts[0])
    partner = [-1] * (2 * m)
    for edge in parts[1:]:
        match = re.fullmatch(r"([TB])(\d+)-([TB])(\d+)", edge)
        if not match:
            raise ValueError(f"bad edge {edge!r}")
        dots = []
        for row, k in ((match[1], match[2]), (match[3], match[4])):
            k = int(k)
            if not 1 <= k <= m:
                raise ValueError(f"dot {row}{k} out of range")
            dots.append(k - 1 if row == "T" else m + k - 1)
        x, y = dots
        if partner[x] != -1 or partner[y] != -1 or x == y:
            raise ValueError(f"dot reused in {edge!r}")
        partner[x], partner[y] = y, x
    if -1 in partner:
        raise ValueError("some dots are not matched")
    return Diagram(m, tuple(partner))


def identity(m: int) -> Diagram:
    return Diagram(m, tuple(list(range(m, 2 * m)) + list(range(m))))


def from_permutation(perm: Tuple[int, ...]) -> Diagram:
    """Diagram joining top a to bottom perm[a] (0-based)."""
    m = len(perm)
    partner = [0] * (2 * m)
    for a, b in enumerate(perm):
        partner[a], partner[m + b] = m + b, a
    return Diagram(m, tuple(partner))


def s(m: int, a: int, b: int) -> Diagram:
    """The transposition diagram s_ab (1-based positions)."""
    perm = list(range(m))
    perm[a - 1], perm[b - 1] = b - 1, a - 1
    return from_permutation(tuple(perm))


def eps(m: int, a: int, b: int) -> Diagram:
    """The contraction diagram eps_ab (1-based positions)."""
    partner = list(identity(m).partner)
    a, b = a - 1, b - 1
    partner[a], partner[b] = b, a
    partner[m + a], partner[m + b] = m + b, m + a
    return Diagram(m, tuple(partner))


@lru_cache(maxsize=None)
def compose(d1: Diagram, d2: Diagram) -> Tuple[int, Diagram]:
    """Place d1 under d2; return (closed loops, resulting diagram)."""
    if d1.m != d2.m:
        raise ValueError("diagrams of different sizes")
    m = d1.m
    p1, p2 = d1.partner, d2.partner
    partner = [-1] * (2 * m)
    seen_mid = [False] * m

    def walk(layer: int, dot: int) -> int:
        # follow strands until reaching an outer dot; return its result label
        while True:
            if layer == 2:
                q = p2[dot]
                if q < m:
                    return q
                mid = q - m
                seen_mid[mid] = True
                layer, dot = 1, mid
            else:
                q = p1[dot]
                if q >= m:
                    return q
                seen_mid[q] = True
                layer, dot = 2, m + q

    for k in range(m):
        if partner[k] == -1:
            end = walk(2, k)
            partner[k], partner[end] = end, k
        if partner[m + k] == -1:
            end = walk(1, m + k)
            partner[m + k], partner[end] = end, m + k
    loops = 0
    for k in range(m):
        if seen_mid[k]:
            continue
        # unvisited middle dots lie on closed loops: alternate d1 and d2 edges
        loops += 1
        cur, via_d1 = k, True
        while True:
            seen_mid[cur] = True
            cur = p1[cur] if via_d1 else p2[m + cur] - m
            via_d1 = not via_d1
            if cur == k:
                break
    return loops, Diagram(m, tuple(partner))


def transpose_diagram(d: Diagram, a: int) -> Diagram:
    """Swap the a-th top and bottom dots as edge ends (a is 1-based)."""
    m = d.m
    if not 1 <= a <= m:
        raise ValueError(f"position {a} out of range")
    top, bot = a - 1, m + a - 1

    def swap(x):
        return bot if x == top else top if x == bot else x

    partner = [0] * (2 * m)
    for x, y in enumerate(d.partner):
        partner[swap(x)] = swap(y)
    return Diagram(m, tuple(partner))


@lru_cache(maxsize=None)
def all_diagrams(m: int) -> Tuple[Diagram, ...]:
    def matchings(dots):
        if not dots:
            yield []
            return
        x = dots[0]
        for k in range(1, len(dots)):
            rest = dots[1:k] + dots[k + 1:]
            for mt in matchings(rest):
                yield [(x, dots[k])] + mt

    out = []
    for mt in matchings(list(range(2 * m))):
        partner = [0] * (2 * m)
        for x, y in mt:
            partner[x], partner[y] = y, x
        out.append(Diagram(m, tuple(partner)))
    return tuple(sorted(out))


def diagrams_with_horizontal(m: int, r: int) -> List[Diagram]:
    return [d for d in all_diagrams(m) if d.horizontal_count() == r]


class BrauerElement:
    """Finite combination of m-diagrams with coefficients in Q(omega)."""

    def __init__(self, m: int, terms: Optional[Dict[Diagram, RationalFunction]] = None):
        self.m = m
        self.terms: Dict[Diagram, RationalFunction] = {}
        for d, c in (terms or {}).items():
            if d.m != m:
                raise ValueError("diagram of the wrong size")
            c = RationalFunction._wrap(c)
            if c:
                self.terms[d] = c

    @classmethod
    def of(cls, d: Diagram, coeff=1) -> "BrauerElement":
        return cls(d.m, {d: RationalFunction._wrap(coeff)})

    def _check(self, other):
        if other.m != self.m:
            raise ValueError("elements of different Brauer algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return BrauerElement(self.m, out)

    def __neg__(self):
        return BrauerElement(self.m, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        scalar = RationalFunction._wrap(scalar)
        return BrauerElement(self.m, {d: c * scalar for d, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, BrauerElement):
            return other * self
        self._check(other)
        # group identical coefficient pairs before touching Q(omega) arithmetic
        counts: Counter = Counter()
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                loops, d = compose(d1, d2)
                counts[d, loops, c1, c2] += 1
        out: Dict[Diagram, RationalFunction] = {}
        for (d, loops, c1, c2), k in counts.items():
            v = c1 * c2 * k * W ** loops
            out[d] = out[d] + v if d in out else v
        return BrauerElement(self.m, out)

    def __eq__(self, other):
        return isinstance(other, BrauerElement) and self.m == other.m and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*[{format_diagram(d)}]" for d, c in sorted(self.terms.items()))


def binom_poly(x: RationalFunction, r: int) -> RationalFunction:
    out = RationalFunction.const(1)
    for k in range(r):
        out = out * (x - k)
    return out * Fraction(1, factorial(r))


@lru_cache(maxsize=None)
def symmetrizer(m: int) -> BrauerElement:
    """The symmetrizer s^(m) of B_m(omega)."""
    if m < 1:
        raise ValueError("m must be positive")
    x = W * Fraction(1, 2) + (m - 2)
    terms = {}
    for r in range(m // 2 + 1):
        coeff = RationalFunction.const(Fraction((-1) ** r, factorial(m))) / binom_poly(x, r)
        for d in diagrams_with_horizontal(m, r):
            terms[d] = coeff
    return BrauerElement(m, terms)


@lru_cache(maxsize=None)
def group_symmetrizers(m: int) -> Tuple[BrauerElement, BrauerElement]:
    """(h^(m), a^(m)): symmetrizer and anti-symmetrizer of C[S_m]."""
    if m < 1:
        raise ValueError("m must be positive")
    h, a = {}, {}
    c = Fraction(1, factorial(m))
    for perm in itertools.permutations(range(m)):
        d = from_permutation(perm)
        h[d] = c
        a[d] = c * permutation_sign(perm)
    return BrauerElement(m, h), BrauerElement(m, a)


def permutation_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def transpose(e: BrauerElement, a: int) -> BrauerElement:
    return BrauerElement(e.m, {transpose_diagram(d, a): c for d, c in e.terms.items()})


def gamma(m: int) -> RationalFunction:
    """gamma_m(omega) = (omega + m - 2) / (omega + 2m - 2)."""
    if m < 1:
        raise ValueError("m must be positive")
    return (W + (m - 2)) / (W + (2 * m - 2))


@lru_cache(maxsize=None)
def _jm_echelon(m: int):
    """Echelon basis of J_m over Q, keyed by pivot (diagram index)."""
    diagrams = all_diagrams(m)
    index = {d: k for k, d in enumerate(diagrams)}
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for d in diagrams:
        for a in range(1, m + 1):
            vec: Dict[int, Fraction] = {}
            for x in (d, transpose_diagram(d, a)):
                k = index[x]
                vec[k] = vec.get(k, 0) + Fraction(1)
            vec = _reduce(vec, pivots)
            if vec:
                lead = min(vec)
                c = vec[lead]
                pivots[lead] = {k: v / c for k, v in vec.items()}
    return index, pivots


def _reduce(vec: dict, pivots: dict) -> dict:
    vec = {k: v for k, v in vec.items() if v}
    while True:
        hits = [k for k in vec if k in pivots]
        if not hits:
            return vec
        k = min(hits)
        c = vec[k]
        for j, v in pivots[k].items():
            nv = vec.get(j, 0) - c * v
            if nv:
                vec[j] = nv
            else:
                vec.pop(j, None)


def jm_dimension(m: int) -> int:
    return len(_jm_echelon(m)[1])


def in_Jm(e: BrauerElement) -> bool:
    """Exact membership of e in J_m, by elimination against a Q-basis of J_m."""
    index, pivots = _jm_echelon(e.m)
    vec = {index[d]: c for d, c in e.terms.items()}
    return not _reduce(vec, pivots)


# Tensor space -----------------------------------------------------------------

Index = Tuple[int, ...]


class TensorOperator:
    """Sparse exact operator on (C^N)^{(x) m}; index values run over 1..N."""

    def __init__(self, N: int, m: int, entries: Optional[Dict[Tuple[Index, Index], Fraction]] = None):
        self.N, self.m = N, m
        self.entries = {k: Fraction(v) for k, v in (entries or {}).items() if v}

    @classmethod
    def identity(cls, N: int, m: int) -> "TensorOperator":
        return cls(N, m, {(i, i): 1 for i in itertools.product(range(1, N + 1), repeat=m)})

    def _check(self, other):
        if (self.N, self.m) != (other.N, other.m):
            raise ValueError("operator dimensions differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return TensorOperator(self.N, self.m, out)

    def __neg__(self):
        return TensorOperator(self.N, self.m, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return TensorOperator(self.N, self.m, {k: v * scalar for k, v in self.entries.items()})

    def __matmul__(self, other):
        self._check(other)
        by_row: dict = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[r, c] = out.get((r, c), 0) + v * w
        return TensorOperator(self.N, self.m, out)

    def __eq__(self, other):
        return (
            isinstance(other, TensorOperator)
            and (self.N, self.m) == (other.N, other.m)
            and self.entries == other.entries
        )

    def trace(self) -> Fraction:
        return sum((v for (r, c), v in self.entries.items() if r == c), Fraction(0))

    def __repr__(self):
        return f"TensorOperator(N={self.N}, m={self.m}, nnz={len(self.entries)})"


def partial_trace(op: TensorOperator, positions: Iterable[int]) -> TensorOperator:
    """Trace out the tensor factors at the given 1-based positions."""
    pos = sorted(set(positions))
    if any(not 1 <= p <= op.m for p in pos):
        raise ValueError(f"positions {pos} out of range for m={op.m}")
    keep = [k for k in range(op.m) if k + 1 not in pos]
    drop = [p - 1 for p in pos]
    out: dict = {}
    for (r, c), v in op.entries.items():
        if all(r[k] == c[k] for k in drop):
            key = (tuple(r[k] for k in keep), tuple(c[k] for k in keep))
            out[key] = out.get(key, 0) + v
    return TensorOperator(op.N, len(keep), out)


def partial_transpose(op: TensorOperator, a: int, family: str) -> TensorOperator:
    """Apply e_ij -> e_j'i' (times eps_i eps_j for sp) on the a-th factor."""
    N = op.N
    k = a - 1
    out = {}
    for (r, c), v in op.entries.items():
        i, j = r[k], c[k]
        sign = epsilon(N, i) * epsilon(N, j) if family == SP else 1
        nr = r[:k] + (prime(N, j),) + r[k + 1:]
        nc = c[:k] + (prime(N, i),) + c[k + 1:]
        out[nr, nc] = sign * v
    return TensorOperator(N, op.m, out)


def _contraction_operator(d: Diagram, N: int, signed: bool) -> TensorOperator:
    """Strands give deltas; horizontal pairs (a < b) give delta(x_b, x_a'),
    times eps(x_a) when ``signed``."""
    m = d.m
    slots = []  # each free choice fills some (row/col, position) slots
    for ta, bb in d.verticals():
        slots.append(("v", ta, bb))
    for a, b in d.top_pairs():
        slots.append(("t", a, b))
    for a, b in d.bottom_pairs():
        slots.append(("b", a, b))
    entries = {}
    for values in itertools.product(range(1, N + 1), repeat=len(slots)):
        row, col = [0] * m, [0] * m
        coeff = 1
        for (kind, x, y), v in zip(slots, values):
            if kind == "v":
                col[x] = v
                row[y] = v
            else:
                target = col if kind == "t" else row
                target[x], target[y] = v, prime(N, v)
                if signed:
                    coeff *= epsilon(N, v)
        entries[tuple(row), tuple(col)] = Fraction(coeff)
    return TensorOperator(N, m, entries)


def _standard_contraction(m: int, r: int) -> Diagram:
    partner = list(identity(m).partner)
    for k in range(r):
        a, b = 2 * k, 2 * k + 1
        partner[a], partner[b] = b, a
        partner[m + a], partner[m + b] = m + b, m + a
    return Diagram(m, tuple(partner))


def _perm_of(d: Diagram) -> Tuple[int, ...]:
    perm = [0] * d.m
    for ta, bb in d.verticals():
        perm[ta] = bb
    return tuple(perm)


@lru_cache(maxsize=None)
def _factorization(d: Diagram) -> Tuple[Diagram, Diagram, Diagram]:
    """Find permutations p1, p2 with d = p1 * E_r * p2 (no loops)."""
    m, r = d.m, d.horizontal_count()
    er = _standard_contraction(m, r)
    perms = [from_permutation(p) for p in itertools.permutations(range(m))]
    for p2 in perms:
        loops, mid = compose(er, p2)
        for p1 in perms:
            loops1, full = compose(p1, mid)
            if full == d and loops == loops1 == 0:
                return p1, er, p2
    raise AssertionError(f"no factorization found for {d}")  # pragma: no cover


@lru_cache(maxsize=None)
def diagram_operator(d: Diagram, family: str, N: int) -> TensorOperator:
    """Image of one diagram: gl (permutations only), o (omega = N), sp (omega = -N)."""
    if family == GL:
        if not d.is_permutation():
            raise ValueError("the gl action is defined on permutation diagrams only")
        return _contraction_operator(d, N, False)
    if family == O:
        return _contraction_operator(d, N, False)
    if family != SP or N % 2:
        raise ValueError(f"no Brauer action for {family} with N={N}")
    if d.is_permutation():
        return permutation_sign(_perm_of(d)) * _contraction_operator(d, N, False)
    p1, er, p2 = _factorization(d)
    core = (-1) ** er.horizontal_count() * _contraction_operator(er, N, True)
    return diagram_operator(p1, SP, N) @ core @ diagram_operator(p2, SP, N)


def default_omega(family: str, N: int):
    if family == O:
        return N
    if family == SP:
        return -N
    return None


def represent_on(e: BrauerElement, family: str, N: int, evaluate_at=None) -> TensorOperator:
    omega0 = default_omega(family, N) if evaluate_at is None else Fraction(evaluate_at)
    out: dict = {}
    for d, c in sorted(e.terms.items()):
        if omega0 is None:
            if not c.is_constant():
                raise ValueError("the gl action needs constant coefficients")
            value = c.evaluate(0)
        else:
            value = c.evaluate(omega0)
        if not value:
            continue
        for k, v in diagram_operator(d, family, N).entries.items():
            out[k] = out.get(k, 0) + value * v
    return TensorOperator(N, e.m, out)


def represent(e: BrauerElement, spec: LieAlgebraSpec, evaluate_at=None) -> TensorOperator:
    """Image of e on (C^N)^{(x) m} under the action attached to ``spec``."""
    return represent_on(e, spec.family, spec.N, evaluate_at)


@lru_cache(maxsize=None)
def symmetrizer_image(m: int, family: str, N: int) -> TensorOperator:
    """S^(m) for o_N / sp_N; refused for sp with m > n."""
    if family == SP and m > N // 2:
        raise ValueError("the symplectic symmetrizer image needs m <= n")
    return represent_on(symmetrizer(m), family, N)


@lru_cache(maxsize=None)
def group_images(m: int, family: str, N: int) -> Tuple[TensorOperator, TensorOperator]:
    """(H^(m), A^(m)) as operators; for sp these are the images under the sp action."""
    h, a = group_symmetrizers(m)
    return represent_on(h, family, N), represent_on(a, family, N)


__all__ = [
    "Diagram", "BrauerElement", "TensorOperator", "PoleError", "compose", "symmetrizer",
    "group_symmetrizers", "transpose", "transpose_diagram", "in_Jm", "gamma", "represent",
    "represent_on", "partial_trace", "partial_transpose", "parse_diagram", "format_diagram",
    "identity", "s", "eps", "all_diagrams", "symmetrizer_image", "group_images", "comb",
]
