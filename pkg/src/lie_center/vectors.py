"""Segal-Sugawara vectors for gl_N, o_N and sp_2n.

Three independent constructions are provided and compared in the tests:

* linear combinations of symmetrized lambda-minors / permanents,
* traces ``tr S (T + X[-1]_1) ... (T + X[-1]_m)`` against Brauer or
  symmetric-group operators, evaluated by index summation,
* the symmetrization map applied to ``T^(m-k) Delta_k[-1]``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .brauer import TensorOperator, gamma, group_images, partial_trace, permutation_sign, symmetrizer_image
from .classical import GL, O, SP, LieAlgebraSpec, f_circ, prime
from .loop import T_GEN, LoopAlgebra, UEAElement, loop_algebra, symmetrize
from .pbw import add_into

Partition = Tuple[int, ...]
Coords = Dict[int, Fraction]


# partitions and cycle counts -------------------------------------------------

def partitions(m: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of m in reverse lexicographic order."""
    if max_part is None:
        max_part = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, max_part), 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


def cycle_count(la: Partition) -> int:
    """Number of permutations of cycle type la: m! / prod k^a_k a_k!."""
    m = sum(la)
    denom = 1
    for k, a in Counter(la).items():
        denom *= k ** a * factorial(a)
    return factorial(m) // denom


@lru_cache(maxsize=None)
def cycle_count_recurrence(la: Partition) -> int:
    """The same numbers from the one-box-removal recurrence."""
    if sum(la) <= 1:
        return 1
    total = 0
    for i in range(len(la)):
        if i + 1 < len(la) and la[i] == la[i + 1]:
            continue
        mu = list(la)
        mu[i] -= 1
        mu_i = mu[i]
        mu = tuple(p for p in mu if p)
        weight = mu_i * mu.count(mu_i) if mu_i >= 1 else 1
        total += weight * cycle_count_recurrence(mu)
    return total


def cycle_count_brute(m: int) -> Dict[Partition, int]:
    counts: Counter = Counter()
    for perm in itertools.permutations(range(m)):
        seen, lengths = set(), []
        for start in range(m):
            if start in seen:
                continue
            k, x = 0, start
            while x not in seen:
                seen.add(x)
                x = perm[x]
                k += 1
            lengths.append(k)
        counts[tuple(sorted(lengths, reverse=True))] += 1
    return dict(counts)


def gbinom(x, k: int) -> Fraction:
    """Binomial coefficient x(x-1)...(x-k+1)/k! for any rational x."""
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for j in range(k):
        out *= Fraction(x) - j
    return out / factorial(k)


# helpers for words of matrix entries -----------------------------------------

def _expand_product(factors: List[Coords], modes: List[int]) -> Dict[tuple, Fraction]:
    """Raw words for prod_a (sum_b c_b X_b[mode_a]) in the given order."""
    out = {(): Fraction(1)}
    for coords, r in zip(factors, modes):
        nxt: dict = {}
        for w, c in out.items():
            for b, v in coords.items():
                add_into(nxt, {w + ((r, b),): c * v})
        out = nxt
        if not out:
            break
    return out


def _minor_sum(spec: LieAlgebraSpec, la: Partition, signed: bool) -> UEAElement:
    alg = loop_algebra(spec)
    ell = len(la)
    raw: dict = {}
    perms = [(p, permutation_sign(p)) for p in itertools.permutations(range(ell))]
    for idx in itertools.product(range(1, spec.N + 1), repeat=ell):
        for p, sgn in perms:
            factors = [spec.generator(idx[p[k]], idx[k]) for k in range(ell)]
            if any(not f for f in factors):
                continue
            add_into(raw, _expand_product(factors, [-x for x in la]), sgn if signed else 1)
    return alg.element({w: c / factorial(ell) for w, c in raw.items()})


def sym_minor(spec: LieAlgebraSpec, la: Partition) -> UEAElement:
    """Symmetrized lambda-minor D(la) (gl_N and sp_2n)."""
    if spec.family == O:
        raise ValueError("o_N uses symmetrized permanents")
    return _minor_sum(spec, tuple(la), True)


def sym_permanent(spec: LieAlgebraSpec, la: Partition) -> UEAElement:
    """Symmetrized lambda-permanent P(la) (gl_N and o_N)."""
    if spec.family == SP:
        raise ValueError("sp_2n uses symmetrized minors")
    return _minor_sum(spec, tuple(la), False)


# the families ------------------------------------------------------------------

def _combination(spec, m, weight: Callable[[int], Fraction], builder, keep: Callable[[Partition], bool]):
    alg = loop_algebra(spec)
    out = alg.zero()
    for la in partitions(m):
        if not keep(la):
            continue
        w = weight(len(la))
        if w:
            out = out + builder(spec, la) * (w * cycle_count(la))
    return out


def _require(spec: LieAlgebraSpec, *families):
    if spec.family not in families:
        raise ValueError(f"not defined for {spec.family}")


def phi_gl(spec: LieAlgebraSpec, m: int) -> UEAElement:
    _require(spec, GL)
    N = spec.N
    return _combination(spec, m, lambda l: 1 / Fraction(comb(N, l)) if l <= N else 0, sym_minor, lambda la: True)


def psi_gl(spec: LieAlgebraSpec, m: int) -> UEAElement:
    _require(spec, GL)
    N = spec.N
    return _combination(spec, m, lambda l: 1 / Fraction(comb(N + l - 1, l)), sym_permanent, lambda la: True)


def phi_even_gl(spec: LieAlgebraSpec, m: int) -> UEAElement:
    _require(spec, GL)
    N = spec.N
    return _combination(
        spec, m, lambda l: 1 / Fraction(comb(N, l)) if l <= N else 0, sym_minor,
        lambda la: (m - len(la)) % 2 == 0,
    )


def psi_even_gl(spec: LieAlgebraSpec, m: int) -> UEAElement:
    _require(spec, GL)
    N = spec.N
    return _combination(
        spec, m, lambda l: 1 / Fraction(comb(N + l - 1, l)), sym_permanent,
        lambda la: (m - len(la)) % 2 == 0,
    )


def phi_bcd(spec: LieAlgebraSpec, m: int) -> UEAElement:
    """Even-length combinations for sp_2n (minors) and o_N (permanents)."""
    _require(spec, O, SP)
    N = spec.N
    even = lambda la: len(la) % 2 == 0  # noqa: E731
    if spec.family == SP:
        return _combination(spec, m, lambda l: 1 / Fraction(comb(N + 1, l)) if l <= N + 1 else 0, sym_minor, even)
    return _combination(spec, m, lambda l: 1 / gbinom(N + l - 2, l), sym_permanent, even)


def pfaffian(spec: LieAlgebraSpec) -> UEAElement:
    """Noncommutative Pfaffian of F[-1] for o_2n, with rows paired against j'."""
    if spec.family != O or spec.N % 2:
        raise ValueError("the Pfaffian is defined for o_2n only")
    N, n = spec.N, spec.N // 2
    alg = loop_algebra(spec)
    raw: dict = {}
    for p in itertools.permutations(range(1, N + 1)):
        factors = [spec.generator(p[2 * k], prime(N, p[2 * k + 1])) for k in range(n)]
        if any(not f for f in factors):
            continue
        add_into(raw, _expand_product(factors, [-1] * n), permutation_sign([x - 1 for x in p]))
    scale = Fraction(1, 2 ** n * factorial(n))
    return alg.element({w: c * scale for w, c in raw.items()})


# trace route ----------------------------------------------------------------------

def expand_T_product(m: int) -> Dict[Tuple[Tuple[Tuple[int, int], ...], int], int]:
    """Expand (T + X[-1]_1)...(T + X[-1]_m) with every T moved to the right.

    Keys are ``(((position, mode), ...), power of T)``.
    """
    terms = {((), 0): 1}
    for pos in range(1, m + 1):
        nxt: Counter = Counter()
        for (factors, p), c in terms.items():
            nxt[factors, p + 1] += c
            # T^p X[-1] = sum_k binom(p, k) k! X[-1-k] T^(p-k)
            for k in range(p + 1):
                nxt[factors + ((pos, -1 - k),), p - k] += c * comb(p, k) * factorial(k)
        terms = {k: v for k, v in nxt.items() if v}
    return terms


class TraceEvaluator:
    """Evaluates tr(op X[r_1]_{a_1} ... X[r_s]_{a_s}) by index summation."""

    def __init__(self, op: TensorOperator, entry: Callable[[int, int], Coords]):
        self.op = op
        self.entry = entry
        self._reduced: dict = {}

    def reduced(self, positions: Tuple[int, ...]) -> TensorOperator:
        hit = self._reduced.get(positions)
        if hit is None:
            rest = [p for p in range(1, self.op.m + 1) if p not in positions]
            hit = partial_trace(self.op, rest)
            self._reduced[positions] = hit
        return hit

    def words(self, factors) -> Dict[tuple, Fraction]:
        """Raw (unordered-normalization) words with coefficients; modes may be None."""
        positions = tuple(a for a, _ in factors)
        if list(positions) != sorted(set(positions)):
            raise ValueError("factor positions must be strictly increasing")
        modes = [r for _, r in factors]
        red = self.reduced(positions)
        raw: dict = {}
        for (row, col), v in red.entries.items():
            coords = [self.entry(col[k], row[k]) for k in range(len(positions))]
            if any(not c for c in coords):
                continue
            add_into(raw, _expand_product(coords, modes), v)
        return raw


def _trace_setup(spec: LieAlgebraSpec, m: int, kind: str, route: str):
    """Operator, entry map and overall scalar for the requested trace formula."""
    N = spec.N
    if spec.family == GL:
        h, a = group_images(m, GL, N)
        return (a if kind == "phi" else h), spec.generator, Fraction(1)
    if kind != "phi":
        raise ValueError("psi is defined for gl_N only")
    if spec.family == O:
        return symmetrizer_image(m, O, N), spec.generator, gamma(m).evaluate(N)
    n = spec.rank
    if route == "auto":
        route = "symmetrizer" if m <= n else "fcirc"
    if route == "symmetrizer":
        if m > n:
            raise ValueError("the symplectic symmetrizer route needs m <= n")
        return symmetrizer_image(m, SP, N), spec.generator, gamma(m).evaluate(-N)
    if route != "fcirc":
        raise ValueError(f"unknown route {route!r}")
    fc = f_circ(spec)
    _, a = group_images(m, GL, N + 1)
    return a, (lambda i, j: fc[i - 1][j - 1]), Fraction(1)


def phi_mm_trace(spec: LieAlgebraSpec, m: int, kind: str = "phi", route: str = "auto") -> Dict[int, UEAElement]:
    """Coefficients {k: phi_mk} of the T-polynomial sum_k phi_mk T^(m-k)."""
    alg = loop_algebra(spec)
    if m == 0:
        return {0: alg.one()}
    op, entry, scalar = _trace_setup(spec, m, kind, route)
    ev = TraceEvaluator(op, entry)
    by_power: Dict[int, dict] = {}
    for (factors, p), c in expand_T_product(m).items():
        if not factors:
            add_into(by_power.setdefault(p, {}), {(): Fraction(op.trace())}, c)
            continue
        add_into(by_power.setdefault(p, {}), ev.words(factors), c)
    out = {}
    for k in range(m + 1):
        raw = by_power.get(m - k, {})
        out[k] = alg.element({w: c * scalar for w, c in raw.items()})
    return out


def phi_mm(spec: LieAlgebraSpec, m: int, kind: str = "phi", route: str = "auto") -> UEAElement:
    return phi_mm_trace(spec, m, kind, route)[m]


def phi_mk_relations(spec: LieAlgebraSpec, m: int, k: int) -> bool:
    """Check phi_mk = binom(N+m-2, m-k) phi_kk (o) or binom(2n-k+1, m-k) phi_kk (sp)."""
    _require(spec, O, SP)
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    lhs = phi_mm_trace(spec, m)[k]
    rhs = phi_mm(spec, k)
    if spec.family == O:
        factor = comb(spec.N + m - 2, m - k)
    else:
        factor = gbinom(2 * spec.rank - k + 1, m - k)
    return lhs == rhs * factor


# symmetric algebra invariants ------------------------------------------------------

SymPoly = Dict[Tuple[int, ...], Fraction]


def _sym_mul(a: SymPoly, b: SymPoly) -> SymPoly:
    out: dict = {}
    for x, c in a.items():
        for y, d in b.items():
            add_into(out, {tuple(sorted(x + y)): c * d})
    return out


def delta_phi_sym(spec: LieAlgebraSpec, upto: Optional[int] = None):
    """(Delta, Phi): dicts k -> commutative polynomial in basis symbols.

    Delta_k is the coefficient of u^(N-k) in det(u + X); Phi_k the q^k
    coefficient of det(1 - qX)^(-1).  Monomials are sorted tuples of basis
    indices.
    """
    N = spec.N
    upto = N if upto is None else upto
    delta: Dict[int, SymPoly] = {0: {(): Fraction(1)}}
    for k in range(1, N + 1):
        poly: dict = {}
        for rows in itertools.combinations(range(1, N + 1), k):
            for p in itertools.permutations(range(k)):
                term = {(): Fraction(permutation_sign(p))}
                for a in range(k):
                    term = _sym_mul(term, dict(((b,), v) for b, v in spec.generator(rows[a], rows[p[a]]).items()))
                    if not term:
                        break
                add_into(poly, term)
        delta[k] = poly
    phi: Dict[int, SymPoly] = {0: {(): Fraction(1)}}
    for k in range(1, upto + 1):
        poly = {}
        for j in range(1, min(k, N) + 1):
            add_into(poly, _sym_mul(delta[j], phi[k - j]), (-1) ** (j + 1))
        phi[k] = poly
    for k in range(N + 1, upto + 1):
        delta[k] = {}
    return delta, phi


def _symmetrized_vacuum(alg: LoopAlgebra, poly: SymPoly, t_power: int) -> UEAElement:
    out = alg.zero()
    for mono, c in sorted(poly.items()):
        gens = [(-1, b) for b in mono] + [T_GEN] * t_power
        out = out + symmetrize(alg, gens) * c
    return out.vacuum()


def phi_mm_symforms(spec: LieAlgebraSpec, m: int, kind: str = "phi") -> UEAElement:
    """phi_mm (or psi_mm for gl) through the symmetrization map."""
    alg = loop_algebra(spec)
    N = spec.N
    delta, phi = delta_phi_sym(spec, m)
    out = alg.zero()
    if spec.family == GL:
        for k in range(1, m + 1):
            if kind == "phi":
                out = out + _symmetrized_vacuum(alg, delta.get(k, {}), m - k) * comb(N - k, m - k) if k <= N else out
            else:
                out = out + _symmetrized_vacuum(alg, phi[k], m - k) * comb(N + m - 1, m - k)
        return out
    if kind != "phi":
        raise ValueError("psi is defined for gl_N only")
    for l in range(1, m // 2 + 1):
        if spec.family == SP:
            coeff = gbinom(2 * spec.rank - 2 * l + 1, m - 2 * l)
            poly = delta.get(2 * l, {})
        else:
            coeff = gbinom(N + m - 2, m - 2 * l)
            poly = phi[2 * l]
        if coeff:
            out = out + _symmetrized_vacuum(alg, poly, m - 2 * l) * coeff
    return out


# catalogue used by the command line ------------------------------------------------

@dataclass
class SSVector:
    element: UEAElement
    name: str
    m: int
    spec: LieAlgebraSpec


def build(name: str, spec: LieAlgebraSpec, m: Optional[int] = None) -> SSVector:
    makers = {
        "phi": lambda: phi_gl(spec, m) if spec.family == GL else phi_bcd(spec, m),
        "psi": lambda: psi_gl(spec, m),
        "phi-even": lambda: phi_even_gl(spec, m),
        "psi-even": lambda: psi_even_gl(spec, m),
        "phi-bcd": lambda: phi_bcd(spec, m),
        "pfaffian": lambda: pfaffian(spec),
        "phi-mm": lambda: phi_mm(spec, m),
    }
    if name not in makers:
        raise KeyError(name)
    if name != "pfaffian" and (m is None or m < 0):
        raise ValueError(f"{name} needs --m")
    return SSVector(makers[name](), name, m if m is not None else spec.rank, spec)
