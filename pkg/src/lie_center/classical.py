"""Matrix realizations of gl_N, o_N and sp_2n.

Indices are 1-based throughout to match the usual E_ij / F_ij labelling.
Matrices are sparse dicts ``{(row, col): Fraction}`` with zero entries
omitted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Tuple

Matrix = Dict[Tuple[int, int], Fraction]

GL, O, SP = "gl", "o", "sp"
FAMILIES = (GL, O, SP)


def _clean(m: dict) -> Matrix:
    return {k: v for k, v in m.items() if v != 0}


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    by_row: dict = {}
    for (k, j), w in b.items():
        by_row.setdefault(k, []).append((j, w))
    out: dict = {}
    for (i, k), v in a.items():
        for j, w in by_row.get(k, ()):
            out[i, j] = out.get((i, j), 0) + v * w
    return _clean(out)


def mat_add(a: Matrix, b: Matrix, scale=1) -> Matrix:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return _clean(out)


def mat_trace(a: Matrix) -> Fraction:
    return sum((v for (i, j), v in a.items() if i == j), Fraction(0))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def prime(N: int, i: int) -> int:
    """The involution i -> i' = N - i + 1."""
    return N - i + 1


def epsilon(N: int, i: int) -> int:
    """Symplectic sign: +1 on the first half of the indices, -1 on the second."""
    return 1 if i <= N // 2 else -1


def unit(i: int, j: int) -> Matrix:
    return {(i, j): Fraction(1)}


def transpose_t(family: str, N: int, a: Matrix) -> Matrix:
    """The transposition e_ij -> e_j'i' (orthogonal) or eps_i eps_j e_j'i' (symplectic)."""
    out = {}
    for (i, j), v in a.items():
        s = epsilon(N, i) * epsilon(N, j) if family == SP else 1
        out[prime(N, j), prime(N, i)] = s * v
    return out


@dataclass(frozen=True)
class BasisElement:
    label: Tuple[int, int]
    matrix: Tuple[Tuple[Tuple[int, int], Fraction], ...]

    def as_dict(self) -> Matrix:
        return dict(self.matrix)


@dataclass(frozen=True, eq=False)
class LieAlgebraSpec:
    family: str
    N: int
    rank: int
    basis: Tuple[BasisElement, ...]
    dual_coxeter: int
    critical_level: Fraction
    _index: Dict[Tuple[int, int], int] = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def letter(self) -> str:
        return "E" if self.family == GL else "F"

    def label(self, b: int) -> Tuple[int, int]:
        return self.basis[b].label

    def index_of(self, i: int, j: int) -> int:
        """Basis position of a canonical label; KeyError for non-canonical ones."""
        return self._index[i, j]

    def __repr__(self) -> str:
        return f"LieAlgebraSpec({self.family}_{self.N})"

    # Structure data is computed lazily and cached per spec.
    @cached_property
    def structure(self) -> Tuple[Tuple[Dict[int, Fraction], ...], ...]:
        mats = [b.as_dict() for b in self.basis]
        table = []
        for x in mats:
            table.append(tuple(coordinates(self, commutator(x, y)) for y in mats))
        return tuple(table)

    @cached_property
    def form_table(self) -> Tuple[Tuple[Fraction, ...], ...]:
        mats = [b.as_dict() for b in self.basis]
        return tuple(tuple(_form(self, x, y) for y in mats) for x in mats)

    @cached_property
    def entry_coords(self) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
        """Coordinates of every matrix generator E_ij / F_ij, including zero ones."""
        return {
            (i, j): coordinates(self, generator_matrix(self, i, j))
            for i in range(1, self.N + 1)
            for j in range(1, self.N + 1)
        }

    def generator(self, i: int, j: int) -> Dict[int, Fraction]:
        return self.entry_coords[i, j]


def _canonical_labels(family: str, N: int):
    if family == GL:
        return [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    if family == O:
        return [(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i < prime(N, j)]
    return [(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i <= prime(N, j)]


def _raw_generator(family: str, N: int, i: int, j: int) -> Matrix:
    if family == GL:
        return unit(i, j)
    s = epsilon(N, i) * epsilon(N, j) if family == SP else 1
    return mat_add(unit(i, j), unit(prime(N, j), prime(N, i)), -s)


@lru_cache(maxsize=None)
def make_algebra(family: str, size: int) -> LieAlgebraSpec:
    """Build gl_N, o_N or sp_N (N = size) with its canonical basis."""
    family = family.lower()
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if not isinstance(size, int) or size < 1:
        raise ValueError("size must be a positive integer")
    if family == SP and size % 2:
        raise ValueError("sp_N needs even N")
    N = size
    labels = _canonical_labels(family, N)
    basis = tuple(
        BasisElement(lab, tuple(sorted(_raw_generator(family, N, *lab).items())))
        for lab in labels
    )
    if family == GL:
        rank, hv = N, N
    elif family == O:
        rank, hv = N // 2, N - 2
    else:
        rank, hv = N // 2, N // 2 + 1
    return LieAlgebraSpec(
        family=family,
        N=N,
        rank=rank,
        basis=basis,
        dual_coxeter=hv,
        critical_level=Fraction(-hv),
        _index={lab: k for k, lab in enumerate(labels)},
    )


def generator_matrix(spec: LieAlgebraSpec, i: int, j: int) -> Matrix:
    """Matrix of E_ij (gl) or F_ij (o, sp); may be zero, e.g. F_ii' in o_N."""
    N = spec.N
    if not (1 <= i <= N and 1 <= j <= N):
        raise IndexError(f"index ({i}, {j}) out of range for N={N}")
    return _raw_generator(spec.family, N, i, j)


def coordinates(spec: LieAlgebraSpec, m: Matrix) -> Dict[int, Fraction]:
    """Expand a matrix in the basis of ``spec``; ValueError if it is not in the span."""
    coords = {}
    for k, b in enumerate(spec.basis):
        i, j = b.label
        entry = m.get((i, j))
        if entry:
            coords[k] = Fraction(entry) / dict(b.matrix)[i, j]
    rebuilt: dict = {}
    for k, c in coords.items():
        for pos, v in spec.basis[k].matrix:
            rebuilt[pos] = rebuilt.get(pos, 0) + c * v
    if _clean(rebuilt) != _clean(m):
        raise ValueError("matrix is not in the span of the basis")
    return coords


def element_matrix(spec: LieAlgebraSpec, coords: Dict[int, Fraction]) -> Matrix:
    out: dict = {}
    for k, c in coords.items():
        for pos, v in spec.basis[k].matrix:
            out[pos] = out.get(pos, 0) + c * v
    return _clean(out)


def bracket(spec: LieAlgebraSpec, x: Dict[int, Fraction], y: Dict[int, Fraction]) -> Dict[int, Fraction]:
    """Lie bracket of two elements given by basis coordinates."""
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for c, v in spec.structure[a][b].items():
                out[c] = out.get(c, 0) + ca * cb * v
    return _clean(out)


def _form(spec: LieAlgebraSpec, x: Matrix, y: Matrix) -> Fraction:
    t = mat_trace(mat_mul(x, y))
    if spec.family == GL:
        return t - mat_trace(x) * mat_trace(y) / spec.N
    if spec.family == O:
        return t / 2
    return t


def invariant_form(spec: LieAlgebraSpec, x: Dict[int, Fraction], y: Dict[int, Fraction]) -> Fraction:
    total = Fraction(0)
    for a, ca in x.items():
        for b, cb in y.items():
            total += ca * cb * spec.form_table[a][b]
    return total


def dual_coxeter(spec: LieAlgebraSpec) -> int:
    return spec.dual_coxeter


def critical_level(spec: LieAlgebraSpec) -> Fraction:
    return spec.critical_level


def f_circ(spec: LieAlgebraSpec):
    """The (2n+1)x(2n+1) bordered matrix of sp_2n generators.

    Rows and columns are in the order 1..n, 0, n'..1'.  Entries are basis
    coordinate dicts; the middle row and column are empty dicts.
    """
    if spec.family != SP:
        raise ValueError("f_circ is defined for sp_2n only")
    n = spec.rank
    size = 2 * n + 1

    def orig(a: int):
        if a == n + 1:
            return None
        return a if a <= n else a - 1

    rows = []
    for a in range(1, size + 1):
        row = []
        for b in range(1, size + 1):
            i, j = orig(a), orig(b)
            row.append({} if i is None or j is None else spec.generator(i, j))
        rows.append(row)
    return rows
