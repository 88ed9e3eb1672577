"""Named verification suites.

Each suite returns a list of :class:`Check` records in a fixed order.  The
command line ``verify`` verb and the acceptance tests both run these.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional

from . import brauer as br
from .casimir import (
    capelli_C, capelli_hc_expected, capelli_identity_holds, dm_u, finite_algebra, hc_image_rhs,
    hc_project, symmetrized_casimirs,
)
from .classical import GL, O, SP, LieAlgebraSpec, bracket, invariant_form, make_algebra
from .loop import T_GEN, apply_theta, format_element, loop_algebra, verify_centrality
from .vectors import (
    cycle_count, cycle_count_brute, cycle_count_recurrence, pfaffian, phi_bcd, phi_even_gl, phi_gl,
    phi_mk_relations, phi_mm, phi_mm_symforms, phi_mm_trace, partitions, psi_even_gl, psi_gl, sym_minor,
    sym_permanent,
)


@dataclass
class Check:
    name: str
    ok: bool
    witness: Optional[str] = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.ok else "fail"}
        if not self.ok:
            out["witness"] = self.witness or ""
        return out


def _alg(family: str, N: int) -> LieAlgebraSpec:
    return make_algebra(family, N)


def _name(spec: LieAlgebraSpec) -> str:
    return f"{spec.family}_{spec.N}"


def _central(name: str, spec: LieAlgebraSpec, v, K=None) -> Check:
    res = verify_centrality(spec, v, K)
    if res.ok:
        return Check(name, True)
    label, s, residue = res.witness
    return Check(name, False, f"X{label}[{s}] . v = {format_element(residue)}")


def _equal(name: str, a, b) -> Check:
    if a == b:
        return Check(name, True)
    return Check(name, False, f"difference: {a - b!r}")


GL_FAMILIES: Dict[str, Callable] = {
    "phi": phi_gl, "psi": psi_gl, "phi-even": phi_even_gl, "psi-even": psi_even_gl,
}


# criterion 1 and 2 -------------------------------------------------------------

def centrality_checks() -> List[Check]:
    out = []
    for N, top in ((2, 3), (3, 2)):
        spec = _alg(GL, N)
        for m in range(1, top + 1):
            for label, fn in GL_FAMILIES.items():
                out.append(_central(f"{label}_{m} central in gl_{N}", spec, fn(spec, m)))
    for fam, N in ((SP, 2), (O, 3), (SP, 4), (O, 4)):
        spec = _alg(fam, N)
        out.append(_central(f"phi_2 central in {_name(spec)}", spec, phi_bcd(spec, 2)))
    o4 = _alg(O, 4)
    out.append(_central("Pfaffian central in o_4", o4, pfaffian(o4)))
    return out


def criticality_checks() -> List[Check]:
    out = []
    for fam, N in ((GL, 2), (SP, 2)):
        spec = _alg(fam, N)
        v = phi_gl(spec, 2) if fam == GL else phi_bcd(spec, 2)
        for delta in (-1, 1):
            K = spec.critical_level + delta
            res = verify_centrality(spec, v, K)
            out.append(Check(f"phi_2 not central in {_name(spec)} at K={K}", not res.ok,
                             None if not res.ok else "unexpectedly central"))
    return out


# criterion 3 -------------------------------------------------------------------

def identity_checks() -> List[Check]:
    out = []
    for N in (2, 3):
        spec = _alg(GL, N)
        for m in range(1, 4):
            out.append(_equal(f"phi_mm = binom(N,m) phi_m, gl_{N}, m={m}", phi_mm(spec, m), phi_gl(spec, m) * comb(N, m)))
            out.append(_equal(f"psi_mm = binom(N+m-1,m) psi_m, gl_{N}, m={m}",
                              phi_mm(spec, m, "psi"), psi_gl(spec, m) * comb(N + m - 1, m)))
    for fam, N in ((SP, 2), (SP, 4), (O, 3), (O, 4)):
        spec = _alg(fam, N)
        for m in (2, 3):
            factor = comb(N + 1, m) if fam == SP else comb(N + m - 2, m)
            out.append(_equal(f"phi_mm = {factor} phi_m, {_name(spec)}, m={m}", phi_mm(spec, m), phi_bcd(spec, m) * factor))
        for m in range(0, 4):
            for k in range(m + 1):
                ok = phi_mk_relations(spec, m, k)
                out.append(Check(f"phi_{m}{k} vs phi_{k}{k}, {_name(spec)}", ok, None if ok else "coefficient mismatch"))
    return out


# criterion 4 and 5 ----------------------------------------------------------------

def brauer_congruence_checks() -> List[Check]:
    out = []
    for m in (2, 3, 4):
        h, _ = br.group_symmetrizers(m)
        lhs = br.gamma(m) * br.symmetrizer(m) - h
        out.append(Check(f"gamma_m s^(m) - h^(m) in J_{m}", br.in_Jm(lhs), None))
        if m % 2:
            out.append(Check(f"s^({m}) in J_{m}", br.in_Jm(br.symmetrizer(m))))
            out.append(Check(f"h^({m}) in J_{m}", br.in_Jm(h)))
    for c in out:
        if not c.ok:
            c.witness = "element has a nonzero residue modulo J_m"
    return out


def _trace_tail(op, ell: int, m: int):
    return br.partial_trace(op, range(ell + 1, m + 1))


def partial_trace_checks(sizes=(2, 3, 4, 5), top: int = 4) -> List[Check]:
    out = []
    for N in sizes:
        for m in range(2, top + 1):
            H, A = br.group_images(m, GL, N)
            for ell in range(1, m):
                h_l, a_l = br.group_images(ell, GL, N)
                out.append(_op_check(f"(a) N={N} m={m} l={ell}", _trace_tail(A, ell, m),
                                     Fraction(comb(N, m), comb(N, ell)) * a_l if comb(N, ell) else None))
                out.append(_op_check(f"(b) N={N} m={m} l={ell}", _trace_tail(H, ell, m),
                                     Fraction(comb(N + m - 1, m), comb(N + ell - 1, ell)) * h_l))
                if N % 2 == 0 and m <= N // 2:
                    g_m, g_l = br.gamma(m).evaluate(-N), br.gamma(ell).evaluate(-N)
                    lhs = g_m * _trace_tail(br.symmetrizer_image(m, SP, N), ell, m)
                    rhs = Fraction(comb(N + 1, m), comb(N + 1, ell)) * g_l * br.symmetrizer_image(ell, SP, N)
                    out.append(_op_check(f"(c) N={N} m={m} l={ell}", lhs, rhs))
                g_m, g_l = br.gamma(m).evaluate(N), br.gamma(ell).evaluate(N)
                lhs = g_m * _trace_tail(br.symmetrizer_image(m, O, N), ell, m)
                rhs = Fraction(comb(N + m - 2, m), comb(N + ell - 2, ell)) * g_l * br.symmetrizer_image(ell, O, N)
                out.append(_op_check(f"(d) N={N} m={m} l={ell}", lhs, rhs))
    return [c for c in out if c is not None]


def _op_check(name, lhs, rhs) -> Optional[Check]:
    if rhs is None:
        # binom(N, l) = 0 cannot occur for l < m <= N; for m > N the antisymmetrizer vanishes
        return Check(name, not lhs.entries, None if not lhs.entries else "nonzero trace of a zero operator")
    ok = lhs == rhs
    return Check(name, ok, None if ok else "operators differ")


# criterion 6 ----------------------------------------------------------------------

def cycle_count_checks(top: int = 6) -> List[Check]:
    out = []
    for m in range(1, top + 1):
        brute = cycle_count_brute(m)
        for la in partitions(m):
            a, b, c = cycle_count(la), cycle_count_recurrence(la), brute.get(la, 0)
            out.append(Check(f"c{la}", a == b == c, None if a == b == c else f"closed={a} recurrence={b} brute={c}"))
    return out


# criteria 7 and 8 ------------------------------------------------------------------

def _poly_check(name, lhs, rhs) -> Check:
    ok = lhs == rhs
    return Check(name, ok, None if ok else f"difference: {lhs - rhs}")


def hc_gl_checks() -> List[Check]:
    out = []
    for N in (2, 3):
        spec = _alg(GL, N)
        for m in (1, 2, 3):
            for kind in ("delta", "phi"):
                out.append(_poly_check(f"chi({kind}_{m}) on gl_{N}",
                                       hc_project(spec, symmetrized_casimirs(spec, m, kind)), hc_image_rhs(spec, m, kind)))
    return out


def hc_bcd_checks() -> List[Check]:
    out = []
    for fam, N in ((SP, 2), (SP, 4), (O, 3), (O, 5), (O, 4)):
        spec = _alg(fam, N)
        out.append(_poly_check(f"chi(m=2) on {_name(spec)}",
                               hc_project(spec, symmetrized_casimirs(spec, 2)), hc_image_rhs(spec, 2)))
        rhs3 = hc_image_rhs(spec, 3)
        out.append(Check(f"odd m=3 right-hand side vanishes on {_name(spec)}", rhs3 == 0, None if rhs3 == 0 else str(rhs3)))
    return out


def casimir_route_checks() -> List[Check]:
    out = []
    for fam, N in ((GL, 2), (GL, 3), (SP, 2), (SP, 4), (O, 3), (O, 4), (O, 5)):
        spec = _alg(fam, N)
        kinds = ("delta", "phi") if fam == GL else (None,)
        for m in ((1, 2, 3) if fam == GL else (2,)):
            for kind in kinds:
                direct = symmetrized_casimirs(spec, m, kind)
                out.append(_equal(f"casimir {kind or ''} m={m} direct = trace, {_name(spec)}",
                                  direct, symmetrized_casimirs(spec, m, kind, "trace")))
                if fam != GL and not (fam == SP and m > spec.rank):
                    out.append(_equal(f"casimir m={m} direct = symmetrizer, {_name(spec)}",
                                      direct, symmetrized_casimirs(spec, m, kind, "symmetrizer")))
    return out


# criterion 9 -----------------------------------------------------------------------------

def capelli_checks(ranks=(1,)) -> List[Check]:
    out = []
    for n in ranks:
        spec = _alg(SP, 2 * n)
        alg = finite_algebra(spec)
        C = capelli_C(spec)
        coeffs = C.u_coefficients()
        odd = [k for k, v in coeffs.items() if k % 2 and v]
        out.append(Check(f"C(u) even, sp_{2 * n}", not odd, None if not odd else f"odd powers {odd}"))
        lead = coeffs.get(2 * n)
        out.append(Check(f"C(u) monic of degree {2 * n}, sp_{2 * n}", max(coeffs) == 2 * n and lead == 1))
        bad = None
        for k, z in coeffs.items():
            for b in range(spec.dim):
                if z.commutator(alg.basis_element(b)):
                    bad = f"coefficient of u^{k} fails to commute with F{spec.label(b)}"
                    break
            if bad:
                break
        out.append(Check(f"C(u) coefficients central, sp_{2 * n}", bad is None, bad))
        out.append(_poly_check(f"chi(C(u)), sp_{2 * n}", hc_project(spec, C), capelli_hc_expected(spec)))
        out.append(_equal(f"u C(u) = D_{2 * n + 1}(u), sp_{2 * n}", C * alg.u(), dm_u(spec, 2 * n + 1)))
    for n in (1, 2):
        ok = capelli_identity_holds(n)
        out.append(Check(f"factorial symmetric identity, n={n}", ok, None if ok else "polynomials differ"))
    return out


def dm_u_checks() -> List[Check]:
    out = []
    o3 = _alg(O, 3)
    alg = finite_algebra(o3)
    D = dm_u(o3, 2)
    bad = [f"u^{k}" for k, z in D.u_coefficients().items() if any(z.commutator(alg.basis_element(b)) for b in range(o3.dim))]
    out.append(Check("D_2(u) coefficients central, o_3", not bad, ", ".join(bad) or None))
    sp4 = _alg(SP, 4)
    out.append(_equal("D_2(u) symmetrizer route = F° route, sp_4", dm_u(sp4, 2), dm_u(sp4, 2, "fcirc")))
    return out


# criterion 10 ----------------------------------------------------------------------------

def symform_checks() -> List[Check]:
    out = []
    g2 = _alg(GL, 2)
    for m in (1, 2):
        out.append(_equal(f"phi_mm symmetrization form, gl_2, m={m}", phi_mm_symforms(g2, m), phi_mm(g2, m)))
        out.append(_equal(f"psi_mm symmetrization form, gl_2, m={m}", phi_mm_symforms(g2, m, "psi"), phi_mm(g2, m, "psi")))
    for fam, N in ((SP, 2), (O, 3)):
        spec = _alg(fam, N)
        out.append(_equal(f"phi_22 symmetrization form, {_name(spec)}", phi_mm_symforms(spec, 2), phi_mm(spec, 2)))
    sp4 = _alg(SP, 4)
    for m in (1, 2):
        a = phi_mm_trace(sp4, m, route="symmetrizer")
        b = phi_mm_trace(sp4, m, route="fcirc")
        ok = a.keys() == b.keys() and all(a[k] == b[k] for k in a)
        out.append(Check(f"F° route = symmetrizer route, sp_4, m={m}", ok, None if ok else "coefficients differ"))
    return out


# criterion 11 -------------------------------------------------------------------------------

def kernel_checks(seed: int = 20240607, samples: int = 40) -> List[Check]:
    rng = random.Random(seed)
    out = []
    # PBW confluence and grading on random words
    for fam, N in ((GL, 2), (SP, 2), (O, 4)):
        spec = _alg(fam, N)
        alg = loop_algebra(spec)
        conf_ok, grade_ok = True, True
        for _ in range(samples):
            word = []
            for _ in range(rng.randint(1, 4)):
                if rng.random() < 0.2:
                    word.append(T_GEN)
                else:
                    word.append((-rng.randint(1, 3), rng.randrange(spec.dim)))
            raw = {tuple(word): Fraction(1)}
            nf = alg.engine.normal_form(raw)
            if alg.engine.normal_form_random(raw, rng) != nf:
                conf_ok = False
            grade = sum(g[0] if g != T_GEN else -1 for g in word)
            if any(sum(g[0] if g != T_GEN else -1 for g in w) != grade for w in nf):
                grade_ok = False
        out.append(Check(f"PBW confluence, {_name(spec)}", conf_ok, None if conf_ok else "orderings disagree"))
        out.append(Check(f"mode grading preserved, {_name(spec)}", grade_ok, None if grade_ok else "grading broken"))
    # invariant form
    for fam, N in ((GL, 3), (O, 4), (O, 5), (SP, 4)):
        spec = _alg(fam, N)
        ok = True
        basis = [{b: Fraction(1)} for b in range(spec.dim)]
        for x in basis:
            for y in basis:
                xy = bracket(spec, x, y)
                for z in basis:
                    if invariant_form(spec, xy, z) + invariant_form(spec, y, bracket(spec, x, z)):
                        ok = False
        out.append(Check(f"form invariance, {_name(spec)}", ok, None if ok else "B([X,Y],Z) + B(Y,[X,Z]) != 0"))
    # theta parity
    g2 = _alg(GL, 2)
    for m in (1, 2, 3):
        for la in partitions(m):
            sign = (-1) ** len(la)
            for label, fn in (("D", sym_minor), ("P", sym_permanent)):
                v = fn(g2, la)
                out.append(_equal(f"theta {label}{la} parity, gl_2", apply_theta(v), v * sign))
    # BCD odd-length vanishing
    for fam, N in ((SP, 2), (SP, 4), (O, 3), (O, 4)):
        spec = _alg(fam, N)
        fn = sym_minor if fam == SP else sym_permanent
        for m in (1, 2, 3):
            for la in partitions(m):
                if len(la) % 2:
                    v = fn(spec, la)
                    out.append(Check(f"odd length {la} vanishes, {_name(spec)}", not v, None if not v else repr(v)))
    # diagram associativity
    for m in (2, 3):
        ds = br.all_diagrams(m)
        ok = True
        for _ in range(samples):
            a, b, c = (br.BrauerElement.of(rng.choice(ds)) for _ in range(3))
            if (a * b) * c != a * (b * c):
                ok = False
        out.append(Check(f"Brauer associativity, m={m}", ok, None if ok else "products differ"))
    return out


SUITES: Dict[str, Callable[[], List[Check]]] = {
    "centrality": lambda: centrality_checks() + criticality_checks(),
    "identities": lambda: identity_checks() + symform_checks() + cycle_count_checks(),
    "brauer": lambda: brauer_congruence_checks() + partial_trace_checks(),
    "hc": lambda: hc_gl_checks() + hc_bcd_checks() + casimir_route_checks(),
    "capelli": lambda: capelli_checks() + dm_u_checks(),
    "kernel": kernel_checks,
}


def run_suite(name: str, force: bool = False) -> List[Check]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, force))
        return out
    if name == "capelli" and force:
        return capelli_checks((1, 2)) + dm_u_checks()
    return SUITES[name]()
