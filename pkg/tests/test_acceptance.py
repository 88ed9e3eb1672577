"""Acceptance criteria 1-11, exact arithmetic with zero tolerance.

Each test prints one ``criterion N: PASS|FAIL`` line.  Run directly with
``python tests/test_acceptance.py`` for the summary alone.
"""
import sys

import pytest

from lie_center import suites

CRITERIA = {
    1: ("centrality of the Segal-Sugawara families", suites.centrality_checks),
    2: ("criticality uniqueness at K_cri +- 1", suites.criticality_checks),
    3: ("family identities and T-coefficient relations", suites.identity_checks),
    4: ("Brauer symmetrizer congruence modulo J_m", suites.brauer_congruence_checks),
    5: ("partial-trace identities (a)-(d)", suites.partial_trace_checks),
    6: ("cycle counts: closed form, recurrence, brute force", suites.cycle_count_checks),
    7: ("Harish-Chandra images, gl", lambda: suites.hc_gl_checks() + suites.casimir_route_checks()),
    8: ("Harish-Chandra images, types B C D", suites.hc_bcd_checks),
    9: ("symplectic Capelli determinant", lambda: suites.capelli_checks((1, 2)) + suites.dm_u_checks()),
    10: ("symmetrization forms and the F° route", suites.symform_checks),
    11: ("kernel properties", suites.kernel_checks),
}


def evaluate(number):
    title, fn = CRITERIA[number]
    checks = fn()
    failed = [c for c in checks if not c.ok]
    status = "PASS" if checks and not failed else "FAIL"
    line = f"criterion {number:2d}: {status}  {len(checks) - len(failed)}/{len(checks)}  {title}"
    return line, failed


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    line, failed = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
        for c in failed:
            print(f"    {c.name}: {c.witness}")
    assert not failed, line


if __name__ == "__main__":
    ok = True
    for n in sorted(CRITERIA):
        line, failed = evaluate(n)
        ok &= not failed
        print(line)
        for c in failed:
            print(f"    {c.name}: {c.witness}")
    sys.exit(0 if ok else 1)
