"""The ten acceptance criteria, one test each; every test prints one PASS/FAIL line."""

import random
import time
from math import gcd

import pytest

from conftest import ACCEPTANCE_LINES
from qhk.alexander import bracket_identities, phi_family, phi_prediction, takasaki
from qhk.config import Limits
from qhk.corpus import abelian_groups, alexander_corpus, family, quandle_corpus
from qhk.groups import (
    FiniteGroupTable,
    RelCochainComplex,
    bar_boundary,
    bar_h2_integral,
    subgroup_of_perm,
)
from qhk.homology import boundary2, boundary3, h2_quandle, quandle_boundary3
from qhk.linalg import FinGenAb, IntMatrix, exterior_square, smith_normal_form
from qhk.quandle import alexander, inn_group, perm_group, stabilizer, symmetric_generators, transposition_quandle
from qhk.verify import (
    PASS,
    check_rack_splitting,
    verify_cor8,
    verify_prop9,
    verify_thm4,
    verify_thm5,
    verify_thm6,
)

CORPUS16 = alexander_corpus(16)


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title} ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_01_order_p_squared_classifier():
    bad, total, auts = [], 0, {}
    for p in (2, 3):
        r = verify_prop9(p)
        auts[p] = r.data[f"automorphisms[{p}, {p}]"]
        total += len(r.data["rows"])
        bad += [c.name for c in r.checks if c.status != PASS]
    report(1, "H2^Q = Z/p iff det t = 1 on all connected order-p^2 specs", not bad,
           f"{total} specs checked; automorphisms of (Z/2)^2: {auts[2]}, of (Z/3)^2: {auts[3]}; "
           f"failures: {bad or 'none'}")


def test_02_phi_family():
    limits = Limits(max_homology_order=27)
    rows, ok = [], True
    for p, n in [(2, 3), (2, 5), (3, 2), (3, 4), (5, 2)]:
        t0 = time.perf_counter()
        got = h2_quandle(alexander(phi_family(p, n)), limits)
        dt = time.perf_counter() - t0
        expected = phi_prediction(p, n)
        ok &= got == expected and dt <= 300
        rows.append(f"({p},{n}): {got} in {dt:.1f}s")
    report(2, "Phi_n family H2^Q = (Z/p)^floor((n-1)/2)", ok, "; ".join(rows))


def test_03_tensor_exterior_chain_agreement():
    bad = [s for s in CORPUS16 if not verify_thm4(s).passed]
    report(3, "h2_quandle = Q_X = coker(1 - T) on connected corpus specs of order <= 16", not bad,
           f"{len(CORPUS16)} specs, {len(bad)} mismatches")


def test_04_transposition_quandles():
    got = {n: h2_quandle(transposition_quandle(n)) for n in (3, 4, 5)}
    ok = got[3] == FinGenAb() and got[4] == got[5] == FinGenAb(0, (2,))
    report(4, "transposition quandles of S3, S4, S5", ok,
           ", ".join(f"S{n}: {g}" for n, g in got.items()))


def test_05_rack_quandle_splitting():
    entries = quandle_corpus(10)
    bad = [e.name for e in entries if not check_rack_splitting(e.quandle).passed]
    report(5, "H2^R = H2^Q + Z^orbits on corpus quandles of order <= 10", not bad,
           f"{len(entries)} quandles, failures: {bad or 'none'}")


def test_06_universal_cocycle():
    specs = list(CORPUS16) + [e.spec for e in family("takasaki", 16)]
    bad = [s for s in specs if not verify_cor8(s).passed]
    report(6, "universal pairing passes the exhaustive 2-cocycle scan", not bad,
           f"{len(specs)} specs, {len(bad)} failures")


def test_07_relative_cohomology_f4():
    spec = phi_family(2, 3)
    t0 = time.perf_counter()
    r = verify_thm5(spec, 2)
    dt = time.perf_counter() - t0
    q = alexander(spec)
    G = inn_group(q)
    K = subgroup_of_perm(G, stabilizer(G, 0))
    C = RelCochainComplex(FiniteGroupTable.from_perm_group(G), tuple(K), 2)
    size = max(C.dim(n) for n in range(4))
    d = r.data
    ok = (r.passed and d["h2_quandle_dim"] == d["h2_relative_dim"] == 1 and d["type"] == 3
          and d["inn_order"] == 12 and d["stab_order"] == 3 and size <= 1900 and dt <= 60)
    report(7, "F4, ell = 2: dim H^2_Q(X; F_2) = dim H^2(Inn, Stab; F_2) = 1", ok,
           f"dims {d.get('h2_quandle_dim')} and {d.get('h2_relative_dim')}, largest cochain space {size}, "
           f"{dt:.2f}s, hypotheses {[c.status for c in r.checks[:3]]}")


def test_08_primary_parts():
    checked, bad = 0, []
    for spec in CORPUS16:
        for ell in (2, 3, 5):
            if gcd(ell, spec.type) != 1:
                continue
            checked += 1
            r = verify_thm6(spec, ell)
            if not r.passed:
                bad.append((spec.factors, spec.t, ell, r.status))
    report(8, "ell-primary parts of H2^Q match coker(1 - T)", not bad,
           f"{checked} (spec, ell) pairs, failures: {bad or 'none'}")


def test_09_schur_multipliers():
    groups = [f for n in range(1, 10) for f in abelian_groups(n)]
    bad = [f for f in groups
           if bar_h2_integral(FiniteGroupTable.abelian(f)) != exterior_square(FinGenAb.from_orders(f))]
    report(9, "bar-complex H2 equals the exterior square for abelian groups of order <= 9", not bad,
           f"{len(groups)} groups, failures: {bad or 'none'}")


def _snf_ok(A: IntMatrix) -> bool:
    s = smith_normal_form(A)
    if s.U @ A @ s.V != s.D:
        return False
    if s.U @ s.U_inv != IntMatrix.identity(A.rows) or s.V @ s.V_inv != IntMatrix.identity(A.cols):
        return False
    diag = s.diagonal
    if any(s.D[i, j] for i in range(A.rows) for j in range(A.cols) if i != j):
        return False
    nz = [d for d in diag if d]
    if any(d < 0 for d in nz) or diag[:len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_10_property_suites():
    rng = random.Random(20261014)
    snf_fail = 0
    for i in range(1000):
        m, n = rng.randint(1, 30), rng.randint(1, 30)
        density = 1.0 if i % 2 else 0.15
        rows = [[rng.randint(-100, 100) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)]
        snf_fail += not _snf_ok(IntMatrix.from_rows(rows))

    dd_fail = 0
    for e in quandle_corpus(10):
        q = e.quandle
        dd_fail += not (boundary2(q) @ boundary3(q)).is_zero()
        dd_fail += not (boundary2(q) @ quandle_boundary3(q)).is_zero()
    groups = [FiniteGroupTable.abelian(f) for n in range(1, 9) for f in abelian_groups(n)]
    groups.append(FiniteGroupTable.from_perm_group(perm_group(symmetric_generators(3), 3)))
    for G in groups:
        for k in (1, 2):
            dd_fail += not (bar_boundary(G, k) @ bar_boundary(G, k + 1)).is_zero()
        for sub in ([G.identity], list(range(G.order))):
            C = RelCochainComplex(G, tuple(sub), 2)
            dd_fail += not (C.differential_squares_to_zero(0) and C.differential_squares_to_zero(1))

    small = alexander_corpus(9)
    br_fail = 0
    for spec in small:
        b = bracket_identities(spec)
        br_fail += not (b.exhaustive and b.ok)
    ok = snf_fail == dd_fail == br_fail == 0
    report(10, "SNF, boundary-squared and bracket property suites", ok,
           f"SNF 1000 matrices: {snf_fail} failures; d^2 = 0: {dd_fail} failures; "
           f"brackets on {len(small)} specs of order <= 9: {br_fail} failures")
