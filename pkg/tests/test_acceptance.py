"""Acceptance suite: one test per criterion, each records a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v`; the lines are repeated in the
terminal summary (see conftest.py).
"""

import random
import time

import mpmath
from gmpy2 import mpq

from crskit import Truth, decide_locally_kahler, decide_nilpotent_locally_kahler
from crskit.catalog import (
    make_heisenberg5,
    make_inoue,
    make_lemma31,
    make_nondiag,
    make_salem,
    make_semidirect_imaginary,
)
from crskit.crsmodel import build_crs
from crskit.kahlerdecide import g0_spectrum_check, lemma31_verdict
from crskit.liecore import is_solvable
from crskit.scalar import Polynomial, exact, parse_exact
from crskit.scalar.poly import squarefree_part, sturm_real_root_count

from gen import random_invertible, random_nilpotent_triple, random_semidirect_params, random_solvable
from test_liecore import check_nilradical

I = exact("i")
RESULTS = {}


def record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def enclosure(s):
    lo, hi = s.strip("[]").split(",")
    return mpmath.mpf(lo), mpmath.mpf(hi)


FIXTURES = {
    "inoue": (make_inoue, Truth.FALSE, "spectrum-imaginary"),
    "heisenberg5": (make_heisenberg5, Truth.TRUE, None),
    "salem": (make_salem, Truth.TRUE, None),
    "nondiag": (make_nondiag, Truth.FALSE, "spectrum-diagonalizable"),
}


def test_criterion_01_catalog_fixtures():
    bad, slowest = [], 0.0
    for name, (make, value, tag) in FIXTURES.items():
        T = make()
        t0 = time.perf_counter()
        v = decide_locally_kahler(T, prec=64)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        ok = v.value is value and v.failed_condition == tag and dt < 1.0
        if name == "inoue":
            lo, _ = enclosure(v.witness["eigenvalue"]["re"])
            ok = ok and lo > 0
        if not ok:
            bad.append(name)
    record(1, not bad, f"4 fixtures at 64 bits, slowest {slowest * 1000:.0f} ms" + (f", wrong: {bad}" if bad else ""))


def test_criterion_02_lemma31_sweep():
    cases = {"i": True, "2 i": True, "-3 i": True, "0": True, "1": False, "1 + i": False, "1/10": False}
    bad = []
    for s, expected in cases.items():
        b = parse_exact(s)
        v = decide_locally_kahler(make_lemma31(b))
        if lemma31_verdict(b) is not Truth.of(expected) or v.value is not Truth.of(expected):
            bad.append(s)
    record(2, not bad, f"{len(cases)} values of beta, exact backend" + (f", wrong: {bad}" if bad else ""))


def test_criterion_03_salem_global_vs_local():
    T = make_salem()
    local = decide_locally_kahler(T)
    glob = g0_spectrum_check(T)
    lo, hi = enclosure(glob.witness["eigenvalue"]["re"])
    ln_alpha = T.constants["lnalpha"].enclosure(128).mid().real
    on_ln_alpha = lo <= abs(ln_alpha) * glob.witness["re_sign"] <= hi
    ok = local.value is Truth.TRUE and glob.value is Truth.FALSE and on_ln_alpha
    record(3, ok, f"local {local.value.value}, global g0 check {glob.value.value} "
                  f"with Re eigenvalue in [{mpmath.nstr(lo, 6)}, {mpmath.nstr(hi, 6)}]")


def test_criterion_04_heisenberg_obstruction():
    T = build_crs(3, {(0, 1): {2: 1}}, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, I]], labels=["X", "Y", "Z"])
    v = decide_nilpotent_locally_kahler(T)
    ok = (v.value is Truth.FALSE and v.failed_condition == "nilpotent-case"
          and bool(v.witness["obstruction"]["inconsistent_rows"]))
    record(4, ok, "m = complexified center of heis has no complementary ideal")


def test_criterion_05_nilpotent_equivalence():
    rng = random.Random(500)
    disagree, dims = 0, []
    for _ in range(100):
        T = random_nilpotent_triple(rng, max_real_dim=12)
        dims.append(T.dim)
        a = decide_locally_kahler(T)
        b = decide_nilpotent_locally_kahler(T)
        disagree += a.value is not b.value
    record(5, disagree == 0 and max(dims) <= 12, f"100 triples (real dim <= {max(dims)}), {disagree} disagreements")


def test_criterion_06_semidirect_soundness():
    rng = random.Random(600)
    fails = 0
    for _ in range(200):
        sd, w = random_semidirect_params(rng)
        fails += decide_locally_kahler(make_semidirect_imaginary(sd, w)).value is not Truth.TRUE
    record(6, fails == 0, f"200 instances, {fails} not True")


def test_criterion_07_basis_change_invariance():
    rng = random.Random(700)
    fixtures = {name: make() for name, (make, _, _) in FIXTURES.items()}
    fixtures["lemma31(i)"] = make_lemma31(I)
    fixtures["lemma31(1)"] = make_lemma31(1)
    flips = {}
    for name, T in fixtures.items():
        base = decide_locally_kahler(T)
        key = (base.value, base.failed_condition)
        flips[name] = 0
        for _ in range(100):
            U = T.transform(random_invertible(rng, T.dim))
            v = decide_locally_kahler(U)
            flips[name] += (v.value, v.failed_condition) != key
    total = sum(flips.values())
    record(7, total == 0, f"{len(fixtures)} fixtures x 100 basis changes, {total} changed verdicts")


def test_criterion_08_nilradical_oracle():
    rng = random.Random(800)
    failures = 0
    for _ in range(200):
        L = random_solvable(rng, max_dim=5)
        assert is_solvable(L) and L.dim <= 5
        try:
            check_nilradical(L, rng, outer=50, inner=20)
        except AssertionError:
            failures += 1
    record(8, failures == 0, f"200 solvable algebras (dim <= 5), 50x20 samples each, {failures} failures")


def numeric_real_count(coeffs, tol=mpmath.mpf("1e-9")):
    with mpmath.workdps(60):
        vals = [mpmath.mpf(int(c.numerator)) / int(c.denominator) for c in reversed(coeffs)]
        roots = mpmath.polyroots(vals, maxsteps=400, extraprec=200)
        clusters = []
        for r in roots:
            for c in clusters:
                if abs(c[0] - r) < tol:
                    c.append(r)
                    break
            else:
                clusters.append([r])
        return sum(1 for c in clusters if abs(mpmath.im(c[0])) < tol)


def test_criterion_09_sturm_vs_numeric():
    rng = random.Random(900)
    mismatches = done = 0
    while done < 1000:
        deg = rng.randint(1, 8)
        coeffs = [mpq(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(deg)] + [mpq(rng.choice((1, -1, 2, 3)))]
        p = Polynomial([exact(c) for c in coeffs])
        if squarefree_part(p).degree != deg:
            continue
        done += 1
        mismatches += sturm_real_root_count(p) != numeric_real_count(coeffs)
    record(9, mismatches == 0, f"1000 squarefree polynomials (deg <= 8), {mismatches} mismatches at tol 1e-9")


def test_criterion_10_precision_monotonicity():
    bad = []
    notes = []
    for name in ("inoue", "salem"):
        make, value, tag = FIXTURES[name]
        T = make()
        high = set()
        for p in (64, 128, 256):
            v = decide_locally_kahler(T, prec=p)
            high.add((v.value, v.failed_condition))
        if high != {(value, tag)}:
            bad.append(f"{name}: {high}")
        low = decide_locally_kahler(T, prec=8, max_doublings=0).value
        notes.append(f"{name}@8 bits {low.value}")
        if low is not Truth.UNKNOWN and low is not value:
            bad.append(f"{name} flipped at 8 bits")
    record(10, not bad, "64/128/256 identical; " + ", ".join(notes) + (f"; {bad}" if bad else ""))
