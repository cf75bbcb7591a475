"""Acceptance suite: every exit criterion at its stated size and tolerance,
one printed pass/fail line per criterion.

The sweeps feeding criteria 2-8 run once per prime (module scope) and are
shared; wild potentially-good reduction at residue characteristic 2 yields
Unsupported root-number entries, which are excluded from criteria 6 and 8 but
fully included everywhere else.  Run with `pytest -s tests/test_acceptance.py`
to see the summary lines.
"""

import json
import random
import time

import pytest

from padic_deform.deform import sweep
from padic_deform.gf import GF, gauss_sum_sign, quadratic_residue
from padic_deform.literals import parse_element
from padic_deform.localfield import TripleIso, laurent_field, witt_field
from padic_deform.quadratic import (
    QuadChar,
    artin_schreier_datum,
    normalize_gamma,
    sqrt_d_datum,
)
from padic_deform.rootnum import epsilon_quadratic

SWEEP_SIZES = {
    # q in {2, 3, 4, 5}: residue degree 2 participates for p = 2
    (2, 1): 100,
    (2, 2): 100,
    (3, 1): 200,
    (5, 1): 200,
}
SWEEP_SEED = 20260810
PER_PRIME_BUDGET = 300.0


def _report(ok, line):
    print(f"{'PASS' if ok else 'FAIL'}  {line}")
    return ok


@pytest.fixture(scope="module")
def sweeps():
    results = {}
    timings = {}
    for (p, n), count in SWEEP_SIZES.items():
        t0 = time.perf_counter()
        results[(p, n)] = sweep(p, n, count, seed=SWEEP_SEED)
        timings[(p, n)] = time.perf_counter() - t0
    return results, timings


def _entry_totals(results, names):
    matched = mismatched = unsupported = 0
    for summary in results.values():
        for name in names:
            slot = summary["entries"].get(name)
            if slot is None:
                continue
            matched += slot["matched"]
            mismatched += slot["mismatched"]
            unsupported += slot["unsupported"]
    return matched, mismatched, unsupported


def test_criterion_1_ring_isomorphism_witness():
    t0 = time.perf_counter()
    failures = 0
    checks = 0
    for p in (2, 3, 5):
        for n in (1, 2):
            source = laurent_field(p, n, prec=32)
            for e in range(2, 9):
                iso = TripleIso(source, witt_field(GF(p, n), e))
                rng = random.Random(f"c1-{p}-{n}-{e}")
                failures += iso.check_ring_hom(rng, pairs=500)
                checks += 500
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 10.0
    assert _report(ok, f"criterion 1: ring isomorphism on {checks} pairs, "
                       f"{failures} failures, {elapsed:.2f}s (< 10 s)")


def test_criterion_2_tate_invariants_match(sweeps):
    results, timings = sweeps
    names = ["curve.v_delta", "curve.v_delta_min", "curve.kodaira", "curve.f",
             "curve.c", "curve.points0"]
    matched, mismatched, _ = _entry_totals(results, names)
    caps = sum(len(s["cap_failures"]) for s in results.values())
    per_prime = {}
    for (p, n), dt in timings.items():
        per_prime[p] = per_prime.get(p, 0.0) + dt
    in_budget = all(dt < PER_PRIME_BUDGET for dt in per_prime.values())
    ok = mismatched == 0 and caps == 0 and in_budget
    times = ", ".join(f"p={p}: {dt:.1f}s" for p, dt in sorted(per_prime.items()))
    assert _report(ok, f"criterion 2: {matched} Tate-invariant comparisons matched "
                       f"exactly, {mismatched} mismatched, {caps} cap failures "
                       f"({times}; budget {PER_PRIME_BUDGET:.0f}s per prime)")


def test_criterion_3_discriminant_valuations(sweeps):
    results, _ = sweeps
    matched, mismatched, _ = _entry_totals(results, ["quad.disc_val"])
    K2 = laurent_field(2, prec=192)
    gamma = parse_element(K2, "1/t^4")
    datum = artin_schreier_datum(K2, gamma)
    footnote_ok = (normalize_gamma(K2, gamma).valuation() == -1
                   and datum.disc_val == 2)
    ok = mismatched == 0 and footnote_ok and matched > 0
    assert _report(ok, f"criterion 3: discriminant valuations matched in "
                       f"{matched}/{matched + mismatched} cases; footnote datum "
                       f"1/t^4 normalizes to 1/t with disc valuation 2: {footnote_ok}")


def test_criterion_4_delta_class_transport(sweeps):
    results, _ = sweeps
    matched, mismatched, _ = _entry_totals(results, ["char.delta_class",
                                                     "char.chi_delta"])
    ok = mismatched == 0 and matched > 0
    assert _report(ok, f"criterion 4: Delta' = xi(Delta) mod U^c verified in "
                       f"{matched} entries, {mismatched} failures")


def test_criterion_5_twist_deform_commutation(sweeps):
    results, _ = sweeps
    names = ["commute.tate", "twist.v_delta", "twist.v_delta_min", "twist.kodaira",
             "twist.f", "twist.c", "twist.points0"]
    matched, mismatched, _ = _entry_totals(results, names)
    ok = mismatched == 0 and matched > 0
    assert _report(ok, f"criterion 5: twist/deform commutation held in "
                       f"{matched} entries, {mismatched} failures")


def test_criterion_6_root_numbers(sweeps):
    results, _ = sweeps
    matched, mismatched, unsupported = _entry_totals(
        results, ["w.curve", "w.twist", "w.base_change"]
    )
    # the three pinned values
    from padic_deform.curves import covariants, tate_algorithm
    from padic_deform.rootnum import root_number
    K5 = laurent_field(5, prec=96)
    K2 = laurent_field(2, prec=96)
    good = root_number(*_eq_and_tate(K5, "0", "0", "0", "1", "1")).value == 1
    split = root_number(*_eq_and_tate(K2, "1", "0", "0", "0", "t")).value == -1
    nonsplit = root_number(*_eq_and_tate(K5, "0", "2", "0", "0", "t")).value == 1
    # Gauss oracle identities
    oracle_ok = True
    for p, n in ((3, 1), (5, 1), (3, 2), (5, 2), (7, 1)):
        k = GF(p, n)
        g = gauss_sum_sign(k)  # magnitude asserted to 1e-9 internally
        K = laurent_field(p, n, prec=64)
        nu = QuadChar(sqrt_d_datum(K, K.uniformizer()))
        w = epsilon_quadratic(nu)
        if abs(w * w - nu.eval(K.from_int(-1))) > 1e-9:
            oracle_ok = False
    ok = (mismatched == 0 and good and split and nonsplit and oracle_ok
          and matched > 0)
    assert _report(ok, f"criterion 6: pinned values (+1/-1/+1) ok={good and split and nonsplit}; "
                       f"w matched in {matched} supported entries "
                       f"({unsupported} unsupported, excluded); oracle identities ok={oracle_ok}")


def _eq_and_tate(field, *lits):
    from padic_deform.curves import covariants, tate_algorithm
    eq = covariants(*(parse_element(field, s) for s in lits))
    return eq, tate_algorithm(eq)


def test_criterion_7_character_oracle():
    rng = random.Random("criterion-7")
    total_chars = 0
    failures = 0
    for p, n in ((2, 1), (2, 2), (3, 1), (5, 1)):
        field = laurent_field(p, n, prec=96)
        q = field.residue.q
        chars = []
        while len(chars) < 20:
            if p == 2:
                v0 = -rng.randrange(0, 6)
                coeffs = {i: rng.randrange(q) for i in range(v0, 1)}
                coeffs[v0] = rng.randrange(1, q)
                try:
                    chars.append(QuadChar(artin_schreier_datum(
                        field, field.from_coeff_map(coeffs))))
                except Exception:
                    continue
            else:
                if rng.randrange(2):
                    unit = field.from_coeff_map(
                        {0: rng.randrange(1, q), 1: rng.randrange(q)})
                    chars.append(QuadChar(sqrt_d_datum(field, unit.shift_pi(1))))
                else:
                    code = rng.randrange(1, q)
                    if quadratic_residue(field.residue.element(code)) == -1:
                        chars.append(QuadChar(sqrt_d_datum(
                            field, field.from_coeff_map({0: code}))))
        for chi in chars:
            total_chars += 1
            datum = chi.datum
            norms = 0
            while norms < 50:
                a = field.from_coeff_map({i: rng.randrange(q) for i in range(5)})
                b = field.from_coeff_map({i: rng.randrange(q) for i in range(5)})
                nrm = datum.norm_of_pair(a, b)
                if nrm.valuation() is None:
                    continue
                if chi.eval(nrm) != 1:
                    failures += 1
                norms += 1
            elts = 0
            xs = []
            while elts < 50:
                x = field.from_coeff_map(
                    {i: rng.randrange(q) for i in range(6)}).shift_pi(rng.randrange(-2, 3))
                if x.valuation() is None:
                    continue
                xs.append(x)
                elts += 1
            for i in range(0, len(xs) - 1, 2):
                if chi.eval(xs[i] * xs[i + 1]) != chi.eval(xs[i]) * chi.eval(xs[i + 1]):
                    failures += 1
    ok = failures == 0
    assert _report(ok, f"criterion 7: {total_chars} characters, 50 norms and 50 "
                       f"elements each against the norm-group oracle, {failures} failures")


def test_criterion_8_kt_consistency(sweeps):
    results, _ = sweeps
    matched, mismatched, unsupported = _entry_totals(results, ["kt.parity"])
    ok = mismatched == 0 and matched > 0
    assert _report(ok, f"criterion 8: Kramer-Tunnell parity equal across the "
                       f"deformation in {matched} supported cases "
                       f"({unsupported} unsupported, excluded)")


def test_criterion_9_determinism():
    s1 = sweep(2, 1, 8, seed=4242)
    s2 = sweep(2, 1, 8, seed=4242)
    b1 = json.dumps(s1, sort_keys=True, indent=2).encode()
    b2 = json.dumps(s2, sort_keys=True, indent=2).encode()
    ok = b1 == b2
    assert _report(ok, f"criterion 9: fixed-seed sweep JSON byte-identical "
                       f"({len(b1)} bytes)")
