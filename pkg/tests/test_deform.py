import json
import random

import pytest

from padic_deform.curves import covariants, tate_algorithm
from padic_deform.deform import (
    build_ctx,
    check_char_transport,
    deform_equation,
    deform_quadratic,
    random_character,
    random_curve,
    run_match,
    sweep,
)
from padic_deform.errors import PrecisionCapExceeded
from padic_deform.gf import GF
from padic_deform.literals import parse_element
from padic_deform.localfield import laurent_field
from padic_deform.quadratic import QuadChar, artin_schreier_datum, sqrt_d_datum

K2 = laurent_field(2, prec=192)
K5 = laurent_field(5, prec=192)


def _eq(field, *lits):
    return covariants(*(parse_element(field, s) for s in lits))


def _flagship():
    eq = _eq(K2, "1", "0", "0", "0", "t")
    chi = QuadChar(artin_schreier_datum(K2, parse_element(K2, "1/t")))
    return eq, chi


def test_build_ctx_floor():
    eq, chi = _flagship()
    assert eq.v_delta() == 1 and chi.conductor == 2 and chi.datum.disc_val == 2
    ctx = build_ctx(K2, eq, chi)
    assert ctx.e_floor == 3 and ctx.e == 3
    assert build_ctx(K2, eq, chi, e_override=10).e == 10
    # target ring is W(F_2)[T]/(T^e - 2)
    assert ctx.target.e_ram == 3
    assert ctx.target.from_int(2).valuation() == 3


def test_deform_equation_preserves_v_delta():
    eq, chi = _flagship()
    ctx = build_ctx(K2, eq, chi, e_override=4)
    eq_p = deform_equation(ctx, eq)
    assert eq_p.v_delta() == 1
    # reduce-mod round trip: a_i' restrict back to phi(a_i)
    for a, a_p in zip(eq.coefficients, eq_p.coefficients):
        src = ctx.source.reduce_mod(a, ctx.e)
        assert ctx.iso.phi_apply(src).digits == ctx.target.reduce_mod(a_p, ctx.e).digits


def test_deform_zero_lifts_to_zero():
    eq, chi = _flagship()
    ctx = build_ctx(K2, eq, chi, e_override=4)
    eq_p = deform_equation(ctx, eq)
    assert eq_p.a2.valuation() is None  # a2 = 0 exactly


def test_deform_quadratic_matches_disc():
    eq, chi = _flagship()
    ctx = build_ctx(K2, eq, chi, e_override=4)
    datum_p, chi_p = deform_quadratic(ctx, chi)
    assert datum_p.disc_val == 2 and datum_p.r == 1
    assert chi_p.conductor == chi.conductor == 2
    # the defining quadratic is Eisenstein: x^2 - T^r x + c with v(c) = 1
    B, C = datum_p.defining_quadratic()
    assert B.valuation() == 1 and C.valuation() == 1


def test_footnote_case_through_pipeline():
    eq = _eq(K2, "1", "0", "0", "0", "t")
    chi = QuadChar(artin_schreier_datum(K2, parse_element(K2, "1/t^4")))
    assert chi.datum.gamma.valuation() == -1  # normalized from 1/t^4
    report = run_match(K2, eq, chi)
    assert report.all_matched
    entry = report.entry("quad.disc_val")
    assert entry.value_src == 2 and entry.value_tgt == 2


def test_p_odd_uniformizer_transport():
    eq = _eq(K5, "0", "0", "0", "1", "1")
    chi = QuadChar(sqrt_d_datum(K5, K5.uniformizer()))
    ctx = build_ctx(K5, eq, chi, e_override=5)
    datum_p, _ = deform_quadratic(ctx, chi)
    assert datum_p.d.valuation() == 1
    assert datum_p.disc_val == 1


def test_char_transport_class_check():
    eq, chi = _flagship()
    ctx = build_ctx(K2, eq, chi, e_override=6)
    eq_p = deform_equation(ctx, eq)
    _, chi_p = deform_quadratic(ctx, chi)
    a, b = check_char_transport(ctx, chi, chi_p, eq.delta, eq_p.delta)
    assert a == b
    # unramified character: the class check degenerates to the valuation
    chi0 = QuadChar(artin_schreier_datum(K2, parse_element(K2, "1")))
    assert chi0.conductor == 0
    ctx0 = build_ctx(K2, eq, chi0, e_override=4)
    eq_p0 = deform_equation(ctx0, eq)
    _, chi_p0 = deform_quadratic(ctx0, chi0)
    a0, b0 = check_char_transport(ctx0, chi0, chi_p0, eq.delta, eq_p0.delta)
    assert a0 == b0 == -1  # v(Delta) = 1 is odd and the character is unramified


def test_flagship_report_all_matched():
    eq, chi = _flagship()
    report = run_match(K2, eq, chi)
    assert report.all_matched
    assert report.entry("curve.kodaira").value_src == "I1"
    assert report.entry("twist.kodaira").value_src == "I5*"
    assert report.entry("w.curve").value_src == -1
    assert report.entry("kt.parity").matched is True
    assert report.entry("commute.tate").matched is True


def test_good_reduction_unramified_case():
    eq = _eq(K5, "0", "0", "0", "1", "1")
    chi = QuadChar(sqrt_d_datum(K5, K5.from_int(2)))
    report = run_match(K5, eq, chi)
    assert report.all_matched
    assert report.entry("w.curve").value_src == 1
    assert report.entry("kt.parity").value_src == report.entry("kt.parity").value_tgt
    # chi unramified, v(Delta) = 0: chi(Delta) = +1, base change stays good
    assert report.entry("char.chi_delta").value_src == 1
    assert report.entry("base_change.kodaira").value_src == "I0"


def test_monotone_stability():
    eq, chi = _flagship()
    base = run_match(K2, eq, chi)
    double = run_match(K2, eq, chi, e_init=2 * base.e_used)
    assert double.retries == 0
    for e1, e2 in zip(base.entries, double.entries):
        assert e1.name == e2.name
        assert e1.value_src == e2.value_src
        assert e1.value_tgt == e2.value_tgt


def test_precision_cap_exceeded():
    eq, chi = _flagship()
    with pytest.raises(PrecisionCapExceeded):
        run_match(K2, eq, chi, max_e=2)


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (5, 1)])
def test_random_matches(p, n):
    field = laurent_field(p, n, prec=192)
    rng = random.Random(1000 + 10 * p + n)
    for _ in range(8):
        eq = random_curve(rng, field)
        chi = random_character(rng, field)
        report = run_match(field, eq, chi)
        assert report.all_matched, report.mismatches()


def test_sweep_determinism_and_shape():
    s1 = sweep(2, 1, 6, seed=7)
    s2 = sweep(2, 1, 6, seed=7)
    assert json.dumps(s1, sort_keys=True) == json.dumps(s2, sort_keys=True)
    assert s1["all_matched"]
    assert s1["count"] == 6
    different = sweep(2, 1, 6, seed=8)
    assert json.dumps(different, sort_keys=True) != json.dumps(s1, sort_keys=True)


def test_sweep_empty():
    s = sweep(3, 1, 0, seed=0)
    assert s["all_matched"] and s["entries"] == {}


def test_report_json_validates_against_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import pathlib
    schema = json.loads(
        (pathlib.Path(__file__).resolve().parent.parent / "docs" / "report.schema.json").read_text()
    )
    eq, chi = _flagship()
    report = run_match(K2, eq, chi).to_json_dict()
    jsonschema.validate(report, schema)
    t = tate_algorithm(eq).to_json_dict()
    jsonschema.validate(t, schema)
    s = sweep(5, 1, 3, seed=1)
    jsonschema.validate(s, schema)
