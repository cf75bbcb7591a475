"""The deformation pipeline: build the ramified p-adic companion field,
transport the curve and the quadratic character through the truncated-ring
isomorphism, run both sides, and compare every matchable invariant.

The precision level e is adaptive: whatever the theory guarantees for large
enough e is re-checked at runtime, and any failed comparison or undecidable
branch doubles e and reruns, up to a cap.  A report therefore never contains
a silently unverified equality.
"""

import os
import random

from .curves import covariants, point_count_reduced, tate_algorithm
from .errors import (
    ClassMismatch,
    DeltaValuationMismatch,
    DiscMismatch,
    InsufficientPrecision,
    PrecisionCapExceeded,
    ReducibleASPolynomial,
    SingularEquation,
)
from .gf import quadratic_residue
from .localfield import TripleIso, laurent_field, witt_field
from .quadratic import QuadChar, TwistDatum, twist_equation
from .rootnum import kt_parity, root_number

DEFAULT_MAX_E = 64
SOURCE_PREC = 192


def default_max_e():
    env = os.environ.get("PADIC_DEFORM_MAX_E")
    return int(env) if env else DEFAULT_MAX_E


class DeformCtx:
    """Precision level e together with the triple isomorphism it induces."""

    __slots__ = ("e", "source", "target", "iso", "e_floor")

    def __init__(self, e, source, target, iso, e_floor):
        self.e = e
        self.source = source
        self.target = target
        self.iso = iso
        self.e_floor = e_floor

    def __repr__(self):
        return f"DeformCtx(e={self.e}, floor={self.e_floor})"


def build_ctx(source, eq, chi, e_override=None):
    """Choose e >= max(v(Delta) + c(chi), v(disc), 2) and build phi, eta, xi."""
    e_floor = max(eq.v_delta() + chi.conductor, chi.datum.disc_val, 2)
    e = max(e_override or 0, e_floor)
    target = witt_field(source.residue, e)
    iso = TripleIso(source, target)
    return DeformCtx(e, source, target, iso, e_floor)


def deform_equation(ctx, eq):
    """Lift the coefficients through phi and verify v(Delta) is preserved."""
    e = ctx.e
    lifted = []
    for a in eq.coefficients:
        cls = ctx.iso.phi_apply(ctx.source.reduce_mod(a, e))
        lifted.append(cls.lift())
    try:
        eq_p = covariants(*lifted)
    except SingularEquation as exc:
        raise DeltaValuationMismatch(f"deformed discriminant vanished: {exc}") from exc
    if eq_p.v_delta() != eq.v_delta():
        raise DeltaValuationMismatch(
            f"v(Delta) = {eq.v_delta()} became {eq_p.v_delta()} at e = {e}"
        )
    return eq_p


def deform_quadratic(ctx, chi):
    """Transport the twist datum and define chi' by pullback along xi."""
    datum = chi.datum
    src, tgt, e = ctx.source, ctx.target, ctx.e
    if datum.kind == "sqrt_d":
        d = datum.d
        if d.valuation() == 0:
            d_p = ctx.iso.phi_apply(src.reduce_mod(d, e)).lift()
        else:
            digits = d.reduce_digits(e + 1)
            d_p = tgt.from_digits(digits[1:], shift=1)
        datum_p = TwistDatum(tgt, "sqrt_d", d=d_p)
    elif datum.kind == "artin_schreier":
        r = datum.r
        if r == 0:
            g_p = ctx.iso.phi_apply(src.reduce_mod(datum.gamma, e)).lift()
            datum_p = TwistDatum(tgt, "mixed_quadratic", gamma=g_p, r=0)
        else:
            c = src.uniformizer(2 * r) * datum.gamma  # valuation 1
            digits = c.reduce_digits(e + 1)
            c_p = tgt.from_digits(digits[1:], shift=1)
            datum_p = TwistDatum(tgt, "mixed_quadratic", gamma=c_p.shift_pi(-2 * r), r=r)
    else:
        raise ValueError("the source datum must live over F_q((t))")
    if datum_p.disc_val != datum.disc_val:
        raise DiscMismatch(
            f"disc valuation {datum.disc_val} became {datum_p.disc_val}"
        )
    chi_p = QuadChar(datum_p, backend="transported", iso=ctx.iso, source=chi)
    return datum_p, chi_p


def check_char_transport(ctx, chi, chi_p, delta, delta_p):
    """Verify Delta' = xi(Delta) modulo U^c(chi) and return both character
    values (equal by construction once the class check passes)."""
    c = chi.conductor
    u_src = ctx.source.unit_class(delta, c)
    u_tgt = ctx.target.unit_class(delta_p, c)
    if ctx.iso.xi_apply(u_src) != u_tgt:
        raise ClassMismatch(
            f"Delta transport failed modulo U^{c} at e = {ctx.e}"
        )
    return chi.eval(delta), chi_p.eval(delta_p)


class MatchEntry:
    __slots__ = ("name", "value_src", "value_tgt", "matched")

    def __init__(self, name, value_src, value_tgt):
        self.name = name
        self.value_src = value_src
        self.value_tgt = value_tgt
        if value_src is None or value_tgt is None:
            self.matched = None  # unsupported on at least one side
        else:
            self.matched = value_src == value_tgt

    def to_json_dict(self):
        return {"name": self.name, "K": self.value_src, "K_prime": self.value_tgt,
                "matched": self.matched}


class MatchReport:
    def __init__(self, entries, e_used, e_floor, retries, inputs):
        self.entries = entries
        self.e_used = e_used
        self.e_floor = e_floor
        self.retries = retries
        self.inputs = inputs

    @property
    def all_matched(self):
        return all(e.matched is not False for e in self.entries)

    def mismatches(self):
        return [e for e in self.entries if e.matched is False]

    def entry(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_json_dict(self):
        return {
            "inputs": self.inputs,
            "e_used": self.e_used,
            "e_floor": self.e_floor,
            "retries": self.retries,
            "all_matched": self.all_matched,
            "entries": [e.to_json_dict() for e in self.entries],
        }


def _tate_entries(prefix, t_src, t_tgt, entries, with_points=True):
    pairs = [
        ("v_delta", t_src.v_delta, t_tgt.v_delta),
        ("v_delta_min", t_src.v_delta_min, t_tgt.v_delta_min),
        ("kodaira", t_src.kodaira, t_tgt.kodaira),
        ("f", t_src.conductor_f, t_tgt.conductor_f),
        ("c", t_src.tamagawa_c, t_tgt.tamagawa_c),
        ("m", t_src.num_components, t_tgt.num_components),
        ("reduction", t_src.reduction, t_tgt.reduction),
        ("potential", t_src.potential, t_tgt.potential),
    ]
    for key, a, b in pairs:
        entries.append(MatchEntry(f"{prefix}.{key}", a, b))
    if with_points:
        entries.append(MatchEntry(
            f"{prefix}.points0",
            point_count_reduced(t_src.minimal_model),
            point_count_reduced(t_tgt.minimal_model),
        ))


def _attempt(source, eq, chi, e):
    entries = []
    ctx = build_ctx(source, eq, chi, e_override=e)
    eq_p = deform_equation(ctx, eq)
    datum_p, chi_p = deform_quadratic(ctx, chi)

    t_src = tate_algorithm(eq)
    t_tgt = tate_algorithm(eq_p)
    _tate_entries("curve", t_src, t_tgt, entries)

    tw_src = twist_equation(eq, chi.datum)
    tw_tgt = twist_equation(eq_p, datum_p)
    tt_src = tate_algorithm(tw_src)
    tt_tgt = tate_algorithm(tw_tgt)
    _tate_entries("twist", tt_src, tt_tgt, entries)

    # twist-then-deform versus deform-then-twist
    tw_deformed = deform_equation(ctx, tw_src)
    tt_commute = tate_algorithm(tw_deformed)
    entries.append(MatchEntry(
        "commute.tate",
        list(tt_tgt.summary()),
        list(tt_commute.summary()),
    ))

    entries.append(MatchEntry("quad.disc_val", chi.datum.disc_val, datum_p.disc_val))
    entries.append(MatchEntry("quad.conductor", chi.conductor, chi_p.conductor))

    chi_delta, chi_delta_p = check_char_transport(
        ctx, chi, chi_p, eq.delta, eq_p.delta
    )
    # reaching this line means Delta' = xi(Delta) mod U^c(chi) was verified
    entries.append(MatchEntry("char.delta_class", "verified", "verified"))
    entries.append(MatchEntry("char.chi_delta", chi_delta, chi_delta_p))

    # base change to the quadratic extension on both sides
    ext_src = chi.datum.extension()
    ext_tgt = datum_p.extension()
    bc_src = covariants(*(ext_src.from_base(a) for a in eq.coefficients))
    bc_tgt = covariants(*(ext_tgt.from_base(a) for a in eq_p.coefficients))
    tb_src = tate_algorithm(bc_src)
    tb_tgt = tate_algorithm(bc_tgt)
    _tate_entries("base_change", tb_src, tb_tgt, entries, with_points=False)

    w_pairs = [
        ("w.curve", (eq, t_src), (eq_p, t_tgt)),
        ("w.twist", (tw_src, tt_src), (tw_tgt, tt_tgt)),
        ("w.base_change", (bc_src, tb_src), (bc_tgt, tb_tgt)),
    ]
    verdicts = {}
    for name, (es, ts), (et, tt) in w_pairs:
        vs = root_number(es, ts)
        vt = root_number(et, tt)
        verdicts[name] = (vs, vt)
        entries.append(MatchEntry(name, vs.value, vt.value))

    wbc_src, wbc_tgt = verdicts["w.base_change"]
    if wbc_src.value is not None and wbc_tgt.value is not None:
        entries.append(MatchEntry(
            "kt.parity",
            kt_parity(wbc_src.value, chi_delta),
            kt_parity(wbc_tgt.value, chi_delta_p),
        ))
    else:
        entries.append(MatchEntry("kt.parity", None, None))

    bad = [en for en in entries if en.matched is False]
    if bad:
        names = ", ".join(en.name for en in bad)
        raise DeltaValuationMismatch(f"mismatched entries at e = {ctx.e}: {names}")
    return ctx, entries


def run_match(source, eq, chi, e_init=None, max_e=None):
    """Run the full comparison, doubling e on any precision failure."""
    max_e = max_e if max_e is not None else default_max_e()
    e = e_init
    retries = 0
    last_error = None
    while True:
        try:
            ctx, entries = _attempt(source, eq, chi, e)
            break
        except InsufficientPrecision as exc:
            last_error = exc
            current = e if e is not None else build_ctx(source, eq, chi).e
            if current >= max_e:
                raise PrecisionCapExceeded(
                    f"no convergence up to e = {max_e}: {exc}",
                    diagnostics={"last_error": str(exc), "e": current,
                                 "retries": retries},
                ) from exc
            e = min(2 * current, max_e)
            retries += 1
    from .literals import format_element
    a = eq.coefficients
    inputs = {
        "p": source.residue.p,
        "n": source.residue.n,
        "q": source.residue.q,
        "curve": {f"a{i}": format_element(c) for i, c in zip((1, 2, 3, 4, 6), a)},
        "twist": chi.datum.to_json_dict(),
    }
    return MatchReport(entries, ctx.e, ctx.e_floor, retries, inputs)


# -- randomized sweep harness ------------------------------------------------

def random_curve(rng, field, deg=6):
    q = field.residue.q
    while True:
        coeffs = [
            field.from_coeff_map({i: rng.randrange(q) for i in range(deg)})
            for _ in range(5)
        ]
        try:
            return covariants(*coeffs)
        except SingularEquation:
            continue


def random_character(rng, field):
    q = field.residue.q
    if field.residue.p == 2:
        while True:
            v0 = -rng.randrange(0, 6)
            coeffs = {i: rng.randrange(q) for i in range(v0, 1)}
            coeffs[v0] = rng.randrange(1, q)
            gamma = field.from_coeff_map(coeffs)
            try:
                return QuadChar(TwistDatum(
                    field, "artin_schreier",
                    gamma=_normalized(field, gamma)))
            except ReducibleASPolynomial:
                continue
    if rng.randrange(2):
        unit = field.from_coeff_map(
            {0: rng.randrange(1, q), 1: rng.randrange(q), 2: rng.randrange(q)}
        )
        return QuadChar(TwistDatum(field, "sqrt_d", d=unit.shift_pi(1)))
    while True:
        code = rng.randrange(1, q)
        if quadratic_residue(field.residue.element(code)) == -1:
            tail = {1: rng.randrange(q), 2: rng.randrange(q)}
            d = field.from_coeff_map({0: code, **tail})
            return QuadChar(TwistDatum(field, "sqrt_d", d=d))


def _normalized(field, gamma):
    from .quadratic import normalize_gamma
    return normalize_gamma(field, gamma)


def sweep_case(p, n, idx, seed, max_e=None):
    """One deterministic random case: (index, report-or-error dict)."""
    field = laurent_field(p, n, prec=SOURCE_PREC)
    rng = random.Random(repr((seed, p, n, idx)))
    eq = random_curve(rng, field)
    chi = random_character(rng, field)
    try:
        report = run_match(field, eq, chi, max_e=max_e)
    except PrecisionCapExceeded as exc:
        return idx, {"error": str(exc)}
    return idx, report.to_json_dict()


def sweep(p, n, count, seed, max_e=None, jobs=1, on_case=None):
    """Deterministic randomized sweep; returns a JSON-ready summary.

    Cases are independent and keyed by index, so parallel execution with
    jobs > 1 assembles the same summary as a sequential run.
    """
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(
                _sweep_case_star,
                [(p, n, idx, seed, max_e) for idx in range(count)],
            ))
        results.sort(key=lambda pair: pair[0])
    else:
        results = [sweep_case(p, n, idx, seed, max_e) for idx in range(count)]
    stats = {}
    e_hist = {}
    retry_hist = {}
    failures = []
    for idx, payload in results:
        if "error" in payload:
            failures.append({"index": idx, "error": payload["error"]})
            continue
        for entry in payload["entries"]:
            slot = stats.setdefault(
                entry["name"], {"matched": 0, "mismatched": 0, "unsupported": 0}
            )
            if entry["matched"] is None:
                slot["unsupported"] += 1
            elif entry["matched"]:
                slot["matched"] += 1
            else:
                slot["mismatched"] += 1
        e_hist[payload["e_used"]] = e_hist.get(payload["e_used"], 0) + 1
        retry_hist[payload["retries"]] = retry_hist.get(payload["retries"], 0) + 1
        if on_case is not None:
            on_case(idx, payload)
    mismatched_total = sum(s["mismatched"] for s in stats.values())
    return {
        "p": p,
        "n": n,
        "count": count,
        "seed": seed,
        "entries": {name: stats[name] for name in sorted(stats)},
        "e_used": {str(k): e_hist[k] for k in sorted(e_hist)},
        "retries": {str(k): retry_hist[k] for k in sorted(retry_hist)},
        "cap_failures": failures,
        "all_matched": mismatched_total == 0 and not failures,
    }


def _sweep_case_star(args):
    return sweep_case(*args)
