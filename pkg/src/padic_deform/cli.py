"""Command-line front end: parse curve and character literals, run the
pipelines, and emit text or deterministic JSON reports.

Exit codes: 0 success, 2 input error, 3 precision cap exceeded, 4 internal
invariant violation.
"""

import argparse
import json
import sys
import time

from .curves import covariants, tate_algorithm
from .deform import SOURCE_PREC, default_max_e, run_match, sweep
from .errors import (
    InternalInvariantViolation,
    PadicDeformError,
    PrecisionCapExceeded,
    ReducibleASPolynomial,
)
from .gf import GF, gauss_sum_sign
from .literals import LiteralError, parse_element
from .localfield import TripleIso, laurent_field, witt_field
from .quadratic import QuadChar, TwistDatum, artin_schreier_datum, normalize_gamma, sqrt_d_datum, twist_equation

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECISION = 3
EXIT_INTERNAL = 4


def _field(args):
    try:
        return laurent_field(args.p, args.n, prec=SOURCE_PREC)
    except ValueError as exc:
        raise LiteralError(str(args.p), 0, str(exc))


def _parse_curve(field, args):
    if args.curve:
        parts = args.curve.split(",")
        if len(parts) != 5:
            raise LiteralError(args.curve, 0, "expected five comma-separated coefficients")
        named = dict(zip(("a1", "a2", "a3", "a4", "a6"), parts))
    else:
        named = {k: getattr(args, k) or "0" for k in ("a1", "a2", "a3", "a4", "a6")}
    coeffs = []
    for key in ("a1", "a2", "a3", "a4", "a6"):
        x = parse_element(field, named[key])
        if not x.is_integral():
            raise LiteralError(named[key], 0, f"{key} must be integral")
        coeffs.append(x)
    return covariants(*coeffs)


def _parse_twist(field, args):
    spec = None
    if getattr(args, "twist", None):
        spec = json.loads(args.twist)
    elif getattr(args, "twist_d", None):
        spec = {"kind": "sqrt_d", "d": args.twist_d}
    elif getattr(args, "twist_gamma", None):
        spec = {"kind": "artin_schreier", "gamma": args.twist_gamma}
    if spec is None:
        raise LiteralError("", 0, "a twist datum is required (--twist-d / --twist-gamma / --twist)")
    kind = spec.get("kind")
    if kind == "sqrt_d":
        d = parse_element(field, spec["d"])
        if not d.is_integral():
            # negative uniformizer powers are reserved for the gamma literal
            raise LiteralError(spec["d"], 0, "d must be integral")
        return sqrt_d_datum(field, d)
    if kind == "artin_schreier":
        return artin_schreier_datum(field, parse_element(field, spec["gamma"]))
    raise LiteralError(str(spec), 0, f"unknown twist kind {kind!r}")


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_tate(args):
    field = _field(args)
    eq = _parse_curve(field, args)
    res = tate_algorithm(eq)
    d = res.to_json_dict()
    lines = [
        f"kodaira     {d['kodaira']}",
        f"v(Delta)    {d['v_delta']}  (minimal {d['v_delta_min']})",
        f"conductor   {d['f']}",
        f"tamagawa    {d['c']}",
        f"components  {d['m']}",
        f"reduction   {d['reduction']}  (potential {d['potential']})",
        "minimal model  " + ", ".join(f"{k}={v}" for k, v in d["minimal_model"].items()),
    ]
    _emit(args, d, lines)
    return EXIT_OK


def cmd_twist(args):
    field = _field(args)
    eq = _parse_curve(field, args)
    datum = _parse_twist(field, args)
    twisted = twist_equation(eq, datum)
    res = tate_algorithm(twisted)
    payload = {"twist": datum.to_json_dict(), "tate": res.to_json_dict()}
    lines = [f"twist       {datum.to_json_dict()}"] + [
        f"{k:12}{v}" for k, v in res.to_json_dict().items() if k != "minimal_model"
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_deform(args, kt_focus=False):
    field = _field(args)
    eq = _parse_curve(field, args)
    datum = _parse_twist(field, args)
    chi = QuadChar(datum)
    t0 = time.perf_counter()
    report = run_match(field, eq, chi, e_init=args.e_init, max_e=args.max_e)
    elapsed = time.perf_counter() - t0
    print(f"runtime: {elapsed:.3f}s", file=sys.stderr)
    payload = report.to_json_dict()
    if kt_focus:
        names = ("w.base_change", "char.chi_delta", "kt.parity")
        lines = ["Kramer-Tunnell terms across the deformation:"]
        for name in names:
            e = report.entry(name)
            lines.append(f"  {name:18} K: {e.value_src!r:6} K': {e.value_tgt!r:6} "
                         f"matched={e.matched}")
        lines.append(f"e_used={report.e_used} retries={report.retries} "
                     f"all_matched={report.all_matched}")
    else:
        lines = [f"e_used={report.e_used} (floor {report.e_floor}), "
                 f"retries={report.retries}, all_matched={report.all_matched}"]
        for e in report.entries:
            mark = {True: "ok", False: "MISMATCH", None: "unsupported"}[e.matched]
            lines.append(f"  {e.name:24} {e.value_src!r:16} {e.value_tgt!r:16} {mark}")
    _emit(args, payload, lines)
    return EXIT_OK if report.all_matched else EXIT_INTERNAL


def cmd_sweep(args):
    t0 = time.perf_counter()
    summary = sweep(args.p, args.n, args.count, args.seed,
                    max_e=args.max_e, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    print(f"runtime: {elapsed:.3f}s for {args.count} cases", file=sys.stderr)
    lines = [f"p={summary['p']} n={summary['n']} count={summary['count']} "
             f"seed={summary['seed']} all_matched={summary['all_matched']}"]
    for name, slot in summary["entries"].items():
        lines.append(f"  {name:24} matched={slot['matched']} "
                     f"unsupported={slot['unsupported']} mismatched={slot['mismatched']}")
    lines.append(f"e_used histogram: {summary['e_used']}")
    _emit(args, summary, lines)
    if summary["cap_failures"]:
        return EXIT_PRECISION
    return EXIT_OK if summary["all_matched"] else EXIT_INTERNAL


def _selftest_checks():
    def ring_iso_display():
        W = witt_field(GF(2), 4)
        T = W.uniformizer()
        return T * T * T * T == W.from_int(2)

    def footnote_discriminant():
        K = laurent_field(2, prec=SOURCE_PREC)
        gamma = parse_element(K, "1/t^4")
        datum = artin_schreier_datum(K, gamma)
        return normalize_gamma(K, gamma).valuation() == -1 and datum.disc_val == 2

    def split_mult_root_number():
        from .rootnum import root_number
        K = laurent_field(2, prec=SOURCE_PREC)
        eq = covariants(*(parse_element(K, s) for s in ("1", "0", "0", "0", "t")))
        res = tate_algorithm(eq)
        return root_number(eq, res).value == -1

    def nonsplit_mult_root_number():
        from .rootnum import root_number
        K = laurent_field(5, prec=SOURCE_PREC)
        eq = covariants(*(parse_element(K, s) for s in ("0", "2", "0", "0", "t")))
        res = tate_algorithm(eq)
        return res.reduction == "MultNonsplit" and root_number(eq, res).value == 1

    def phi_ring_hom():
        import random as _random
        iso = TripleIso(laurent_field(2, prec=SOURCE_PREC), witt_field(GF(2), 4))
        return iso.check_ring_hom(_random.Random(0), pairs=100) == 0

    def tame_symbol_value():
        K = laurent_field(5, prec=SOURCE_PREC)
        chi = QuadChar(sqrt_d_datum(K, K.uniformizer()))
        return chi.eval(K.from_int(2)) == -1

    def gauss_signs():
        return (abs(gauss_sum_sign(GF(5)) - 1) < 1e-9
                and abs(gauss_sum_sign(GF(3)) - 1j) < 1e-9)

    def flagship_match():
        K = laurent_field(2, prec=SOURCE_PREC)
        eq = covariants(*(parse_element(K, s) for s in ("1", "0", "0", "0", "t")))
        chi = QuadChar(artin_schreier_datum(K, parse_element(K, "1/t")))
        return run_match(K, eq, chi).all_matched

    return [
        ("uniformizer power equals p at e=4", ring_iso_display),
        ("Artin-Schreier normalization and discriminant (1/t^4 -> 1/t)", footnote_discriminant),
        ("split multiplicative root number -1", split_mult_root_number),
        ("nonsplit multiplicative root number +1", nonsplit_mult_root_number),
        ("truncated-ring map is a ring homomorphism", phi_ring_hom),
        ("tame symbol chi_t(2) = -1 over F_5", tame_symbol_value),
        ("Gauss sum signs for F_5 and F_3", gauss_signs),
        ("flagship deformation match", flagship_match),
    ]


def cmd_selftest(args):
    failures = 0
    for name, check in _selftest_checks():
        try:
            ok = check()
        except PadicDeformError as exc:
            ok = False
            name = f"{name} ({exc})"
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


def _add_curve_args(sub):
    sub.add_argument("--p", type=int, required=True, help="residue characteristic")
    sub.add_argument("--n", type=int, default=1, help="residue degree")
    sub.add_argument("--curve", help="a1,a2,a3,a4,a6 as element literals")
    for key in ("a1", "a2", "a3", "a4", "a6"):
        sub.add_argument(f"--{key}")
    sub.add_argument("--format", choices=("text", "json"), default="text")


def _add_twist_args(sub):
    sub.add_argument("--twist-d", help="sqrt(d) twist datum (p odd)")
    sub.add_argument("--twist-gamma", help="Artin-Schreier datum (p = 2; negative t-powers allowed)")
    sub.add_argument("--twist", help='JSON datum, e.g. {"kind":"sqrt_d","d":"t"}')


def build_parser():
    parser = argparse.ArgumentParser(
        prog="padic-deform",
        description="Exact Tate's algorithm over local fields and the "
                    "characteristic-0 deformation check of the Kramer-Tunnell terms",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("tate", help="run Tate's algorithm on one curve")
    _add_curve_args(s)
    s.set_defaults(func=cmd_tate)

    s = subs.add_parser("twist", help="twist a curve and run Tate's algorithm")
    _add_curve_args(s)
    _add_twist_args(s)
    s.set_defaults(func=cmd_twist)

    for name, kt in (("deform", False), ("kt-check", True)):
        s = subs.add_parser(
            name,
            help="deform to characteristic 0 and compare every invariant"
            if not kt else "deform and report the Kramer-Tunnell terms",
        )
        _add_curve_args(s)
        _add_twist_args(s)
        s.add_argument("--e-init", type=int, default=None)
        s.add_argument("--max-e", type=int, default=None)
        s.set_defaults(func=lambda a, _kt=kt: cmd_deform(a, kt_focus=_kt))

    s = subs.add_parser("sweep", help="randomized property sweep")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-e", type=int, default=None)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--format", choices=("text", "json"), default="json")
    s.set_defaults(func=cmd_sweep)

    s = subs.add_parser("selftest", help="run the built-in example checks")
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LiteralError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ReducibleASPolynomial, json.JSONDecodeError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionCapExceeded as exc:
        print(f"precision cap exceeded: {exc}", file=sys.stderr)
        if exc.diagnostics:
            print(f"diagnostics: {exc.diagnostics}", file=sys.stderr)
        return EXIT_PRECISION
    except InternalInvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
