"""Separable quadratic extensions in normalized form, their quadratic
characters, and quadratic-twist Weierstrass models in every residue
characteristic.

Character evaluation has three backends: the tame symbol (p odd), the
Artin-Schreier residue symbol (p = 2, equal characteristic), and transport
along the truncated-ring isomorphism (the mixed-characteristic p = 2 side,
which is never computed by 2-adic symbol formulas).  The first two are
validated against a brute-force norm-group oracle in the test suite.
"""

from . import kernels
from .curves import WeierstrassEq, covariants
from .errors import (
    EvenCharRequired,
    InsufficientPrecision,
    InternalInvariantViolation,
    NonIntegralTwist,
    OddCharRequired,
    PrecisionLoss,
    ReducibleASPolynomial,
)
from .gf import quadratic_residue, sqrt_ff
from .localfield import INF
from .quadext import QuadExtField


def normalize_gamma(field, gamma):
    """Normalize the Artin-Schreier parameter: v(gamma) <= 0 and v(gamma)
    odd or zero, by absorbing even-depth poles into the image of z^2 - z.

    Raises ReducibleASPolynomial when x^2 - x + gamma splits (the trace of
    the residue vanishes after normalization, so Hensel lifts a root).
    """
    if field.p != 2 or field.backend != "equal":
        raise EvenCharRequired("Artin-Schreier normalization needs F_q((t))")
    k = field.residue
    g = gamma
    while True:
        v = g.valuation()
        if v is None:
            raise ReducibleASPolynomial("gamma is in the Artin-Schreier kernel class")
        if v >= 0 or v % 2 == 1:
            break
        m = -v // 2
        c = sqrt_ff(g.unit_residue())
        delta = field.from_residue(c, shift=-m)
        g = g - delta * delta + delta
    v = g.valuation()
    if v is None or v > 0:
        raise ReducibleASPolynomial("x^2 - x + gamma has a root by Hensel's lemma")
    if v == 0 and g.unit_residue().trace() == 0:
        raise ReducibleASPolynomial("residue trace vanishes; the extension is split")
    return g


class TwistDatum:
    """Normalized description of a separable quadratic extension."""

    __slots__ = ("field", "kind", "d", "gamma", "r", "ramified", "disc_val", "_ext")

    def __init__(self, field, kind, d=None, gamma=None, r=0):
        self.field = field
        self.kind = kind
        self.d = d
        self.gamma = gamma
        self.r = r
        self._ext = None
        if kind == "sqrt_d":
            if field.p == 2:
                raise OddCharRequired("sqrt(d) twists need p odd")
            vd = d.valuation()
            if vd not in (0, 1):
                raise ValueError("d must satisfy v(d) <= 1 after normalization")
            if vd == 0 and quadratic_residue(d.unit_residue()) == 1:
                raise ValueError("d is a square unit; the character would be trivial")
            self.ramified = vd == 1
        elif kind == "artin_schreier":
            if field.p != 2:
                raise EvenCharRequired("Artin-Schreier twists need p = 2")
            vg = gamma.valuation()
            if not (vg == 0 or (vg < 0 and vg % 2 == 1)):
                raise ValueError("gamma is not normalized")
            self.ramified = vg < 0
            self.r = (1 - vg) // 2 if vg < 0 else 0
            if vg == 0 and gamma.unit_residue().trace() == 0:
                raise ReducibleASPolynomial("split Artin-Schreier datum")
        elif kind == "mixed_quadratic":
            if field.backend != "mixed" or field.p != 2:
                raise ValueError("mixed_quadratic data live over mixed-characteristic p = 2")
            self.ramified = r > 0
            if r > 0:
                # gamma holds gamma' with v(pi^{2r} gamma') = 1
                if gamma.valuation() != 1 - 2 * r:
                    raise ValueError("pi^(2r) gamma' must be a valuation-1 integral element")
            else:
                if gamma.valuation() != 0 or gamma.unit_residue().trace() == 0:
                    raise ReducibleASPolynomial("split unramified datum")
        else:
            raise ValueError(f"unknown twist kind {kind!r}")
        B, C = self.defining_quadratic()
        disc = B * B - 4 * C
        dv = disc.valuation()
        if dv is None:
            raise InsufficientPrecision("discriminant of the defining quadratic undetermined")
        expected = {"sqrt_d": 1 if self.ramified else 0,
                    "artin_schreier": 2 * self.r,
                    "mixed_quadratic": 2 * self.r}[kind]
        if dv != expected:
            raise InternalInvariantViolation(
                f"discriminant valuation {dv} != expected {expected}"
            )
        self.disc_val = dv

    def defining_quadratic(self):
        """(B, C) with the extension cut out by x^2 - B x + C."""
        f = self.field
        if self.kind == "sqrt_d":
            return f.zero(), -self.d
        if self.kind == "artin_schreier":
            if self.r == 0:
                return f.one(), self.gamma
            pr = f.uniformizer(self.r)
            return pr, f.uniformizer(2 * self.r) * self.gamma
        if self.r == 0:
            return f.one(), self.gamma
        return f.uniformizer(self.r), f.uniformizer(2 * self.r) * self.gamma

    def extension(self):
        if self._ext is None:
            B, C = self.defining_quadratic()
            self._ext = QuadExtField(self.field, B, C)
        return self._ext

    def norm_of_pair(self, a, b):
        """N(a + b*theta) for the defining root theta, computed in the base."""
        B, C = self.defining_quadratic()
        return a * a + a * b * B + b * b * C

    def to_json_dict(self):
        from .literals import format_element
        if self.kind == "sqrt_d":
            return {"kind": "sqrt_d", "d": format_element(self.d)}
        if self.kind == "artin_schreier":
            return {"kind": "artin_schreier", "gamma": format_element(self.gamma)}
        return {"kind": "mixed_quadratic", "r": self.r,
                "gamma_prime": format_element(self.gamma)}

    def __repr__(self):
        return f"TwistDatum({self.to_json_dict()})"


def sqrt_d_datum(field, d):
    """Normalize v(d) into {0, 1} by removing square uniformizer powers."""
    vd = d.valuation()
    if vd is None:
        raise PrecisionLoss("d is indistinguishable from zero")
    d = d.shift_pi(-2 * (vd // 2)) if vd not in (0, 1) else d
    return TwistDatum(field, "sqrt_d", d=d)


def artin_schreier_datum(field, gamma):
    return TwistDatum(field, "artin_schreier", gamma=normalize_gamma(field, gamma))


def disc_valuation(datum):
    return datum.disc_val


def char_conductor(datum):
    """Conductor of the quadratic character cutting out the extension."""
    if not datum.ramified:
        return 0
    if datum.field.p != 2:
        return 1
    # quadratic conductor-discriminant relation, cross-checked at build time
    if datum.kind == "artin_schreier":
        if -datum.gamma.valuation() + 1 != datum.disc_val:
            raise InternalInvariantViolation("conductor-discriminant mismatch")
    return datum.disc_val


class QuadChar:
    """The quadratic character of K^x attached to a twist datum."""

    __slots__ = ("datum", "conductor", "backend", "_iso", "_source")

    def __init__(self, datum, backend=None, iso=None, source=None):
        self.datum = datum
        self.conductor = char_conductor(datum)
        if backend is None:
            field = datum.field
            if field.p != 2:
                backend = "tame"
            elif field.backend == "equal":
                backend = "as_residue"
            else:
                raise ValueError(
                    "mixed-characteristic p = 2 characters must be transported"
                )
        self.backend = backend
        self._iso = iso
        self._source = source
        if backend == "transported":
            if iso is None or source is None:
                raise ValueError("transported characters need an isomorphism and a source")
            if source.conductor != self.conductor:
                raise InternalInvariantViolation("conductor changed under transport")

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        v = x.valuation()
        if v is None:
            raise PrecisionLoss("cannot evaluate a character at a zero class")
        if x.abs_prec < v + max(self.conductor, 1) and self.conductor > 0:
            raise InsufficientPrecision("argument not known modulo U^conductor")
        if self.backend == "tame":
            return self._eval_tame(x, v)
        if self.backend == "as_residue":
            return self._eval_as(x, v)
        return self._eval_transported(x, v)

    def _eval_tame(self, x, v):
        d = self.datum.d
        vd = d.valuation()
        k = x.field.residue
        acc = k.from_int(-1) ** (vd * v)
        acc = acc * d.unit_residue() ** v
        if vd:
            acc = acc * x.unit_residue() ** (-vd)
        s = quadratic_residue(acc)
        if s == 0:
            raise InternalInvariantViolation("tame symbol argument was not a unit")
        return s

    def _eval_as(self, x, v):
        gamma = self.datum.gamma
        K = x.field
        k = K.residue
        vg = gamma.valuation()
        g0 = gamma.coeff(0)
        total = k.fmul(k.from_int(v).code, g0)
        if vg < 0:
            c = self.conductor
            u = x.shift_pi(-v).reduce_digits(c)
            mul_t, add_t, neg_t, inv_t = k.tables
            need = -vg  # indices 0 .. -1-vg of u'/u can reach the residue
            du = [k.fmul(k.from_int(i + 1).code, u[i + 1]) for i in range(min(need, c - 1))]
            ui = kernels.series_inv(list(u), need, k.q, mul_t, add_t, neg_t, inv_t)
            w = kernels.poly_mul(du, ui, need, k.q, mul_t, add_t)
            for j in range(vg, 0):
                idx = -1 - j
                if idx < len(w):
                    total = k.fadd(total, k.fmul(gamma.coeff(j), w[idx]))
        tr = k.ftrace(total)
        return -1 if tr else 1

    def _eval_transported(self, x, v):
        iso = self._iso
        src = self._source
        c = self.conductor
        source_field = iso.source
        if c == 0:
            arg = source_field.uniformizer(v)
        else:
            digits = x.shift_pi(-v).reduce_digits(c)
            arg = source_field.from_digits(digits).shift_pi(v)
        return src.eval(arg)

    def __repr__(self):
        return f"QuadChar({self.backend}, c={self.conductor}, {self.datum!r})"


def twist_equation(eq, datum):
    """The displayed integral model of the quadratic twist, with its
    discriminant ratio verified against the covariants."""
    field = eq.field
    if field is not datum.field and field != datum.field:
        raise NonIntegralTwist("twist datum lives over a different field")
    if datum.kind == "sqrt_d":
        d = datum.d
        quarter = field.one() / field.from_int(4)
        half = field.one() / field.from_int(2)
        a2 = quarter * d * eq.b2
        a4 = half * d * d * eq.b4
        a6 = quarter * (d ** 3) * eq.b6
        twisted = _build_twist(field.zero(), a2, field.zero(), a4, a6)
        ratio_root = d
    elif datum.kind == "artin_schreier":
        g = datum.gamma
        r = datum.r
        pi = field.uniformizer
        a1, a2, a3, a4, a6 = eq.coefficients
        twisted = _build_twist(
            pi(r) * a1,
            pi(2 * r) * (a2 + g * a1 * a1),
            pi(3 * r) * a3,
            pi(4 * r) * a4,
            pi(6 * r) * (a6 + g * a3 * a3),
        )
        ratio_root = pi(2 * r)
    else:
        gprime = datum.gamma  # v(gamma') = 1 - 2r when ramified, 0 otherwise
        r = datum.r
        pi = field.uniformizer
        lam = field.one() - 4 * gprime
        if not (4 * gprime).is_integral() or not _val_ge_int(4 * gprime, field.e_ram):
            raise NonIntegralTwist("4 gamma' is not in 2 O_K'")
        a1, a2, a3, a4, a6 = eq.coefficients
        twisted = _build_twist(
            pi(r) * lam * a1,
            pi(2 * r) * lam * (a2 + gprime * a1 * a1),
            pi(3 * r) * lam * lam * a3,
            pi(4 * r) * lam * lam * (a4 + 2 * gprime * a1 * a3),
            pi(6 * r) * (lam ** 3) * (a6 + gprime * a3 * a3),
        )
        ratio_root = pi(2 * r) * lam
    diff = twisted.delta - (ratio_root ** 6) * eq.delta
    if diff.valuation() is not None:
        raise InternalInvariantViolation("twist discriminant ratio check failed")
    return twisted


def _val_ge_int(x, j):
    v = x.valuation()
    if v is not None:
        return v >= j
    return x.abs_prec >= j


def _build_twist(a1, a2, a3, a4, a6):
    for a in (a1, a2, a3, a4, a6):
        if not a.is_integral():
            raise NonIntegralTwist("twisted model has a non-integral coefficient")
    return covariants(a1, a2, a3, a4, a6)
