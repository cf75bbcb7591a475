"""Weierstrass equations over local fields and a residue-characteristic-
independent Tate's algorithm.

The algorithm is the general-DVR form: every branch decision is either a
membership test v(x) >= j (decided honestly at the tracked precision, raising
InsufficientPrecision rather than guessing), an exact root-finding step for a
quadratic or cubic over the residue field, or a coordinate substitution whose
residue data is lifted by the canonical digit lift.  No division by 2 or 3 is
ever used, so residue characteristics 2 and 3 follow the same code path.
"""

from .errors import (
    FieldTooLarge,
    InsufficientPrecision,
    InternalInvariantViolation,
    SingularEquation,
)
from .gf import poly_is_separable, poly_roots, quadratic_residue, solve_artin_schreier, sqrt_ff
from .localfield import INF

_ENUM_LIMIT = 1 << 16


class WeierstrassEq:
    """An integral Weierstrass equation with its standard covariants."""

    __slots__ = ("field", "a1", "a2", "a3", "a4", "a6",
                 "b2", "b4", "b6", "b8", "c4", "c6", "delta")

    def __init__(self, a1, a2, a3, a4, a6):
        self.field = a1.field
        for a in (a1, a2, a3, a4, a6):
            if not a.is_integral():
                raise ValueError("Weierstrass coefficients must be integral")
        self.a1, self.a2, self.a3, self.a4, self.a6 = a1, a2, a3, a4, a6
        self.b2, self.b4, self.b6, self.b8, self.c4, self.c6, self.delta = _bc_values(
            a1, a2, a3, a4, a6
        )

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def v_delta(self):
        v = self.delta.valuation()
        if v is None:
            if self.delta.abs_prec == INF:
                raise SingularEquation("discriminant is exactly zero")
            raise InsufficientPrecision("discriminant valuation undetermined")
        return v

    def v_j(self):
        """Valuation of the j-invariant; INF when c4 is exactly zero."""
        vd = self.v_delta()
        vc = self.c4.valuation()
        if vc is None:
            if self.c4.abs_prec == INF:
                return INF
            if 3 * self.c4.abs_prec - vd >= 0:
                return 3 * self.c4.abs_prec - vd  # only the sign is ever used
            raise InsufficientPrecision("j-invariant valuation undetermined")
        return 3 * vc - vd

    def __repr__(self):
        a = ", ".join(repr(x) for x in self.coefficients)
        return f"WeierstrassEq({a})"


def _bc_values(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
    delta = -(b2 * b2) * b8 - 8 * (b4 * b4 * b4) - 27 * (b6 * b6) + 9 * b2 * b4 * b6
    return b2, b4, b6, b8, c4, c6, delta


def covariants(a1, a2, a3, a4, a6):
    """Build a WeierstrassEq and verify the two classical covariant identities
    at the available precision."""
    eq = WeierstrassEq(a1, a2, a3, a4, a6)
    eq.v_delta()  # rejects Delta = 0 and undetermined discriminants
    four_b8 = 4 * eq.b8
    rel1 = four_b8 - (eq.b2 * eq.b6 - eq.b4 * eq.b4)
    rel2 = 1728 * eq.delta - (eq.c4 * eq.c4 * eq.c4 - eq.c6 * eq.c6)
    if rel1.valuation() is not None or rel2.valuation() is not None:
        raise InternalInvariantViolation("covariant identities failed")
    return eq


class TateResult:
    """Output of Tate's algorithm on one integral model."""

    __slots__ = ("kodaira", "v_delta", "v_delta_min", "conductor_f", "tamagawa_c",
                 "num_components", "reduction", "potential", "minimal_model",
                 "rescalings")

    def __init__(self, kodaira, v_delta, v_delta_min, conductor_f, tamagawa_c,
                 num_components, reduction, potential, minimal_model, rescalings):
        self.kodaira = kodaira
        self.v_delta = v_delta
        self.v_delta_min = v_delta_min
        self.conductor_f = conductor_f
        self.tamagawa_c = tamagawa_c
        self.num_components = num_components
        self.reduction = reduction
        self.potential = potential
        self.minimal_model = minimal_model
        self.rescalings = rescalings

    def summary(self):
        return (self.kodaira, self.v_delta_min, self.conductor_f,
                self.tamagawa_c, self.num_components, self.reduction)

    def to_json_dict(self):
        from .literals import format_element
        a1, a2, a3, a4, a6 = self.minimal_model.coefficients
        return {
            "kodaira": self.kodaira,
            "v_delta": self.v_delta,
            "v_delta_min": self.v_delta_min,
            "f": self.conductor_f,
            "c": self.tamagawa_c,
            "m": self.num_components,
            "reduction": self.reduction,
            "potential": self.potential,
            "minimal_model": {
                "a1": format_element(a1),
                "a2": format_element(a2),
                "a3": format_element(a3),
                "a4": format_element(a4),
                "a6": format_element(a6),
            },
        }

    def __repr__(self):
        return (f"TateResult({self.kodaira}, v_min={self.v_delta_min}, "
                f"f={self.conductor_f}, c={self.tamagawa_c}, {self.reduction})")


def _val_ge(x, j):
    """Decide v(x) >= j or raise InsufficientPrecision."""
    v = x.valuation()
    if v is not None:
        return v >= j
    if x.abs_prec >= j:
        return True
    raise InsufficientPrecision(f"membership test at level {j} undecidable")


def _exact_val(x):
    v = x.valuation()
    if v is None and x.abs_prec != INF:
        raise InsufficientPrecision("valuation undetermined")
    return v  # None now means exact zero


def _transform(coeffs, r=None, s=None, t=None, u_val=0):
    """Substitution x = u^2 x' + r, y = u^3 y' + u^2 s x' + t with u = pi^u_val."""
    a1, a2, a3, a4, a6 = coeffs
    field = a1.field
    zero = field.zero()
    r = r if r is not None else zero
    s = s if s is not None else zero
    t = t if t is not None else zero
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1)
    if u_val:
        n1 = n1.shift_pi(-u_val)
        n2 = n2.shift_pi(-2 * u_val)
        n3 = n3.shift_pi(-3 * u_val)
        n4 = n4.shift_pi(-4 * u_val)
        n6 = n6.shift_pi(-6 * u_val)
    return (n1, n2, n3, n4, n6)


def _res(x):
    return x.residue()


def _move_singular_point(field, coeffs):
    """Translate the singular point of the reduced curve to (0, 0)."""
    a1, a2, a3, a4, a6 = coeffs
    k = field.residue
    r1, r2, r3, r4, r6 = (_res(a1), _res(a2), _res(a3), _res(a4), _res(a6))
    if k.p == 2:
        if r1.code:
            x0 = r3 / r1
            y0 = (x0 * x0 + r4) / r1
        else:
            if r3.code:
                raise InternalInvariantViolation("reduction is not singular")
            x0 = sqrt_ff(r4)
            y0 = sqrt_ff(x0 ** 3 + r2 * x0 ** 2 + r4 * x0 + r6)
    else:
        # x0 is the multiple root of 4x^3 + b2 x^2 + 2 b4 x + b6 over the residue field
        b2r = r1 * r1 + 4 * r2
        b4r = 2 * r4 + r1 * r3
        b6r = r3 * r3 + 4 * r6
        cubic = [b6r, 2 * b4r, b2r, k.from_int(4)]
        multi = [root for root, m in poly_roots(cubic) if m >= 2]
        if not multi:
            raise InternalInvariantViolation("no multiple root at a singular reduction")
        x0 = multi[0]
        y0 = -(r1 * x0 + r3) / k.from_int(2)
    new = _transform(coeffs, r=field.from_residue(x0), t=field.from_residue(y0))
    for idx, j in ((2, 1), (3, 1), (4, 1)):
        if not _val_ge(new[idx], j):
            raise InternalInvariantViolation("singular point translation failed")
    return new


def _quad_split_data(A, B, C):
    """(separable, roots_in_k) for A Y^2 + B Y + C over the residue field."""
    k = A.field
    if k.p == 2:
        separable = B.code != 0
    else:
        disc = B * B - 4 * A * C
        separable = disc.code != 0
    roots = poly_roots([C, B, A])
    nroots = sum(m for _, m in roots)
    if separable:
        return True, [r for r, _ in roots]
    return False, [r for r, m in roots if m >= 2][:1] + [r for r, m in roots if m < 2]


def _double_root(A, B, C):
    """The double root of an inseparable quadratic (it is rational)."""
    k = A.field
    if k.p == 2:
        return sqrt_ff(C / A)
    return -B / (2 * A)


def tate_algorithm(eq):
    """Kodaira type, minimal model, conductor, and component data.

    Follows the classical step sequence over a general complete DVR; every
    exit point records (type, f, c, m) and the final model is minimal.
    """
    field = eq.field
    k = field.residue
    p = k.p
    if k.q > _ENUM_LIMIT:
        raise FieldTooLarge("residue field too large for exact root finding")
    v_delta_input = eq.v_delta()
    coeffs = eq.coefficients
    rescalings = 0
    guard = v_delta_input // 12 + 2

    for _ in range(guard + 1):
        a1, a2, a3, a4, a6 = coeffs
        b2, b4, b6, b8, c4, c6, delta = _bc_values(a1, a2, a3, a4, a6)
        vD = _exact_val(delta)
        if vD is None:
            raise SingularEquation("discriminant is exactly zero")

        if vD == 0:
            return _finish(eq, coeffs, v_delta_input, vD, "I0", 0, 1, 1,
                           "Good", rescalings)

        coeffs = _move_singular_point(field, coeffs)
        a1, a2, a3, a4, a6 = coeffs
        b2, b4, b6, b8, c4, c6, delta = _bc_values(a1, a2, a3, a4, a6)

        if not _val_ge(b2, 1):
            # multiplicative: tangent directions from Z^2 + a1 Z - a2
            n = vD
            r1, r2 = _res(a1), _res(a2)
            if p == 2:
                split = solve_artin_schreier(r2 / (r1 * r1)) is not None
            else:
                split = quadratic_residue(r1 * r1 + 4 * r2) == 1
            if split:
                red, c = "MultSplit", n
            else:
                red, c = "MultNonsplit", 2 if n % 2 == 0 else 1
            return _finish(eq, coeffs, v_delta_input, vD, f"I{n}", 1, c, n,
                           red, rescalings)

        # additive from here on
        if not _val_ge(a6, 2):
            return _finish(eq, coeffs, v_delta_input, vD, "II", vD, 1, 1,
                           "Additive", rescalings)
        if not _val_ge(b8, 3):
            return _finish(eq, coeffs, v_delta_input, vD, "III", vD - 1, 2, 2,
                           "Additive", rescalings)
        if not _val_ge(b6, 3):
            A, B, C = k.one(), _res(a3.shift_pi(-1)), -_res(a6.shift_pi(-2))
            separable, roots = _quad_split_data(A, B, C)
            if not separable:
                raise InternalInvariantViolation("type IV quadratic not separable")
            c = 3 if len(roots) == 2 else 1
            return _finish(eq, coeffs, v_delta_input, vD, "IV", vD - 2, c, 3,
                           "Additive", rescalings)

        # normalize to pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
        if p == 2:
            if _res(a1).code:
                raise InternalInvariantViolation("a1 unit in additive residue char 2")
            s0 = sqrt_ff(_res(a2))
            coeffs = _transform(coeffs, s=field.from_residue(s0))
        else:
            s0 = -_res(a1) / k.from_int(2)
            coeffs = _transform(coeffs, s=field.from_residue(s0))
            a1, a2, a3, a4, a6 = coeffs
            t0 = -_res(a3.shift_pi(-1)) / k.from_int(2)
            coeffs = _transform(coeffs, t=field.from_residue(t0).shift_pi(1))
        a1, a2, a3, a4, a6 = coeffs
        if p == 2 and not _val_ge(a6, 3):
            t0 = sqrt_ff(_res(a6.shift_pi(-2)))
            coeffs = _transform(coeffs, t=field.from_residue(t0).shift_pi(1))
            a1, a2, a3, a4, a6 = coeffs
        for x, j in ((a1, 1), (a2, 1), (a3, 2), (a4, 2), (a6, 3)):
            if not _val_ge(x, j):
                raise InternalInvariantViolation("step-6 normalization failed")

        # P(T) = T^3 + a2,1 T^2 + a4,2 T + a6,3
        p_coeffs = [_res(a6.shift_pi(-3)), _res(a4.shift_pi(-2)),
                    _res(a2.shift_pi(-1)), k.one()]
        if poly_is_separable(p_coeffs):
            rational = sum(m for _, m in poly_roots(p_coeffs))
            return _finish(eq, coeffs, v_delta_input, vD, "I0*", vD - 4,
                           1 + rational, 5, "Additive", rescalings)

        roots = poly_roots(p_coeffs)
        triple = [r for r, m in roots if m == 3]
        double = [r for r, m in roots if m == 2]

        if double:
            coeffs = _transform(coeffs, r=field.from_residue(double[0]).shift_pi(1))
            result = _type_in_star(field, coeffs, vD)
            if result is not None:
                kod, f, c, m = result
                return _finish(eq, coeffs, v_delta_input, vD, kod, f, c, m,
                               "Additive", rescalings)
            raise InternalInvariantViolation("I_n* subprocedure did not terminate")

        if not triple:
            raise InternalInvariantViolation("inseparable cubic with no multiple root")
        coeffs = _transform(coeffs, r=field.from_residue(triple[0]).shift_pi(1))
        a1, a2, a3, a4, a6 = coeffs

        A, B, C = k.one(), _res(a3.shift_pi(-2)), -_res(a6.shift_pi(-4))
        separable, qroots = _quad_split_data(A, B, C)
        if separable:
            c = 3 if len(qroots) == 2 else 1
            return _finish(eq, coeffs, v_delta_input, vD, "IV*", vD - 6, c, 7,
                           "Additive", rescalings)
        rho = _double_root(A, B, C)
        coeffs = _transform(coeffs, t=field.from_residue(rho).shift_pi(2))
        a1, a2, a3, a4, a6 = coeffs

        if not _val_ge(a4, 4):
            return _finish(eq, coeffs, v_delta_input, vD, "III*", vD - 7, 2, 8,
                           "Additive", rescalings)
        if not _val_ge(a6, 6):
            return _finish(eq, coeffs, v_delta_input, vD, "II*", vD - 8, 1, 9,
                           "Additive", rescalings)

        # non-minimal: rescale by u = pi and restart
        coeffs = _transform(coeffs, u_val=1)
        rescalings += 1

    raise InternalInvariantViolation("Tate loop exceeded its iteration guard")


def _type_in_star(field, coeffs, vD):
    """Sub-procedure for the I_n* family; assumes the double root was moved
    to 0, so v(a2) = 1, v(a3) >= 2, v(a4) >= 3, v(a6) >= 4."""
    k = field.residue
    a1, a2, a3, a4, a6 = coeffs
    if not (_val_ge(a2, 1) and not _val_ge(a2, 2)):
        raise InternalInvariantViolation("I_n* entry state violated")
    a21 = _res(a2.shift_pi(-1))
    kmax = vD + 2
    for step in range(1, kmax):
        A, B, C = k.one(), _res(a3.shift_pi(-(step + 1))), -_res(a6.shift_pi(-(2 * step + 2)))
        separable, roots = _quad_split_data(A, B, C)
        if separable:
            n = 2 * step - 1
            c = 4 if len(roots) == 2 else 2
            return f"I{n}*", vD - 4 - n, c, n + 5
        rho = _double_root(A, B, C)
        coeffs = _transform(coeffs, t=field.from_residue(rho).shift_pi(step + 1))
        a1, a2, a3, a4, a6 = coeffs

        A2 = a21
        B2 = _res(a4.shift_pi(-(step + 2)))
        C2 = _res(a6.shift_pi(-(2 * step + 3)))
        separable, roots = _quad_split_data(A2, B2, C2)
        if separable:
            n = 2 * step
            c = 4 if len(roots) == 2 else 2
            return f"I{n}*", vD - 4 - n, c, n + 5
        xi = _double_root(A2, B2, C2)
        coeffs = _transform(coeffs, r=field.from_residue(xi).shift_pi(step + 1))
        a1, a2, a3, a4, a6 = coeffs
    return None


def _finish(eq, coeffs, v_delta_input, vD, kodaira, f, c, m, reduction, rescalings):
    if v_delta_input - 12 * rescalings != vD:
        raise InternalInvariantViolation("rescaling bookkeeping broke the discriminant")
    if vD != f + m - 1:
        raise InternalInvariantViolation(
            f"Ogg's relation failed: v={vD}, f={f}, m={m} for {kodaira}"
        )
    if reduction == "Good":
        if f != 0:
            raise InternalInvariantViolation("good reduction must have f = 0")
    elif reduction.startswith("Mult"):
        if f != 1:
            raise InternalInvariantViolation("multiplicative reduction must have f = 1")
    else:
        if f < 2:
            raise InternalInvariantViolation("additive reduction must have f >= 2")
        if eq.field.residue.p >= 5 and f != 2:
            raise InternalInvariantViolation("tame additive reduction must have f = 2")
    v_j = eq.v_j()
    potential = "Good" if v_j >= 0 else "Multiplicative"
    a1, a2, a3, a4, a6 = coeffs
    minimal = WeierstrassEq(a1, a2, a3, a4, a6)
    if minimal.v_delta() != vD:
        raise InternalInvariantViolation("minimal model discriminant mismatch")
    return TateResult(kodaira, v_delta_input, vD, f, c, m, reduction, potential,
                      minimal, rescalings)


def reduction_class(tate):
    return tate.reduction


def potential_class(tate):
    return tate.potential


def point_count_reduced(eq_min):
    """F_q-points of the smooth locus of the reduced minimal equation,
    including the point at infinity."""
    field = eq_min.field
    k = field.residue
    if k.q > _ENUM_LIMIT:
        raise FieldTooLarge(f"q = {k.q} exceeds the point-counting scale")
    r1, r2, r3, r4, r6 = (_res(eq_min.a1), _res(eq_min.a2), _res(eq_min.a3),
                          _res(eq_min.a4), _res(eq_min.a6))
    count = 1  # infinity is always smooth
    for x in k.elements():
        L = r1 * x + r3
        R = x ** 3 + r2 * x * x + r4 * x + r6
        ys = []
        if k.p == 2:
            if L.code:
                z = solve_artin_schreier(R / (L * L))
                if z is not None:
                    ys = [L * z, L * z + L]
            else:
                ys = [sqrt_ff(R)]
        else:
            disc = L * L + 4 * R
            s = quadratic_residue(disc)
            if s == 1:
                root = sqrt_ff(disc)
                inv2 = k.from_int(2).inv()
                ys = [(-L + root) * inv2, (-L - root) * inv2]
            elif s == 0:
                ys = [-L * k.from_int(2).inv()]
        for y in ys:
            fx = r1 * y - (3 * x * x + 2 * r2 * x + r4)
            fy = 2 * y + r1 * x + r3
            if fx.code or fy.code:
                count += 1
    return count
