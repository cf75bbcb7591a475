"""Arithmetic in F_q((t)) and in Frac(W(F_q)[T]/(T^e - p)) with explicit
valuation and absolute-precision tracking, truncated-ring classes, and the
uniformizer-to-uniformizer isomorphism of truncated rings linking the two.

Equal-characteristic elements are t^val * (unit coefficient list over F_q),
known modulo t^abs_prec.  Mixed-characteristic elements are T^shift * P(T)
with P of degree < e over W(F_q) = Z_p[x]/(h), h the digit-lifted defining
polynomial of the residue field; W-coordinates are exact integers or known
modulo p^N.  A valuation of None means "indistinguishable from 0 at the
tracked precision"; branching on such a value is never silent.
"""

import math
from functools import lru_cache

from . import kernels
from .errors import (
    DivisionByZero,
    InsufficientPrecision,
    ParentMismatch,
    PrecisionExceedsIso,
    PrecisionLoss,
)
from .gf import GFqElem

INF = math.inf


def _vp_int(m, p):
    """p-adic valuation of a nonzero integer."""
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


class EqualCharField:
    """The Laurent series field F_q((t))."""

    backend = "equal"

    def __init__(self, residue, name="t", prec=64):
        self.residue = residue
        self.p = residue.p
        self.name = name
        self.prec = prec

    def __repr__(self):
        return f"GF({self.residue.q})(({self.name}))"

    def __eq__(self, other):
        return (
            isinstance(other, EqualCharField)
            and self.residue == other.residue
            and self.name == other.name
        )

    def __hash__(self):
        return hash(("eq", self.residue, self.name))

    # -- constructors -------------------------------------------------------

    def zero(self, prec=INF):
        return EqElement(self, None, (), prec)

    def one(self):
        return EqElement(self, 0, (1,), INF)

    def from_int(self, c):
        code = c % self.p
        return EqElement(self, 0, (code,), INF) if code else self.zero()

    def from_residue(self, a, shift=0):
        code = a.code if isinstance(a, GFqElem) else a % self.residue.q
        return EqElement(self, shift, (code,), INF) if code else self.zero()

    def uniformizer(self, k=1):
        return EqElement(self, k, (1,), INF)

    def from_coeff_map(self, coeffs, prec=INF):
        """Element from {exponent: coefficient}; int values are element codes."""
        items = {}
        for exp, c in coeffs.items():
            code = c.code if isinstance(c, GFqElem) else c % self.residue.q
            if code:
                items[exp] = code
        if not items:
            return self.zero(prec)
        lo = min(items)
        hi = max(items)
        unit = [0] * (hi - lo + 1)
        for exp, code in items.items():
            unit[exp - lo] = code
        return EqElement(self, lo, tuple(unit), prec)

    def from_digits(self, digits, shift=0, prec=INF):
        return self.from_coeff_map(
            {shift + i: d for i, d in enumerate(digits)}, prec
        )

    def reduce_mod(self, x, j):
        return RingClass(self, j, x.reduce_digits(j))

    def unit_class(self, x, level):
        v = x.valuation()
        if v is None:
            raise PrecisionLoss("cannot take the unit class of a zero class")
        digits = x.shift_pi(-v).reduce_digits(level)
        return UnitClass(self, level, v, digits)


class MixedCharField:
    """Frac(W(F_q)[T]/(T^e - p)): totally ramified of index e over W(F_q)[1/p]."""

    backend = "mixed"

    def __init__(self, residue, e_ram, name="T", prec=None):
        if e_ram < 1:
            raise ValueError("ramification index must be >= 1")
        self.residue = residue
        self.p = residue.p
        self.e_ram = e_ram
        self.name = name
        self.prec = prec if prec is not None else 4 * e_ram + 16
        # guard digits keep division honest at the requested pi-adic precision
        self.n_default = max(2, -(-(self.prec + 4) // e_ram))
        self.witt_poly = tuple(int(c) for c in residue.defining_poly)
        n = residue.n
        rows = []
        cur = [-c for c in self.witt_poly[:n]]
        rows.append(tuple(cur))
        for _ in range(n - 2):
            nxt = [0] + cur[: n - 1]
            lead = cur[n - 1]
            if lead:
                for i in range(n):
                    nxt[i] -= lead * self.witt_poly[i]
            cur = nxt
            rows.append(tuple(cur))
        self._red_rows = rows
        self._wzero = (0,) * n
        self._wone = (1,) + (0,) * (n - 1)

    def __repr__(self):
        return f"Frac(W(GF({self.residue.q}))[{self.name}]/({self.name}^{self.e_ram}-{self.p}))"

    def __eq__(self, other):
        return (
            isinstance(other, MixedCharField)
            and self.residue == other.residue
            and self.e_ram == other.e_ram
            and self.name == other.name
        )

    def __hash__(self):
        return hash(("mx", self.residue, self.e_ram, self.name))

    # -- W(F_q) coordinate arithmetic ---------------------------------------

    def _w_mul(self, u, v):
        n = self.residue.n
        if n == 1:
            return (u[0] * v[0],)
        conv = [0] * (2 * n - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        conv[i + j] += a * b
        out = conv[:n]
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c:
                row = self._red_rows[k - n]
                for i in range(n):
                    out[i] += c * row[i]
        return tuple(out)

    def _w_vp(self, w, nmod):
        """min p-adic valuation over coordinates; None if 0 mod p^nmod."""
        best = None
        for c in w:
            if c != 0:
                v = _vp_int(c, self.p)
                if nmod != INF and v >= nmod:
                    continue
                if best is None or v < best:
                    best = v
                    if best == 0:
                        return 0
        return best

    def _poly_mul(self, a, b, nmod):
        e = self.e_ram
        conv = [self._wzero] * (2 * e - 1) if e > 1 else [self._wzero]
        for i in range(e):
            ai = a[i]
            if ai == self._wzero or not any(ai):
                continue
            for j in range(e):
                bj = b[j]
                if not any(bj):
                    continue
                prod = self._w_mul(ai, bj)
                cur = conv[i + j]
                conv[i + j] = tuple(x + y for x, y in zip(cur, prod))
        out = list(conv[:e])
        p = self.p
        for k in range(e, 2 * e - 1):
            c = conv[k]
            if any(c):
                cur = out[k - e]
                out[k - e] = tuple(x + p * y for x, y in zip(cur, c))
        if nmod != INF:
            mod = p ** nmod
            out = [tuple(x % mod for x in w) for w in out]
        return tuple(out)

    def _poly_add(self, a, b, nmod):
        out = [tuple(x + y for x, y in zip(u, v)) for u, v in zip(a, b)]
        if nmod != INF:
            mod = self.p ** nmod
            out = [tuple(x % mod for x in w) for w in out]
        return tuple(out)

    def _poly_neg(self, a):
        return tuple(tuple(-x for x in w) for w in a)

    def _poly_tshift(self, a, k):
        """a(T) * T^k reduced modulo T^e - p (k >= 0)."""
        e, p = self.e_ram, self.p
        cur = list(a)
        for _ in range(k):
            wrapped = cur[e - 1]
            cur = [tuple(p * x for x in wrapped)] + cur[: e - 1]
        return tuple(cur)

    def _poly_tdiv1(self, a):
        """a(T) / T, requiring p | a_0 exactly; costs one p-digit on wrap."""
        p = self.p
        w0 = a[0]
        if any(c % p for c in w0):
            raise InsufficientPrecision("element is not divisible by the uniformizer")
        return tuple(list(a[1:]) + [tuple(c // p for c in w0)])

    # -- constructors -------------------------------------------------------

    def _const_poly(self, w):
        return (w,) + (self._wzero,) * (self.e_ram - 1)

    def zero(self, prec=INF):
        if prec == INF:
            return MxElement(self, 0, self._const_poly(self._wzero), INF)
        nmod = max(0, -(-prec // self.e_ram))
        return MxElement(self, 0, self._const_poly(self._wzero), nmod)

    def one(self):
        return MxElement(self, 0, self._const_poly(self._wone), INF)

    def from_int(self, c):
        return MxElement(self, 0, self._const_poly((c,) + (0,) * (self.residue.n - 1)), INF)

    def from_residue(self, a, shift=0):
        code = a.code if isinstance(a, GFqElem) else a % self.residue.q
        w = tuple(self.residue.coords_of(code))
        return MxElement(self, shift, self._const_poly(w), INF)

    def uniformizer(self, k=1):
        return MxElement(self, k, self._const_poly(self._wone), INF)

    def from_digits(self, digits, shift=0, prec=INF):
        """Canonical element sum_i [d_i] T^(shift+i); exact unless prec given."""
        e = self.e_ram
        poly = [self._wzero] * e
        carry_elems = []
        for i, d in enumerate(digits):
            code = d.code if isinstance(d, GFqElem) else d
            if not code:
                continue
            w = tuple(self.residue.coords_of(code))
            if i < e:
                poly[i] = tuple(x + y for x, y in zip(poly[i], w))
            else:
                carry_elems.append((i, w))
        x = MxElement(self, shift, tuple(poly), INF)
        for i, w in carry_elems:
            term = MxElement(self, shift, self._poly_tshift(self._const_poly(w), i % e), INF)
            term = term.shift_pi(e * (i // e))
            x = x + term
        if prec != INF:
            x = x.truncate(prec)
        return x

    def reduce_mod(self, x, j):
        return RingClass(self, j, x.reduce_digits(j))

    def unit_class(self, x, level):
        v = x.valuation()
        if v is None:
            raise PrecisionLoss("cannot take the unit class of a zero class")
        digits = x.shift_pi(-v).reduce_digits(level)
        return UnitClass(self, level, v, digits)


class EqElement:
    """t^val * unit over F_q, known modulo t^prec."""

    __slots__ = ("field", "val", "unit", "prec")

    def __init__(self, field, val, unit, prec):
        # normalize: strip leading/trailing zeros, convert empty window to None
        if val is not None:
            k = 0
            while k < len(unit) and unit[k] == 0:
                k += 1
            val += k
            unit = unit[k:]
            if prec != INF:
                unit = unit[: max(0, prec - val)]
            j = len(unit)
            while j > 0 and unit[j - 1] == 0:
                j -= 1
            unit = tuple(unit[:j])
            if not unit:
                val = None
        if val is None:
            unit = ()
        self.field = field
        self.val = val
        self.unit = unit
        self.prec = prec

    # -- inspection ---------------------------------------------------------

    def valuation(self):
        return self.val

    @property
    def abs_prec(self):
        return self.prec

    def is_exact_zero(self):
        return self.val is None and self.prec == INF

    def is_integral(self):
        if self.val is not None:
            return self.val >= 0
        return True  # zero class

    def coeff(self, exp):
        """Coefficient of t^exp as a code; requires exp < prec."""
        if exp >= self.prec:
            raise InsufficientPrecision(f"coefficient at t^{exp} is beyond precision")
        if self.val is None or exp < self.val or exp >= self.val + len(self.unit):
            return 0
        return self.unit[exp - self.val]

    def reduce_digits(self, j):
        if self.prec < j:
            raise InsufficientPrecision(f"need {j} digits, have precision {self.prec}")
        if self.val is not None and self.val < 0:
            raise InsufficientPrecision("reduce_digits needs an integral element")
        return tuple(self.coeff(i) for i in range(j))

    def residue(self):
        return GFqElem(self.field.residue, self.reduce_digits(1)[0])

    def unit_residue(self):
        if self.val is None:
            raise PrecisionLoss("zero class has no unit part")
        return GFqElem(self.field.residue, self.unit[0])

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, EqElement) or other.field != self.field:
            raise ParentMismatch("operands from different fields")

    def __add__(self, other):
        self._check(other)
        f = self.field
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        prec = min(self.prec, other.prec)
        lo_a = self.val if self.val is not None else self.prec
        lo_b = other.val if other.val is not None else other.prec
        lo = min(lo_a, lo_b)
        if lo >= prec:
            return f.zero(prec)
        hi_a = lo_a + len(self.unit)
        hi_b = lo_b + len(other.unit)
        hi = max(hi_a, hi_b)
        if prec != INF:
            hi = min(hi, prec)
        out = [0] * (hi - lo)
        for i, c in enumerate(self.unit):
            k = lo_a + i - lo
            if 0 <= k < len(out):
                out[k] = c
        fadd = f.residue.fadd
        for i, c in enumerate(other.unit):
            k = lo_b + i - lo
            if 0 <= k < len(out):
                out[k] = fadd(out[k], c)
        return EqElement(f, lo, tuple(out), prec)

    def __neg__(self):
        fneg = self.field.residue.fneg
        return EqElement(self.field, self.val, tuple(fneg(c) for c in self.unit), self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self * self.field.from_int(other)
        self._check(other)
        f = self.field
        va, vb = self.val, other.val
        pa, pb = self.prec, other.prec
        if va is None and pa == INF:
            return f.zero(INF)
        if vb is None and pb == INF:
            return f.zero(INF)
        ea = va if va is not None else pa
        eb = vb if vb is not None else pb
        if va is None or vb is None:
            return f.zero(ea + eb)
        prec = min(va + pb, vb + pa)
        if self.unit == (1,):
            return EqElement(f, va + vb, other.unit, prec)
        if other.unit == (1,):
            return EqElement(f, va + vb, self.unit, prec)
        cap = prec - (va + vb) if prec != INF else -1
        mul_t, add_t, _, _ = f.residue.tables
        unit = kernels.poly_mul(list(self.unit), list(other.unit), cap, f.residue.q, mul_t, add_t)
        return EqElement(f, va + vb, tuple(unit), prec)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.field.one() / (self ** (-k))
        r = self.field.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def shift_pi(self, k):
        if self.val is None:
            return EqElement(self.field, None, (), self.prec + k)
        return EqElement(self.field, self.val + k, self.unit, self.prec + k)

    def truncate(self, prec):
        return EqElement(self.field, self.val, self.unit, min(self.prec, prec))

    def _unit_inverse(self, rel):
        """Inverse of a val-0 element to relative precision rel."""
        if len(self.unit) == 1:
            inv = self.field.residue.finv(self.unit[0])
            return EqElement(self.field, 0, (inv,), min(rel, self.prec))
        if rel == INF:
            rel = self.field.prec
        f = self.field
        mul_t, add_t, neg_t, inv_t = f.residue.tables
        inv = kernels.series_inv(list(self.unit), rel, f.residue.q, mul_t, add_t, neg_t, inv_t)
        return EqElement(f, 0, tuple(inv), rel)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        self._check(other)
        if other.is_exact_zero():
            raise DivisionByZero("division by exact zero")
        vb = other.val
        if vb is None:
            raise PrecisionLoss("divisor is indistinguishable from zero")
        rels = [r for r in (_rel(self), _rel(other)) if r != INF]
        rel = min(rels) if rels else INF
        u_inv = other.shift_pi(-vb)._unit_inverse(rel)
        return (self * u_inv).shift_pi(-vb)

    def __eq__(self, other):
        if not isinstance(other, EqElement):
            return NotImplemented
        return (
            self.field == other.field
            and self.val == other.val
            and self.unit == other.unit
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((self.val, self.unit, self.prec))

    def __repr__(self):
        from .literals import format_element
        return format_element(self)


def _rel(x):
    v = x.valuation()
    if v is None:
        return 0 if x.abs_prec != INF else INF
    return x.abs_prec - v


class MxElement:
    """T^shift * P(T) over W(F_q), coordinates exact or known mod p^nmod."""

    __slots__ = ("field", "shift", "poly", "nmod", "_val")

    def __init__(self, field, shift, poly, nmod):
        if nmod != INF:
            mod = field.p ** nmod
            poly = tuple(tuple(x % mod for x in w) for w in poly)
        self.field = field
        self.shift = shift
        self.poly = poly
        self.nmod = nmod
        self._val = -1  # lazy cache; -1 means unset

    # -- inspection ---------------------------------------------------------

    def valuation(self):
        if self._val == -1:
            f = self.field
            e = f.e_ram
            best = None
            for i, w in enumerate(self.poly):
                vw = f._w_vp(w, self.nmod)
                if vw is not None:
                    cand = e * vw + i
                    if best is None or cand < best:
                        best = cand
            self._val = None if best is None else self.shift + best
        return self._val

    @property
    def abs_prec(self):
        if self.nmod == INF:
            return INF
        return self.shift + self.field.e_ram * self.nmod

    def is_exact_zero(self):
        return self.nmod == INF and self.valuation() is None

    def is_integral(self):
        v = self.valuation()
        if v is not None:
            return v >= 0
        return self.shift >= 0 or self.abs_prec == INF

    def _integral_poly(self):
        """(poly, nmod) rebased to shift 0; requires an integral element."""
        f = self.field
        if self.shift >= 0:
            poly = f._poly_tshift(self.poly, self.shift) if self.shift else self.poly
            return poly, self.nmod
        v = self.valuation()
        if v is not None and v < 0:
            raise InsufficientPrecision("element is not integral")
        poly, nmod = self.poly, self.nmod
        k = -self.shift
        if nmod != INF:
            # each full cycle of e divisions wraps every coordinate once
            wraps = -(-k // f.e_ram)
            if nmod - wraps < 1:
                raise InsufficientPrecision("precision exhausted while rebasing")
            nmod -= wraps
        for _ in range(k):
            poly = f._poly_tdiv1(poly)
        return poly, nmod

    def reduce_digits(self, j):
        if self.abs_prec < j:
            raise InsufficientPrecision(f"need {j} digits, have precision {self.abs_prec}")
        f = self.field
        poly, nmod_eff = self._integral_poly()
        if nmod_eff != INF and f.e_ram * nmod_eff < j:
            raise InsufficientPrecision(f"only {f.e_ram * nmod_eff} digits survive rebasing")
        res = f.residue
        p = f.p
        digits = []
        for _ in range(j):
            d = res.code_of([c % p for c in poly[0]])
            digits.append(d)
            if d:
                w = tuple(res.coords_of(d))
                poly = (tuple(x - y for x, y in zip(poly[0], w)),) + poly[1:]
            poly = f._poly_tdiv1(poly)
        return tuple(digits)

    def residue(self):
        return GFqElem(self.field.residue, self.reduce_digits(1)[0])

    def unit_residue(self):
        v = self.valuation()
        if v is None:
            raise PrecisionLoss("zero class has no unit part")
        return self.shift_pi(-v).residue()

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MxElement) or other.field != self.field:
            raise ParentMismatch("operands from different fields")

    def __add__(self, other):
        self._check(other)
        f = self.field
        pa, pb = self.abs_prec, other.abs_prec
        prec = min(pa, pb)
        s = min(self.shift, other.shift)
        a = f._poly_tshift(self.poly, self.shift - s) if self.shift != s else self.poly
        b = f._poly_tshift(other.poly, other.shift - s) if other.shift != s else other.poly
        if prec == INF:
            nmod = INF
        else:
            nmod = (prec - s) // f.e_ram
            if nmod <= 0:
                return f.zero(prec)
        return MxElement(f, s, f._poly_add(a, b, nmod), nmod)

    def __neg__(self):
        return MxElement(self.field, self.shift, self.field._poly_neg(self.poly), self.nmod)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self * self.field.from_int(other)
        self._check(other)
        f = self.field
        nmod = min(self.nmod, other.nmod)
        # interval rule: val(a) + prec(b) and val(b) + prec(a) both exceed
        # shift_a + shift_b + e*nmod, so the uniform cap is sound
        return MxElement(
            f,
            self.shift + other.shift,
            f._poly_mul(self.poly, other.poly, nmod),
            nmod,
        )

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.field.one() / (self ** (-k))
        r = self.field.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def shift_pi(self, k):
        return MxElement(self.field, self.shift + k, self.poly, self.nmod)

    def truncate(self, prec):
        if prec >= self.abs_prec:
            return self
        nmod = max(0, (prec - self.shift) // self.field.e_ram)
        if nmod <= 0:
            return self.field.zero(prec)
        return MxElement(self.field, self.shift, self.poly, nmod)

    def _unit_inverse(self, rel):
        f = self.field
        if rel == INF:
            rel = f.prec
        n_t = max(1, -(-rel // f.e_ram))
        poly, nmod_eff = self._integral_poly()
        if nmod_eff != INF:
            n_t = min(n_t, nmod_eff)
        r0 = self.residue()
        v = f._const_poly(tuple(f.residue.coords_of(r0.inv().code)))
        two = f._const_poly((2,) + (0,) * (f.residue.n - 1))
        depth = 1
        target = f.e_ram * n_t
        while depth < target:
            uv = f._poly_mul(poly, v, n_t)
            corr = f._poly_add(two, f._poly_neg(uv), n_t)
            v = f._poly_mul(v, corr, n_t)
            depth *= 2
        return MxElement(f, 0, v, n_t)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        self._check(other)
        if other.is_exact_zero():
            raise DivisionByZero("division by exact zero")
        vb = other.valuation()
        if vb is None:
            raise PrecisionLoss("divisor is indistinguishable from zero")
        rels = [r for r in (_rel(self), _rel(other)) if r != INF]
        rel = min(rels) if rels else INF
        u = other.shift_pi(-vb)
        u_inv = u._unit_inverse(rel)
        return (self * u_inv).shift_pi(-vb)

    def __eq__(self, other):
        if not isinstance(other, MxElement):
            return NotImplemented
        if self.field != other.field:
            return False
        diff = self - other
        if diff.abs_prec == INF:
            return diff.valuation() is None
        return diff.valuation() is None and diff.abs_prec >= min(self.abs_prec, other.abs_prec)

    __hash__ = None

    def __repr__(self):
        from .literals import format_element
        return format_element(self)


class RingClass:
    """A class in O_K / m^j, canonically presented by j residue digits."""

    __slots__ = ("field", "level", "digits")

    def __init__(self, field, level, digits):
        digits = tuple(d.code if isinstance(d, GFqElem) else d for d in digits)
        if len(digits) != level:
            raise ValueError("digit count must equal the level")
        self.field = field
        self.level = level
        self.digits = digits

    def lift(self, target_prec=None):
        x = self.field.from_digits(self.digits)
        if target_prec is not None:
            x = x.truncate(target_prec)
        return x

    def _check(self, other):
        if self.field != other.field or self.level != other.level:
            raise ParentMismatch("classes from different truncated rings")

    def __add__(self, other):
        self._check(other)
        return self.field.reduce_mod(self.lift() + other.lift(), self.level)

    def __mul__(self, other):
        self._check(other)
        return self.field.reduce_mod(self.lift() * other.lift(), self.level)

    def __eq__(self, other):
        return (
            isinstance(other, RingClass)
            and self.field == other.field
            and self.level == other.level
            and self.digits == other.digits
        )

    def __hash__(self):
        return hash((self.level, self.digits))

    def __repr__(self):
        return f"<{self.lift()!r} mod pi^{self.level}>"


class UnitClass:
    """A class in K^x / U^j: a valuation and j unit digits (none when j = 0)."""

    __slots__ = ("field", "level", "m", "digits")

    def __init__(self, field, level, m, digits):
        digits = tuple(d.code if isinstance(d, GFqElem) else d for d in digits)
        if len(digits) != level:
            raise ValueError("digit count must equal the level")
        if level > 0 and digits[0] == 0:
            raise ValueError("unit part must have a nonzero leading digit")
        self.field = field
        self.level = level
        self.m = m
        self.digits = digits

    def __mul__(self, other):
        if self.field != other.field or self.level != other.level:
            raise ParentMismatch("classes of different unit-class groups")
        if self.level == 0:
            return UnitClass(self.field, 0, self.m + other.m, ())
        prod = self.field.from_digits(self.digits) * self.field.from_digits(other.digits)
        return UnitClass(
            self.field, self.level, self.m + other.m, prod.reduce_digits(self.level)
        )

    def __eq__(self, other):
        return (
            isinstance(other, UnitClass)
            and self.field == other.field
            and self.level == other.level
            and self.m == other.m
            and self.digits == other.digits
        )

    def __hash__(self):
        return hash((self.level, self.m, self.digits))

    def __repr__(self):
        return f"<pi^{self.m} * {list(self.digits)} mod U^{self.level}>"


class TripleIso:
    """The truncated-ring isomorphism phi (with eta and the unit-group map xi)
    determined by sending the residue field identically and t-bar to T-bar."""

    def __init__(self, source, target):
        if source.residue != target.residue:
            raise ParentMismatch("triple isomorphism needs a shared residue field")
        if source.backend != "equal" or target.backend != "mixed":
            raise ParentMismatch("source must be equal-characteristic, target mixed")
        self.e = target.e_ram
        self.source = source
        self.target = target

    def phi_apply(self, cls, reverse=False):
        src, dst = (self.target, self.source) if reverse else (self.source, self.target)
        if cls.field != src:
            raise ParentMismatch("class does not belong to the isomorphism source")
        if cls.level > self.e:
            raise PrecisionExceedsIso(f"level {cls.level} exceeds e = {self.e}")
        return RingClass(dst, cls.level, cls.digits)

    def eta_apply(self, cls, reverse=False):
        """Transport of m/m^(e+1), presented at level e+1 with zero constant digit."""
        src, dst = (self.target, self.source) if reverse else (self.source, self.target)
        if cls.field != src:
            raise ParentMismatch("class does not belong to the isomorphism source")
        if cls.level != self.e + 1 or cls.digits[0] != 0:
            raise ValueError("eta expects a maximal-ideal class at level e + 1")
        return RingClass(dst, cls.level, cls.digits)

    def xi_apply(self, ucls, reverse=False):
        src, dst = (self.target, self.source) if reverse else (self.source, self.target)
        if ucls.field != src:
            raise ParentMismatch("class does not belong to the isomorphism source")
        if ucls.level > self.e:
            raise PrecisionExceedsIso(f"level {ucls.level} exceeds e = {self.e}")
        return UnitClass(dst, ucls.level, ucls.m, ucls.digits)

    def random_class(self, rng, level=None):
        level = self.e if level is None else level
        q = self.source.residue.q
        return RingClass(
            self.source, level, tuple(rng.randrange(q) for _ in range(level))
        )

    def check_ring_hom(self, rng, pairs=500, level=None):
        """Verify phi(a+b) = phi(a)+phi(b) and phi(ab) = phi(a)phi(b) on
        random pairs; returns the number of failures (0 expected)."""
        failures = 0
        for _ in range(pairs):
            a = self.random_class(rng, level)
            b = self.random_class(rng, level)
            if self.phi_apply(a + b) != self.phi_apply(a) + self.phi_apply(b):
                failures += 1
                continue
            if self.phi_apply(a * b) != self.phi_apply(a) * self.phi_apply(b):
                failures += 1
        return failures


@lru_cache(maxsize=None)
def laurent_field(p, n=1, prec=64):
    from .gf import GF
    return EqualCharField(GF(p, n), prec=prec)


def witt_field(residue, e_ram, prec=None):
    return MixedCharField(residue, e_ram, prec=prec)
