"""Separable quadratic extensions of a local field as rank-2 modules.

Elements are pairs a + b*theta over the base field, with theta a root of the
monic defining quadratic x^2 - B x + C.  Two shapes are supported:

  * ramified:   Eisenstein data, v(B) >= 1 and v(C) = 1; theta is then a
    uniformizer and v(a + b*theta) = min(2 v(a), 2 v(b) + 1).
  * unramified: the reduction of x^2 - B x + C is irreducible over the
    residue field; the residue field grows to F_{q^2} and
    v(a + b*theta) = min(v(a), v(b)).

The element interface matches the base local fields closely enough for the
Weierstrass/Tate machinery to run unchanged over the extension.
"""

from .errors import InsufficientPrecision, InternalInvariantViolation, ParentMismatch, PrecisionLoss
from .gf import GF, GFqElem
from .localfield import INF


class QuadExtField:
    backend = "quadext"

    def __init__(self, base, B, C):
        self.base = base
        self.B = B
        self.C = C
        self.p = base.residue.p
        vB = B.valuation()
        vC = C.valuation()
        if vC == 1 and (vB is None or vB >= 1):
            self.ramified = True
            self.residue = base.residue
            self._emb = None
        elif vC == 0:
            self.ramified = False
            k = base.residue
            big = GF(k.p, 2 * k.n)
            emb = k.embedding(big)
            rB, rC = emb[B.residue().code], emb[C.residue().code]
            theta_bar = None
            for c in range(big.q):
                if big.fadd(big.fsub(big.fmul(c, c), big.fmul(rB, c)), rC) == 0:
                    theta_bar = c
                    break
            if theta_bar is None:
                raise InternalInvariantViolation("defining quadratic is not irreducible")
            decomp = {}
            for c2 in range(k.q):
                e2 = big.fmul(emb[c2], theta_bar)
                for c1 in range(k.q):
                    decomp[big.fadd(emb[c1], e2)] = (c1, c2)
            if len(decomp) != big.q:
                raise InternalInvariantViolation("residue basis is degenerate")
            self.residue = big
            self._emb = emb
            self._theta_bar = theta_bar
            self._decomp = decomp
        else:
            raise ValueError("defining quadratic is neither Eisenstein nor unit-reducible")
        self.name = base.name
        self._cinv = None

    def c_inverse(self):
        """1/C at the base working precision, cached (ramified only)."""
        if self._cinv is None:
            self._cinv = self.base.one() / self.C
        return self._cinv

    def __repr__(self):
        kind = "ramified" if self.ramified else "unramified"
        return f"QuadExt({self.base!r}, {kind})"

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    @property
    def prec(self):
        return self.base.prec

    # -- constructors -------------------------------------------------------

    def element(self, a, b):
        return QuadExtElement(self, a, b)

    def zero(self, prec=INF):
        if prec == INF:
            return QuadExtElement(self, self.base.zero(), self.base.zero())
        bp = -(-prec // 2) if self.ramified else prec
        return QuadExtElement(self, self.base.zero(bp), self.base.zero(bp))

    def one(self):
        return QuadExtElement(self, self.base.one(), self.base.zero())

    def from_int(self, c):
        return QuadExtElement(self, self.base.from_int(c), self.base.zero())

    def from_base(self, a):
        return QuadExtElement(self, a, self.base.zero())

    def theta(self):
        return QuadExtElement(self, self.base.zero(), self.base.one())

    def uniformizer(self, k=1):
        if self.ramified:
            return self.theta() ** k if k >= 0 else self.one().shift_pi(k)
        return self.from_base(self.base.uniformizer(k))

    def from_residue(self, r, shift=0):
        code = r.code if isinstance(r, GFqElem) else r % self.residue.q
        if self.ramified:
            x = QuadExtElement(self, self.base.from_residue(code), self.base.zero())
        else:
            c1, c2 = self._decomp[code]
            x = QuadExtElement(
                self, self.base.from_residue(c1), self.base.from_residue(c2)
            )
        return x.shift_pi(shift) if shift else x


class QuadExtElement:
    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b):
        self.field = field
        self.a = a
        self.b = b

    # -- inspection ---------------------------------------------------------

    def valuation(self):
        f = self.field
        va, vb = self.a.valuation(), self.b.valuation()
        pa, pb = self.a.abs_prec, self.b.abs_prec
        if f.ramified:
            cands = []
            if va is not None:
                cands.append(2 * va)
            if vb is not None:
                cands.append(2 * vb + 1)
            bound = min(2 * pa, 2 * pb + 1)
        else:
            cands = [v for v in (va, vb) if v is not None]
            bound = min(pa, pb)
        if not cands:
            return None
        v = min(cands)
        return v if v < bound else None

    @property
    def abs_prec(self):
        f = self.field
        pa, pb = self.a.abs_prec, self.b.abs_prec
        return min(2 * pa, 2 * pb + 1) if f.ramified else min(pa, pb)

    def is_integral(self):
        v = self.valuation()
        if v is not None:
            return v >= 0
        return True

    def conj(self):
        f = self.field
        return QuadExtElement(f, self.a + self.b * f.B, -self.b)

    def norm(self):
        """N(a + b*theta) = a^2 + a b B + b^2 C, an element of the base field."""
        f = self.field
        return self.a * self.a + self.a * self.b * f.B + self.b * self.b * f.C

    def residue(self):
        f = self.field
        if self.valuation() is None and self.abs_prec < 1:
            raise InsufficientPrecision("residue undetermined")
        if f.ramified:
            return self.a.residue()
        big = f.residue
        ca = f._emb[self.a.residue().code]
        cb = f._emb[self.b.residue().code]
        return GFqElem(big, big.fadd(ca, big.fmul(cb, f._theta_bar)))

    def unit_residue(self):
        v = self.valuation()
        if v is None:
            raise PrecisionLoss("zero class has no unit part")
        return self.shift_pi(-v).residue()

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, QuadExtElement) or other.field is not self.field:
            raise ParentMismatch("operands from different quadratic extensions")

    def __add__(self, other):
        self._check(other)
        return QuadExtElement(self.field, self.a + other.a, self.b + other.b)

    def __neg__(self):
        return QuadExtElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadExtElement(self.field, self.a * other, self.b * other)
        self._check(other)
        f = self.field
        ac = self.a * other.a
        bd = self.b * other.b
        mid = self.a * other.b + self.b * other.a
        return QuadExtElement(f, ac - bd * f.C, mid + bd * f.B)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers: use shift_pi for uniformizer powers")
        r = self.field.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def shift_pi(self, k):
        """Multiply by theta^k; theta is the fixed uniformizer of a ramified
        extension, so every residue extraction refers to the same power basis."""
        f = self.field
        if not f.ramified:
            return QuadExtElement(f, self.a.shift_pi(k), self.b.shift_pi(k))
        a, b = self.a, self.b
        if k >= 0:
            for _ in range(k):
                # (a + b theta) theta = -Cb + (a + Bb) theta
                a, b = -(f.C * b), a + f.B * b
        else:
            cinv = f.c_inverse()
            bc = f.B * cinv
            for _ in range(-k):
                # (a + b theta) / theta = (aB/C + b) - (a/C) theta
                a, b = a * bc + b, -(a * cinv)
        return QuadExtElement(f, a, b)

    def __truediv__(self, other):
        self._check(other)
        v = other.valuation()
        if v is None:
            raise PrecisionLoss("divisor is indistinguishable from zero")
        u = other.shift_pi(-v)
        nrm = u.norm()  # a unit of the base field
        prod = self * u.conj()
        return QuadExtElement(self.field, prod.a / nrm, prod.b / nrm).shift_pi(-v)

    def __eq__(self, other):
        if not isinstance(other, QuadExtElement):
            return NotImplemented
        return (self - other).valuation() is None and (self - other).abs_prec == INF

    __hash__ = None

    def __repr__(self):
        return f"({self.a!r}) + ({self.b!r})*theta"
