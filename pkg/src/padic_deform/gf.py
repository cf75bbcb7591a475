"""Exact arithmetic in small finite fields F_{p^n}.

Fields are built from a fixed deterministic defining polynomial per (p, n)
(the lexicographically least monic irreducible, scanning constant coefficient
first), so the residue field of an equal-characteristic local field and of
its Witt lift share one presentation.  Elements are stored as integer codes:
the base-p digits of the code are the coordinates in the power basis.

Fields with q <= 256 carry flat lookup tables consumed by the series kernels;
larger fields (point counting only) fall back to direct polynomial arithmetic.
"""

import cmath
from array import array
from functools import lru_cache

from .errors import (
    DivisionByZero,
    EvenCharRequired,
    FieldTooLarge,
    OddCharRequired,
    ParentMismatch,
)

_TABLE_LIMIT = 256
_ENUM_LIMIT = 1 << 16


def _is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# -- polynomial helpers over F_p, coefficient lists ascending, may have
#    leading zeros; used only at field construction time.

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, f, p):
    n = len(f) - 1
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    # reduce by monic f
    for k in range(len(out) - 1, n - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for i in range(n):
                out[k - n + i] = (out[k - n + i] - c * f[i]) % p
    return _ptrim(out[:n])


def _ppowmod(a, e, f, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while _ptrim(b):
        # a mod b with b made monic
        inv_lead = pow(b[-1], p - 2, p)
        bm = [(c * inv_lead) % p for c in b]
        r = list(a)
        while len(r) >= len(bm) and _ptrim(r):
            c = r[-1]
            shift = len(r) - len(bm)
            for i, bi in enumerate(bm):
                r[shift + i] = (r[shift + i] - c * bi) % p
            _ptrim(r)
        a, b = b, r
    return _ptrim(a)


def _psub(a, b, p):
    m = max(len(a), len(b))
    a = list(a) + [0] * (m - len(a))
    b = list(b) + [0] * (m - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(f, p):
    """Monic f over F_p, degree >= 1."""
    n = len(f) - 1
    if n == 1:
        return True
    x = [0, 1]
    xp = list(x)
    for _ in range(n):
        xp = _ppowmod(xp, p, f, p)
    if _psub(xp, x, p):
        return False
    for ell in {d for d in range(2, n + 1) if n % d == 0 and _is_prime(d)}:
        xq = list(x)
        for _ in range(n // ell):
            xq = _ppowmod(xq, p, f, p)
        g = _pgcd(f, _psub(xq, x, p), p)
        if len(g) - 1 != 0:
            return False
    return True


def _default_poly(p, n):
    """Lexicographically least monic irreducible of degree n over F_p."""
    for code in range(p ** n):
        coeffs = []
        c = code
        for _ in range(n):
            c, r = divmod(c, p)
            coeffs.append(r)
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class GFq:
    """The finite field F_{p^n} with a fixed power-basis presentation."""

    def __init__(self, p, n, defining_poly=None):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.n = n
        self.q = p ** n
        if defining_poly is None:
            defining_poly = _default_poly(p, n)
        else:
            defining_poly = tuple(c % p for c in defining_poly)
            if len(defining_poly) != n + 1 or defining_poly[-1] != 1:
                raise ValueError("defining polynomial must be monic of degree n")
            if not _is_irreducible(list(defining_poly), p):
                raise ValueError("defining polynomial is reducible")
        self.defining_poly = defining_poly
        self._pow_p = [p ** i for i in range(n + 1)]
        # reduction rows: coords of x^(n+k) mod f for k in [0, n-2]
        rows = []
        cur = [(-c) % p for c in defining_poly[:n]]
        rows.append(tuple(cur))
        for _ in range(n - 2):
            cur = self._shift_reduce(cur)
            rows.append(tuple(cur))
        self._red_rows = rows
        self._tables_ready = False
        self._gen_code = None
        self._as_roots = None
        self._embeddings = {}
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    def _shift_reduce(self, coords):
        p, n = self.p, self.n
        out = [0] + list(coords[: n - 1])
        lead = coords[n - 1]
        if lead:
            f = self.defining_poly
            for i in range(n):
                out[i] = (out[i] - lead * f[i]) % p
        return out

    # -- integer-code arithmetic ------------------------------------------

    def coords_of(self, code):
        p = self.p
        out = []
        for _ in range(self.n):
            code, r = divmod(code, p)
            out.append(r)
        return out

    def code_of(self, coords):
        c = 0
        for i, a in enumerate(coords):
            c += (a % self.p) * self._pow_p[i]
        return c

    def fadd(self, x, y):
        if self._tables_ready:
            return self._add_flat[x * self.q + y]
        p = self.p
        cx, cy = self.coords_of(x), self.coords_of(y)
        return self.code_of([(a + b) % p for a, b in zip(cx, cy)])

    def fsub(self, x, y):
        if self._tables_ready:
            return self._add_flat[x * self.q + self._neg_t[y]]
        p = self.p
        cx, cy = self.coords_of(x), self.coords_of(y)
        return self.code_of([(a - b) % p for a, b in zip(cx, cy)])

    def fneg(self, x):
        if self._tables_ready:
            return self._neg_t[x]
        return self.code_of([(-a) % self.p for a in self.coords_of(x)])

    def fmul(self, x, y):
        if self._tables_ready:
            return self._mul_flat[x * self.q + y]
        return self._mul_generic(x, y)

    def _mul_generic(self, x, y):
        p, n = self.p, self.n
        cx, cy = self.coords_of(x), self.coords_of(y)
        conv = [0] * (2 * n - 1)
        for i, a in enumerate(cx):
            if a:
                for j, b in enumerate(cy):
                    if b:
                        conv[i + j] = (conv[i + j] + a * b) % p
        out = conv[:n]
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c:
                row = self._red_rows[k - n]
                for i in range(n):
                    out[i] = (out[i] + c * row[i]) % p
        return self.code_of(out)

    def finv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0")
        if self._tables_ready:
            return self._inv_t[x]
        return self.fpow(x, self.q - 2)

    def fpow(self, x, e):
        if x == 0:
            return 1 if e == 0 else 0
        e %= self.q - 1
        r = 1
        b = x
        while e:
            if e & 1:
                r = self.fmul(r, b)
            b = self.fmul(b, b)
            e >>= 1
        return r

    def frob(self, x):
        return self.fpow(x, self.p)

    def ftrace(self, x):
        """Trace to the prime subfield, returned as an int in [0, p)."""
        acc = x
        y = x
        for _ in range(self.n - 1):
            y = self.frob(y)
            acc = self.fadd(acc, y)
        if acc >= self.p:
            raise AssertionError("trace landed outside the prime subfield")
        return acc

    def fqr(self, x):
        """Quadratic-residue symbol as an int: 1, -1, or 0."""
        if self.p == 2:
            raise OddCharRequired("quadratic residue symbol needs p odd")
        if x == 0:
            return 0
        s = self.fpow(x, (self.q - 1) // 2)
        return 1 if s == 1 else -1

    def fsqrt(self, x):
        """A square root code, or None when x is a non-residue (p odd)."""
        if x == 0:
            return 0
        if self.p == 2:
            r = x
            for _ in range(self.n - 1):
                r = self.frob(r)
            return r
        if self.fqr(x) != 1:
            return None
        q = self.q
        if q % 4 == 3:
            return self.fpow(x, (q + 1) // 4)
        # Tonelli-Shanks with the first non-residue as auxiliary element
        s, m = q - 1, 0
        while s % 2 == 0:
            s //= 2
            m += 1
        z = next(c for c in range(2, q) if self.fqr(c) == -1)
        c = self.fpow(z, s)
        t = self.fpow(x, s)
        r = self.fpow(x, (s + 1) // 2)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.fmul(t2, t2)
                i += 1
            b = self.fpow(c, 1 << (m - i - 1))
            m = i
            c = self.fmul(b, b)
            t = self.fmul(t, c)
            r = self.fmul(r, b)
        return r

    def fas_root(self, x):
        """A root code of z^2 - z = x, or None (p = 2 only)."""
        if self.p != 2:
            raise EvenCharRequired("Artin-Schreier roots need p = 2")
        if self._as_roots is None:
            if self.q > _ENUM_LIMIT:
                raise FieldTooLarge(f"q = {self.q} exceeds enumeration scale")
            roots = {}
            for z in range(self.q):
                img = self.fadd(self.fmul(z, z), z)
                roots.setdefault(img, z)
            self._as_roots = roots
        return self._as_roots.get(x)

    def _build_tables(self):
        q = self.q
        mul = array("i", bytes(4 * q * q))
        add = array("i", bytes(4 * q * q))
        for x in range(q):
            base = x * q
            for y in range(x, q):
                v = self._mul_generic(x, y)
                mul[base + y] = v
                mul[y * q + x] = v
                cx, cy = self.coords_of(x), self.coords_of(y)
                s = self.code_of([(a + b) % self.p for a, b in zip(cx, cy)])
                add[base + y] = s
                add[y * q + x] = s
        self._mul_flat = mul
        self._add_flat = add
        self._neg_t = array(
            "i", [self.code_of([(-a) % self.p for a in self.coords_of(x)]) for x in range(q)]
        )
        inv = array("i", [0] * q)
        for x in range(1, q):
            inv[x] = self.fpow(x, self.q - 2)
        self._inv_t = inv
        self._tables_ready = True

    @property
    def tables(self):
        """(mul_flat, add_flat, neg, inv) for the series kernels."""
        if not self._tables_ready:
            raise FieldTooLarge(f"q = {self.q} has no kernel tables")
        return self._mul_flat, self._add_flat, self._neg_t, self._inv_t

    # -- element construction ---------------------------------------------

    def element(self, code):
        return GFqElem(self, code % self.q)

    def zero(self):
        return GFqElem(self, 0)

    def one(self):
        return GFqElem(self, 1)

    def from_int(self, c):
        return GFqElem(self, c % self.p)

    def from_coords(self, coords):
        if len(coords) > self.n:
            raise ValueError("too many coordinates")
        return GFqElem(self, self.code_of(list(coords) + [0] * (self.n - len(coords))))

    def gen(self):
        """The power-basis generator (the class of x); 0 when n = 1."""
        return GFqElem(self, self._pow_p[1] if self.n > 1 else 0)

    def elements(self):
        if self.q > _ENUM_LIMIT:
            raise FieldTooLarge(f"q = {self.q} exceeds enumeration scale")
        return (GFqElem(self, c) for c in range(self.q))

    def generator(self):
        """A generator of the multiplicative group (first in code order)."""
        if self._gen_code is None:
            order = self.q - 1
            primes = []
            m = order
            d = 2
            while d * d <= m:
                if m % d == 0:
                    primes.append(d)
                    while m % d == 0:
                        m //= d
                d += 1
            if m > 1:
                primes.append(m)
            for c in range(1, self.q):
                if all(self.fpow(c, order // ell) != 1 for ell in primes):
                    self._gen_code = c
                    break
        return GFqElem(self, self._gen_code)

    def embedding(self, target):
        """Field embedding into a larger GFq, as a code-to-code list.

        Deterministic: the image of the power-basis generator is the first
        root of the defining polynomial in code order.
        """
        key = (target.p, target.n, target.defining_poly)
        if key in self._embeddings:
            return self._embeddings[key]
        if target.p != self.p or target.n % self.n != 0:
            raise ParentMismatch("no embedding between these fields")
        if self.q > _TABLE_LIMIT * _TABLE_LIMIT:
            raise FieldTooLarge("embedding table too large")
        root = None
        for c in range(target.q):
            acc = 0
            for coef in reversed(self.defining_poly):
                acc = target.fadd(target.fmul(acc, c), coef % self.p)
            if acc == 0:
                root = c
                break
        assert root is not None, "defining polynomial has no root in target"
        table = []
        for code in range(self.q):
            acc = 0
            for a in reversed(self.coords_of(code)):
                acc = target.fadd(target.fmul(acc, root), a)
            table.append(acc)
        self._embeddings[key] = table
        return table

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return (
            isinstance(other, GFq)
            and self.p == other.p
            and self.n == other.n
            and self.defining_poly == other.defining_poly
        )

    def __hash__(self):
        return hash((self.p, self.n, self.defining_poly))


@lru_cache(maxsize=None)
def GF(p, n=1, defining_poly=None):
    return GFq(p, n, defining_poly)


class GFqElem:
    """An element of a GFq, identified by its integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def _coerce(self, other):
        if isinstance(other, GFqElem):
            if other.field != self.field:
                raise ParentMismatch("elements of different fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return GFqElem(self.field, self.field.fadd(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return GFqElem(self.field, self.field.fsub(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return GFqElem(self.field, self.field.fsub(c, self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return GFqElem(self.field, self.field.fmul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return GFqElem(self.field, self.field.fmul(self.code, self.field.finv(c)))

    def __neg__(self):
        return GFqElem(self.field, self.field.fneg(self.code))

    def __pow__(self, e):
        return GFqElem(self.field, self.field.fpow(self.code, e))

    def inv(self):
        return GFqElem(self.field, self.field.finv(self.code))

    def __eq__(self, other):
        if isinstance(other, GFqElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __bool__(self):
        return self.code != 0

    @property
    def coords(self):
        return self.field.coords_of(self.code)

    def trace(self):
        return self.field.ftrace(self.code)

    def __repr__(self):
        return format_ff(self)


def ff_arith(a, b, op):
    """Named dispatch over the four basic field operations."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown op {op!r}")


def quadratic_residue(a):
    """1 for a nonzero square, -1 for a non-square, 0 for zero (p odd)."""
    return a.field.fqr(a.code)


def solve_artin_schreier(a):
    """A root of x^2 - x = a over F_q with p = 2, or None.

    A root exists exactly when the trace of a to F_2 vanishes; the second
    root is then x + 1.
    """
    code = a.field.fas_root(a.code)
    return None if code is None else GFqElem(a.field, code)


def sqrt_ff(a):
    """A square root, or None; always defined for p = 2 (inverse Frobenius)."""
    code = a.field.fsqrt(a.code)
    return None if code is None else GFqElem(a.field, code)


def gauss_sum_sign(field, u=None):
    """g/|g| for the quadratic-character Gauss sum twisted by the unit u.

    g = sum over x in F_q^* of qr(x) * exp(2*pi*i*Tr(x*u)/p); |g| must equal
    sqrt(q) and is checked to 1e-9.
    """
    if field.p == 2:
        raise OddCharRequired("Gauss sums of the quadratic character need p odd")
    ucode = 1 if u is None else u.code
    if ucode == 0:
        raise ValueError("the twisting element must be a unit")
    g = 0j
    for x in range(1, field.q):
        tr = field.ftrace(field.fmul(x, ucode))
        g += field.fqr(x) * cmath.exp(2j * cmath.pi * tr / field.p)
    mag = abs(g)
    if abs(mag * mag - field.q) >= 1e-9:
        raise AssertionError("Gauss sum magnitude check failed")
    return g / mag


def format_ff(a):
    """Canonical text form, e.g. '0', '1', 'g', 'g+1', '2g^2+1'."""
    coords = a.coords
    terms = []
    for i in range(len(coords) - 1, -1, -1):
        c = coords[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            terms.append(f"{head}g" + (f"^{i}" if i > 1 else ""))
    return "+".join(terms) if terms else "0"


def poly_roots(coeffs):
    """Roots with multiplicity of a polynomial over GFq (degree <= 3 scale).

    coeffs: ascending list of GFqElem with nonzero leading coefficient.
    Searches the field exhaustively and deflates, so only rational roots are
    reported; pair with poly_is_separable for information over the closure.
    """
    field = coeffs[0].field
    work = [c.code for c in coeffs]
    while len(work) > 1 and work[-1] == 0:
        work.pop()
    roots = []
    for c in range(field.q):
        mult = 0
        while len(work) > 1:
            # synthetic division by (x - c)
            acc = 0
            rem = work[-1]
            quot = []
            for a in reversed(work[:-1]):
                quot.append(rem)
                rem = field.fadd(a, field.fmul(rem, c))
            if rem != 0:
                break
            work = list(reversed(quot))
            mult += 1
        if mult:
            roots.append((GFqElem(field, c), mult))
        if len(work) <= 1:
            break
    return roots


def poly_is_separable(coeffs):
    """True when the polynomial has no repeated root in the closure."""
    field = coeffs[0].field
    a = [c.code for c in coeffs]
    da = [field.fmul(i % field.p, a[i]) for i in range(1, len(a))]
    g = _pgcd_codes(a, da, field)
    return len(g) == 1


def _pgcd_codes(a, b, field):
    a, b = list(a), list(b)

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    trim(a), trim(b)
    while b:
        inv_lead = field.finv(b[-1])
        bm = [field.fmul(c, inv_lead) for c in b]
        r = list(a)
        while len(r) >= len(bm) and trim(r):
            c = r[-1]
            shift = len(r) - len(bm)
            for i, bi in enumerate(bm):
                r[shift + i] = field.fsub(r[shift + i], field.fmul(c, bi))
            trim(r)
        a, b = b, trim(r)
    return a if a else [0]
