"""Parsing and canonical formatting of field-element literals.

Grammar (whitespace ignored):

    element  ::=  term (('+' | '-') term)*
    term     ::=  coeff ['*' pi] | coeff '/' pi | pi | '1/' pi
    pi       ::=  NAME ['^' INT]          e.g. t, t^3, T^2
    coeff    ::=  INT | 'g' ['^' INT] | INT 'g' ['^' INT] | '(' ffpoly ')'

'g' is the fixed power-basis generator of the residue field.  Negative
uniformizer powers are accepted (the Artin-Schreier parameter needs them);
callers that require integral elements validate the valuation afterwards.
"""

import re

from .errors import PadicDeformError
from .gf import GFqElem, format_ff
from .localfield import INF

_PI_RE = re.compile(r"^([A-Za-z])(?:\^(-?\d+))?$")
_COEFF_ATOM = re.compile(r"^(\d+)?(g)?(?:\^(\d+))?$")


def _split_terms(s):
    """Split at top-level signs; signs inside parens or exponents stay put."""
    terms = []
    depth = 0
    cur = ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and not cur.endswith("^"):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur:
        terms.append(cur)
    return terms


class LiteralError(PadicDeformError):
    """Malformed element literal; carries the offending position."""

    def __init__(self, text, pos, message):
        super().__init__(f"column {pos}: {message} in {text!r}")
        self.pos = pos


def _parse_ff_atom(field, text, base_pos):
    m = _COEFF_ATOM.match(text)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise LiteralError(text, base_pos, "bad coefficient")
    scalar = int(m.group(1)) if m.group(1) else 1
    if m.group(2) is None:
        if m.group(3) is not None:
            raise LiteralError(text, base_pos, "exponent without generator")
        return field.from_int(scalar)
    exp = int(m.group(3)) if m.group(3) else 1
    return field.from_int(scalar) * (field.gen() ** exp)


def parse_ff(field, text, base_pos=0):
    """A residue-field element from e.g. '2', 'g', 'g+1', '2g^2+g+1'."""
    s = text.replace(" ", "")
    if not s:
        raise LiteralError(text, base_pos, "empty coefficient")
    total = field.zero()
    for piece in _split_terms(s):
        if not piece:
            continue
        sign = 1
        if piece[0] == "+":
            piece = piece[1:]
        elif piece[0] == "-":
            sign = -1
            piece = piece[1:]
        atom = _parse_ff_atom(field, piece, base_pos)
        total = total + (atom if sign == 1 else -atom)
    return total


def parse_element(field, text, prec=INF):
    """A local-field element from its literal form."""
    s = text.replace(" ", "")
    if not s:
        raise LiteralError(text, 0, "empty literal")
    name = field.name
    res = field.residue
    coeffs = {}
    pos = 0
    for piece in _split_terms(s):
        if not piece:
            continue
        start = pos
        pos += len(piece)
        sign = 1
        if piece[0] == "+":
            piece = piece[1:]
        elif piece[0] == "-":
            sign = -1
            piece = piece[1:]
        if not piece:
            raise LiteralError(text, start, "dangling sign")
        exp = 0
        coeff_text = piece
        if "/" in piece:
            coeff_text, _, pi_text = piece.partition("/")
            m = _PI_RE.match(pi_text)
            if not m or m.group(1) != name:
                raise LiteralError(text, start, f"expected a power of {name} after '/'")
            exp = -(int(m.group(2)) if m.group(2) else 1)
        elif "*" in piece:
            coeff_text, _, pi_text = piece.partition("*")
            m = _PI_RE.match(pi_text)
            if not m or m.group(1) != name:
                raise LiteralError(text, start, f"expected a power of {name} after '*'")
            exp = int(m.group(2)) if m.group(2) else 1
        elif piece[0] == name:
            m = _PI_RE.match(piece)
            if not m:
                raise LiteralError(text, start, f"bad power of {name}")
            exp = int(m.group(2)) if m.group(2) else 1
            coeff_text = "1"
        if coeff_text.startswith("(") and coeff_text.endswith(")"):
            coeff_text = coeff_text[1:-1]
        c = parse_ff(res, coeff_text, start)
        if sign == -1:
            c = -c
        if c.code:
            prev = coeffs.get(exp, res.zero())
            coeffs[exp] = prev + c
    lo = min(coeffs) if coeffs else 0
    if lo < 0 and field.backend == "mixed":
        x = field.from_digits(
            [coeffs.get(i + lo, res.zero()) for i in range(max(coeffs) - lo + 1)],
            shift=lo,
        )
        return x if prec == INF else x.truncate(prec)
    if field.backend == "mixed":
        x = field.from_digits(
            [coeffs.get(i, res.zero()) for i in range(max(coeffs) + 1 if coeffs else 0)]
        )
        return x if prec == INF else x.truncate(prec)
    return field.from_coeff_map(coeffs, prec)


_DISPLAY_CAP = 24


def format_element(x):
    """Canonical literal: ascending powers, zero terms omitted."""
    field = x.field
    name = field.name
    v = x.valuation()
    if v is None:
        if x.abs_prec == INF:
            return "0"
        return f"O({name}^{x.abs_prec})"
    prec = x.abs_prec
    hi = v + _DISPLAY_CAP
    truncated_display = False
    if prec != INF:
        hi = min(hi, prec)
    terms = []
    if field.backend == "equal":
        window = x.unit
        for i, code in enumerate(window):
            if v + i >= hi:
                truncated_display = True
                break
            if code:
                terms.append(_term(field.residue, code, name, v + i))
    else:
        want = hi - v
        u = x.shift_pi(-v)
        digits = u.reduce_digits(min(want, _DISPLAY_CAP))
        if len(digits) < want:
            truncated_display = True
        for i, code in enumerate(digits):
            if code:
                terms.append(_term(field.residue, code, name, v + i))
        if x.abs_prec == INF and want > _DISPLAY_CAP:
            truncated_display = True
    body = " + ".join(terms) if terms else "0"
    if prec != INF:
        body += f" + O({name}^{prec})"
    elif truncated_display:
        body += " + ..."
    return body


def _term(res, code, name, exp):
    c = format_ff(GFqElem(res, code))
    needs_parens = ("+" in c) or ("-" in c[1:])
    if exp == 0:
        return f"({c})" if needs_parens else c
    pi = name if exp == 1 else f"{name}^{exp}"
    if c == "1":
        return pi
    head = f"({c})" if needs_parens or "g" in c else c
    return f"{head}*{pi}"
