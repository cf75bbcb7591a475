"""Pure-Python reference kernels for dense polynomial arithmetic over GF(q).

Coefficients are integer codes in [0, q); `mul` and `add` are flat q*q
lookup tables, `neg` and `inv` are length-q tables.  The compiled extension
in _gfpoly.pyx implements the same signatures; kernels.py picks one at
import time.
"""

BACKEND = "python"


def poly_mul(a, b, cap, q, mul, add):
    """Convolution of coefficient lists a, b, truncated to cap terms.

    cap < 0 means the full product.  Zero-length inputs yield [].
    """
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    if 0 <= cap < n:
        n = cap
    if n <= 0:
        return []
    out = [0] * n
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        row = ai * q
        jmax = min(lb, n - i)
        for j in range(jmax):
            bj = b[j]
            if bj == 0:
                continue
            k = i + j
            out[k] = add[out[k] * q + mul[row + bj]]
    return out


def series_inv(a, prec, q, mul, add, neg, inv):
    """First prec coefficients of 1/a for a power series with a[0] != 0."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    c0 = inv[a[0]]
    out = [0] * prec
    out[0] = c0
    la = len(a)
    for k in range(1, prec):
        acc = 0
        imax = min(k, la - 1)
        for i in range(1, imax + 1):
            ai = a[i]
            if ai == 0:
                continue
            acc = add[acc * q + mul[ai * q + out[k - i]]]
        out[k] = mul[c0 * q + neg[acc]]
    return out
