import random

import pytest

from padic_deform import kernels
from padic_deform.gf import GF


@pytest.mark.parametrize("q_spec", [(2, 1), (2, 2), (5, 1), (3, 2), (5, 2)])
def test_backends_agree(q_spec):
    impls = kernels.implementations()
    field = GF(*q_spec)
    mul_t, add_t, neg_t, inv_t = field.tables
    rng = random.Random(field.q)
    for _ in range(30):
        la, lb = rng.randrange(1, 40), rng.randrange(1, 40)
        a = [rng.randrange(field.q) for _ in range(la)]
        b = [rng.randrange(field.q) for _ in range(lb)]
        cap = rng.choice([-1, 1, 5, la + lb])
        outs = [impl.poly_mul(a, b, cap, field.q, mul_t, add_t) for impl in impls]
        assert all(o == outs[0] for o in outs)
        a[0] = rng.randrange(1, field.q)
        prec = rng.randrange(1, 30)
        invs = [impl.series_inv(a, prec, field.q, mul_t, add_t, neg_t, inv_t)
                for impl in impls]
        assert all(i == invs[0] for i in invs)


def test_series_inv_is_inverse():
    field = GF(5)
    mul_t, add_t, neg_t, inv_t = field.tables
    rng = random.Random(0)
    for _ in range(20):
        a = [rng.randrange(1, 5)] + [rng.randrange(5) for _ in range(10)]
        inv = kernels.series_inv(a, 12, 5, mul_t, add_t, neg_t, inv_t)
        prod = kernels.poly_mul(a, inv, 12, 5, mul_t, add_t)
        assert prod[0] == 1 and all(c == 0 for c in prod[1:])


def test_zero_constant_term_rejected():
    field = GF(5)
    mul_t, add_t, neg_t, inv_t = field.tables
    for impl in kernels.implementations():
        with pytest.raises(ZeroDivisionError):
            impl.series_inv([0, 1], 4, 5, mul_t, add_t, neg_t, inv_t)


def test_selected_backend_is_exposed():
    assert kernels.BACKEND in ("compiled", "python")
