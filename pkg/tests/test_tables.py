"""Bulk table layer against the scalar arithmetic it accelerates.

The numpy tables are a second, independent implementation of the same
field operations; every public entry point is pinned to the convolution
arithmetic on FieldDesc/TowerDesc, exhaustively on small fields and on
seeded samples where a full cross product would be slow.
"""

import numpy as np
import pytest

from cppforge import make_extension, make_prime_field, make_tower, rel_norm, rel_trace
from cppforge.errors import OrderCapExceeded
from cppforge.maps import trace_kernel
from cppforge.tables import BULK_TOWER_CAP, BaseTables, base_tables, tower_tables


@pytest.fixture(scope="module", params=[(2, 3), (3, 2), (5, 1), (2, 4)])
def bt(request):
    p, r = request.param
    return base_tables(make_extension(make_prime_field(p), r))


def test_base_tables_match_scalar_ops(bt):
    f = bt.field
    q = f.order
    for a in range(q):
        assert bt.NEG[a] == f._cneg(a)
        if a:
            assert bt.INV[a] == f._cinv(a)
        for b in range(q):
            assert bt.ADD[a, b] == f._cadd(a, b)
            assert bt.MUL[a, b] == f._cmul(a, b)


def test_base_pow_all_matches_scalar(bt):
    f = bt.field
    for e in (0, 1, 2, 5, f.order):
        pa = bt.pow_all(e)
        for a in range(f.order):
            assert pa[a] == f._cpow(a, e), (f.descriptor(), e, a)


def test_base_horner_matches_eval(bt):
    f = bt.field
    rng = np.random.default_rng(7)
    codes = [int(c) for c in rng.integers(0, f.order, size=4)]
    vals = bt.horner(codes)
    for x in range(f.order):
        want = 0
        for c in reversed(codes):
            want = f._cadd(f._cmul(want, x), c)
        assert vals[x] == want


def test_base_bijection_and_cpp_status(bt):
    f = bt.field
    q = f.order
    ident = np.arange(q, dtype=np.int32)
    assert bt.is_bijection(ident)
    assert not bt.is_bijection(np.zeros(q, dtype=np.int32))
    perm, cpp = bt.cpp_status(ident)
    assert perm
    # x + x = 2x: bijective iff the characteristic is odd
    assert cpp == (f.p != 2)


@pytest.fixture(scope="module", params=[(2, 2, 3), (3, 1, 3), (5, 1, 2), (2, 3, 2)])
def tt(request):
    p, r, n = request.param
    return tower_tables(make_tower(make_extension(make_prime_field(p), r), n))


def test_tower_exp_log_are_inverse(tt):
    m = tt.order - 1
    assert np.array_equal(np.sort(tt.EXP), np.arange(1, tt.order))
    for x in range(1, tt.order):
        assert tt.EXP[tt.LOG[x]] == x
    # the zero sentinel sits beyond every reachable product log
    assert tt.LOG[0] == 2 * m


def test_tower_mul_matches_scalar_exhaustive(tt):
    tw = tt.tower
    xs = np.arange(tt.order, dtype=np.int64)
    prods = tt.mul(xs[:, None], xs[None, :])
    for a in range(tt.order):
        for b in range(tt.order):
            assert prods[a, b] == tw._cmul(a, b)


def test_tower_add_matches_scalar_sampled(tt):
    tw = tt.tower
    rng = np.random.default_rng(11)
    a = rng.integers(0, tt.order, size=300)
    b = rng.integers(0, tt.order, size=300)
    got = tt.add(a, b)
    for i in range(300):
        assert got[i] == tw._cadd(int(a[i]), int(b[i]))


def test_tower_pow_map_matches_scalar(tt):
    tw = tt.tower
    xs = np.arange(tt.order, dtype=np.int64)
    for e in (1, 2, tt.p, tt.order - 1):
        pm = tt.pow_map(xs, e)
        for a in range(tt.order):
            assert pm[a] == tw._cpow(a, e)


def test_tower_scale_row_is_mul_by_embedded_base(tt):
    tw = tt.tower
    for b in range(tt.q):
        row = tt.scale_row(b)
        for x in (0, 1, tt.order // 2, tt.order - 1):
            assert row[x] == tw._cmul(b, x)


def test_tower_trace_norm_kernel_match_scalar(tt):
    tw = tt.tower
    for x in tw.elements():
        assert tt.TR[x.code] == rel_trace(x).code
        assert tt.NOR[x.code] == rel_norm(x).code
    kernel_codes = [e.code for e in trace_kernel(tw)]
    assert list(tt.KERNEL) == kernel_codes


def test_tower_structural_checks_hold(tt):
    assert tt.check_trace_additive()
    assert tt.check_norm_multiplicative()


def test_tower_add_to_x_and_cpp_status(tt):
    xs = np.arange(tt.order, dtype=np.int32)
    assert np.array_equal(tt.add_to_x(np.zeros(tt.order, dtype=np.int32)), xs)
    perm, cpp = tt.cpp_status(xs)
    assert perm and cpp == (tt.p != 2)
    # scaling by a generator g is a bijection; complete exactly when g != -1
    g = tt.tower.multiplicative_generator().code
    tab = tt.mul(np.full(tt.order, g, dtype=np.int64), xs.astype(np.int64))
    perm, cpp = tt.cpp_status(tab.astype(np.int32))
    assert perm
    assert cpp == (tt.tower._cadd(g, 1) != 0)


def test_zero_operand_products_are_zero(tt):
    zs = np.zeros(tt.order, dtype=np.int64)
    xs = np.arange(tt.order, dtype=np.int64)
    assert not tt.mul(zs, xs).any()
    assert not tt.mul(xs, zs).any()
    assert not tt.mul(zs, zs).any()


def test_bulk_cap_refuses_huge_towers():
    big = make_tower(make_extension(make_prime_field(2), 9), 2)
    assert big.order == 2**18 > BULK_TOWER_CAP
    with pytest.raises(OrderCapExceeded):
        tower_tables(big)


def test_table_caches_return_same_object():
    f = make_extension(make_prime_field(3), 2)
    assert base_tables(f) is base_tables(make_extension(make_prime_field(3), 2))
    tw = make_tower(f, 2)
    assert tower_tables(tw) is tower_tables(make_tower(f, 2))
