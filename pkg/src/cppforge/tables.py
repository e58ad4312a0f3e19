"""Vectorized table arithmetic for exhaustive sweeps.

The scalar classes in fields.py define the arithmetic; this module
re-expresses it as numpy index arithmetic so that whole-field scans stay
cheap at desk scale (orders up to 2^16). Nothing here is an independent
source of truth: the construction of every table bottoms out in the same
scalar ops, and test_tables.py additionally cross-checks random entries
pointwise. Bulk code exists for speed only.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .errors import OrderCapExceeded
from .fields import FieldDesc, TowerDesc
from .maps import norm_exponent

BULK_BASE_CAP = 1 << 10
BULK_TOWER_CAP = 1 << 16
_ROW_BLOCK = 512  # row chunk for order x order pair scans


class BaseTables:
    """Dense q x q operation tables for a base field."""

    __slots__ = ("field", "q", "p", "ADD", "MUL", "NEG", "INV", "_hit")

    def __init__(self, field: FieldDesc):
        q = field.q
        if q > BULK_BASE_CAP:
            raise OrderCapExceeded(q, BULK_BASE_CAP, "bulk base tables")
        self.field = field
        self.q = q
        self.p = field.p
        add = np.empty((q, q), dtype=np.int32)
        for a in range(q):
            row = [field._cadd(a, b) for b in range(q)]
            add[a] = row
        self.ADD = add
        # force the scalar log tables into existence, then vectorize
        field._cmul(1, 1)
        if field._log is not None:
            log = np.array(field._log, dtype=np.int64)
            exp = np.array(field._exp, dtype=np.int64)
            idx = np.arange(q)
            la, lb = np.meshgrid(log, log, indexing="ij")
            mul = exp[(la + lb) % (q - 1)].astype(np.int32)
            mul[0, :] = 0
            mul[:, 0] = 0
            self.MUL = mul
            inv = np.zeros(q, dtype=np.int32)
            inv[1:] = exp[(-log[1:]) % (q - 1)]
            self.INV = inv
        else:  # pragma: no cover - caps keep q small enough for log tables
            mul = np.empty((q, q), dtype=np.int32)
            for a in range(q):
                mul[a] = [field._cmul(a, b) for b in range(q)]
            self.MUL = mul
            self.INV = np.array([0] + [field._cinv(a) for a in range(1, q)], dtype=np.int32)
        self.NEG = np.array([field._cneg(a) for a in range(q)], dtype=np.int32)
        self._hit = np.empty(q, dtype=bool)

    def pow_all(self, e: int) -> np.ndarray:
        """x^e for every x, with 0^0 = 1 to match the scalar rule."""
        q = self.q
        out = np.ones(q, dtype=np.int32)
        b = np.arange(q, dtype=np.int32)
        e = int(e)
        if e == 0:
            return out
        while e:
            if e & 1:
                out = self.MUL[out, b]
            e >>= 1
            if e:
                b = self.MUL[b, b]
        return out

    def horner(self, codes, xs: Optional[np.ndarray] = None) -> np.ndarray:
        if xs is None:
            xs = np.arange(self.q, dtype=np.int32)
        acc = np.zeros(len(xs), dtype=np.int32)
        for c in reversed(list(codes)):
            acc = self.ADD[self.MUL[acc, xs], int(c)]
        return acc

    def is_bijection(self, tab: np.ndarray) -> bool:
        hit = self._hit
        hit[:] = False
        hit[tab] = True
        return bool(hit.all())

    def cpp_status(self, tab: np.ndarray) -> tuple[bool, bool]:
        perm = self.is_bijection(tab)
        if not perm:
            return False, False
        shifted = self.ADD[tab, np.arange(self.q, dtype=np.int32)]
        return True, self.is_bijection(shifted)


class TowerTables:
    """Log/exp driven whole-tower maps for a two-level extension."""

    __slots__ = (
        "tower",
        "base",
        "order",
        "q",
        "n",
        "p",
        "EXP",
        "LOG",
        "MEXP",
        "TR",
        "NOR",
        "KERNEL",
        "_digit_shift",
        "_scale_rows",
        "_hit",
        "_full_add",
    )

    def __init__(self, tower: TowerDesc, base_tables: Optional[BaseTables] = None):
        order = tower.order
        if order > BULK_TOWER_CAP:
            raise OrderCapExceeded(order, BULK_TOWER_CAP, "bulk tower tables")
        self.tower = tower
        self.base = base_tables if base_tables is not None else BaseTables(tower.base)
        if self.base.field != tower.base:
            raise AssertionError("base tables belong to a different field")
        self.order = order
        self.q = tower.q
        self.n = tower.n
        self.p = tower.p
        g = tower.multiplicative_generator().code
        m = order - 1
        exp = np.empty(m, dtype=np.int32)
        # LOG[0] = 2m keeps every log sum of a zero operand at >= 2m, past
        # the reach of any nonzero product (<= 2m - 2), so MEXP below can
        # resolve products without a separate zero mask
        log = np.full(order, 2 * m, dtype=np.int32)
        acc = 1
        for j in range(m):
            exp[j] = acc
            log[acc] = j
            acc = tower._cmul(acc, g)
        if acc != 1:
            raise AssertionError("generator order mismatch while building tower tables")
        self.EXP = exp
        self.LOG = log
        mexp = np.zeros(4 * m + 1, dtype=np.int32)
        mexp[: 2 * m - 1] = exp[np.arange(2 * m - 1) % m]
        self.MEXP = mexp
        if self.p == 2:
            self._digit_shift = None
        else:
            k = np.arange(self.n, dtype=np.int64)
            self._digit_shift = (self.q ** k).astype(np.int64)
        xs = np.arange(order, dtype=np.int64)
        tr = xs.copy()
        t = xs
        for _ in range(self.n - 1):
            t = self.pow_map(t, self.q)
            tr = self.add(tr, t)
        if not (tr < self.q).all():
            raise AssertionError("trace left the base field")
        self.TR = tr.astype(np.int32)
        nor = self.pow_all(norm_exponent(tower))
        if not (nor < self.q).all():
            raise AssertionError("norm left the base field")
        self.NOR = nor.astype(np.int32)
        self.KERNEL = np.flatnonzero(self.TR == 0).astype(np.int64)
        if len(self.KERNEL) != self.q ** (self.n - 1):
            raise AssertionError("trace kernel has the wrong size")
        self._scale_rows = {}
        self._hit = np.empty(order, dtype=bool)
        self._full_add = None

    # -- arithmetic on index arrays -------------------------------------

    def add(self, a: np.ndarray, b) -> np.ndarray:
        if self.p == 2:
            return a ^ b
        sh = self._digit_shift
        da = (a[..., None] // sh) % self.q
        db = (np.asarray(b)[..., None] // sh) % self.q
        return (self.base.ADD[da, db] * sh).sum(axis=-1)

    def add_to_x(self, tab: np.ndarray) -> np.ndarray:
        """tab[..., x] + x rowwise, the shifted map behind CPP checks.

        Char 2 reduces to XOR. For odd p a full order x order addition
        table is materialized once (odd-characteristic towers at desk
        scale stay small enough for that).
        """
        xs = np.arange(self.order, dtype=tab.dtype)
        if self.p == 2:
            return tab ^ xs
        if self._full_add is None:
            full = np.empty((self.order, self.order), dtype=np.int32)
            row = np.arange(self.order, dtype=np.int64)
            for a in range(0, self.order, _ROW_BLOCK):
                blk = np.arange(a, min(a + _ROW_BLOCK, self.order), dtype=np.int64)
                full[a : a + len(blk)] = self.add(blk[:, None], row[None, :])
            self._full_add = full
        return self._full_add[tab, xs]

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.MEXP[self.LOG[a] + self.LOG[b]]

    def pow_map(self, a: np.ndarray, e: int) -> np.ndarray:
        """a^e elementwise (e >= 1); zero stays zero."""
        e = int(e)
        # the exponent product needs 64-bit room before reduction
        out = self.EXP[(self.LOG[a].astype(np.int64) * e) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    def pow_all(self, e: int) -> np.ndarray:
        return self.pow_map(np.arange(self.order, dtype=np.int64), e)

    def scale_row(self, b: int) -> np.ndarray:
        """embed(b) * x for every x; rows cached per base code b."""
        row = self._scale_rows.get(b)
        if row is None:
            xs = np.arange(self.order, dtype=np.int64)
            row = self.mul(np.full(self.order, b, dtype=np.int64), xs)
            self._scale_rows[b] = row
        return row

    # -- verdicts --------------------------------------------------------

    def is_bijection(self, tab: np.ndarray) -> bool:
        hit = self._hit
        hit[:] = False
        hit[tab] = True
        return bool(hit.all())

    def cpp_status(self, tab: np.ndarray) -> tuple[bool, bool]:
        perm = self.is_bijection(tab)
        if not perm:
            return False, False
        return True, self.is_bijection(self.add_to_x(tab))

    # -- whole-field pair scans (chunked to bound memory) ----------------

    def check_trace_additive(self) -> bool:
        xs = np.arange(self.order, dtype=np.int64)
        for lo in range(0, self.order, _ROW_BLOCK):
            rows = xs[lo : lo + _ROW_BLOCK, None]
            sums = self.add(rows, xs[None, :])
            want = self.base.ADD[self.TR[rows], self.TR[xs[None, :]]]
            if not (self.TR[sums] == want).all():
                return False
        return True

    def check_norm_multiplicative(self) -> bool:
        m = self.order - 1
        nor_by_log = self.NOR[self.EXP]
        for lo in range(0, m, _ROW_BLOCK):
            li = np.arange(lo, min(lo + _ROW_BLOCK, m), dtype=np.int64)[:, None]
            lj = np.arange(m, dtype=np.int64)[None, :]
            lhs = nor_by_log[(li + lj) % m]
            want = self.base.MUL[nor_by_log[li], nor_by_log[lj]]
            if not (lhs == want).all():
                return False
        return True


_BASE_CACHE: dict[str, BaseTables] = {}
_TOWER_CACHE: dict[str, TowerTables] = {}


def base_tables(field: FieldDesc) -> BaseTables:
    key = field.descriptor()
    if key not in _BASE_CACHE:
        _BASE_CACHE[key] = BaseTables(field)
    return _BASE_CACHE[key]


def tower_tables(tower: TowerDesc) -> TowerTables:
    key = tower.descriptor()
    if key not in _TOWER_CACHE:
        _TOWER_CACHE[key] = TowerTables(tower, base_tables(tower.base))
    return _TOWER_CACHE[key]
