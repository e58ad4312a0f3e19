"""Exact arithmetic for finite fields and two-level extension towers.

A base field F_q with q = p^r is represented as F_p[x] modulo a monic
irreducible of degree r; an extension F_{q^n} is always a tower over its
base F_q (never flattened to F_p[x]/(deg rn)), so relative trace and norm
keep their meaning. Every element is identified with a canonical integer
code: coefficient vectors are read as base-q (resp. base-p) positional
numbers with the constant coefficient as the least significant digit. Codes
are what the CLI prints and what value tables store.

Moduli, when not supplied, are chosen canonically: candidate coefficient
tuples are scanned in ascending code order (constant coefficient varying
fastest) and the first monic irreducible wins, so two constructions of the
same field always agree.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NotIrreducible,
    NotPrime,
    OrderCapExceeded,
    OutOfRange,
)

# Arithmetic is supported up to this order; exhaustive scans have their own
# (smaller, configurable) cap in permcheck.
MAX_FIELD_ORDER = 1 << 20

# Base fields at or below this order get exp/log tables on first multiply.
_LOG_TABLE_MAX = 1 << 16


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


class FieldElement:
    """An element of a FieldDesc or TowerDesc, identified by its code."""

    __slots__ = ("home", "code")

    def __init__(self, home, code: int):
        self.home = home
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficient vector over the level below, low degree first."""
        return tuple(self.home._vec(self.code))

    def _pair(self, other):
        if not isinstance(other, FieldElement):
            raise FieldMismatch(f"cannot combine {self!r} with {other!r}")
        if self.home == other.home:
            return self.home, self.code, other.code
        # a base-field element embeds into its own tower automatically
        if isinstance(self.home, TowerDesc) and other.home == self.home.base:
            return self.home, self.code, other.code
        if isinstance(other.home, TowerDesc) and self.home == other.home.base:
            return other.home, self.code, other.code
        raise FieldMismatch(f"elements live in different fields: {self.home!r} vs {other.home!r}")

    def __add__(self, other):
        home, a, b = self._pair(other)
        return FieldElement(home, home._cadd(a, b))

    def __sub__(self, other):
        home, a, b = self._pair(other)
        return FieldElement(home, home._csub(a, b))

    def __mul__(self, other):
        home, a, b = self._pair(other)
        return FieldElement(home, home._cmul(a, b))

    def __neg__(self):
        return FieldElement(self.home, self.home._cneg(self.code))

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        return FieldElement(self.home, self.home._cpow(self.code, e))

    def __truediv__(self, other):
        home, a, b = self._pair(other)
        return FieldElement(home, home._cmul(a, home._cinv(b)))

    def inv(self):
        return FieldElement(self.home, self.home._cinv(self.code))

    def frobenius(self, i: int):
        """x raised to the p^i, by repeated p-th powering."""
        if i < 0:
            raise ValueError("frobenius index must be non-negative")
        home = self.home
        i %= home.full_degree
        c = self.code
        for _ in range(i):
            c = home._cpow(c, home.p)
        return FieldElement(home, c)

    def is_zero(self) -> bool:
        return self.code == 0

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.code == other.code and self.home == other.home

    def __hash__(self):
        return hash((self.code, self.home))

    def __int__(self):
        return self.code

    def __str__(self):
        return str(self.code)

    def __repr__(self):
        return f"{self.code}@{self.home!r}"


class FieldDesc:
    """F_{p^r} as F_p[x] modulo a monic irreducible of degree r.

    Element codes are sum(c_i * p^i) over the coefficient residues c_i.
    Use make_prime_field / make_extension rather than the constructor.
    """

    def __init__(self, p: int, r: int, modulus: tuple[int, ...]):
        self.p = p
        self.r = r
        self.modulus = tuple(int(c) % p for c in modulus)
        self.q = p**r
        self.order = self.q
        self.full_degree = r
        self._exp = None
        self._log = None
        self._red_rows = self._make_red_rows() if r > 1 else None
        self._lagrange_cache = None

    # -- representation ------------------------------------------------

    def _vec(self, code: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.r):
            code, c = divmod(code, p)
            out.append(c)
        return out

    def _codeof(self, vec: Sequence[int]) -> int:
        code = 0
        for c in reversed(vec):
            code = code * self.p + c
        return code

    def _make_red_rows(self):
        # row j holds the coefficient vector of x^(r+j) mod modulus
        p, r, m = self.p, self.r, self.modulus
        row = [(-m[i]) % p for i in range(r)]
        rows = [row]
        for _ in range(r - 2):
            prev = rows[-1]
            hi = prev[r - 1]
            row = [(hi * rows[0][0]) % p] + [
                (prev[i - 1] + hi * rows[0][i]) % p for i in range(1, r)
            ]
            rows.append(row)
        return rows

    # -- code arithmetic -------------------------------------------------

    def _cadd(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            # digits are single bits in disjoint positions, so coefficientwise
            # addition mod 2 is XOR of the codes
            return a ^ b
        p = self.p
        va, vb = self._vec(a), self._vec(b)
        return self._codeof([(x + y) % p for x, y in zip(va, vb)])

    def _cneg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        return self._codeof([(-x) % p for x in self._vec(a)])

    def _csub(self, a: int, b: int) -> int:
        return self._cadd(a, self._cneg(b))

    def _mul_vec(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        p, r = self.p, self.r
        prod = [0] * (2 * r - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        prod[i + j] = (prod[i + j] + ui * vj) % p
        res = prod[:r]
        for j in range(r - 1):
            hi = prod[r + j]
            if hi:
                row = self._red_rows[j]
                for i in range(r):
                    if row[i]:
                        res[i] = (res[i] + hi * row[i]) % p
        return res

    def _build_logtables(self):
        q = self.q
        g = self._find_generator_vec()
        exp = [0] * (q - 1)
        log = [-1] * q
        acc = [1] + [0] * (self.r - 1)
        for j in range(q - 1):
            c = self._codeof(acc)
            exp[j] = c
            log[c] = j
            acc = self._mul_vec(acc, g)
        if self._codeof(acc) != 1:
            raise AssertionError("generator order mismatch while building tables")
        self._exp = exp
        self._log = log

    def _find_generator_vec(self):
        q = self.q
        factors = _prime_factors(q - 1)
        for cand in range(2, q):
            v = self._vec(cand)
            ok = True
            for f in factors:
                if self._pow_vec(v, (q - 1) // f) == [1] + [0] * (self.r - 1):
                    ok = False
                    break
            if ok:
                return v
        raise AssertionError("no multiplicative generator found")

    def _pow_vec(self, v, e):
        acc = [1] + [0] * (self.r - 1)
        base = list(v)
        while e:
            if e & 1:
                acc = self._mul_vec(acc, base)
            base = self._mul_vec(base, base)
            e >>= 1
        return acc

    def _cmul(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is None and self.q <= _LOG_TABLE_MAX:
            self._build_logtables()
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._codeof(self._mul_vec(self._vec(a), self._vec(b)))

    def _cinv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.r == 1:
            return pow(a, -1, self.p)
        if self._log is None and self.q <= _LOG_TABLE_MAX:
            self._build_logtables()
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self._cpow(a, self.q - 2)

    def _cpow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.r == 1:
            return pow(a, e, self.p)
        if self._log is None and self.q <= _LOG_TABLE_MAX:
            self._build_logtables()
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._codeof(self._pow_vec(self._vec(a), e))

    # -- element API -----------------------------------------------------

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def decode(self, code: int) -> FieldElement:
        if not isinstance(code, int) or not 0 <= code < self.order:
            raise OutOfRange(code, self.order)
        return FieldElement(self, code)

    def encode(self, x: FieldElement) -> int:
        if not isinstance(x, FieldElement) or x.home != self:
            raise FieldMismatch(f"{x!r} does not live in {self!r}")
        return x.code

    def element(self, coeffs: Iterable[int]) -> FieldElement:
        vec = [int(c) % self.p for c in coeffs]
        if len(vec) > self.r:
            raise ValueError(f"too many coefficients for degree {self.r}")
        vec += [0] * (self.r - len(vec))
        return FieldElement(self, self._codeof(vec))

    def elements(self) -> Iterator[FieldElement]:
        """All elements in ascending code order."""
        for code in range(self.order):
            yield FieldElement(self, code)

    def multiplicative_generator(self) -> FieldElement:
        """Smallest-code generator of the multiplicative group."""
        if self.q == 2:
            return self.one
        if self.r == 1:
            factors = _prime_factors(self.q - 1)
            for cand in range(2, self.q):
                if all(pow(cand, (self.q - 1) // f, self.p) != 1 for f in factors):
                    return FieldElement(self, cand)
            raise AssertionError("no generator found")
        return FieldElement(self, self._codeof(self._find_generator_vec()))

    def descriptor(self) -> str:
        mods = ",".join(str(c) for c in self.modulus)
        return f"p={self.p};r={self.r};mod=[{mods}]"

    def __eq__(self, other):
        if not isinstance(other, FieldDesc):
            return NotImplemented
        return (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"F_{self.q}"


class TowerDesc:
    """F_{q^n} as F_q[y] modulo a monic irreducible of degree n over F_q.

    Element codes are sum(encode(c_i) * q^i) over base-field coefficients,
    so the embedded copy of F_q is exactly the codes below q.
    """

    def __init__(self, base: FieldDesc, n: int, modulus: tuple[int, ...]):
        self.base = base
        self.n = n
        self.modulus = tuple(int(c) for c in modulus)
        self.p = base.p
        self.q = base.q
        self.order = base.q**n
        self.full_degree = base.r * n
        self._red_rows = self._make_red_rows() if n > 1 else None
        self._kernel_cache = None
        self._lagrange_cache = None

    def _vec(self, code: int) -> list[int]:
        q = self.q
        out = []
        for _ in range(self.n):
            code, c = divmod(code, q)
            out.append(c)
        return out

    def _codeof(self, vec: Sequence[int]) -> int:
        code = 0
        for c in reversed(vec):
            code = code * self.q + c
        return code

    def _make_red_rows(self):
        b, n, m = self.base, self.n, self.modulus
        row = [b._cneg(m[i]) for i in range(n)]
        rows = [row]
        for _ in range(n - 2):
            prev = rows[-1]
            hi = prev[n - 1]
            row = [b._cmul(hi, rows[0][0])] + [
                b._cadd(prev[i - 1], b._cmul(hi, rows[0][i])) for i in range(1, n)
            ]
            rows.append(row)
        return rows

    def _cadd(self, a: int, b: int) -> int:
        if self.p == 2:
            # q is a power of two, so base digits occupy disjoint bit fields
            # and digitwise base addition is XOR of the whole codes
            return a ^ b
        base = self.base
        va, vb = self._vec(a), self._vec(b)
        return self._codeof([base._cadd(x, y) for x, y in zip(va, vb)])

    def _cneg(self, a: int) -> int:
        if self.p == 2:
            return a
        base = self.base
        return self._codeof([base._cneg(x) for x in self._vec(a)])

    def _csub(self, a: int, b: int) -> int:
        return self._cadd(a, self._cneg(b))

    def _mul_vec(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        b, n = self.base, self.n
        prod = [0] * (2 * n - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        prod[i + j] = b._cadd(prod[i + j], b._cmul(ui, vj))
        res = prod[:n]
        for j in range(n - 1):
            hi = prod[n + j]
            if hi:
                row = self._red_rows[j]
                for i in range(n):
                    if row[i]:
                        res[i] = b._cadd(res[i], b._cmul(hi, row[i]))
        return res

    def _cmul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return self.base._cmul(a, b)
        return self._codeof(self._mul_vec(self._vec(a), self._vec(b)))

    def _cpow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        acc, base = 1, a
        while e:
            if e & 1:
                acc = self._cmul(acc, base)
            base = self._cmul(base, base)
            e >>= 1
        return acc

    def _cinv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        return self._cpow(a, self.order - 2)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def decode(self, code: int) -> FieldElement:
        if not isinstance(code, int) or not 0 <= code < self.order:
            raise OutOfRange(code, self.order)
        return FieldElement(self, code)

    def encode(self, x: FieldElement) -> int:
        if not isinstance(x, FieldElement) or x.home != self:
            raise FieldMismatch(f"{x!r} does not live in {self!r}")
        return x.code

    def element(self, coeffs: Iterable[Union[int, FieldElement]]) -> FieldElement:
        vec = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.home != self.base:
                    raise FieldMismatch("tower coefficients must come from the base field")
                vec.append(c.code)
            else:
                c = int(c)
                if not 0 <= c < self.q:
                    raise OutOfRange(c, self.q)
                vec.append(c)
        if len(vec) > self.n:
            raise ValueError(f"too many coefficients for degree {self.n}")
        vec += [0] * (self.n - len(vec))
        return FieldElement(self, self._codeof(vec))

    def elements(self) -> Iterator[FieldElement]:
        for code in range(self.order):
            yield FieldElement(self, code)

    def embed(self, x: FieldElement) -> FieldElement:
        """Embed a base-field element (codes are preserved)."""
        if isinstance(x, FieldElement) and x.home == self:
            return x
        if not isinstance(x, FieldElement) or x.home != self.base:
            raise FieldMismatch(f"{x!r} is not an element of the base field {self.base!r}")
        return FieldElement(self, x.code)

    def to_base(self, x: FieldElement) -> FieldElement:
        """Coerce an element of the embedded base field back down to F_q."""
        if not isinstance(x, FieldElement) or x.home != self:
            raise FieldMismatch(f"{x!r} does not live in {self!r}")
        if x.code >= self.q:
            raise FieldMismatch(f"code {x.code} lies outside the embedded base field")
        return FieldElement(self.base, x.code)

    def multiplicative_generator(self) -> FieldElement:
        factors = _prime_factors(self.order - 1)
        for cand in range(2, self.order):
            if all(self._cpow(cand, (self.order - 1) // f) != 1 for f in factors):
                return FieldElement(self, cand)
        raise AssertionError("no generator found")

    def descriptor(self) -> str:
        parts = []
        for c in self.modulus:
            vec = self.base._vec(c)
            parts.append("[" + ",".join(str(x) for x in vec) + "]")
        return f"{self.base.descriptor()};n={self.n};tmod=[{','.join(parts)}]"

    def __eq__(self, other):
        if not isinstance(other, TowerDesc):
            return NotImplemented
        return (self.base, self.n, self.modulus) == (other.base, other.n, other.modulus)

    def __hash__(self):
        return hash((self.base, self.n, self.modulus))

    def __repr__(self):
        return f"F_{self.order}/F_{self.q}"


Home = Union[FieldDesc, TowerDesc]


# ---------------------------------------------------------------------------
# polynomial helpers on raw code lists (internal; Poly wraps these)
# ---------------------------------------------------------------------------


def _ptrim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _padd(home: Home, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = home._cadd(out[i], c)
    return _ptrim(out)


def _psub(home: Home, a: Sequence[int], b: Sequence[int]) -> list[int]:
    return _padd(home, a, [home._cneg(c) for c in b])


def _pmul(home: Home, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = home._cadd(out[i + j], home._cmul(ai, bj))
    return _ptrim(out)


def _pmod(home: Home, a: Sequence[int], m: Sequence[int]) -> list[int]:
    # m must be monic
    out = list(a)
    d = len(m) - 1
    while len(out) > d:
        c = out[-1]
        if c:
            shift = len(out) - 1 - d
            for i in range(d):
                if m[i]:
                    out[shift + i] = home._csub(out[shift + i], home._cmul(c, m[i]))
        out.pop()
    return _ptrim(out)


def _pmulmod(home, a, b, m):
    return _pmod(home, _pmul(home, a, b), m)


def _ppowmod(home, a, e, m):
    acc = [1]
    base = _pmod(home, a, m)
    while e:
        if e & 1:
            acc = _pmulmod(home, acc, base, m)
        base = _pmulmod(home, base, base, m)
        e >>= 1
    return acc


def _pgcd(home, a, b):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        inv = home._cinv(b[-1])
        bm = [home._cmul(c, inv) for c in b]  # monic divisor for _pmod
        a, b = b, _pmod(home, a, bm)
    return a


def _peval(home: Home, cs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = home._cadd(home._cmul(acc, x), c)
    return acc


def _poly_is_irreducible(home: Home, m: Sequence[int]) -> bool:
    """Irreducibility of a monic polynomial over the home field.

    Degree 2 and 3 reduce to a root check; higher degrees use the
    gcd-with-Frobenius-powers test.
    """
    d = len(m) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    if d <= 3:
        return all(_peval(home, m, x) != 0 for x in range(home.order))
    x = [0, 1]
    b = list(x)
    for _ in range(d // 2):
        b = _ppowmod(home, b, home.order, m)
        g = _pgcd(home, _psub(home, b, x), m)
        if len(g) != 1:
            return False
    return True


_MODULUS_CACHE: dict[tuple[str, int], tuple[int, ...]] = {}


def _canonical_modulus(home: Home, degree: int) -> tuple[int, ...]:
    """First irreducible monic in ascending code order, c_0 fastest.

    The scan is deterministic in (home, degree), so results are memoized;
    repeated tower construction otherwise dominates workloads that build
    the same field in a loop.
    """
    key = (home.descriptor(), degree)
    if key in _MODULUS_CACHE:
        return _MODULUS_CACHE[key]
    order = home.order
    for k in range(order**degree):
        cs = []
        kk = k
        for _ in range(degree):
            kk, c = divmod(kk, order)
            cs.append(c)
        m = cs + [1]
        if _poly_is_irreducible(home, m):
            _MODULUS_CACHE[key] = tuple(m)
            return tuple(m)
    raise AssertionError(f"no irreducible of degree {degree} found")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def make_prime_field(p: int) -> FieldDesc:
    """F_p with the formal degree-1 modulus x."""
    if not isinstance(p, int) or not _is_prime(p):
        raise NotPrime(p)
    if p > MAX_FIELD_ORDER:
        raise OrderCapExceeded(p, MAX_FIELD_ORDER, "field construction")
    return FieldDesc(p, 1, (0, 1))


def _normalize_modulus(home: Home, degree: int, modulus) -> tuple[int, ...]:
    cs = []
    for c in modulus:
        if isinstance(c, FieldElement):
            if c.home != home:
                raise FieldMismatch("modulus coefficients must come from the base field")
            cs.append(c.code)
        else:
            c = int(c)
            if not 0 <= c < home.order:
                raise OutOfRange(c, home.order)
            cs.append(c)
    if len(cs) != degree + 1:
        raise ValueError(f"modulus must have {degree + 1} coefficients, got {len(cs)}")
    if cs[-1] != 1:
        raise ValueError("modulus must be monic")
    if not _poly_is_irreducible(home, cs):
        raise NotIrreducible(cs, repr(home))
    return tuple(cs)


def make_extension(base: FieldDesc, degree: int, modulus=None):
    """Extend a field by the given degree.

    Over a prime field this yields a flat FieldDesc F_{p^degree}; over a
    non-prime base it yields the tower F_{q^degree} / F_q. Use make_tower to
    force a tower over a prime base.
    """
    if not isinstance(base, FieldDesc):
        raise FieldMismatch("make_extension needs a FieldDesc base")
    if not isinstance(degree, int) or degree < 1:
        raise ValueError("extension degree must be a positive integer")
    if base.r > 1:
        return make_tower(base, degree, modulus)
    if base.p**degree > MAX_FIELD_ORDER:
        raise OrderCapExceeded(base.p**degree, MAX_FIELD_ORDER, "field construction")
    if degree == 1 and modulus is None:
        return base
    if modulus is None:
        mod = _canonical_modulus(base, degree)
    else:
        mod = _normalize_modulus(base, degree, modulus)
    return FieldDesc(base.p, degree, mod)


def make_tower(base: FieldDesc, n: int, modulus=None) -> TowerDesc:
    """The tower F_{q^n} over F_q, q = base.q."""
    if not isinstance(base, FieldDesc):
        raise FieldMismatch("towers are built over a FieldDesc base")
    if not isinstance(n, int) or n < 1:
        raise ValueError("tower degree must be a positive integer")
    if base.q**n > MAX_FIELD_ORDER:
        raise OrderCapExceeded(base.q**n, MAX_FIELD_ORDER, "field construction")
    if modulus is None:
        mod = _canonical_modulus(base, n)
    else:
        mod = _normalize_modulus(base, n, modulus)
    return TowerDesc(base, n, mod)


def embed(x: FieldElement, tower: TowerDesc) -> FieldElement:
    return tower.embed(x)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial over a field or tower.

    Coefficients are stored low degree first with trailing zeros stripped;
    two polynomials are equal only as coefficient lists (x^q and x define
    the same map but different Polys). Construction accepts elements of the
    home, integer codes, or base-field elements when the home is a tower.
    """

    __slots__ = ("home", "coeffs")

    def __init__(self, home: Home, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.home == home:
                    cs.append(c.code)
                elif isinstance(home, TowerDesc) and c.home == home.base:
                    cs.append(c.code)
                else:
                    raise FieldMismatch(f"coefficient {c!r} not in {home!r}")
            else:
                c = int(c)
                if not 0 <= c < home.order:
                    raise OutOfRange(c, home.order)
                cs.append(c)
        while cs and cs[-1] == 0:
            cs.pop()
        self.home = home
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, home, codes: list[int]) -> "Poly":
        self = object.__new__(cls)
        while codes and codes[-1] == 0:
            codes.pop()
        self.home = home
        self.coeffs = tuple(codes)
        return self

    @classmethod
    def zero(cls, home) -> "Poly":
        return cls._raw(home, [])

    @classmethod
    def x(cls, home) -> "Poly":
        return cls._raw(home, [0, 1])

    @classmethod
    def constant(cls, home, c) -> "Poly":
        return cls(home, [c])

    @classmethod
    def monomial(cls, home, degree: int, coeff=None) -> "Poly":
        if degree < 0:
            raise ValueError("degree must be non-negative")
        code = 1 if coeff is None else (coeff.code if isinstance(coeff, FieldElement) else int(coeff))
        return cls(home, [0] * degree + [code])

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def codes(self) -> list[int]:
        return list(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, i: int) -> FieldElement:
        code = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElement(self.home, code)

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly._raw(self.home, _padd(self.home, list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly._raw(self.home, _psub(self.home, list(self.coeffs), list(other.coeffs)))

    def __neg__(self) -> "Poly":
        return Poly._raw(self.home, [self.home._cneg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly._raw(self.home, _pmul(self.home, self.coeffs, other.coeffs))

    def scale(self, c) -> "Poly":
        code = c.code if isinstance(c, FieldElement) else int(c)
        return Poly._raw(self.home, [self.home._cmul(code, x) for x in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        if self.is_zero():
            return self
        return Poly._raw(self.home, [0] * k + list(self.coeffs))

    def substitute_monomial(self, m: int) -> "Poly":
        """The polynomial f(x^m)."""
        if m < 1:
            raise ValueError("monomial degree must be positive")
        if self.is_zero():
            return self
        out = [0] * (self.degree * m + 1)
        for i, c in enumerate(self.coeffs):
            out[i * m] = c
        return Poly._raw(self.home, out)

    def compose(self, inner: "Poly") -> "Poly":
        """The polynomial f(inner(x)), by Horner on poly arithmetic."""
        self._check(inner)
        acc = Poly.zero(self.home)
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly._raw(self.home, [c])
        return acc

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly) or other.home != self.home:
            raise FieldMismatch("polynomials live over different fields")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.home == other.home and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.home, self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)})@{self.home!r}"


def embed_poly(h: Poly, tower: TowerDesc) -> Poly:
    """Reread a base-field polynomial over the tower (codes are preserved)."""
    if h.home == tower:
        return h
    if h.home != tower.base:
        raise FieldMismatch(f"{h!r} is not over the base field of {tower!r}")
    return Poly._raw(tower, list(h.coeffs))
