"""Construction builders: lift complete permutations of F_q to F_{q^n}.

Each builder validates its preconditions, tests the subfield witness
exhaustively (predicted_cpp is never produced by symbolic reasoning), and
returns a LiftResult that can evaluate the lifted map pointwise and, on
request, expand it to a dense polynomial. The two representations are
independent routes to the same map and the tests hold them against each
other.

The lifted polynomial is kept exactly as the construction writes it; no
exponent reduction is applied, because x^(q^n) and x are different
polynomials inducing the same map and the claims being checked are about
maps. Dense expansion is lazy and size-guarded since composed forms can be
orders of magnitude larger than the map they induce.
"""

from __future__ import annotations

import math
from typing import Callable, Optional, Union

from .errors import (
    FieldMismatch,
    HypothesisFails,
    OrderCapExceeded,
    PreconditionViolated,
)
from .fields import (
    FieldDesc,
    FieldElement,
    Poly,
    TowerDesc,
    embed_poly,
    make_extension,
    make_prime_field,
    make_tower,
)
from .maps import (
    PPoly,
    norm_exponent,
    ppoly_permutes_kernel,
    ppoly_quotient,
    ppoly_quotient_eval,
    trace_kernel,
)
from .permcheck import (
    DEFAULT_EXHAUSTIVE_CAP,
    eval_poly,
    is_complete_permutation,
    table_verdict,
)

# dense coefficient-count guard for lazy polynomial expansion
EXPANSION_COEFF_CAP = 1 << 16


def _n_inverse(q: int, n: int) -> int:
    """A positive n' with n*n' = 1 mod (q-1); for q = 2 any n' works, use 1."""
    if q == 2:
        return 1
    return pow(n, -1, q - 1)


def _base_poly(h, tower: TowerDesc, what: str = "h") -> Poly:
    if not isinstance(h, Poly) or h.home != tower.base:
        raise FieldMismatch(f"{what} must be a Poly over the base field {tower.base!r}")
    return h


def _base_code(a, tower: TowerDesc, what: str) -> int:
    if isinstance(a, FieldElement):
        if a.home != tower.base:
            raise FieldMismatch(f"{what} must live in the base field {tower.base!r}")
        return a.code
    a = int(a)
    if not 0 <= a < tower.q:
        raise FieldMismatch(f"{what} code {a} outside the base field")
    return a


def _trace_poly(tower: TowerDesc) -> Poly:
    codes = [0] * (tower.q ** (tower.n - 1) + 1)
    for i in range(tower.n):
        codes[tower.q**i] = 1
    return Poly._raw(tower, codes)


def _scalar_trace(tower: TowerDesc, xc: int) -> int:
    q = tower.q
    acc = xc
    t = xc
    for _ in range(tower.n - 1):
        t = tower._cpow(t, q)
        acc = tower._cadd(acc, t)
    return acc


def _guard_expansion(ncoeffs: int):
    if ncoeffs > EXPANSION_COEFF_CAP:
        raise OrderCapExceeded(ncoeffs, EXPANSION_COEFF_CAP, "dense polynomial expansion")


class LiftResult:
    """One construction outcome.

    subfield_witness is the base-field polynomial whose CPP status the
    construction guarantees equivalent to the lifted map's; predicted_cpp is that
    witness's exhaustively tested status. The lifted map itself is exposed
    pointwise (evaluate / map_table / verified_cpp) and as a lazily
    expanded dense Poly (lifted).
    """

    __slots__ = (
        "construction",
        "tower",
        "params",
        "preconditions",
        "subfield_witness",
        "predicted_cpp",
        "extras",
        "_map_code",
        "_expand",
        "_lifted",
    )

    def __init__(
        self,
        construction: str,
        tower: TowerDesc,
        params: dict,
        preconditions: list[tuple[str, bool]],
        subfield_witness: Poly,
        predicted_cpp: Optional[bool],
        map_code: Callable[[int], int],
        expand: Callable[[], Poly],
        extras: Optional[dict] = None,
    ):
        self.construction = construction
        self.tower = tower
        self.params = params
        self.preconditions = preconditions
        self.subfield_witness = subfield_witness
        self.predicted_cpp = predicted_cpp
        self.extras = extras or {}
        self._map_code = map_code
        self._expand = expand
        self._lifted = None

    @property
    def lifted(self) -> Poly:
        """Dense form of the lifted polynomial (may refuse huge expansions)."""
        if self._lifted is None:
            self._lifted = self._expand()
        return self._lifted

    def evaluate(self, x: FieldElement) -> FieldElement:
        if isinstance(x, FieldElement) and x.home == self.tower.base:
            x = self.tower.embed(x)
        if not isinstance(x, FieldElement) or x.home != self.tower:
            raise FieldMismatch(f"{x!r} does not live in {self.tower!r}")
        return FieldElement(self.tower, self._map_code(x.code))

    def map_table(self, cap: Optional[int] = None) -> list[int]:
        limit = DEFAULT_EXHAUSTIVE_CAP if cap is None else cap
        if self.tower.order > limit:
            raise OrderCapExceeded(self.tower.order, limit)
        f = self._map_code
        return [f(xc) for xc in range(self.tower.order)]

    def verified_cpp(self, cap: Optional[int] = None) -> Optional[bool]:
        """Exhaustive CPP status of the lifted map, or None above the cap."""
        limit = DEFAULT_EXHAUSTIVE_CAP if cap is None else cap
        if self.tower.order > limit:
            return None
        tab = self.map_table(limit)
        if not table_verdict(self.tower.order, tab).is_permutation:
            return False
        add = self.tower._cadd
        shifted = [add(v, x) for x, v in enumerate(tab)]
        return table_verdict(self.tower.order, shifted).is_permutation

    def to_json(self, cap: Optional[int] = None) -> dict:
        try:
            lifted_codes = self.lifted.codes()
        except OrderCapExceeded:
            lifted_codes = None
        return {
            "construction": self.construction,
            "params": self.params,
            "preconditions": [{"name": n, "holds": ok} for n, ok in self.preconditions],
            "subfield_witness": self.subfield_witness.codes(),
            "lifted": lifted_codes,
            "predicted_cpp": self.predicted_cpp,
            "verified_cpp": self.verified_cpp(cap),
        }

    def __repr__(self):
        return f"LiftResult({self.construction}, predicted={self.predicted_cpp})@{self.tower!r}"


# ---------------------------------------------------------------------------
# norm-side constructions
# ---------------------------------------------------------------------------


def norm_form_permutes(exp_r: int, h: Poly, tower: TowerDesc) -> bool:
    """Does x^exp_r * h(nor(x)) permute the tower?  Decided on the base field.

    True iff gcd(exp_r, (q^n-1)/(q-1)) = 1 and x^(exp_r * n') * h(x)
    permutes F_q, where n' inverts n mod (q-1). The equivalent base-field
    form x^exp_r * h(x^n) is evaluated as well and the two verdicts are
    asserted to coincide, which keeps the exponent bookkeeping honest.
    """
    h = _base_poly(h, tower)
    if h.is_zero():
        raise PreconditionViolated("h != 0", "the zero polynomial has no norm form")
    if exp_r < 1:
        raise PreconditionViolated("exp_r >= 1", f"got {exp_r}")
    q, n = tower.q, tower.n
    g = math.gcd(n, q - 1)
    if g != 1:
        raise PreconditionViolated("gcd(n, q-1) = 1", f"gcd({n}, {q - 1}) = {g}")
    n_inv = _n_inverse(q, n)
    base = tower.base
    e_a = exp_r * n_inv
    tab_a = []
    tab_b = []
    for xc in range(q):
        hx = eval_poly(h, FieldElement(base, xc)).code
        tab_a.append(base._cmul(base._cpow(xc, e_a), hx))
        hxn = eval_poly(h, FieldElement(base, base._cpow(xc, n))).code
        tab_b.append(base._cmul(base._cpow(xc, exp_r), hxn))
    perm_a = table_verdict(q, tab_a).is_permutation
    perm_b = table_verdict(q, tab_b).is_permutation
    if perm_a != perm_b:
        raise AssertionError(
            f"the two base-field forms disagree (x^{e_a}*h(x): {perm_a}, "
            f"x^{exp_r}*h(x^{n}): {perm_b})"
        )
    cond1 = math.gcd(exp_r, norm_exponent(tower)) == 1
    return cond1 and perm_a


def norm_lift(h: Poly, tower: TowerDesc) -> LiftResult:
    """Lift h to x*h(nor(x)) on the tower; witness is x*h(x^n) on the base.

    The two CPP statuses are equivalent whenever gcd(n, q-1) = 1;
    predicted_cpp is the witness's exhaustive status.
    """
    h = _base_poly(h, tower)
    q, n = tower.q, tower.n
    g = math.gcd(n, q - 1)
    if g != 1:
        raise PreconditionViolated("gcd(n, q-1) = 1", f"gcd({n}, {q - 1}) = {g}")
    base = tower.base
    npow = norm_exponent(tower)
    witness = h.substitute_monomial(n).shift(1)
    predicted = is_complete_permutation(witness).both
    htab = [eval_poly(h, FieldElement(base, v)).code for v in range(q)]

    def f(xc: int) -> int:
        nor = tower._cpow(xc, npow)  # lands in the embedded base field
        return tower._cmul(xc, htab[nor])

    def expand() -> Poly:
        _guard_expansion(max(h.degree, 0) * npow + 2)
        return embed_poly(h, tower).substitute_monomial(npow).shift(1)

    return LiftResult(
        construction="norm-lift",
        tower=tower,
        params={"field": tower.descriptor(), "h": h.codes(), "n": n},
        preconditions=[("gcd(n, q-1) = 1", True)],
        subfield_witness=witness,
        predicted_cpp=predicted,
        map_code=f,
        expand=expand,
    )


def monomial_cpp_check(alpha, s: int, tower: TowerDesc) -> LiftResult:
    """The monomial alpha*x^(1+s*(q^n-1)/(q-1)) with witness alpha*x^(1+n*s)."""
    if not isinstance(s, int) or s < 0:
        raise PreconditionViolated("s >= 0", f"got {s!r}")
    q, n = tower.q, tower.n
    g = math.gcd(n, q - 1)
    if g != 1:
        raise PreconditionViolated("gcd(n, q-1) = 1", f"gcd({n}, {q - 1}) = {g}")
    a_code = _base_code(alpha, tower, "alpha")
    if a_code == 0:
        raise PreconditionViolated("alpha != 0")
    base = tower.base
    npow = norm_exponent(tower)
    w_exp = 1 + n * s
    l_exp = 1 + s * npow
    _guard_expansion(w_exp + 1)
    witness = Poly.monomial(base, w_exp, a_code)
    wtab = [base._cmul(a_code, base._cpow(xc, w_exp)) for xc in range(q)]
    perm = table_verdict(q, wtab).is_permutation
    shifted = [base._cadd(v, x) for x, v in enumerate(wtab)]
    predicted = perm and table_verdict(q, shifted).is_permutation

    def f(xc: int) -> int:
        return tower._cmul(a_code, tower._cpow(xc, l_exp))

    def expand() -> Poly:
        _guard_expansion(l_exp + 1)
        return Poly.monomial(tower, l_exp, a_code)

    return LiftResult(
        construction="monomial",
        tower=tower,
        params={"field": tower.descriptor(), "alpha": a_code, "s": s, "exponent": l_exp},
        preconditions=[("gcd(n, q-1) = 1", True), ("alpha != 0", True), ("s >= 0", True)],
        subfield_witness=witness,
        predicted_cpp=predicted,
        map_code=f,
        expand=expand,
    )


def cppeg_construct(e: int, t: int, k: int, alpha) -> LiftResult:
    """Unconditional CPP monomials of F_{q^2} for q = 2^(e*t).

    With r = 2^e the monomial alpha*x^(1+(r^k-1)(q+1)q/2) is a CPP of
    F_{q^2} whenever 1 <= k < t, gcd(k, t) != 1 if e = 1, and alpha avoids
    the (r^k-1)-th powers of F_q*. The witness is the monomial the
    reduction hands back, alpha*x^(1+2s); as a map on F_q it collapses to
    alpha*x^(r^k) (recorded in extras).
    """
    if not (isinstance(e, int) and isinstance(t, int) and isinstance(k, int)):
        raise PreconditionViolated("integer parameters", f"e={e!r} t={t!r} k={k!r}")
    if e < 1 or t < 1:
        raise PreconditionViolated("e >= 1 and t >= 1", f"e={e} t={t}")
    if isinstance(alpha, FieldElement):
        base = alpha.home
        if not isinstance(base, FieldDesc) or base.p != 2 or base.r != e * t:
            raise FieldMismatch(f"alpha must live in F_(2^{e * t})")
        a_code = alpha.code
    else:
        base = make_extension(make_prime_field(2), e * t)
        a_code = int(alpha)
        if not 0 <= a_code < base.q:
            raise FieldMismatch(f"alpha code {a_code} outside F_(2^{e * t})")
    q = base.q
    rr = 2**e
    if not 1 <= k < t:
        raise PreconditionViolated("1 <= k < t", f"k={k}, t={t}")
    if e == 1 and math.gcd(k, t) == 1:
        raise PreconditionViolated("gcd(k, t) != 1 when e = 1", f"gcd({k}, {t}) = 1")
    m = rr**k - 1
    g = math.gcd(m, q - 1)
    power_class = base._cpow(a_code, (q - 1) // g) if a_code else 0
    if a_code == 0 or power_class == 1:
        raise PreconditionViolated(
            "alpha not in (F_q)^(r^k - 1)",
            f"alpha = {a_code} is a {m}-th power (or zero) in F_{q}",
        )
    tower = make_tower(base, 2)
    s = m * q // 2
    npow = q + 1
    l_exp = 1 + s * npow
    w_exp = 1 + 2 * s
    _guard_expansion(w_exp + 1)
    witness = Poly.monomial(base, w_exp, a_code)
    wtab = [base._cmul(a_code, base._cpow(xc, w_exp)) for xc in range(q)]
    perm = table_verdict(q, wtab).is_permutation
    shifted = [base._cadd(v, x) for x, v in enumerate(wtab)]
    predicted = perm and table_verdict(q, shifted).is_permutation
    if predicted is not True:
        raise AssertionError(
            f"unconditional construction produced a non-CPP witness at "
            f"e={e} t={t} k={k} alpha={a_code}"
        )

    def f(xc: int) -> int:
        return tower._cmul(a_code, tower._cpow(xc, l_exp))

    def expand() -> Poly:
        _guard_expansion(l_exp + 1)
        return Poly.monomial(tower, l_exp, a_code)

    return LiftResult(
        construction="cppeg",
        tower=tower,
        params={
            "field": tower.descriptor(),
            "e": e,
            "t": t,
            "k": k,
            "alpha": a_code,
            "exponent": l_exp,
        },
        preconditions=[
            ("1 <= k < t", True),
            ("gcd(k, t) != 1 when e = 1", True),
            ("alpha not in (F_q)^(r^k - 1)", True),
        ],
        subfield_witness=witness,
        predicted_cpp=predicted,
        map_code=f,
        expand=expand,
        extras={"witness_map_exponent": rr**k, "s": s},
    )


# ---------------------------------------------------------------------------
# trace-side constructions
# ---------------------------------------------------------------------------


def trace_lift_simple(h: Poly, tower: TowerDesc) -> LiftResult:
    """Lift h to x*h(tr(x)); witness is x*h(x). Needs h(0) outside {0, -1}."""
    h = _base_poly(h, tower)
    base = tower.base
    h0 = h.coefficient(0).code
    minus_one = base._cneg(1)
    if h0 == 0 or h0 == minus_one:
        raise PreconditionViolated(
            "h(0) not in {0, -1}", f"h(0) = {h0} (note -1 encodes as {minus_one})"
        )
    witness = h.shift(1)
    predicted = is_complete_permutation(witness).both
    q = tower.q
    htab = [eval_poly(h, FieldElement(base, v)).code for v in range(q)]

    def f(xc: int) -> int:
        return tower._cmul(xc, htab[_scalar_trace(tower, xc)])

    def expand() -> Poly:
        _guard_expansion(max(h.degree, 0) * q ** (tower.n - 1) + 2)
        return embed_poly(h, tower).compose(_trace_poly(tower)).shift(1)

    return LiftResult(
        construction="trace-simple",
        tower=tower,
        params={"field": tower.descriptor(), "h": h.codes()},
        preconditions=[("h(0) not in {0, -1}", True)],
        subfield_witness=witness,
        predicted_cpp=predicted,
        map_code=f,
        expand=expand,
    )


def general_trace_map(h: Poly, L: PPoly, a, tower: TowerDesc) -> Callable[[int], int]:
    """Pointwise x -> x*H(x) with H(x) = h(tr x) + a*A(tr x) - a*A(x).

    No hypothesis checking happens here; the proof identity
    tr(x*H(x)) = tr(x)*h(tr(x)) holds for this map regardless of whether
    the kernel hypothesis does, and tests exercise exactly that.
    """
    h = _base_poly(h, tower)
    if L.tower != tower:
        raise FieldMismatch("L belongs to a different tower")
    a_code = _base_code(a, tower, "a")
    base = tower.base
    q = tower.q
    htab = [eval_poly(h, FieldElement(base, v)).code for v in range(q)]
    # A(t) for t in the embedded base field: embed(t) has code t
    atab = [ppoly_quotient_eval(L, FieldElement(tower, t)).code for t in range(q)]

    def f(xc: int) -> int:
        t = _scalar_trace(tower, xc)
        ax = ppoly_quotient_eval(L, FieldElement(tower, xc)).code
        hh = tower._cadd(htab[t], tower._cmul(a_code, atab[t]))
        hh = tower._csub(hh, tower._cmul(a_code, ax))
        return tower._cmul(xc, hh)

    return f


def _proof_identity_holds(
    h: Poly, tower: TowerDesc, f: Callable[[int], int], cap: int
) -> Optional[bool]:
    """Check tr(f(x)) = tr(x)*h(tr(x)) over the whole tower (None above cap)."""
    if tower.order > cap:
        return None
    base = tower.base
    htab = [eval_poly(h, FieldElement(base, v)).code for v in range(tower.q)]
    for xc in range(tower.order):
        t = _scalar_trace(tower, xc)
        if _scalar_trace(tower, f(xc)) != base._cmul(t, htab[t]):
            return False
    return True


def trace_lift_general(h: Poly, L: PPoly, a, tower: TowerDesc) -> LiftResult:
    """Lift via H(x) = h(tr x) + a*A(tr x) - a*A(x); witness is x*h(x).

    The kernel hypothesis is verified exhaustively before anything is
    built: for every b in F_q both maps L(x) - (h(b)/a + A(b))x and
    L(x) - ((h(b)+1)/a + A(b))x must permute ker(tr). The first failure
    raises HypothesisFails naming b and which of the two maps broke.
    """
    h = _base_poly(h, tower)
    if L.tower != tower:
        raise FieldMismatch("L belongs to a different tower")
    a_code = _base_code(a, tower, "a")
    if a_code == 0:
        raise PreconditionViolated("a != 0", "the hypothesis divides by a")
    base = tower.base
    q = tower.q
    a_inv = base._cinv(a_code)
    kernel_trivial = len(trace_kernel(tower)) == 1
    verdict_cache: dict[int, bool] = {}

    def kernel_ok(theta: int) -> bool:
        if theta not in verdict_cache:
            sh = L.shifted(theta)
            if sh is None:
                verdict_cache[theta] = kernel_trivial
            else:
                verdict_cache[theta] = ppoly_permutes_kernel(sh)
        return verdict_cache[theta]

    for b in range(q):
        hb = eval_poly(h, FieldElement(base, b)).code
        ab = ppoly_quotient_eval(L, FieldElement(tower, b)).code
        if ab >= q:
            raise AssertionError("A(b) escaped the base field")
        theta0 = base._cadd(base._cmul(hb, a_inv), ab)
        if not kernel_ok(theta0):
            raise HypothesisFails(b, 0)
        theta1 = base._cadd(base._cmul(base._cadd(hb, 1), a_inv), ab)
        if not kernel_ok(theta1):
            raise HypothesisFails(b, 1)

    witness = h.shift(1)
    predicted = is_complete_permutation(witness).both
    f = general_trace_map(h, L, a_code, tower)
    identity = _proof_identity_holds(h, tower, f, DEFAULT_EXHAUSTIVE_CAP)

    def expand() -> Poly:
        apoly = ppoly_quotient(L)
        deg_tr = tower.q ** (tower.n - 1)
        _guard_expansion(max(max(h.degree, 0), apoly.degree) * deg_tr + 2)
        trp = _trace_poly(tower)
        hpart = embed_poly(h, tower).compose(trp)
        apart = apoly.compose(trp).scale(a_code)
        return (hpart + apart - apoly.scale(a_code)).shift(1)

    return LiftResult(
        construction="trace-general",
        tower=tower,
        params={"field": tower.descriptor(), "h": h.codes(), "L": L.text(), "a": a_code},
        preconditions=[("a != 0", True), ("kernel hypothesis for all b", True)],
        subfield_witness=witness,
        predicted_cpp=predicted,
        map_code=f,
        expand=expand,
        extras={
            "proof_identity_holds": identity,
            "strict_coefficient_form": L.fits_strict_form(),
        },
    )


def trace_lift_binomial(h: Poly, k: int, a, tower: TowerDesc) -> LiftResult:
    """The L = x^(p^k) specialization of the general trace lift.

    Arithmetic conditions gcd(k, n) = 1, p not dividing n, and
    gcd(n, p^gcd(k, r) - 1) = 1 guarantee the kernel hypothesis for every
    shift; the delegate still verifies it exhaustively rather than
    trusting the guarantee.
    """
    h = _base_poly(h, tower)
    p, n, r = tower.p, tower.n, tower.base.r
    if not isinstance(k, int) or k < 1:
        raise PreconditionViolated("k >= 1", f"got {k!r}")
    g = math.gcd(k, n)
    if g != 1:
        raise PreconditionViolated("gcd(k, n) = 1", f"gcd({k}, {n}) = {g}")
    if n % p == 0:
        raise PreconditionViolated("p does not divide n", f"p = {p}, n = {n}")
    d = p ** math.gcd(k, r) - 1
    g2 = math.gcd(n, d)
    if g2 != 1:
        raise PreconditionViolated(
            "gcd(n, p^gcd(k, r) - 1) = 1", f"gcd({n}, {d}) = {g2}"
        )
    a_code = _base_code(a, tower, "a")
    if a_code == 0:
        raise PreconditionViolated("a != 0")
    # x^(p^k) and x^(p^(k mod rn)) are the same map on the tower
    L = PPoly.monomial(tower, k % tower.full_degree)
    inner = trace_lift_general(h, L, a_code, tower)
    return LiftResult(
        construction="trace-binomial",
        tower=tower,
        params={"field": tower.descriptor(), "h": h.codes(), "k": k, "a": a_code},
        preconditions=[
            ("gcd(k, n) = 1", True),
            ("p does not divide n", True),
            ("gcd(n, p^gcd(k, r) - 1) = 1", True),
            ("a != 0", True),
            ("kernel hypothesis for all b", True),
        ],
        subfield_witness=inner.subfield_witness,
        predicted_cpp=inner.predicted_cpp,
        map_code=inner._map_code,
        expand=inner._expand,
        extras=dict(inner.extras),
    )
