"""The quotient algebra R_F = R / R F(x^n).

Classes are represented by the unique skew polynomial of degree < ns.  The
module provides the central inverse of the powers of x, the reciprocal
polynomial, the trace functional and its associative bilinear form, and the
adjoint anti-isomorphism R_F -> R_{Fhat} together with its inverse.
"""

from __future__ import annotations

import numpy as np

from .errors import RingMismatch, SkewlabError, ZeroDivisor
from .gf import FieldElement
from .skew import CenterPoly, SkewPoly, gcrd_bezout, parse_element, right_divide

_RING_CACHE = {}


def get_ring(tower, F: CenterPoly) -> "QuotRing":
    key = (tower.key, F.coeffs)
    ring = _RING_CACHE.get(key)
    if ring is None:
        ring = QuotRing(tower, F)
        _RING_CACHE[key] = ring
    return ring


class QuotRing:
    """R_F for a fixed tower and center polynomial F."""

    def __init__(self, tower, F: CenterPoly):
        if F.tower != tower:
            raise RingMismatch("center polynomial belongs to a different tower")
        self.tower = tower
        self.F = F
        self.ns = tower.n * F.degree
        self.fxn = F.center_eval()
        self.key = (tower.key, F.coeffs)
        self.dim_fp = self.ns * tower.e * tower.n  # = n^2 * s * e
        self._rep_cache = {}

    # -- identity ----------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, QuotRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        t = self.tower
        return f"QuotRing(q={t.q}, n={t.n}, F={self.F.tag()})"

    # -- element constructors -------------------------------------------------------
    def element(self, value) -> "QuotElement":
        if isinstance(value, QuotElement):
            if value.ring != self:
                raise RingMismatch("element belongs to a different ring")
            return value
        if isinstance(value, SkewPoly):
            poly = value
        elif isinstance(value, FieldElement):
            if value.level != "big":
                raise RingMismatch("scalar classes take big-level elements")
            poly = SkewPoly.monomial(self.tower, value, 0)
        else:
            poly = SkewPoly(self.tower, value)
        if poly.degree is not None and poly.degree >= self.ns:
            poly = right_divide(poly, self.fxn)[1]
        return QuotElement(self, poly.coeffs)

    def zero(self):
        return QuotElement(self, ())

    def one(self):
        return QuotElement(self, (1,))

    def x_class(self, i=1) -> "QuotElement":
        return self.element(SkewPoly.x(self.tower, i))

    def scalar(self, value) -> "QuotElement":
        """Class of a big-level constant."""
        idx = value.idx if isinstance(value, FieldElement) else int(value)
        return QuotElement(self, (idx,) if idx else ())

    def center_element(self, mid_coeffs) -> "QuotElement":
        """Class of sum_d c_d x^(n d) for F_q coefficients c (length <= s)."""
        tw = self.tower
        out = [0] * self.ns
        for d, c in enumerate(mid_coeffs):
            idx = c.idx if isinstance(c, FieldElement) else int(c)
            if idx:
                out[d * tw.n] = tw.embed_idx("mid", "big", idx)
        return QuotElement(self, out)

    # -- F_p coordinates -----------------------------------------------------------
    def to_fp_vector(self, a: "QuotElement"):
        big = self.tower.level("big")
        ne = big.deg
        out = np.zeros(self.ns * ne, dtype=np.int64)
        for i, c in enumerate(a.coeffs):
            if c:
                out[i * ne:(i + 1) * ne] = big.dec(c)
        return out

    def from_fp_vector(self, vec) -> "QuotElement":
        big = self.tower.level("big")
        ne = big.deg
        coeffs = [big.enc([int(v) % self.tower.p for v in vec[i * ne:(i + 1) * ne]])
                  for i in range(self.ns)]
        return QuotElement(self, coeffs)

    def monomial_basis(self):
        """The F_p-basis classes beta_u x^i in coordinate order (i outer, u inner)."""
        tw = self.tower
        out = []
        for i in range(self.ns):
            for u in range(tw.e * tw.n):
                out.append(self.element(SkewPoly.monomial(tw, tw.p ** u, i)))
        return out

    def random_element(self, rng) -> "QuotElement":
        big = self.tower.level("big")
        return QuotElement(self, [rng.randrange(big.size) for _ in range(self.ns)])

    # -- the central inverse of x^i ---------------------------------------------------
    def _center_mul(self, a, b):
        """Product in E_F = F_q[y]/(F); operands are mid-code lists of length s."""
        mid = self.tower.level("mid")
        s = self.F.degree
        out = [0] * (2 * s)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = mid.add(out[i + j], mid.mul(x, y))
        for i in range(2 * s - 1, s - 1, -1):
            c = out[i]
            if c:
                out[i] = 0
                for j, fc in enumerate(self.F.coeffs):
                    out[i - s + j] = mid.sub(out[i - s + j], mid.mul(c, fc))
        return out[:s]

    @property
    def z_mid_coeffs(self):
        """E_F-coefficients of the inverse of the class of x^(ns)."""
        cached = getattr(self, "_z_mid", None)
        if cached is not None:
            return cached
        mid = self.tower.level("mid")
        s = self.F.degree
        f0_inv = mid.inv(self.F.coeffs[0])
        # from F(w) = 0: w^{-1} = -F_0^{-1} (F_1 + F_2 w + ... + w^{s-1})
        w_inv = [mid.neg(mid.mul(f0_inv, self.F.coeffs[i + 1])) for i in range(s)]
        z = [1] + [0] * (s - 1)
        for _ in range(s):
            z = self._center_mul(z, w_inv)
        self._z_mid = tuple(z)
        return self._z_mid

    @property
    def z(self) -> "QuotElement":
        """The central element with z * x^(ns) = 1; deg < ns, powers of x^n only."""
        return self.center_element(self.z_mid_coeffs)

    def x_power_inverse(self, i) -> "QuotElement":
        """The inverse of the class of x^i, realized as z^ceil(i/ns) x^(that*ns - i)."""
        if i == 0:
            return self.one()
        if i < 0:
            return self.x_class(-i)
        reps = -(-i // self.ns)
        out = self.x_class(reps * self.ns - i)
        for _ in range(reps):
            out = out * self.z
        return out

    # -- reciprocal ring ----------------------------------------------------------
    def reciprocal_ring(self) -> "QuotRing":
        return get_ring(self.tower, self.F.reciprocal())

    # -- trace functional and bilinear form -----------------------------------------
    def trace_functional(self, a: "QuotElement") -> FieldElement:
        """eps(a) = Tr_{q^n / p} of the constant coefficient; values in F_p."""
        a = self.element(a)
        big = self.tower.level("big")
        c0 = a.coeffs[0] if a.coeffs else 0
        return FieldElement(self.tower, "prime", int(big.trace_fp_t[c0]))

    def trace_form(self, a: "QuotElement", b: "QuotElement") -> FieldElement:
        """<a, b> = eps(a b); an associative nondegenerate F_p-bilinear form."""
        return self.trace_functional(self.element(a) * self.element(b))

    def is_central(self, a: "QuotElement") -> bool:
        a = self.element(a)
        x = self.x_class()
        t = self.scalar(self.tower.generator("big"))
        return a * x == x * a and a * t == t * a


class QuotElement:
    """Canonical representative (degree < ns) of a class in R_F."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: QuotRing, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) > ring.ns:
            raise SkewlabError("representative not reduced")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __setattr__(self, *a):
        raise AttributeError("QuotElement is immutable")

    # -- structure ------------------------------------------------------------------
    @property
    def rep(self) -> SkewPoly:
        return SkewPoly(self.ring.tower, self.coeffs)

    def coefficient(self, i) -> FieldElement:
        idx = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElement(self.ring.tower, "big", idx)

    @property
    def constant_coefficient(self) -> FieldElement:
        return self.coefficient(0)

    def is_zero(self):
        return not self.coeffs

    def _match(self, other):
        if not isinstance(other, QuotElement):
            raise TypeError(f"expected QuotElement, got {type(other).__name__}")
        if self.ring != other.ring:
            raise RingMismatch("elements of different quotient rings")
        return other

    # -- arithmetic -------------------------------------------------------------------
    def __add__(self, other):
        other = self._match(other)
        return QuotElement(self.ring, (self.rep + other.rep).coeffs)

    def __sub__(self, other):
        other = self._match(other)
        return QuotElement(self.ring, (self.rep - other.rep).coeffs)

    def __neg__(self):
        return QuotElement(self.ring, (-self.rep).coeffs)

    def __mul__(self, other):
        other = self._match(other)
        prod = self.rep * other.rep
        if prod.degree is not None and prod.degree >= self.ring.ns:
            prod = right_divide(prod, self.ring.fxn)[1]
        return QuotElement(self.ring, prod.coeffs)

    def inverse(self) -> "QuotElement":
        """Bezout inverse; raises ZeroDivisor when gcrd(rep, F(x^n)) != 1."""
        if self.is_zero():
            raise ZeroDivisor("zero is not a unit")
        d, u, _ = gcrd_bezout(self.rep, self.ring.fxn)
        if d.degree != 0:
            raise ZeroDivisor(f"element is a zero divisor (gcrd degree {d.degree})")
        return self.ring.element(u)

    def is_unit(self):
        if self.is_zero():
            return False
        d, _, _ = gcrd_bezout(self.rep, self.ring.fxn)
        return d.degree == 0

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one()
        b = self
        while k:
            if k & 1:
                out = out * b
            b = b * b
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, QuotElement)
            and self.coeffs == other.coeffs
            and self.ring.key == other.ring.key
        )

    def __hash__(self):
        return hash(self.coeffs)

    # -- text -----------------------------------------------------------------------
    def to_text(self):
        parts = "; ".join(self.coefficient(i).to_text() for i in range(self.ring.ns))
        return f"quot[{self.ring.F.tag()}]: {parts}"

    def __repr__(self):
        return f"QuotElement({[self.coefficient(i).coeffs for i in range(len(self.coeffs))]})"


def parse_quot(ring: QuotRing, text) -> QuotElement:
    body = text.strip()
    if body.startswith("quot["):
        tag, _, rest = body[len("quot["):].partition("]:")
        if tag != ring.F.tag():
            raise RingMismatch(f"element tagged for F={tag}, ring has F={ring.F.tag()}")
        body = rest
    parts = [p for p in body.split(";") if p.strip()]
    els = [parse_element(ring.tower, p) for p in parts]
    return ring.element(SkewPoly.from_elements(ring.tower, els))


# ---------------------------------------------------------------------------
# the adjoint anti-isomorphism
# ---------------------------------------------------------------------------

def adjoint_element(a: QuotElement) -> QuotElement:
    """Image of a under the anti-isomorphism R_F -> R_{Fhat}.

    sum a_i x^i  |->  sum sigma^{-i}(a_i) x^{-i}, realized through the central
    inverse of x^(ns) in the reciprocal ring: z * sum sigma^{ns-i}(a_i) x^(ns-i).
    """
    ring = a.ring
    hat = ring.reciprocal_ring()
    tw = ring.tower
    ns = ring.ns
    out = [0] * (ns + 1)
    big = tw.level("big")
    for i, c in enumerate(a.coeffs):
        if c:
            out[ns - i] = big.add(out[ns - i], tw.sigma_idx(c, ns - i))
    return hat.z * hat.element(SkewPoly(tw, out))


def adjoint_element_inv(b: QuotElement) -> QuotElement:
    """Inverse of :func:`adjoint_element`; same formula read from R_{Fhat} to R_F."""
    return adjoint_element(b)


def reciprocal_pair(F: CenterPoly):
    """(F, Fhat) with both directions validated; reciprocal of Fhat is F."""
    Fhat = F.reciprocal()
    if Fhat.reciprocal() != F:
        raise SkewlabError("reciprocal is not an involution")  # unreachable
    return F, Fhat


def dual_involution_unit(ring: QuotRing) -> QuotElement:
    """The central unit u0 with eps_hat(adjoint(c)) = eps(c * u0) for all c.

    Applying the skew-side dual twice returns C * u0^{-1}; u0 = 1 exactly when
    the constant coefficients of the inverses of x^(n m) in the reciprocal ring
    vanish for m >= 1 (e.g. s = 1, F = y - 1).
    """
    from .linalg import fp_solve

    tw = ring.tower
    hat = ring.reciprocal_ring()
    mid = tw.level("mid")
    s = ring.F.degree
    # F_p-basis of the center: classes of (t^c) x^(n d)
    center_basis = []
    for d in range(s):
        for c in range(tw.e):
            coeffs = [0] * s
            coeffs[d] = tw.p ** c
            center_basis.append(ring.center_element(coeffs))
    rows, rhs = [], []
    for a in ring.monomial_basis():
        rows.append([int(ring.trace_functional(a * w).idx) for w in center_basis])
        rhs.append(int(hat.trace_functional(adjoint_element(a)).idx))
    sol = fp_solve(np.array(rows), np.array(rhs), tw.p)
    if sol is None:
        raise SkewlabError("no central unit relates the two trace functionals")
    u0 = ring.zero()
    for lam, w in zip(sol, center_basis):
        if lam:
            u0 = u0 + ring.scalar(int(lam)) * w
    if not u0.is_unit():
        raise SkewlabError("dual involution unit is not invertible")
    return u0
