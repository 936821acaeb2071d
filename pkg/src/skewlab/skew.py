"""The skew polynomial ring R = F_{q^n}[x; sigma].

Coefficients live on the big level of a :class:`~skewlab.gf.FieldTower` and are
written on the left of the powers of x; multiplication is twisted by
x * a = sigma(a) * x.  Polynomials are immutable; the zero polynomial has
degree ``None`` (a sentinel that never enters arithmetic).
"""

from __future__ import annotations

from .errors import (
    BothZero,
    DivisionByZero,
    LevelMismatch,
    SkewlabError,
    ZeroInput,
)
from .gf import FieldElement, FieldTower, parse_element


class SkewPoly:
    """Immutable skew polynomial; ``coeffs`` are big-level codes, low degree first."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __setattr__(self, *a):
        raise AttributeError("SkewPoly is immutable")

    # -- constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, tower):
        return cls(tower, ())

    @classmethod
    def one(cls, tower):
        return cls(tower, (1,))

    @classmethod
    def x(cls, tower, i=1):
        return cls(tower, (0,) * i + (1,))

    @classmethod
    def monomial(cls, tower, coeff, i):
        idx = coeff.idx if isinstance(coeff, FieldElement) else int(coeff)
        return cls(tower, (0,) * i + (idx,))

    @classmethod
    def from_elements(cls, tower, elements):
        idxs = []
        for el in elements:
            if el.level != "big":
                raise LevelMismatch("skew coefficients must be big-level")
            idxs.append(el.idx)
        return cls(tower, idxs)

    # -- structure ----------------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, i) -> FieldElement:
        idx = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElement(self.tower, "big", idx)

    @property
    def lc(self) -> FieldElement:
        if self.is_zero():
            raise ZeroInput("zero polynomial has no leading coefficient")
        return FieldElement(self.tower, "big", self.coeffs[-1])

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # -- arithmetic -----------------------------------------------------------------
    def _match(self, other):
        if not isinstance(other, SkewPoly):
            raise TypeError(f"expected SkewPoly, got {type(other).__name__}")
        if self.tower is not other.tower and self.tower != other.tower:
            raise LevelMismatch("skew polynomials over different towers")
        return other

    def __add__(self, other):
        other = self._match(other)
        big = self.tower.level("big")
        a, b = self.coeffs, other.coeffs
        out = [
            big.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)
            for i in range(max(len(a), len(b)))
        ]
        return SkewPoly(self.tower, out)

    def __neg__(self):
        big = self.tower.level("big")
        return SkewPoly(self.tower, [big.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        other = self._match(other)
        if self.is_zero() or other.is_zero():
            return SkewPoly.zero(self.tower)
        tw = self.tower
        big = tw.level("big")
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = big.add(out[i + j], big.mul(ca, tw.sigma_idx(cb, i)))
        return SkewPoly(tw, out)

    def const_left_mul(self, c):
        """(c) * f for a big-level constant c; plain coefficient scaling."""
        idx = c.idx if isinstance(c, FieldElement) else int(c)
        big = self.tower.level("big")
        return SkewPoly(self.tower, [big.mul(idx, x) for x in self.coeffs])

    def monic(self):
        if self.is_zero():
            raise ZeroInput("cannot normalize the zero polynomial")
        big = self.tower.level("big")
        return self.const_left_mul(big.inv(self.coeffs[-1]))

    def __eq__(self, other):
        return (
            isinstance(other, SkewPoly)
            and self.coeffs == other.coeffs
            and self.tower.key == other.tower.key
        )

    def __hash__(self):
        return hash(self.coeffs)

    # -- text ---------------------------------------------------------------------
    def to_text(self):
        return "skew: " + "; ".join(self.coefficient(i).to_text() for i in range(len(self.coeffs)))

    def __repr__(self):
        if self.is_zero():
            return "SkewPoly(0)"
        return f"SkewPoly(deg={self.degree})"


# ---------------------------------------------------------------------------
# Euclidean machinery
# ---------------------------------------------------------------------------

def right_divide(f: SkewPoly, g: SkewPoly):
    """f = q*g + r with deg r < deg g (division by g on the right)."""
    f._match(g)
    if g.is_zero():
        raise DivisionByZero("right division by zero")
    tw = f.tower
    big = tw.level("big")
    r = list(f.coeffs)
    dg = g.degree
    lg = g.coeffs[-1]
    q = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        d = len(r) - 1 - dg
        c = big.mul(r[-1], big.inv(tw.sigma_idx(lg, d)))
        q[d] = big.add(q[d], c)
        for j, cg in enumerate(g.coeffs):
            if cg:
                r[d + j] = big.sub(r[d + j], big.mul(c, tw.sigma_idx(cg, d)))
        while r and r[-1] == 0:
            r.pop()
    return SkewPoly(tw, q), SkewPoly(tw, r)


def left_divide(f: SkewPoly, g: SkewPoly):
    """f = g*q + r with deg r < deg g (division by g on the left)."""
    f._match(g)
    if g.is_zero():
        raise DivisionByZero("left division by zero")
    tw = f.tower
    big = tw.level("big")
    r = list(f.coeffs)
    dg = g.degree
    lg_inv = big.inv(g.coeffs[-1])
    q = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        d = len(r) - 1 - dg
        c = tw.sigma_idx(big.mul(lg_inv, r[-1]), -dg)
        q[d] = big.add(q[d], c)
        for j, cg in enumerate(g.coeffs):
            if cg:
                r[j + d] = big.sub(r[j + d], big.mul(cg, tw.sigma_idx(c, j)))
        while r and r[-1] == 0:
            r.pop()
    return SkewPoly(tw, q), SkewPoly(tw, r)


def gcrd_bezout(f: SkewPoly, g: SkewPoly):
    """Monic greatest common right divisor d with d = u*f + v*g."""
    f._match(g)
    if f.is_zero() and g.is_zero():
        raise BothZero("gcrd(0, 0) is undefined")
    tw = f.tower
    r0, r1 = f, g
    u0, u1 = SkewPoly.one(tw), SkewPoly.zero(tw)
    v0, v1 = SkewPoly.zero(tw), SkewPoly.one(tw)
    while not r1.is_zero():
        q, r2 = right_divide(r0, r1)
        r0, r1 = r1, r2
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lc_inv = r0.lc.inverse()
    return r0.const_left_mul(lc_inv), u0.const_left_mul(lc_inv), v0.const_left_mul(lc_inv)


def lclm(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic least common left multiple (generator of Rf intersect Rg)."""
    f._match(g)
    if f.is_zero() or g.is_zero():
        raise ZeroInput("lclm requires nonzero inputs")
    tw = f.tower
    r0, r1 = f, g
    u0, u1 = SkewPoly.one(tw), SkewPoly.zero(tw)
    while not r1.is_zero():
        q, r2 = right_divide(r0, r1)
        r0, r1 = r1, r2
        u0, u1 = u1, u0 - q * u1
    m = u1 * f
    return m.monic()


# ---------------------------------------------------------------------------
# central polynomials F(y) in F_q[y]
# ---------------------------------------------------------------------------

class CenterPoly:
    """Monic irreducible F(y) over F_q with F(0) != 0 (equivalently F != y).

    ``coeffs`` are mid-level codes, length s+1, low degree first.  F(x^n) is
    central in R and generates the twosided ideal defining the quotient.
    """

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs):
        coeffs = [c.idx if isinstance(c, FieldElement) else int(c) for c in coeffs]
        if len(coeffs) != tower.s + 1:
            raise SkewlabError(
                f"center polynomial must have degree s={tower.s}, got {len(coeffs) - 1}"
            )
        if coeffs[-1] != 1:
            raise SkewlabError("center polynomial must be monic")
        if coeffs[0] == 0:
            raise SkewlabError("center polynomial must have nonzero constant term")
        if not _mid_poly_is_irreducible(tower, coeffs):
            raise SkewlabError("center polynomial is reducible over F_q")
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("CenterPoly is immutable")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coefficient(self, i) -> FieldElement:
        return FieldElement(self.tower, "mid", self.coeffs[i])

    @property
    def constant_term(self) -> FieldElement:
        return self.coefficient(0)

    def center_eval(self) -> SkewPoly:
        """F(x^n) as a skew polynomial with embedded coefficients; central in R."""
        tw = self.tower
        out = [0] * (tw.n * self.degree + 1)
        for d, c in enumerate(self.coeffs):
            out[d * tw.n] = tw.embed_idx("mid", "big", c)
        return SkewPoly(tw, out)

    def reciprocal(self) -> "CenterPoly":
        """F_0^{-1} y^s F(1/y): coefficient reversal scaled by the constant term."""
        mid = self.tower.level("mid")
        f0_inv = mid.inv(self.coeffs[0])
        rev = [mid.mul(f0_inv, c) for c in reversed(self.coeffs)]
        return CenterPoly(self.tower, rev)

    @classmethod
    def canonical(cls, tower) -> "CenterPoly":
        """Deterministic default: y - 1 when s = 1, else the lexicographically
        least monic irreducible of degree s over F_q (its constant term is
        automatically nonzero)."""
        mid = tower.level("mid")
        s = tower.s
        if s == 1:
            return cls(tower, [mid.neg(1), 1])
        for flat in _mid_tuples(mid, s):
            coeffs = list(flat) + [1]
            if coeffs[0] != 0 and _mid_poly_is_irreducible(tower, coeffs):
                return cls(tower, coeffs)
        raise SkewlabError("no irreducible center polynomial found")  # unreachable

    def __eq__(self, other):
        return (
            isinstance(other, CenterPoly)
            and self.coeffs == other.coeffs
            and self.tower.key == other.tower.key
        )

    def __hash__(self):
        return hash(self.coeffs)

    def tag(self):
        """Compact text tag identifying F inside quot element text forms."""
        mid = self.tower.level("mid")
        return "|".join(",".join(str(d) for d in mid.dec(c)) for c in self.coeffs)

    @classmethod
    def from_tag(cls, tower, tag):
        coeffs = []
        for part in tag.split("|"):
            digits = [int(t) for t in part.split(",")]
            coeffs.append(tower.level("mid").enc(digits))
        return cls(tower, coeffs)

    def __repr__(self):
        return f"CenterPoly({self.tag()})"


def _mid_tuples(mid, length):
    """All coefficient tuples of given length over the mid level, lex order.

    Elements are ordered by their F_p digit tuples; tuples are ordered with the
    low-degree coefficient most significant, matching the modulus convention.
    """
    order = sorted(range(mid.size), key=mid.tuple_key)
    if length == 0:
        yield ()
        return
    for head in order:
        for tail in _mid_tuples(mid, length - 1):
            yield (head,) + tail


def _mid_poly_is_irreducible(tower, coeffs):
    """Exhaustive trial division over F_q up to degree s/2."""
    mid = tower.level("mid")
    d = len(coeffs) - 1
    if d == 1:
        return True
    if coeffs[0] == 0:
        return False
    for deg in range(1, d // 2 + 1):
        for flat in _mid_tuples(mid, deg):
            g = list(flat) + [1]
            if not _mid_divides(mid, g, coeffs):
                continue
            return False
    return True


def _mid_divides(mid, g, f):
    """True when monic g divides f over the (commutative) mid level."""
    r = list(f)
    dg = len(g) - 1
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        c = r[-1]
        d = len(r) - 1 - dg
        for j, cg in enumerate(g):
            r[d + j] = mid.sub(r[d + j], mid.mul(c, cg))
    while r and r[-1] == 0:
        r.pop()
    return not r


def parse_skew(tower, text) -> SkewPoly:
    body = text.strip()
    if body.startswith("skew:"):
        body = body[len("skew:"):]
    parts = [p for p in body.split(";") if p.strip()]
    return SkewPoly.from_elements(tower, [parse_element(tower, p) for p in parts])
