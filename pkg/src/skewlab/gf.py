"""Exact arithmetic in the tower F_p <= F_q <= F_{q^n} plus the side field F_{q^s}.

Elements of every level are stored as integers in [0, p^d): the base-p digits
of the integer, least significant first, are the coefficients of the residue
polynomial over F_p.  Each level carries full add/mul lookup tables -- the
fields are desk scale (at most a few hundred elements), so tables beat any
cleverness.

Defining moduli are the lexicographically least monic irreducibles of the
required degree (coefficient tuples ordered low-to-high), and every subfield
embedding sends the subfield generator to the lexicographically least root of
its modulus in the bigger field.  That makes every derived object of the
library reproducible from ``(p, e, n, s, j)`` alone.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, LevelMismatch, NotASubfield, SkewlabError

LEVELS = ("prime", "mid", "big", "ef")


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def _fp_poly_divmod(a, b, p):
    a = list(a)
    _fp_trim(a)
    db = len(b) - 1
    inv_lb = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv_lb) % p
        d = len(a) - 1 - db
        q[d] = c
        for j in range(db + 1):
            a[d + j] = (a[d + j] - c * b[j]) % p
        _fp_trim(a)
    return q, a


def _fp_poly_is_irreducible(f, p):
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    for deg in range(1, d // 2 + 1):
        for idx in range(p ** deg):
            g = _int_digits(idx, p, deg) + [1]
            if not _fp_poly_divmod(f, g, p)[1]:
                return False
    return True


def lex_least_irreducible(p: int, degree: int) -> tuple:
    """Lexicographically least monic irreducible of given degree over F_p.

    Coefficient tuples (low degree first, monic leading 1 appended) are
    compared as integer tuples; enumeration below is in exactly that order.
    """
    for idx in range(p ** degree):
        # idx -> digits in *tuple-lex* order: leftmost digit most significant
        digits = _int_digits(idx, p, degree)[::-1]
        f = digits + [1]
        if _fp_poly_is_irreducible(f, p):
            return tuple(f)
    raise SkewlabError(f"no irreducible of degree {degree} over F_{p}")  # unreachable


def _int_digits(v, p, length):
    out = []
    for _ in range(length):
        out.append(v % p)
        v //= p
    return out


def _is_prime(v):
    if v < 2:
        return False
    i = 2
    while i * i <= v:
        if v % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# one tower level
# ---------------------------------------------------------------------------

class Level:
    """F_{p^d} with full lookup tables; elements are ints in [0, p^d)."""

    def __init__(self, name, p, modulus):
        self.name = name
        self.p = p
        self.modulus = tuple(modulus)
        self.deg = len(modulus) - 1
        self.size = p ** self.deg
        if modulus[-1] != 1:
            raise SkewlabError("modulus must be monic")
        if not _fp_poly_is_irreducible(list(modulus), p):
            raise SkewlabError(f"modulus {modulus} is reducible over F_{p}")
        self._build_tables()

    def _build_tables(self):
        p, d, size = self.p, self.deg, self.size
        coeffs = [self.dec(i) for i in range(size)]
        add = np.zeros((size, size), dtype=np.int16)
        mul = np.zeros((size, size), dtype=np.int16)
        for a in range(size):
            for b in range(a, size):
                s = self.enc([(x + y) % p for x, y in zip(coeffs[a], coeffs[b])])
                add[a, b] = add[b, a] = s
                m = self.enc(_poly_mulmod(coeffs[a], coeffs[b], self.modulus, p))
                mul[a, b] = mul[b, a] = m
        self.add_t = add
        self.mul_t = mul
        self.neg_t = np.array(
            [self.enc([(-x) % p for x in coeffs[a]]) for a in range(size)], dtype=np.int16
        )
        inv = np.zeros(size, dtype=np.int16)
        for a in range(1, size):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.inv_t = inv
        frob = np.zeros(size, dtype=np.int16)
        for a in range(size):
            frob[a] = self.pow(a, p)
        self.frob_t = frob
        tr = np.zeros(size, dtype=np.int16)
        for a in range(size):
            acc, x = 0, a
            for _ in range(d):
                acc = int(add[acc, x])
                x = int(frob[x])
            tr[a] = acc  # lies in the prime field, i.e. a digit
        self.trace_fp_t = tr

    # -- int <-> digit vector ------------------------------------------------
    def dec(self, a):
        return _int_digits(a, self.p, self.deg)

    def enc(self, coeffs):
        v = 0
        for x in reversed(list(coeffs)[: self.deg]):
            v = v * self.p + x
        return v

    def tuple_key(self, a):
        """Digit tuple used for all lexicographic comparisons of elements."""
        return tuple(self.dec(a))

    # -- arithmetic on int codes ----------------------------------------------
    def add(self, a, b):
        return int(self.add_t[a, b])

    def sub(self, a, b):
        return int(self.add_t[a, self.neg_t[b]])

    def neg(self, a):
        return int(self.neg_t[a])

    def mul(self, a, b):
        return int(self.mul_t[a, b])

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in {self.name}")
        return int(self.inv_t[a])

    def pow(self, a, k):
        if k < 0:
            a, k = self.inv(a), -k
        r, b = 1, a
        while k:
            if k & 1:
                r = int(self.mul_t[r, b])
            b = int(self.mul_t[b, b])
            k >>= 1
        return r

    def frob_p_pow(self, a, t):
        """a^(p^t) via the precomputed p-power table."""
        r = a
        for _ in range(t % self.deg if self.deg else 0):
            r = int(self.frob_t[r])
        return r

    def elements(self):
        return range(self.size)


def _poly_mulmod(a, b, mod, p):
    prod = _fp_poly_mul(a, b, p)
    _, r = _fp_poly_divmod(prod, list(mod), p)
    return r + [0] * (len(mod) - 1 - len(r))


# ---------------------------------------------------------------------------
# the tower
# ---------------------------------------------------------------------------

class FieldTower:
    """The nested fields F_p <= F_q <= F_{q^n} plus the side field F_{q^s}.

    sigma is the distinguished generator y -> y^(q^j) of the Galois group of
    F_{q^n} over F_q; gcd(j, n) = 1 is enforced.
    """

    def __init__(self, p, e, n, s, j=1, moduli=None):
        if not _is_prime(p):
            raise SkewlabError(f"p={p} is not prime")
        if min(e, n, s) < 1:
            raise SkewlabError("e, n, s must be positive")
        if _gcd(j % n, n) != 1:
            raise SkewlabError(f"gcd(j={j}, n={n}) != 1")
        self.p, self.e, self.n, self.s, self.j = p, e, n, s, j % n
        if moduli is None:
            moduli = {
                "mid": lex_least_irreducible(p, e),
                "big": lex_least_irreducible(p, e * n),
                "ef": lex_least_irreducible(p, e * s),
            }
        self.levels = {
            "prime": Level("prime", p, (0, 1)),
            "mid": Level("mid", p, moduli["mid"]),
            "big": Level("big", p, moduli["big"]),
            "ef": Level("ef", p, moduli["ef"]),
        }
        self.q = p ** e
        self._build_embeddings()
        self._build_sigma()
        self._check_fixed_field()
        self._subfield_cache = {}

    # -- construction helpers --------------------------------------------------
    def _roots_in(self, poly_fp, level):
        """Roots in `level` of a polynomial with F_p coefficients, lex order."""
        L = self.levels[level]
        roots = []
        for u in range(L.size):
            acc = 0
            for c in reversed(poly_fp):
                acc = L.add(L.mul(acc, u), c % self.p)
            if acc == 0:
                roots.append(u)
        roots.sort(key=L.tuple_key)
        return roots

    def _embedding_table(self, src, dst):
        S, D = self.levels[src], self.levels[dst]
        if S.deg == 1:
            root = 0  # constants embed as constants; root value unused
        else:
            roots = self._roots_in(list(S.modulus), dst)
            if not roots:
                raise SkewlabError(f"modulus of {src} has no root in {dst}")
            root = roots[0]
        table = np.zeros(S.size, dtype=np.int16)
        for a in range(S.size):
            digits = S.dec(a)
            acc = 0
            for c in reversed(digits):
                acc = D.add(D.mul(acc, root), c)
            table[a] = acc
        return table

    def _build_embeddings(self):
        self._emb = {
            ("mid", "big"): self._embedding_table("mid", "big"),
            ("mid", "ef"): self._embedding_table("mid", "ef"),
        }
        self._emb_inv = {}
        for key, tab in self._emb.items():
            self._emb_inv[(key[1], key[0])] = {int(v): i for i, v in enumerate(tab)}

    def _build_sigma(self):
        big = self.levels["big"]
        step = np.arange(big.size, dtype=np.int16)
        tables = []
        for _ in range(self.n):
            tables.append(step)
            nxt = step
            for _ in range(self.e * self.j):
                nxt = big.frob_t[nxt]
            step = nxt
        self._sigma_t = tables  # sigma^t for t = 0..n-1

    def _check_fixed_field(self):
        big = self.levels["big"]
        fixed = [a for a in big.elements() if int(self._sigma_t[1 % self.n][a]) == a]
        image = sorted(int(v) for v in self._emb[("mid", "big")])
        if sorted(fixed) != image:
            raise SkewlabError("fixed field of sigma is not the embedded F_q")

    # -- public surface ---------------------------------------------------------
    def level(self, name) -> Level:
        return self.levels[name]

    @property
    def key(self):
        return (
            self.p, self.e, self.n, self.s, self.j,
            self.levels["mid"].modulus, self.levels["big"].modulus, self.levels["ef"].modulus,
        )

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def element(self, level, coeffs) -> "FieldElement":
        L = self.levels[level]
        if isinstance(coeffs, int):
            if not 0 <= coeffs < L.size:
                raise SkewlabError(f"element code {coeffs} out of range for {level}")
            return FieldElement(self, level, coeffs)
        coeffs = list(coeffs)
        if len(coeffs) != L.deg:
            raise LevelMismatch(
                f"{level} expects {L.deg} F_{self.p} digits, got {len(coeffs)}"
            )
        return FieldElement(self, level, L.enc([c % self.p for c in coeffs]))

    def zero(self, level="big"):
        return FieldElement(self, level, 0)

    def one(self, level="big"):
        return FieldElement(self, level, 1)

    def generator(self, level="big"):
        L = self.levels[level]
        return FieldElement(self, level, min(self.p, L.size - 1) if L.deg == 1 else self.p)

    def embed_idx(self, src, dst, idx):
        if src == dst:
            return idx
        if src == "prime":
            return idx  # constants: digit-0 slot
        try:
            return int(self._emb[(src, dst)][idx])
        except KeyError:
            raise NotASubfield(f"no embedding {src} -> {dst}") from None

    def project_idx(self, src, dst, idx):
        """Inverse of embed: element of `src` known to lie in the image of `dst`."""
        if src == dst:
            return idx
        if dst == "prime":
            L = self.levels[src]
            digits = L.dec(idx)
            if any(digits[1:]):
                raise NotASubfield(f"element not in prime field: {digits}")
            return digits[0]
        inv = self._emb_inv.get((src, dst))
        if inv is None or idx not in inv:
            raise NotASubfield(f"element does not lie in {dst}")
        return inv[idx]

    def sigma_idx(self, idx, i):
        """sigma^i on a big-level code, sigma = y -> y^(q^j); any integer i."""
        return int(self._sigma_t[(self.j * i) % self.n][idx] if self.n > 1 else idx)

    def subfield_basis(self, m, level="big"):
        """F_p-basis (list of codes) of the degree-m subfield of `level`."""
        key = (level, m)
        if key in self._subfield_cache:
            return self._subfield_cache[key]
        L = self.levels[level]
        if L.deg % m:
            raise NotASubfield(f"F_(p^{m}) is not a subfield of {level}")
        cols = []
        for c in range(L.deg):
            img = L.frob_p_pow(self.p ** c if c else 1, m)
            d = L.dec(img)
            d[c] = (d[c] - 1) % self.p
            cols.append(d)
        A = np.array(cols, dtype=np.int64).T % self.p  # rows: coords, cols: basis
        basis_vecs = _fp_nullspace(A, self.p)
        basis = sorted(L.enc(list(v)) for v in basis_vecs)
        if len(basis) != m:
            raise SkewlabError("subfield basis extraction failed")  # unreachable
        self._subfield_cache[key] = basis
        return basis

    # -- text forms ---------------------------------------------------------------
    def header_lines(self):
        fmt = lambda mod: ",".join(str(c) for c in mod)
        return [
            f"tower: {self.p},{self.e},{self.n},{self.s},{self.j}",
            f"modulus_mid: {fmt(self.levels['mid'].modulus)}",
            f"modulus_big: {fmt(self.levels['big'].modulus)}",
            f"modulus_ef: {fmt(self.levels['ef'].modulus)}",
        ]

    @classmethod
    def from_header_lines(cls, lines):
        vals = {}
        for ln in lines:
            key, _, rest = ln.partition(":")
            vals[key.strip()] = [int(tok) for tok in rest.strip().split(",") if tok != ""]
        p, e, n, s, j = vals["tower"]
        moduli = {
            "mid": tuple(vals["modulus_mid"]),
            "big": tuple(vals["modulus_big"]),
            "ef": tuple(vals["modulus_ef"]),
        }
        return cls(p, e, n, s, j, moduli=moduli)

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, n={self.n}, s={self.s}, j={self.j})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _fp_nullspace(A, p):
    """Nullspace basis of A over F_p, deterministic RREF order (rows as vectors)."""
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if A[i, c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        for i in range(m):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(n, dtype=np.int64)
        v[fc] = 1
        for ri, c in enumerate(pivots):
            v[c] = (-A[ri, fc]) % p
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class FieldElement:
    """Immutable element of one tower level, identified by its integer code."""

    __slots__ = ("tower", "level", "idx")

    def __init__(self, tower, level, idx):
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "idx", int(idx))

    def __setattr__(self, *a):
        raise AttributeError("FieldElement is immutable")

    def _lv(self) -> Level:
        return self.tower.levels[self.level]

    def _match(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if self.tower is not other.tower and self.tower != other.tower:
            raise LevelMismatch("elements from different towers")
        if self.level != other.level:
            raise LevelMismatch(f"levels differ: {self.level} vs {other.level}")
        return other

    @property
    def coeffs(self):
        return tuple(self._lv().dec(self.idx))

    def is_zero(self):
        return self.idx == 0

    def __add__(self, other):
        other = self._match(other)
        return FieldElement(self.tower, self.level, self._lv().add(self.idx, other.idx))

    def __sub__(self, other):
        other = self._match(other)
        return FieldElement(self.tower, self.level, self._lv().sub(self.idx, other.idx))

    def __neg__(self):
        return FieldElement(self.tower, self.level, self._lv().neg(self.idx))

    def __mul__(self, other):
        other = self._match(other)
        return FieldElement(self.tower, self.level, self._lv().mul(self.idx, other.idx))

    def __truediv__(self, other):
        other = self._match(other)
        if other.idx == 0:
            raise DivisionByZero("division by zero")
        L = self._lv()
        return FieldElement(self.tower, self.level, L.mul(self.idx, L.inv(other.idx)))

    def inverse(self):
        return FieldElement(self.tower, self.level, self._lv().inv(self.idx))

    def __pow__(self, k):
        return FieldElement(self.tower, self.level, self._lv().pow(self.idx, k))

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.level == other.level
            and self.idx == other.idx
            and self.tower.key == other.tower.key
        )

    def __hash__(self):
        return hash((self.level, self.idx))

    def to_text(self):
        return f"{self.level}:" + ",".join(str(c) for c in self.coeffs)

    def __repr__(self):
        return f"<{self.to_text()}>"


def parse_element(tower, text) -> FieldElement:
    level, _, digits = text.strip().partition(":")
    if level not in LEVELS:
        raise SkewlabError(f"unknown level tag {level!r}")
    return tower.element(level, [int(t) for t in digits.split(",")])


# ---------------------------------------------------------------------------
# named operations
# ---------------------------------------------------------------------------

def frobenius(a: FieldElement, i: int) -> FieldElement:
    """sigma^i(a) = a^(q^(j*i mod n)) for a in F_{q^n}; negative i allowed."""
    if a.level != "big":
        raise LevelMismatch("frobenius acts on the big level")
    return FieldElement(a.tower, "big", a.tower.sigma_idx(a.idx, i))


def _subfield_degree(tower, level, to):
    """Resolve `to` (level name or F_p-degree) for a trace/norm from `level`."""
    L = tower.levels[level]
    if isinstance(to, str):
        if to == level:
            return L.deg, to
        D = tower.levels[to]
        ok = to == "prime" or (level, to) in (("big", "mid"), ("ef", "mid"))
        if not ok or L.deg % D.deg:
            raise NotASubfield(f"{to} is not a subfield of {level} in this tower")
        return D.deg, to
    m = int(to)
    if m < 1 or L.deg % m:
        raise NotASubfield(f"F_(p^{m}) is not a subfield of {level}")
    return m, None


def trace_norm(a: FieldElement, to, kind="trace") -> FieldElement:
    """Relative trace/norm of `a` down to a subfield.

    `to` is a level name ("prime"/"mid") or the F_p-degree of an intermediate
    subfield; in the latter case the result is returned at a's own level
    (it lies in the subfield).
    """
    if kind not in ("trace", "norm"):
        raise SkewlabError(f"kind must be trace or norm, got {kind!r}")
    L = a._lv()
    m, target = _subfield_degree(a.tower, a.level, to)
    count = L.deg // m
    acc = 0 if kind == "trace" else 1
    x = a.idx
    for _ in range(count):
        acc = L.add(acc, x) if kind == "trace" else L.mul(acc, x)
        x = L.frob_p_pow(x, m)
    if target is None:
        return FieldElement(a.tower, a.level, acc)
    return FieldElement(a.tower, target, a.tower.project_idx(a.level, target, acc))


def is_square(a: FieldElement) -> bool:
    """Square test in F_q (mid level); every element is a square when q is even."""
    if a.level != "mid":
        raise LevelMismatch("is_square is defined on the mid level")
    L = a._lv()
    if a.tower.p == 2:
        return True  # EvenCharacteristic: squaring is bijective
    if a.idx == 0:
        return True
    return L.pow(a.idx, (L.size - 1) // 2) == 1


def embed(a: FieldElement, to_level: str) -> FieldElement:
    return FieldElement(a.tower, to_level, a.tower.embed_idx(a.level, to_level, a.idx))


def project(a: FieldElement, to_level: str) -> FieldElement:
    return FieldElement(a.tower, to_level, a.tower.project_idx(a.level, to_level, a.idx))


@lru_cache(maxsize=None)
def _tower_cache(p, e, n, s, j):
    return FieldTower(p, e, n, s, j)


def tower(p, e, n, s, j=1) -> FieldTower:
    """Deterministic tower with the canonical (lex-least) moduli, cached."""
    return _tower_cache(p, e, n, s, j)
