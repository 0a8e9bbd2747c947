"""Fixed-precision arithmetic in the coefficient ring W.

Two instantiations share one element type:

* mixed characteristic: W = Z_p, residues stored as plain integers,
* equal characteristic: W = F_q[[pi]], residues stored as tuples of
  F_q elements (little-endian pi-digits).

An element is an immutable :class:`Num` triple ``(v, man, prec)`` meaning
``z^v * man`` known modulo ``z^prec``, where ``z`` is the uniformizer
(p, respectively pi) and ``man`` is a unit residue modulo ``z^(prec-v)``.
``v is None`` encodes "zero at precision": the value is only known to be
congruent to 0 modulo ``z^prec``.  Arithmetic follows the usual capped
absolute-precision rules and never reports digits beyond what the inputs
guarantee.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError, PrecisionError

INF_PREC = 10**9  # sentinel precision for exact zeros


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond any sane prime input
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power_split(q: int) -> tuple[int, int]:
    """Return (p, f) with q = p**f, or raise InputError."""
    if q < 2:
        raise InputError(f"not a prime power: {q}")
    p = None
    for c in range(2, q + 1):
        if q % c == 0:
            p = c
            break
    f = 0
    m = q
    while m % p == 0:
        m //= p
        f += 1
    if m != 1 or not is_prime(p):
        raise InputError(f"not a prime power: {q}")
    return p, f


class GF:
    """Arithmetic in F_q, q = p**f, elements encoded as ints in [0, q).

    For f > 1 an element's base-p digits are the coefficients of its
    polynomial representative; the modulus is the first monic irreducible
    of degree f in lexicographic coefficient order, so the encoding is
    deterministic.
    """

    def __init__(self, q: int):
        self.q = q
        self.p, self.f = prime_power_split(q)
        if self.f > 1:
            self.modulus = self._find_modulus()

    def _decode(self, a: int) -> list[int]:
        digits = []
        for _ in range(self.f):
            a, r = divmod(a, self.p)
            digits.append(r)
        return digits

    def _encode(self, digits) -> int:
        a = 0
        for d in reversed(digits):
            a = a * self.p + (d % self.p)
        return a

    def _polmulmod(self, a, b):
        p, f = self.p, self.f
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for i in range(len(prod) - 1, f - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(f):
                    prod[i - f + j] = (prod[i - f + j] - c * mod[j]) % p
        return prod[:f]

    def _find_modulus(self):
        p, f = self.p, self.f
        for tail in range(p**f):
            digits = []
            t = tail
            for _ in range(f):
                t, r = divmod(t, p)
                digits.append(r)
            mod = digits  # monic x^f + sum digits[j] x^j
            if self._is_irreducible(mod):
                return mod
        raise AssertionError("no irreducible polynomial found")

    def _is_irreducible(self, mod):
        # trial division by every monic divisor of degree 1..f//2
        p, f = self.p, self.f
        full = mod + [1]  # monic, degree f

        def polmod(a, b):
            # a mod b, b monic, coefficient lists (ascending)
            a = a[:]
            db = len(b) - 1
            for i in range(len(a) - 1, db - 1, -1):
                c = a[i]
                if c:
                    for j in range(db + 1):
                        a[i - db + j] = (a[i - db + j] - c * b[j]) % p
            return a[:db]

        if mod[0] == 0:
            return False
        for d in range(1, f // 2 + 1):
            for t in range(p**d):
                digits = []
                tt = t
                for _ in range(d):
                    tt, r = divmod(tt, p)
                    digits.append(r)
                div = digits + [1]
                if not any(polmod(full, div)):
                    return False
        return True

    def add(self, a, b):
        if self.f == 1:
            return (a + b) % self.p
        da, db = self._decode(a), self._decode(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.f == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._decode(a)])

    def mul(self, a, b):
        if self.f == 1:
            return a * b % self.p
        return self._encode(self._polmulmod(self._decode(a), self._decode(b)))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.f == 1:
            return pow(a, -1, self.p)
        r, e = 1, a
        k = self.q - 2
        while k:
            if k & 1:
                r = self.mul(r, e)
            e = self.mul(e, e)
            k >>= 1
        return r

    def embed_int(self, n: int) -> int:
        return n % self.p

    def frob(self, a):
        # x -> x^q is the identity on F_q
        return a


class CoeffRing:
    """Shared interface of the two coefficient rings.

    Residue objects ("mantissas") are ints (mixed) or tuples of F_q
    encodings (equal characteristic); all `res_*` helpers act on residues
    known modulo z^k for an explicit k.
    """

    equal_char = False

    def __init__(self, cap: int):
        self.cap = cap  # default absolute precision for exact inputs

    # -- residue layer, implemented by subclasses -------------------------
    def res_add(self, a, b, k):
        raise NotImplementedError

    def res_neg(self, a, k):
        raise NotImplementedError

    def res_mul(self, a, b, k):
        raise NotImplementedError

    def res_val(self, a, k):
        """Valuation of a nonzero residue mod z^k, or None if it is 0."""
        raise NotImplementedError

    def res_shift(self, a, j, k):
        """z^j * a as a residue mod z^k (j may be negative, then exact)."""
        raise NotImplementedError

    def res_inv(self, a, k):
        raise NotImplementedError

    def res_frob(self, a, k):
        raise NotImplementedError

    def res_from_int(self, n, k):
        raise NotImplementedError

    def res_repr(self, a, k) -> str:
        raise NotImplementedError

    # -- element constructors ---------------------------------------------
    def zero(self) -> "Num":
        return Num(self, None, self.res_from_int(0, 1), INF_PREC)

    def one(self) -> "Num":
        return self.from_int(1)

    def from_int(self, n: int, prec: int | None = None) -> "Num":
        prec = self.cap if prec is None else prec
        if n == 0:
            return self.zero()
        return Num.make(self, 0, self.res_from_int(n, prec), prec)

    def from_fraction(self, x: Fraction, prec: int | None = None) -> "Num":
        prec = self.cap if prec is None else prec
        num, den = x.numerator, x.denominator
        if num == 0:
            return self.zero()
        vd = 0
        if not self.equal_char:
            while den % self.p == 0:
                den //= self.p
                vd += 1
        else:
            if den % self.p == 0:
                raise InputError(
                    f"denominator {den} is 0 in residue characteristic {self.p}")
        # value = z^{-vd} * num / den with den a unit
        a = self.res_from_int(num, prec + vd)
        b = self.res_inv(self.res_from_int(den, prec + vd), prec + vd)
        m = self.res_mul(a, b, prec + vd)
        n = Num.make(self, 0, m, prec + vd)
        return n.shift(-vd)

    def uniformizer(self, prec: int | None = None) -> "Num":
        return self.from_int(1, prec).shift(1)


class ZpRing(CoeffRing):
    """Z_p with integer residues."""

    def __init__(self, p: int, cap: int):
        super().__init__(cap)
        if not is_prime(p):
            raise InputError(f"p = {p} is not prime")
        self.p = p
        self.q = p
        self._pows = {0: 1}

    def pw(self, k):
        if k not in self._pows:
            self._pows[k] = self.p**k
        return self._pows[k]

    def res_add(self, a, b, k):
        return (a + b) % self.pw(k)

    def res_neg(self, a, k):
        return (-a) % self.pw(k)

    def res_mul(self, a, b, k):
        return a * b % self.pw(k)

    def res_val(self, a, k):
        a %= self.pw(k)
        if a == 0:
            return None
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def res_shift(self, a, j, k):
        if j >= 0:
            return a * self.pw(j) % self.pw(k)
        q, r = divmod(a, self.pw(-j))
        if r:
            raise AssertionError("inexact shift")
        return q % self.pw(k)

    def res_inv(self, a, k):
        return pow(a, -1, self.pw(k))

    def res_frob(self, a, k):
        return a % self.pw(k)  # trivial on W(F_p)

    def res_from_int(self, n, k):
        return n % self.pw(k)

    def res_repr(self, a, k):
        return str(a % self.pw(k))


class PiRing(CoeffRing):
    """F_q[[pi]] with tuple-of-F_q residues, little-endian in pi."""

    equal_char = True

    def __init__(self, q: int, cap: int):
        super().__init__(cap)
        self.gf = GF(q)
        self.p = self.gf.p
        self.q = q

    def _pad(self, a, k):
        a = tuple(a[:k])
        return a + (0,) * (k - len(a))

    def res_add(self, a, b, k):
        a, b = self._pad(a, k), self._pad(b, k)
        return tuple(self.gf.add(x, y) for x, y in zip(a, b))

    def res_neg(self, a, k):
        return tuple(self.gf.neg(x) for x in self._pad(a, k))

    def res_mul(self, a, b, k):
        a, b = self._pad(a, k), self._pad(b, k)
        out = [0] * k
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if i + j >= k:
                        break
                    if y:
                        out[i + j] = self.gf.add(out[i + j], self.gf.mul(x, y))
        return tuple(out)

    def res_val(self, a, k):
        a = self._pad(a, k)
        for i, x in enumerate(a):
            if x:
                return i
        return None

    def res_shift(self, a, j, k):
        a = self._pad(a, max(k, k - j))
        if j >= 0:
            return self._pad((0,) * j + a, k)
        if any(a[i] for i in range(min(-j, len(a)))):
            raise AssertionError("inexact shift")
        return self._pad(a[-j:], k)

    def res_inv(self, a, k):
        a = self._pad(a, k)
        if a[0] == 0:
            raise ZeroDivisionError("inverse of non-unit power series")
        c0 = self.gf.inv(a[0])
        out = [c0] + [0] * (k - 1)
        for i in range(1, k):
            s = 0
            for j in range(1, i + 1):
                if a[j] and out[i - j]:
                    s = self.gf.add(s, self.gf.mul(a[j], out[i - j]))
            out[i] = self.gf.mul(self.gf.neg(s), c0)
        return tuple(out)

    def res_frob(self, a, k):
        return tuple(self.gf.frob(x) for x in self._pad(a, k))

    def res_from_int(self, n, k):
        return self._pad((self.gf.embed_int(n),), k)

    def res_repr(self, a, k):
        a = self._pad(a, k)
        terms = []
        for i, x in enumerate(a):
            if x:
                terms.append(f"{x}" if i == 0 else
                             (f"pi^{i}" if x == 1 else f"{x}*pi^{i}"))
        return " + ".join(terms) if terms else "0"

    def from_digits(self, digits, prec: int | None = None) -> "Num":
        prec = self.cap if prec is None else prec
        res = self._pad(tuple(self.gf.embed_int(d) for d in digits), prec)
        return Num.make(self, 0, res, prec)


class Num:
    """One coefficient at capped absolute precision (immutable)."""

    __slots__ = ("ring", "v", "man", "prec")

    def __init__(self, ring, v, man, prec):
        self.ring = ring
        self.v = v
        self.man = man
        self.prec = prec

    @classmethod
    def make(cls, ring, v, man, prec):
        """Build from value = z^v * man known mod z^prec, renormalizing."""
        if prec <= (v if v is not None else -INF_PREC):
            # no information beyond "it exists"
            raise PrecisionError("coefficient precision exhausted")
        if v is None:
            return cls(ring, None, ring.res_from_int(0, 1), prec)
        w = ring.res_val(man, prec - v)
        if w is None:
            return cls(ring, None, ring.res_from_int(0, 1), prec)
        if w:
            man = ring.res_shift(man, -w, prec - v - w)
            v += w
        else:
            man = ring.res_shift(man, 0, prec - v)
        return cls(ring, v, man, prec)

    # -- queries ------------------------------------------------------------
    @property
    def is_zero_at_prec(self) -> bool:
        return self.v is None

    @property
    def val_lower(self) -> int:
        """Certified lower bound for the valuation."""
        return self.prec if self.v is None else self.v

    def val(self) -> int:
        if self.v is None:
            raise PrecisionError(
                f"valuation not certified (zero modulo z^{self.prec})")
        return self.v

    def is_unit(self) -> bool:
        return self.v == 0

    def residue_mod_z(self):
        """Image in the residue field (an F_q encoding / int mod p)."""
        if self.v is None or self.v > 0:
            return 0
        if self.ring.equal_char:
            return self.man[0]
        return self.man % self.ring.p

    def expanded(self, k):
        """Residue of the value modulo z^k (requires k <= prec)."""
        if self.v is None:
            return self.ring.res_from_int(0, k)
        return self.ring.res_shift(self.man, self.v, k)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Num):
            return NotImplemented
        prec = min(self.prec, other.prec)
        if prec >= INF_PREC:
            return self.ring.zero()
        res = self.ring.res_add(self.expanded(prec), other.expanded(prec), prec)
        return Num.make(self.ring, 0, res, prec)

    def __neg__(self):
        if self.v is None:
            return self
        return Num(self.ring, self.v,
                   self.ring.res_neg(self.man, self.prec - self.v), self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Num):
            return NotImplemented
        r = self.ring
        if self.v is None or other.v is None:
            prec = min(self.val_lower + other.val_lower, INF_PREC)
            if prec <= 0:
                raise PrecisionError("product precision exhausted")
            return Num(r, None, r.res_from_int(0, 1), prec)
        v = self.v + other.v
        prec = min(self.prec + other.v, other.prec + self.v)
        man = r.res_mul(self.man, other.man, prec - v)
        return Num(r, v, man, prec)

    def inv(self) -> "Num":
        if self.v is None:
            raise PrecisionError("cannot invert a value that is zero at precision")
        prec = self.prec - 2 * self.v
        if prec <= -self.v:
            raise PrecisionError("inverse has no certified digits")
        man = self.ring.res_inv(self.man, self.prec - self.v)
        return Num(self.ring, -self.v, man, prec)

    def shift(self, k: int) -> "Num":
        """Multiply by z^k (exact)."""
        if self.v is None:
            return Num(self.ring, None, self.man, self.prec + k)
        return Num(self.ring, self.v + k, self.man, self.prec + k)

    def frob(self) -> "Num":
        if self.v is None:
            return self
        return Num(self.ring, self.v,
                   self.ring.res_frob(self.man, self.prec - self.v), self.prec)

    def cap_prec(self, prec: int) -> "Num":
        if prec >= self.prec:
            return self
        if prec <= (self.v if self.v is not None else -INF_PREC):
            raise PrecisionError("coefficient precision exhausted")
        return Num.make(self.ring, self.v, self.man, prec) if self.v is not None \
            else Num(self.ring, None, self.man, prec)

    # -- comparisons ------------------------------------------------------------
    def agrees_with(self, other: "Num", digits: int | None = None) -> bool:
        """True if the two values agree modulo z^min(precs, digits)."""
        k = min(self.prec, other.prec)
        if digits is not None:
            k = min(k, digits)
        if k <= 0:
            raise PrecisionError("no overlapping certified digits")
        if k >= INF_PREC:
            return self.v is None and other.v is None
        a = self.expanded(k)
        b = other.expanded(k)
        return self.ring.res_val(self.ring.res_add(
            a, self.ring.res_neg(b, k), k), k) is None

    def __repr__(self):
        z = "pi" if self.ring.equal_char else str(self.ring.p)
        if self.v is None:
            return f"O({z}^{self.prec})" if self.prec < INF_PREC else "0"
        m = self.ring.res_repr(self.man, self.prec - self.v)
        body = f"({m})" if self.ring.equal_char else m
        if self.v:
            body = f"{z}^{self.v}*{body}"
        return f"{body} + O({z}^{self.prec})"
