"""The truncated ring S[1/p] = W[[u]][1/p], optionally with E-denominators.

A :class:`SeriesElt` represents

    z^(-dz) * E^(-dE) * ( c_0 + c_1 u + ... + c_{L-1} u^{L-1}  +  u^L * T )

where z is the uniformizer of W, the window coefficients c_j are integral
(Num values), L <= M_u, and T is an unknown tail whose coefficients all
have valuation >= tail_val.  ``tail_val >= INF_PREC`` means the tail is
exactly zero, i.e. the element *is* the stored polynomial; polynomial
inputs and their sums and products stay exact until a degree overflows
M_u, at which point the dropped terms are folded into the tail bound.

Canonical form keeps dz minimal for the window (some window coefficient
is a unit, or the window is zero at precision) and dE >= 0.  All values
are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .coefficients import INF_PREC, Num
from .context import PrecCtx, coeff_from_literal
from .errors import InputError, PrecisionError


class SeriesElt:
    __slots__ = ("ctx", "dz", "dE", "coeffs", "tail_val")

    def __init__(self, ctx, dz, dE, coeffs, tail_val):
        self.ctx = ctx
        self.dz = dz
        self.dE = dE
        self.coeffs = tuple(coeffs)
        self.tail_val = tail_val

    # ---------------------------------------------------------------- build
    @classmethod
    def make(cls, ctx: PrecCtx, coeffs, dz: int = 0, dE: int = 0,
             tail_val: int = INF_PREC) -> "SeriesElt":
        """Normalize raw data into canonical form."""
        ring = ctx.ring
        coeffs = list(coeffs)
        if len(coeffs) > ctx.M_u:
            demoted = [c.val_lower for c in coeffs[ctx.M_u:]]
            tail_val = min([tail_val] + demoted)
            coeffs = coeffs[:ctx.M_u]
        if dE < 0:
            # E-power multiples are expanded into the window
            if tail_val < INF_PREC or len(coeffs) - dE * ctx.e > ctx.M_u:
                lows = [c.val_lower for c in coeffs] or [INF_PREC]
                tail_val = min(tail_val, min(lows))
            coeffs = polys.pmul(coeffs, polys.ppow(list(ctx.E_coeffs), -dE,
                                                   ring, ctx.M_u),
                                ring, ctx.M_u)
            dE = 0
        # make the window integral
        shift_up = 0
        for c in coeffs:
            lo = c.val_lower
            if lo < -shift_up:
                shift_up = -lo
        if shift_up:
            coeffs = [c.shift(shift_up) for c in coeffs]
            dz += shift_up
            if tail_val < INF_PREC:
                tail_val += shift_up
        # minimal dz for the window (tail_val tracks any drift honestly)
        while dz > 0 and all(c.val_lower >= 1 for c in coeffs):
            coeffs = [c.shift(-1) for c in coeffs]
            dz -= 1
            if tail_val < INF_PREC:
                tail_val -= 1
        if dz < 0:
            coeffs = [c.shift(-dz) for c in coeffs]
            if tail_val < INF_PREC:
                tail_val -= dz
            dz = 0
        if tail_val >= INF_PREC:
            coeffs = polys.ptrim(coeffs)
            tail_val = INF_PREC
        return cls(ctx, dz, dE, coeffs, tail_val)

    @classmethod
    def zero(cls, ctx) -> "SeriesElt":
        return cls(ctx, 0, 0, (), INF_PREC)

    @classmethod
    def one(cls, ctx) -> "SeriesElt":
        return cls.make(ctx, [ctx.ring.one()])

    @classmethod
    def from_coeff(cls, ctx, c: Num) -> "SeriesElt":
        return cls.make(ctx, [c])

    @classmethod
    def from_int(cls, ctx, n: int) -> "SeriesElt":
        return cls.make(ctx, [ctx.ring.from_int(n)])

    @classmethod
    def u_power(cls, ctx, j: int) -> "SeriesElt":
        if j >= ctx.M_u:
            raise InputError(f"u^{j} is outside the truncation window")
        return cls.make(ctx, polys.pzero(ctx.ring, j) + [ctx.ring.one()])

    @classmethod
    def from_literals(cls, ctx, lits, dE: int = 0) -> "SeriesElt":
        """Window coefficients from input literals (see coeff_from_literal)."""
        return cls.make(ctx, [coeff_from_literal(ctx.ring, l) for l in lits],
                        dE=dE)

    # -------------------------------------------------------------- queries
    @property
    def exact(self) -> bool:
        return self.tail_val >= INF_PREC

    @property
    def window(self) -> int:
        """Number of valid window coefficients (M_u for exact elements)."""
        return self.ctx.M_u if self.exact else len(self.coeffs)

    def coeff(self, j: int) -> Num:
        if j < len(self.coeffs):
            return self.coeffs[j]
        if self.exact:
            return self.ctx.ring.zero()
        raise PrecisionError(f"coefficient of u^{j} is beyond the window")

    def u_order_lower(self) -> int:
        """Certified lower bound for the u-order."""
        for i, c in enumerate(self.coeffs):
            if not (c.is_zero_at_prec and c.prec >= INF_PREC):
                return i
        return self.window

    def degree(self) -> int:
        """Degree of an exact element (-1 for zero)."""
        assert self.exact
        return len(self.coeffs) - 1

    def is_zero_at_prec(self, digits: int | None = None) -> bool:
        """Zero at the available precision; with `digits`, certified zero
        modulo z^digits (relative to the E-denominator-free content)."""
        if digits is None:
            return all(c.is_zero_at_prec for c in self.coeffs)
        return all(c.val_lower - self.dz >= digits for c in self.coeffs)

    def prec_abs(self) -> int:
        """Guaranteed absolute coefficient precision of the value."""
        p = INF_PREC
        for c in self.coeffs:
            p = min(p, c.prec)
        return p - self.dz

    def agrees_with(self, other: "SeriesElt", digits: int | None = None,
                    u_order: int | None = None) -> bool:
        d = self - other
        if u_order is not None and d.window < min(u_order, self.ctx.M_u):
            raise PrecisionError("comparison window too small")
        return d.is_zero_at_prec(digits)

    # -------------------------------------------------------------- ring ops
    def _with_dE(self, m: int) -> "SeriesElt":
        """Rewrite with denominator exponent exactly m >= self.dE."""
        if m == self.dE:
            return self
        x = SeriesElt.make(self.ctx, self.coeffs, self.dz, self.dE - m,
                           self.tail_val)
        return SeriesElt(x.ctx, x.dz, m, x.coeffs, x.tail_val)

    def __add__(self, other):
        if not isinstance(other, SeriesElt):
            return NotImplemented
        self.ctx.check_same(other.ctx)
        m = max(self.dE, other.dE)
        a, b = self._with_dE(m), other._with_dE(m)
        ring = a.ctx.ring
        d = max(a.dz, b.dz)
        ca = [c.shift(d - a.dz) for c in a.coeffs]
        cb = [c.shift(d - b.dz) for c in b.coeffs]
        w = min(a.window, b.window)
        out = polys.padd(ca[:w], cb[:w], ring)
        if a.exact and b.exact:
            tail = INF_PREC
        else:
            ta = a.tail_val + (d - a.dz) if not a.exact else INF_PREC
            tb = b.tail_val + (d - b.dz) if not b.exact else INF_PREC
            demoted = [c.val_lower for c in ca[w:]] + \
                      [c.val_lower for c in cb[w:]]
            tail = min([ta, tb] + demoted)
        return SeriesElt.make(a.ctx, out, d, m, tail)

    def __neg__(self):
        return SeriesElt(self.ctx, self.dz, self.dE,
                         tuple(-c for c in self.coeffs), self.tail_val)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SeriesElt):
            return NotImplemented
        self.ctx.check_same(other.ctx)
        a, b = self, other
        ctx, ring = a.ctx, a.ctx.ring
        Mu = ctx.M_u
        w = min(a.window + b.u_order_lower(), b.window + a.u_order_lower(), Mu)
        full = polys.pmul(list(a.coeffs), list(b.coeffs), ring)
        out = full[:w]
        if a.exact and b.exact:
            if len(full) <= Mu:
                tail = INF_PREC
            else:
                tail = min(c.val_lower for c in full[Mu:])
        else:
            parts = [t for t in (a.tail_val, b.tail_val) if t < INF_PREC]
            cross = [sum(parts)] if len(parts) == 2 else []
            tail = min(parts + cross + [c.val_lower for c in full[w:]])
        return SeriesElt.make(ctx, out, a.dz + b.dz, a.dE + b.dE, tail)

    def scalar_mul(self, c: Num) -> "SeriesElt":
        return self * SeriesElt.from_coeff(self.ctx, c)

    def shift_z(self, k: int) -> "SeriesElt":
        """Multiply by z^k (exact)."""
        return SeriesElt.make(self.ctx, self.coeffs, self.dz - k, self.dE,
                              self.tail_val)

    def shift_E(self, k: int) -> "SeriesElt":
        """Multiply by E^k (exact; negative k adds to the denominator)."""
        return SeriesElt.make(self.ctx, self.coeffs, self.dz, self.dE - k,
                              self.tail_val)

    def cap_window(self, w: int) -> "SeriesElt":
        if w >= self.window:
            return self
        demoted = [c.val_lower for c in self.coeffs[w:]]
        tail = min([self.tail_val] + demoted)
        return SeriesElt.make(self.ctx, self.coeffs[:w], self.dz, self.dE, tail)

    # ------------------------------------------------------------- calculus
    def u_derive(self) -> "SeriesElt":
        """u d/du, term by term.  Requires no E-denominator."""
        if self.dE:
            raise InputError("u_derive needs an E-denominator-free element")
        ring = self.ctx.ring
        out = [ring.from_int(j) * c for j, c in enumerate(self.coeffs)]
        return SeriesElt.make(self.ctx, out, self.dz, 0, self.tail_val)

    def frobenius(self) -> "SeriesElt":
        """Coefficientwise Frobenius on W composed with u -> u^q.

        Degrees at or beyond M_u are dropped into the tail bound, so the
        result of applying this to an exact polynomial of degree >= M_u/q
        is no longer exact (the spec's truncation flag).
        """
        if self.dE:
            raise InputError("frobenius needs an E-denominator-free element")
        ctx, ring = self.ctx, self.ctx.ring
        q, Mu = ctx.q, ctx.M_u
        w = min(Mu, q * self.window)
        out = polys.pzero(ring, w)
        dropped = []
        for j, c in enumerate(self.coeffs):
            if q * j < w:
                out[q * j] = c.frob()
            else:
                dropped.append(c.val_lower)
        if self.exact and not dropped:
            tail = INF_PREC
        elif self.exact:
            tail = min(dropped)
        else:
            tail = min(dropped + [self.tail_val])
        return SeriesElt.make(ctx, out, self.dz, 0, tail)

    # ------------------------------------------------------------- division
    def mod_u(self) -> Num:
        """Constant term of the value (an element of K_0)."""
        if not self.coeffs:
            if not self.exact:
                raise PrecisionError("empty window, constant term unknown")
            c = self.ctx.ring.zero()
        else:
            c = self.coeffs[0]
        c = c.shift(-self.dz)
        inv0 = None
        for _ in range(self.dE):
            inv0 = inv0 if inv0 is not None else self.ctx.E0.inv()
            c = c * inv0
        return c

    def inv_unit(self) -> "SeriesElt":
        """Inverse, for elements of the form z^a * (unit of S)."""
        if self.dE:
            raise InputError("inv_unit needs an E-denominator-free element")
        ring = self.ctx.ring
        if not self.coeffs:
            raise PrecisionError("cannot invert zero")
        c0 = self.coeffs[0]
        if c0.is_zero_at_prec or c0.v != 0:
            raise PrecisionError(
                "inv_unit needs a certified unit constant term after "
                "stripping the z-content")
        inv0 = c0.inv()
        w = min(self.window, self.ctx.M_u)
        out = [inv0]
        for j in range(1, w):
            s = ring.zero()
            for i in range(1, j + 1):
                if i < len(self.coeffs):
                    s = s + self.coeffs[i] * out[j - i]
            out.append(-(s * inv0))
        if self.exact and self.degree() <= 0:
            tail = INF_PREC
        elif self.exact:
            tail = 0  # true inverse is an integral series
        else:
            tail = min(self.tail_val, 0)
        return SeriesElt.make(self.ctx, out, -self.dz, 0, tail)

    def div_E_once(self) -> "SeriesElt":
        """Divide the window content by E, certifying divisibility.

        InputError: the element is certified non-divisible (the result
        would carry a genuine E-denominator).  PrecisionError: nothing can
        be certified.  Exact inputs with exact zero remainders stay exact.
        """
        ctx, ring = self.ctx, self.ctx.ring
        e, L = ctx.e, self.window
        if L < e + 1:
            raise PrecisionError("window too small to divide by E")
        q, r = polys.pdivmod_monic(list(self.coeffs), list(ctx.E_coeffs), ring)
        tau_tail = INF_PREC if self.exact else L // e + min(self.tail_val, 0)
        bounds = [tau_tail]
        for c in r:
            lo = c.val_lower
            if lo < tau_tail and not c.is_zero_at_prec:
                raise InputError("element is not divisible by E")
            bounds.append(lo)
        tau = min(bounds)
        if tau >= INF_PREC:
            return SeriesElt.make(ctx, q, self.dz, self.dE, INF_PREC)
        if tau <= 0:
            raise PrecisionError(
                "cannot certify divisibility by E at this precision")
        # remainder/E contaminates coefficient j at valuation >= tau - j//e - 1
        out = []
        for j, c in enumerate(q):
            clamp = tau - j // e - 1
            if clamp <= 0:
                break
            out.append(c if c.prec <= clamp else c.cap_prec(clamp))
        new_tail = min(self.tail_val, tau - len(out) // e - 1)
        return SeriesElt.make(ctx, out, self.dz, self.dE, new_tail)

    def ord_E(self, bound: int | None = None) -> int:
        """Certified E-order of the value (dE counts negatively)."""
        if self.is_zero_at_prec():
            raise PrecisionError("E-order of a value that is zero at "
                                 "precision is undefined")
        lim = bound if bound is not None else \
            self.ctx.M_u // self.ctx.e + 1
        x = SeriesElt(self.ctx, self.dz, 0, self.coeffs, self.tail_val)
        k = 0
        while k < lim:
            try:
                x = x.div_E_once()
            except InputError:
                break
            k += 1
        return k - self.dE

    def div_E_power(self, k: int) -> "SeriesElt":
        """Divide the value by E^k (k >= 0), using the formal denominator
        first and certified window division for the rest."""
        x = self
        for _ in range(k):
            if x.dE > 0:
                x = SeriesElt(x.ctx, x.dz, x.dE - 1, x.coeffs, x.tail_val)
            else:
                x = x.div_E_once()
        return x

    # ------------------------------------------------------------- classes
    def unit_content(self) -> tuple[int, int, "SeriesElt"]:
        """Write the value as z^a * E^b * (unit of S), certified.

        Returns (a, b, unit).  PrecisionError if the monomial class cannot
        be certified at the available precision.
        """
        if self.is_zero_at_prec():
            raise PrecisionError("zero has no unit content")
        x = SeriesElt(self.ctx, self.dz, 0, self.coeffs, self.tail_val)
        k = 0
        while True:
            try:
                x = x.div_E_once()
                k += 1
            except InputError:
                break
        b = k - self.dE
        if not x.coeffs:
            raise PrecisionError("zero has no unit content")
        v = min(c.val_lower for c in x.coeffs)
        c0 = x.coeffs[0]
        if c0.is_zero_at_prec or c0.v != v:
            raise PrecisionError(
                "value is not a certified z^a * E^b * unit (the constant "
                "term does not control the z-content)")
        tail = INF_PREC if x.exact else max(x.tail_val - v, 0)
        unit = SeriesElt.make(x.ctx, [c.shift(-v) for c in x.coeffs], 0, 0,
                              tail)
        return v - x.dz, b, unit

    # --------------------------------------------------------------- norms
    def gauss_q_exp(self, n: int) -> tuple[Fraction | None, bool]:
        """log_|p| of the naive Gauss norm at radius |pi_K|^(q^-n).

        The exponent of a term c_j u^j is val(c_j) + j*q^(-n)/e; returns
        (min over the window, certified) where `certified` records that
        the unknown tail provably cannot beat the window minimum.  For a
        certified zero the exponent is None.
        """
        if self.dE:
            raise InputError("gauss norm needs an E-denominator-free element")
        step = Fraction(1, self.ctx.q**n * self.ctx.e)
        best = None
        for j, c in enumerate(self.coeffs):
            if c.is_zero_at_prec:
                continue
            t = Fraction(c.v - self.dz) + j * step
            if best is None or t < best:
                best = t
        if best is None:
            return None, self.exact and self.is_zero_at_prec()
        if self.exact:
            return best, True
        tail_bound = Fraction(self.tail_val - self.dz) + self.window * step
        return best, best <= tail_bound

    def __repr__(self):
        zname = "pi" if self.ctx.ring.equal_char else str(self.ctx.p)
        terms = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero_at_prec and c.prec >= INF_PREC:
                continue
            terms.append(repr(c) if j == 0 else f"({c!r})*u^{j}")
        body = " + ".join(terms) if terms else "0"
        pre = []
        if self.dz:
            pre.append(f"{zname}^-{self.dz}")
        if self.dE:
            pre.append(f"E^-{self.dE}")
        head = ("*".join(pre) + " * ") if pre else ""
        tail = "" if self.exact else \
            f" + O(u^{self.window}; tail_val>={self.tail_val})"
        return f"{head}[{body}]{tail}"


def E_series(ctx: PrecCtx) -> SeriesElt:
    return SeriesElt.make(ctx, list(ctx.E_coeffs))


def lambda_series(ctx: PrecCtx) -> SeriesElt:
    """Truncation of the infinite product of phi^m(E / E(0)) over m >= 0.

    Factors with e*q^m >= M_u are congruent to 1 modulo u^M_u and are
    dropped.  The result is congruent to 1 mod u, carries the accumulated
    E(0)-denominators, and its tail bound accounts for the denominators
    of the dropped factors.
    """
    if ctx._lambda is not None:
        return ctx._lambda
    inv0 = ctx.E0.inv()
    factor = E_series(ctx).scalar_mul(inv0)
    out = SeriesElt.one(ctx)
    count = 0
    while True:
        out = out * factor
        count += 1
        nxt = factor.frobenius()
        if nxt.agrees_with(SeriesElt.one(ctx)) and nxt.u_order_lower() >= \
                min(nxt.window, 1):
            break
        factor = nxt
    # dropped factors contribute tail denominators, one per future factor
    out = SeriesElt(out.ctx, out.dz, out.dE, out.coeffs,
                    min(out.tail_val, -2 * (count + 2)))
    ctx._lambda = out
    return out


@dataclass(frozen=True)
class LogNorm:
    """Exact log-base-|p| of a Gauss norm; q_exp None encodes zero."""
    q_exp: Fraction | None
    certified: bool

    @property
    def is_zero(self):
        return self.q_exp is None


def gauss_lognorm(x: SeriesElt, n: int) -> LogNorm:
    q, cert = x.gauss_q_exp(n)
    return LogNorm(q, cert)


def frobenius(x: SeriesElt) -> SeriesElt:
    return x.frobenius()


def u_derive(x: SeriesElt) -> SeriesElt:
    return x.u_derive()
