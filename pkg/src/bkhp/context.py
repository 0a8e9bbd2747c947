"""Global precision context: base ring, Eisenstein polynomial, truncations.

A context fixes once and for all

* the coefficient ring W (Z_p or F_q[[pi]]) with its precision cap,
* the monic Eisenstein polynomial E of degree e cutting out O_K,
* N_c   guaranteed coefficient digits quoted to the user,
* M_u   the u-adic truncation order (we work modulo u^M_u),
* h_E   the E-jet order (completions at E are handled modulo E^h_E).

All values built in one context are immutable and every operation is a
pure function of its inputs, so concurrent use is safe.
"""

from __future__ import annotations

from fractions import Fraction

from .coefficients import CoeffRing, Num, PiRing, ZpRing, prime_power_split
from .errors import InputError

MODE_ALIASES = {
    "mixed": "mixed", "mixed-characteristic": "mixed",
    "equal": "equal", "equal-characteristic": "equal",
}


class PrecCtx:
    """Immutable bundle of ring + truncation parameters."""

    def __init__(self, mode: str, ring: CoeffRing, e: int,
                 E_coeffs: tuple[Num, ...], N_c: int, M_u: int, h_E: int):
        self.mode = mode
        self.ring = ring
        self.p = ring.p
        self.q = ring.q          # Frobenius exponent u -> u^q
        self.e = e
        self.E_coeffs = E_coeffs  # monic, length e+1
        self.N_c = N_c
        self.M_u = M_u
        self.h_E = h_E
        self.E0 = E_coeffs[0]
        self._lambda = None
        self._cache = {}

    def same_as(self, other: "PrecCtx") -> bool:
        return self is other

    def check_same(self, other: "PrecCtx"):
        if self is not other:
            raise InputError("operands belong to different contexts")

    def __repr__(self):
        base = f"Q_{self.p}" if self.mode == "mixed" else f"F_{self.q}((pi))"
        return (f"PrecCtx({base}, e={self.e}, N_c={self.N_c}, "
                f"M_u={self.M_u}, h_E={self.h_E})")


def coeff_from_literal(ring: CoeffRing, lit) -> Num:
    """Build a W-coefficient from an input literal.

    Accepted forms: int, Fraction, "a/b" strings, "z^v" / "z^v*a/b"
    strings (z denotes the uniformizer), and in equal characteristic a
    list of pi-digits (little-endian ints).
    """
    if isinstance(lit, Num):
        if lit.ring is not ring:
            raise InputError("coefficient from a different ring")
        return lit
    if isinstance(lit, bool):
        raise InputError(f"bad coefficient literal: {lit!r}")
    if isinstance(lit, int):
        return ring.from_int(lit)
    if isinstance(lit, Fraction):
        return ring.from_fraction(lit)
    if isinstance(lit, (list, tuple)):
        if not ring.equal_char:
            raise InputError("digit-list coefficients need equal characteristic")
        if not all(isinstance(d, int) for d in lit):
            raise InputError(f"bad digit list: {lit!r}")
        return ring.from_digits(lit)
    if isinstance(lit, str):
        s = lit.strip().replace(" ", "")
        shift = 0
        if s.startswith("z^"):
            head, _, rest = s[2:].partition("*")
            try:
                shift = int(head)
            except ValueError:
                raise InputError(f"bad uniformizer power in {lit!r}") from None
            s = rest if rest else "1"
        try:
            frac = Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad coefficient literal: {lit!r}") from None
        return ring.from_fraction(frac).shift(shift)
    raise InputError(f"bad coefficient literal: {lit!r}")


def make_context(mode: str, p_or_q: int, e: int, E_coeffs, N_c: int,
                 M_u: int, h_E: int, headroom: int | None = None) -> PrecCtx:
    """Validate parameters and build an immutable context.

    E_coeffs lists the e+1 coefficients of E, constant term first; the
    polynomial must be monic Eisenstein (unit-times-uniformizer constant
    term, divisible middle coefficients, leading coefficient 1).
    """
    if mode not in MODE_ALIASES:
        raise InputError(f"unknown mode {mode!r}")
    mode = MODE_ALIASES[mode]
    if N_c < 1 or M_u < 1 or h_E < 1 or e < 1:
        raise InputError("N_c, M_u, h_E, e must be positive")
    if headroom is None:
        headroom = 4 * N_c
    cap = N_c + headroom

    if mode == "mixed":
        ring: CoeffRing = ZpRing(p_or_q, cap)
    else:
        prime_power_split(p_or_q)
        ring = PiRing(p_or_q, cap)

    coeffs = [coeff_from_literal(ring, c) for c in E_coeffs]
    if len(coeffs) != e + 1:
        raise InputError(f"E needs exactly {e + 1} coefficients, got {len(coeffs)}")
    lead = coeffs[e]
    if lead.is_zero_at_prec or lead.v != 0 or \
            lead.man != ring.res_from_int(1, lead.prec):
        raise InputError("E must be monic (leading coefficient exactly 1)")
    c0 = coeffs[0]
    if c0.is_zero_at_prec or c0.val() != 1:
        raise InputError("E(0) must have valuation exactly 1 (Eisenstein)")
    for j in range(1, e):
        if coeffs[j].val_lower < 1:
            raise InputError(f"coefficient of u^{j} in E must be divisible "
                             f"by the uniformizer (Eisenstein)")

    if M_u < e * h_E:
        raise InputError(f"M_u = {M_u} < e*h_E = {e * h_E}: jets not representable")
    if M_u < ring.q:
        raise InputError(f"M_u = {M_u} < q = {ring.q}: Frobenius not expressible")

    return PrecCtx(mode, ring, e, tuple(coeffs), N_c, M_u, h_E)
