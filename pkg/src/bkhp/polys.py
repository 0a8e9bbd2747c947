"""Exact polynomial helpers over lists of coefficient Nums.

These are plain dense polynomials (little-endian coefficient lists) with
no truncation ideal; the truncated series ring and the jet ring are both
built on top of them.  Division is only supported by monic divisors, so
no coefficient inversions happen here.
"""

from __future__ import annotations

from .coefficients import Num


def ptrim(a: list[Num]) -> list[Num]:
    """Drop trailing exact zeros."""
    n = len(a)
    while n and a[n - 1].is_zero_at_prec and a[n - 1].prec >= 10**9:
        n -= 1
    return a[:n]


def pzero(ring, n: int) -> list[Num]:
    return [ring.zero() for _ in range(n)]


def padd(a: list[Num], b: list[Num], ring) -> list[Num]:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else ring.zero()
        y = b[i] if i < len(b) else ring.zero()
        out.append(x + y)
    return out


def pneg(a: list[Num]) -> list[Num]:
    return [-x for x in a]


def psub(a, b, ring):
    return padd(a, pneg(b), ring)


def pscale(a: list[Num], c: Num) -> list[Num]:
    return [c * x for x in a]


def pmul(a: list[Num], b: list[Num], ring, trunc: int | None = None) -> list[Num]:
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if trunc is not None:
        n = min(n, trunc)
    out = pzero(ring, n)
    for i, x in enumerate(a):
        if x.is_zero_at_prec and x.prec >= 10**9:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            out[i + j] = out[i + j] + x * y
    return out


def pdivmod_monic(a: list[Num], m: list[Num], ring) -> tuple[list[Num], list[Num]]:
    """Divide by a monic polynomial (leading coefficient literally 1)."""
    d = len(m) - 1
    assert d >= 0 and m[d].is_unit() and m[d].man == ring.res_from_int(1, 1)
    r = list(a)
    if len(r) <= d:
        return [], r
    q = pzero(ring, len(r) - d)
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i]
        if c.is_zero_at_prec and c.prec >= 10**9:
            continue
        q[i - d] = q[i - d] + c
        for j in range(d + 1):
            r[i - d + j] = r[i - d + j] - c * m[j]
    return q, r[:d]


def peval_zero(a: list[Num], ring) -> Num:
    return a[0] if a else ring.zero()


def ppow(a: list[Num], k: int, ring, trunc: int | None = None) -> list[Num]:
    out = [ring.one()]
    for _ in range(k):
        out = pmul(out, a, ring, trunc)
    return out
