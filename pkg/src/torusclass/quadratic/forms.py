"""Primitive binary quadratic forms ``a x^2 + b x y + c y^2``: reduction, cycles, composition."""

from __future__ import annotations

from math import gcd, isqrt
from typing import NamedTuple


class Form(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def inverse(self) -> "Form":
        return Form(self.a, -self.b, self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def principal_form(D: int) -> Form:
    k = D % 2
    return Form(1, k, (k - D) // 4)


# -- positive definite ----------------------------------------------------

def is_reduced_definite(f: Form) -> bool:
    a, b, c = f
    return abs(b) <= a <= c and not (b < 0 and (abs(b) == a or a == c))


def reduce_definite(f: Form) -> Form:
    a, b, c = f
    if a <= 0:
        raise ValueError("form is not positive definite")
    while True:
        if not (-a < b <= a):
            # translate b into (-a, a]
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return Form(a, b, c)


def reduced_forms_definite(D: int) -> list[Form]:
    """Every reduced primitive positive-definite form of discriminant ``D < 0``."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            f = Form(a, b, c)
            if c >= a and is_reduced_definite(f) and f.is_primitive():
                out.append(f)
        a += 1
    return out


# -- indefinite ------------------------------------------------------------

def is_reduced_indefinite(f: Form) -> bool:
    """``0 < b < sqrt(D)`` and ``sqrt(D) - b < 2|a| < sqrt(D) + b``."""
    a, b, c = f
    D = f.discriminant
    s = isqrt(D)
    aa = abs(2 * a)
    return 0 < b <= s and aa + b > s and aa - b <= s


def rho(f: Form) -> Form:
    """Reduction operator: ``(a, b, c) -> (c, b', (b'^2 - D)/4c)``, ``b' = -b mod 2c``.

    Picks ``b'`` in ``(sqrt D - 2|c|, sqrt D)`` when ``|c| < sqrt D``, else in ``(-|c|, |c|]``.
    """
    a, b, c = f
    D = f.discriminant
    s = isqrt(D)
    m = 2 * abs(c)
    if abs(c) <= s:
        bp = s - ((s + b) % m)
    else:
        bp = (-b) % m
        if bp > abs(c):
            bp -= m
    cp = (bp * bp - D) // (4 * c)
    return Form(c, bp, cp)


def reduce_indefinite(f: Form) -> Form:
    D = f.discriminant
    if D <= 0 or isqrt(D) ** 2 == D:
        raise ValueError("need a positive non-square discriminant")
    for _ in range(10_000 + 8 * D.bit_length() ** 2):
        if is_reduced_indefinite(f):
            return f
        f = rho(f)
    raise RuntimeError("indefinite reduction did not terminate")


def reduced_forms_indefinite(D: int) -> list[Form]:
    """Every reduced primitive indefinite form of discriminant ``D``."""
    s = isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        N = (D - b * b) // 4
        for aa in range(1, N + 1):
            if N % aa:
                continue
            if not (aa * 2 + b > s and aa * 2 - b <= s):
                continue
            for a in (aa, -aa):
                f = Form(a, b, -N // a)
                if f.is_primitive():
                    out.append(f)
    return out


def indefinite_cycles(D: int) -> list[list[Form]]:
    """Partition the reduced forms into ``rho``-cycles (one per proper class)."""
    forms = sorted(reduced_forms_indefinite(D))
    seen = set()
    cycles = []
    for f in forms:
        if f in seen:
            continue
        cyc = [f]
        seen.add(f)
        g = rho(f)
        while g != f:
            if g in seen or not is_reduced_indefinite(g):
                raise RuntimeError(f"rho left the cycle of {f}")
            cyc.append(g)
            seen.add(g)
            g = rho(g)
        cycles.append(cyc)
    return cycles


def _positive_a(f: Form) -> Form:
    """A properly equivalent form with ``a > 0`` (indefinite case)."""
    a, b, c = f
    if a > 0:
        return f
    if c > 0:
        return Form(c, -b, a)
    k = 1
    while True:
        for kk in (k, -k):
            # (x, y) -> (kk x - y, x), determinant 1
            A = a * kk * kk + b * kk + c
            if A > 0:
                return Form(A, -(2 * a * kk + b), a)
        k += 1


def compose(f: Form, g: Form) -> Form:
    """Dirichlet composition of two primitive forms of the same discriminant (unreduced).

    Both forms are first moved to ``a > 0``.
    """
    D = f.discriminant
    if g.discriminant != D:
        raise ValueError("forms have different discriminants")
    if D > 0:
        f, g = _positive_a(f), _positive_a(g)
    a1, b1, c1 = f
    a2, b2, c2 = g
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, u, v = xgcd(s, d)
        x2, y2 = u, -v
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (b3 * b3 - D) // (4 * a3)
    h = Form(a3, b3, c3)
    if h.discriminant != D:
        raise ArithmeticError(f"composition failed for {f} * {g}")
    return h


def prime_form(D: int, p: int, b_hint: int | None = None) -> Form:
    """A form ``(p, b, c)`` of discriminant ``D``; ``b_hint`` fixes ``b`` mod ``2p``."""
    if b_hint is not None:
        b = b_hint % (2 * p)
        if (b * b - D) % (4 * p):
            raise ValueError(f"b = {b} does not give a form of discriminant {D} with a = {p}")
        return Form(p, b, (b * b - D) // (4 * p))
    for b in range(0, 2 * p):
        if (b - D) % 2 == 0 and (b * b - D) % (4 * p) == 0:
            return Form(p, b, (b * b - D) // (4 * p))
    raise ValueError(f"no form with a = {p} of discriminant {D}")
