"""Outward-rounded interval arithmetic over exact rationals.

Real intervals are (lo, hi) pairs of gmpy2.mpq; complex boxes are
(re_interval, im_interval) pairs.  Every operation returns an enclosure
of the exact result; ``round_out`` trims endpoints to dyadics with a
bounded number of fractional bits so chained computations stay fast
while remaining rigorous.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq, mpz

Iv = tuple  # (mpq lo, mpq hi)
Cbox = tuple  # (Iv re, Iv im)


def iv(lo, hi) -> Iv:
    lo, hi = mpq(lo), mpq(hi)
    assert lo <= hi
    return (lo, hi)


def iv_point(x) -> Iv:
    x = mpq(x)
    return (x, x)


def iv_add(a: Iv, b: Iv) -> Iv:
    return (a[0] + b[0], a[1] + b[1])


def iv_sub(a: Iv, b: Iv) -> Iv:
    return (a[0] - b[1], a[1] - b[0])


def iv_neg(a: Iv) -> Iv:
    return (-a[1], -a[0])


def iv_mul(a: Iv, b: Iv) -> Iv:
    p1, p2, p3, p4 = a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]
    return (min(p1, p2, p3, p4), max(p1, p2, p3, p4))


def iv_width(a: Iv):
    return a[1] - a[0]


def iv_mid(a: Iv):
    return (a[0] + a[1]) / 2


def iv_sign(a: Iv) -> int:
    """-1 / +1 when the interval is entirely negative / positive, else 0."""
    if a[1] < 0:
        return -1
    if a[0] > 0:
        return 1
    return 0


def iv_contains(a: Iv, x) -> bool:
    return a[0] <= x <= a[1]


def iv_subset(a: Iv, b: Iv) -> bool:
    return b[0] <= a[0] and a[1] <= b[1]


def iv_intersect(a: Iv, b: Iv):
    lo, hi = max(a[0], b[0]), min(a[1], b[1])
    return (lo, hi) if lo <= hi else None


def _floor_dyadic(x, prec: int):
    n, d = x.numerator, x.denominator
    return mpq((n << prec) // d, mpz(1) << prec)


def _ceil_dyadic(x, prec: int):
    n, d = x.numerator, x.denominator
    return mpq(-((-n << prec) // d), mpz(1) << prec)


def iv_round_out(a: Iv, prec: int) -> Iv:
    return (_floor_dyadic(a[0], prec), _ceil_dyadic(a[1], prec))


# --- complex rectangles -----------------------------------------------------


def cbox(re: Iv, im: Iv) -> Cbox:
    return (re, im)


def c_point(re, im) -> Cbox:
    return (iv_point(re), iv_point(im))


def c_add(a: Cbox, b: Cbox) -> Cbox:
    return (iv_add(a[0], b[0]), iv_add(a[1], b[1]))


def c_sub(a: Cbox, b: Cbox) -> Cbox:
    return (iv_sub(a[0], b[0]), iv_sub(a[1], b[1]))


def c_mul(a: Cbox, b: Cbox) -> Cbox:
    re = iv_sub(iv_mul(a[0], b[0]), iv_mul(a[1], b[1]))
    im = iv_add(iv_mul(a[0], b[1]), iv_mul(a[1], b[0]))
    return (re, im)


def c_div(a: Cbox, b: Cbox):
    """a / b, or None when 0 might lie in b (division undefined)."""
    if iv_sign(b[0]) == 0 and iv_sign(b[1]) == 0:
        return None
    conj = (b[0], iv_neg(b[1]))
    num = c_mul(a, conj)
    den = iv_add(iv_mul(b[0], b[0]), iv_mul(b[1], b[1]))
    if den[0] <= 0:
        return None
    inv = (1 / den[1], 1 / den[0])
    return (iv_mul(num[0], inv), iv_mul(num[1], inv))


def c_contains_zero(a: Cbox) -> bool:
    return iv_sign(a[0]) == 0 and iv_sign(a[1]) == 0


def c_width(a: Cbox):
    return max(iv_width(a[0]), iv_width(a[1]))


def c_mid(a: Cbox):
    return (iv_mid(a[0]), iv_mid(a[1]))


def c_round_out(a: Cbox, prec: int) -> Cbox:
    return (iv_round_out(a[0], prec), iv_round_out(a[1], prec))


def c_intersect(a: Cbox, b: Cbox):
    re = iv_intersect(a[0], b[0])
    if re is None:
        return None
    im = iv_intersect(a[1], b[1])
    if im is None:
        return None
    return (re, im)


def c_subset(a: Cbox, b: Cbox) -> bool:
    return iv_subset(a[0], b[0]) and iv_subset(a[1], b[1])


def horner_box(coeffs, z: Cbox, prec: int) -> Cbox:
    """Enclosure of p(z) where coeffs are Cbox enclosures, constant first.

    Each step rounds outward to ``prec`` fractional bits, so denominators
    stay bounded regardless of the chain length.
    """
    acc = c_point(0, 0)
    for c in reversed(coeffs):
        acc = c_round_out(c_add(c_mul(acc, z), c), prec)
    return acc


def coeff_boxes_from_ints(coeffs) -> list:
    return [c_point(int(c), 0) for c in coeffs]


def coeff_boxes_from_fracs(coeffs) -> list:
    return [c_point(mpq(c.numerator, c.denominator), 0) for c in coeffs]


def iv_from_fractions(lo: Fraction, hi: Fraction) -> Iv:
    return (mpq(lo.numerator, lo.denominator), mpq(hi.numerator, hi.denominator))


def iv_to_fractions(a: Iv) -> tuple[Fraction, Fraction]:
    return (
        Fraction(int(a[0].numerator), int(a[0].denominator)),
        Fraction(int(a[1].numerator), int(a[1].denominator)),
    )
