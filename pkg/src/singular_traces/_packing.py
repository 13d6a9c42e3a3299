"""Kronecker substitution for integer polynomials.

A list of signed integer coefficients ``c[0..k]`` is packed into the single
integer ``sum c[i] * 2**(w*i)``; a product of two packed integers is the
packed Cauchy product as long as the slot width ``w`` bounds every output
coefficient.  Large multiplications go through gmpy2.
"""

import gmpy2

_BIG = 1 << 12


def slot_width(bound):
    """Slot width (bits, multiple of 8) holding signed values with |c| <= bound."""
    w = int(bound).bit_length() + 2
    return (w + 7) & ~7


def pack(coeffs, width):
    """Pack a dense coefficient list (lowest degree first)."""
    if not coeffs:
        return 0
    nbytes = width // 8
    half = 1 << (width - 1)
    raw = b"".join((c + half).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(raw, "little") - _bias(nbytes, len(coeffs))


def _bias(nbytes, length):
    return int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * length, "little")


def mul(x, y):
    if x == 0 or y == 0:
        return 0
    if abs(x).bit_length() < _BIG or abs(y).bit_length() < _BIG:
        return x * y
    return int(gmpy2.mpz(x) * gmpy2.mpz(y))


def unpack(value, width, length):
    """Inverse of :func:`pack` for ``length`` slots of signed coefficients."""
    if length <= 0:
        return []
    half = 1 << (width - 1)
    nbytes = width // 8
    biased = value + _bias(nbytes, length)
    if biased < 0 or biased.bit_length() > width * length:
        raise OverflowError("packed value does not fit the declared slots")
    raw = biased.to_bytes(nbytes * length, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(length)
    ]
