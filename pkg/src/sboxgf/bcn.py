"""S-box <-> binary coefficient numbers (BCNs) <-> GF(2) polynomials.

A BCN is one bit-plane of an S-box read as a ``2**n``-bit number.  Index 0
of the table is the most significant bit of the number and, seen as a
polynomial over GF(2), drives the ``x**(2**n - 1)`` term.  Planes are
numbered 1 (least significant output bit) to ``n`` and are always
exchanged highest plane first.
"""
from __future__ import annotations

import shlex
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gfpoly import GfPolynomial, format_polynomial, from_bitmask, to_bitmask
from .sbox import SBox

ROLES = ("in", "out")


class BcnFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Bcn:
    """One bit-plane of an ``n``-bit S-box, stored as its decimal value."""

    n: int
    value: int
    plane: int = 1
    role: str = "out"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("bit width must be >= 1")
        if not 0 <= self.value < 1 << self.length:
            raise ValueError(f"BCN value out of range for n={self.n}")
        if not 1 <= self.plane <= self.n:
            raise ValueError(f"plane must be in [1, {self.n}], got {self.plane}")
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}")

    @property
    def length(self) -> int:
        return 1 << self.n

    @property
    def bits(self) -> tuple[int, ...]:
        """Bits indexed by S-box index (index 0 first)."""
        return tuple(int(c) for c in format(self.value, f"0{self.length}b"))

    @classmethod
    def from_bits(cls, bits: Sequence[int], plane: int = 1, role: str = "out") -> "Bcn":
        n = len(bits).bit_length() - 1
        if len(bits) != 1 << n:
            raise ValueError(f"bit count {len(bits)} is not a power of two")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        return cls(n, int("".join(map(str, bits)), 2), plane, role)

    def popcount(self) -> int:
        return bin(self.value).count("1")

    def __int__(self):
        return self.value


def pack_plane(bits: np.ndarray) -> int:
    size = bits.size
    pad = (-size) % 8
    if pad:
        bits = np.concatenate([np.zeros(pad, dtype=np.uint8), bits.astype(np.uint8)])
    return int.from_bytes(np.packbits(bits.astype(np.uint8)).tobytes(), "big")


def unpack_plane(value: int, size: int) -> np.ndarray:
    nbytes = (size + 7) // 8
    raw = np.frombuffer(value.to_bytes(nbytes, "big"), dtype=np.uint8)
    return np.unpackbits(raw)[nbytes * 8 - size:]


def input_bcns(n: int) -> list[Bcn]:
    """The index planes; constants of the encoding for a given ``n``."""
    idx = np.arange(1 << n, dtype=np.int64)
    return [Bcn(n, pack_plane((idx >> (k - 1)) & 1), k, "in") for k in range(n, 0, -1)]


def output_bcns(sbox: SBox) -> list[Bcn]:
    arr = sbox.as_array()
    return [Bcn(sbox.n, pack_plane((arr >> (k - 1)) & 1), k, "out")
            for k in range(sbox.n, 0, -1)]


def sbox_to_bcns(sbox: SBox) -> tuple[list[Bcn], list[Bcn]]:
    """Return ``(input_bcns, output_bcns)``, each highest plane first."""
    return input_bcns(sbox.n), output_bcns(sbox)


def bcns_to_sbox(bcns: Sequence[Bcn]) -> SBox:
    """Reassemble an S-box from its output planes, highest plane first.

    The first BCN supplies the most significant output bit.  Plane labels
    on the BCNs are not consulted; order is positional.
    """
    if not bcns:
        raise ValueError("need at least one BCN")
    n = bcns[0].n
    if any(b.n != n for b in bcns):
        raise ValueError("BCNs have mismatched widths")
    if len(bcns) != n:
        raise ValueError(f"{n}-bit S-box needs {n} BCNs, got {len(bcns)}")
    size = 1 << n
    acc = np.zeros(size, dtype=np.int64)
    for b in bcns:
        acc = (acc << 1) | unpack_plane(b.value, size)
    return SBox(n, tuple(acc.tolist()))


def is_balanced(bcn: Bcn) -> bool:
    return bcn.popcount() * 2 == bcn.length


def bcn_to_decimal(bcn: Bcn) -> int:
    return bcn.value


def bcn_to_polynomial(bcn: Bcn) -> GfPolynomial:
    """GF(2) polynomial whose ``x**(2**n-1-j)`` coefficient is bit ``j``.

    With index 0 as the most significant bit, the BCN's decimal value is
    exactly the polynomial's bitmask.
    """
    return from_bitmask(bcn.value)


def polynomial_to_bcn(poly: GfPolynomial, n: int, plane: int = 1, role: str = "out") -> Bcn:
    if poly.p != 2:
        raise ValueError("BCN polynomials live over GF(2)")
    if poly.degree > (1 << n) - 1:
        raise ValueError(f"degree {poly.degree} too high for a {n}-bit BCN")
    return Bcn(n, to_bitmask(poly), plane, role)


# -- text format ---------------------------------------------------------------

def format_bcn(bcn: Bcn, with_poly: bool = True) -> str:
    """``n=4 plane=4 role=out bits=... dec=...`` plus an optional rendering.

    The polynomial is appended as a quoted ``poly="..."`` field.
    """
    fields = [
        f"n={bcn.n}",
        f"plane={bcn.plane}",
        f"role={bcn.role}",
        f"bits={format(bcn.value, f'0{bcn.length}b')}",
        f"dec={bcn.value}",
    ]
    if with_poly:
        fields.append(f'poly="{format_polynomial(bcn_to_polynomial(bcn))}"')
    return " ".join(fields)


def parse_bcn(line: str) -> Bcn:
    """Parse one BCN line; either ``bits=`` or ``dec=`` must be present.

    ``plane`` defaults to 1 and ``role`` to ``out``; other keys (``poly``)
    are ignored.
    """
    try:
        toks = shlex.split(line)
    except ValueError as exc:
        raise BcnFormatError(str(exc)) from None
    kv = {}
    for t in toks:
        k, sep, v = t.partition("=")
        if not sep:
            raise BcnFormatError(f"expected key=value, got {t!r}")
        kv[k] = v
    if "n" not in kv:
        raise BcnFormatError("missing n=")
    try:
        n = int(kv["n"])
        plane = int(kv.get("plane", 1))
        role = kv.get("role", "out")
        value = None
        if "bits" in kv:
            bits = kv["bits"]
            if len(bits) != 1 << n or set(bits) - {"0", "1"}:
                raise BcnFormatError(f"bits= must hold {1 << n} characters of 0/1")
            value = int(bits, 2)
        if "dec" in kv:
            dec = int(kv["dec"])
            if value is not None and dec != value:
                raise BcnFormatError("bits= and dec= disagree")
            value = dec
        if value is None:
            raise BcnFormatError("need bits= or dec=")
        return Bcn(n, value, plane, role)
    except BcnFormatError:
        raise
    except ValueError as exc:
        raise BcnFormatError(str(exc)) from None


def parse_bcns(text: str) -> list[Bcn]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_bcn(line))
    return out
