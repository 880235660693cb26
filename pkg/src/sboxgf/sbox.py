"""Square n-bit substitution tables and their text/JSON formats."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

MIN_BITS = 2
MAX_BITS = 16


class SBoxFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SBox:
    """An ``n``-bit lookup table with ``2**n`` entries in ``[0, 2**n)``.

    Structure is validated on construction; bijectivity is not (use
    :func:`is_proper`).
    """

    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if not MIN_BITS <= self.n <= MAX_BITS:
            raise ValueError(f"bit width must be in [{MIN_BITS}, {MAX_BITS}], got {self.n}")
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        size = 1 << self.n
        if len(entries) != size:
            raise ValueError(f"{self.n}-bit S-box needs {size} entries, got {len(entries)}")
        if entries and not (0 <= min(entries) and max(entries) < size):
            raise ValueError(f"entries must lie in [0, {size})")

    @classmethod
    def from_entries(cls, entries: Iterable[int]) -> "SBox":
        """Infer ``n`` from the table length."""
        entries = tuple(entries)
        n = len(entries).bit_length() - 1
        if len(entries) != 1 << n:
            raise ValueError(f"table length {len(entries)} is not a power of two")
        return cls(n, entries)

    @property
    def size(self) -> int:
        return 1 << self.n

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, j):
        return self.entries[j]

    def __iter__(self):
        return iter(self.entries)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64)


def is_proper(sbox: SBox) -> bool:
    """True iff every value ``0 .. 2**n - 1`` appears exactly once."""
    seen = bytearray(sbox.size)
    for e in sbox.entries:
        if seen[e]:
            return False
        seen[e] = 1
    return True


def _check_width(n: int):
    if not MIN_BITS <= n <= MAX_BITS:
        raise ValueError(f"bit width must be in [{MIN_BITS}, {MAX_BITS}], got {n}")


def identity_sbox(n: int) -> SBox:
    _check_width(n)
    return SBox(n, tuple(range(1 << n)))


def reverse_sbox(n: int) -> SBox:
    _check_width(n)
    top = (1 << n) - 1
    return SBox(n, tuple(top - j for j in range(1 << n)))


DES_S1_ROW0 = SBox(4, (0xE, 0x4, 0xD, 0x1, 0x2, 0xF, 0xB, 0x8,
                       0x3, 0xA, 0x6, 0xC, 0x5, 0x9, 0x0, 0x7))


# -- text / JSON ------------------------------------------------------------

def format_sbox(sbox: SBox) -> str:
    """Two-line text form: ``n=<bits>`` then the entries.

    Widths up to 4 bits are written as uppercase hex digits, wider tables
    in decimal.
    """
    if sbox.n <= 4:
        body = " ".join(f"{e:X}" for e in sbox.entries)
    else:
        body = " ".join(str(e) for e in sbox.entries)
    return f"n={sbox.n}\n{body}\n"


def _parse_entry(tok: str, n: int) -> int:
    t = tok.strip().rstrip(",")
    try:
        if t.lower().startswith("0x"):
            return int(t, 16)
        return int(t, 16) if n <= 4 else int(t, 10)
    except ValueError:
        raise SBoxFormatError(f"bad S-box entry {tok!r}") from None


def parse_sbox(text: str) -> SBox:
    """Parse the text form; a JSON object is also accepted.

    Bare tokens are hex for ``n <= 4`` and decimal otherwise; a ``0x``
    prefix forces hex at any width.  Entries may span several lines.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return sbox_from_json(stripped)
    lines = [ln for ln in (l.split("#", 1)[0].strip() for l in stripped.splitlines()) if ln]
    if not lines:
        raise SBoxFormatError("empty S-box text")
    head = lines[0].replace(" ", "")
    if not head.startswith("n="):
        raise SBoxFormatError("first line must be 'n=<bits>'")
    try:
        n = int(head[2:])
    except ValueError:
        raise SBoxFormatError(f"bad header {lines[0]!r}") from None
    toks = " ".join(lines[1:]).replace(",", " ").split()
    entries = [_parse_entry(t, n) for t in toks]
    try:
        return SBox(n, tuple(entries))
    except ValueError as exc:
        raise SBoxFormatError(str(exc)) from None


def sbox_to_json(sbox: SBox) -> str:
    return json.dumps({"n": sbox.n, "entries": list(sbox.entries)})


def sbox_from_json(text: str) -> SBox:
    try:
        obj = json.loads(text)
        return SBox(int(obj["n"]), tuple(obj["entries"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SBoxFormatError(f"bad S-box JSON: {exc}") from None
