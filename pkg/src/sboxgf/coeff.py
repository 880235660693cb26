"""S-boxes read off the coefficient list of a single polynomial.

A degree ``2**n - 1`` polynomial with coefficients in ``[0, 2**n)`` has
``2**n`` coefficients; reading them from the highest degree down (or the
lowest up) gives an ``n``-bit table.  No field arithmetic is done on the
coefficients, so the composite modulus ``2**n`` is harmless.

For 32- and 64-bit widths tables cannot be materialised; a coefficient
*function* is probed at chosen indices instead.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .sbox import SBox, is_proper


class Order(str, enum.Enum):
    HIGHEST = "highest"
    LOWEST = "lowest"

    @classmethod
    def parse(cls, s: "str | Order") -> "Order":
        if isinstance(s, Order):
            return s
        s = s.lower().replace("-first", "")
        try:
            return cls(s)
        except ValueError:
            raise ValueError(f"order must be 'highest' or 'lowest', got {s!r}") from None


class CoeffFormatError(ValueError):
    pass


@dataclass(frozen=True)
class CoeffPermPoly:
    """``coeffs[i]`` is the coefficient of ``x**i``; exactly ``2**n`` of them.

    A zero leading coefficient is allowed.
    """

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        size = 1 << self.n
        if len(coeffs) != size:
            raise ValueError(f"need {size} coefficients for n={self.n}, got {len(coeffs)}")
        if any(not 0 <= c < size for c in coeffs):
            raise ValueError(f"coefficients must lie in [0, {size})")

    @classmethod
    def from_descending(cls, n: int, written: Sequence[int]) -> "CoeffPermPoly":
        """Build from coefficients listed as written, highest degree first."""
        return cls(n, tuple(reversed(tuple(written))))

    def descending(self) -> tuple[int, ...]:
        return tuple(reversed(self.coeffs))

    def is_permutation(self) -> bool:
        return sorted(self.coeffs) == list(range(1 << self.n))


@dataclass(frozen=True)
class CoeffSBox:
    sbox: SBox
    proper: bool


def sbox_from_coeffs(poly: CoeffPermPoly, order: "Order | str" = Order.HIGHEST) -> CoeffSBox:
    """Read the table off the coefficients.

    Highest-first puts the ``x**(2**n-1)`` coefficient at index 0.  An
    improper table is returned flagged rather than rejected.
    """
    order = Order.parse(order)
    cs = poly.coeffs if order is Order.LOWEST else poly.coeffs[::-1]
    sbox = SBox(poly.n, cs)
    return CoeffSBox(sbox, is_proper(sbox))


def coeffs_from_sbox(sbox: SBox, order: "Order | str" = Order.HIGHEST) -> CoeffPermPoly:
    order = Order.parse(order)
    es = sbox.entries if order is Order.LOWEST else sbox.entries[::-1]
    return CoeffPermPoly(sbox.n, es)


# -- functional (probe-only) S-boxes --------------------------------------------

PROBE_WIDTHS = (32, 64)


@dataclass(frozen=True)
class ProbeReport:
    n: int
    samples: list[tuple[int, int]]
    duplicates: list[int]

    @property
    def duplicate_found(self) -> bool:
        return bool(self.duplicates)


def big_sbox_probe(coeff_fn: Callable[[int], int], n: int, indices: Iterable[int]) -> ProbeReport:
    """Evaluate a functional ``n``-bit S-box at ``indices`` only.

    Values seen more than once among the probes are listed in
    ``duplicates``; an empty list is evidence, not proof, of bijectivity.
    Probes are evaluated sequentially.
    """
    if n not in PROBE_WIDTHS:
        raise ValueError(f"probe width must be one of {PROBE_WIDTHS}, got {n}")
    size = 1 << n
    samples = []
    counts: dict[int, int] = {}
    for j in indices:
        j = int(j)
        if not 0 <= j < size:
            raise ValueError(f"probe index {j} outside [0, 2^{n})")
        v = int(coeff_fn(j))
        if not 0 <= v < size:
            raise ValueError(f"generator returned {v} outside [0, 2^{n}) at index {j}")
        samples.append((j, v))
        counts[v] = counts.get(v, 0) + 1
    dups = sorted(v for v, c in counts.items() if c > 1)
    return ProbeReport(n, samples, dups)


def named_generator(spec: str, n: int) -> Callable[[int], int]:
    """Built-in index -> value generators: ``identity``, ``reverse``, ``affine:a,b``.

    ``affine:a,b`` maps ``j`` to ``(a*j + b) mod 2**n``, a bijection iff
    ``a`` is odd.  The generator gives the value at S-box index ``j``, i.e.
    the ``j``-th coefficient met in the file's reading order.
    """
    mask = (1 << n) - 1
    if spec == "identity":
        return lambda j: j
    if spec == "reverse":
        return lambda j: mask - j
    m = re.fullmatch(r"affine:(\d+),(\d+)", spec)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return lambda j: (a * j + b) & mask
    raise ValueError(f"unknown generator {spec!r}")


def coefficient_degree(j: int, n: int, order: "Order | str") -> int:
    """Degree of the coefficient that lands at S-box index ``j``."""
    order = Order.parse(order)
    return j if order is Order.LOWEST else (1 << n) - 1 - j


# -- file format ----------------------------------------------------------------

@dataclass(frozen=True)
class CoeffFile:
    n: int
    order: Order
    poly: CoeffPermPoly | None = None
    generator: str | None = None


def parse_coeff_file(text: str) -> CoeffFile:
    """Header ``n=<bits> order=<highest|lowest>`` then the coefficients.

    Coefficients are listed as the polynomial is written, highest degree
    first, whatever the reading order.  For 32/64-bit widths the header
    carries ``gen=<name>`` instead of a list.
    """
    lines = [ln for ln in (l.split("#", 1)[0].strip() for l in text.splitlines()) if ln]
    if not lines:
        raise CoeffFormatError("empty coefficient file")
    kv = {}
    for tok in lines[0].split():
        k, sep, v = tok.partition("=")
        if not sep:
            raise CoeffFormatError(f"bad header token {tok!r}")
        kv[k] = v
    try:
        n = int(kv["n"])
        order = Order.parse(kv.get("order", "highest"))
    except (KeyError, ValueError) as exc:
        raise CoeffFormatError(f"bad header: {exc}") from None
    if "gen" in kv:
        if n not in PROBE_WIDTHS:
            raise CoeffFormatError("gen= is only for 32/64-bit widths")
        try:
            named_generator(kv["gen"], n)
        except ValueError as exc:
            raise CoeffFormatError(str(exc)) from None
        return CoeffFile(n, order, generator=kv["gen"])
    if n in PROBE_WIDTHS:
        raise CoeffFormatError(f"{n}-bit coefficient lists cannot be materialised; use gen=")
    toks = " ".join(lines[1:]).replace(",", " ").split()
    try:
        written = [int(t, 0) for t in toks]
        poly = CoeffPermPoly.from_descending(n, written)
    except ValueError as exc:
        raise CoeffFormatError(str(exc)) from None
    return CoeffFile(n, order, poly=poly)


def format_coeff_file(poly: CoeffPermPoly, order: "Order | str") -> str:
    order = Order.parse(order)
    body = " ".join(str(c) for c in poly.descending())
    return f"n={poly.n} order={order.value}\n{body}\n"
