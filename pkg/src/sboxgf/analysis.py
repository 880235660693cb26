"""Standard quality metrics for n-bit S-boxes.

Conventions: the component for output mask ``b`` is ``x -> b.S(x)`` (dot
product over GF(2)); its Walsh coefficient at input mask ``a`` is
``sum_x (-1)^(b.S(x) xor a.x)``.  Nonlinearity is ``2^(n-1)`` minus half the
largest absolute coefficient over ``b != 0``.  Differential uniformity is
the largest difference-distribution entry over nonzero input differences.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .bcn import is_balanced, output_bcns
from .sbox import SBox, is_proper

#: DDT and Walsh tables are O(4^n); larger widths need ``allow_large``
DEFAULT_MAX_BITS = 12


def _guard(sbox: SBox, allow_large: bool):
    if sbox.n > DEFAULT_MAX_BITS and not allow_large:
        raise ValueError(
            f"metrics for n={sbox.n} exceed the default limit of {DEFAULT_MAX_BITS} bits; "
            "pass allow_large=True"
        )


def parity(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    shift = 32
    while shift:
        v ^= v >> shift
        shift >>= 1
    return v & 1


def fwht(a: np.ndarray) -> np.ndarray:
    """Fast Walsh-Hadamard transform along the last axis (unnormalised)."""
    a = np.array(a, dtype=np.int64)
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        x, y = v[..., 0, :], v[..., 1, :]
        a = np.stack((x + y, x - y), axis=-2).reshape(*lead, size)
        h *= 2
    return a


def walsh_spectrum(sbox: SBox, allow_large: bool = False) -> np.ndarray:
    """``W[b, a]`` for every output mask ``b`` and input mask ``a``.

    Row 0 (the trivial component) is included; it is ``2^n`` at ``a = 0``.
    """
    _guard(sbox, allow_large)
    s = sbox.as_array()
    masks = np.arange(sbox.size, dtype=np.int64)
    signs = 1 - 2 * parity(masks[:, None] & s[None, :])
    return fwht(signs)


def balancedness_profile(sbox: SBox) -> list[bool]:
    """Balance of each output plane, highest plane first."""
    return [is_balanced(b) for b in output_bcns(sbox)]


def nonlinearity(sbox: SBox, allow_large: bool = False) -> int:
    w = walsh_spectrum(sbox, allow_large)
    return (sbox.size >> 1) - int(np.abs(w[1:]).max()) // 2


def ddt(sbox: SBox, allow_large: bool = False) -> np.ndarray:
    """Difference distribution table ``T[dx, dy]``."""
    _guard(sbox, allow_large)
    s = sbox.as_array()
    x = np.arange(sbox.size, dtype=np.int64)
    table = np.empty((sbox.size, sbox.size), dtype=np.int64)
    for dx in range(sbox.size):
        table[dx] = np.bincount(s[x ^ dx] ^ s, minlength=sbox.size)
    return table


def differential_uniformity(sbox: SBox, allow_large: bool = False) -> int:
    return int(ddt(sbox, allow_large)[1:].max())


def fixed_points(sbox: SBox) -> int:
    return sum(1 for j, e in enumerate(sbox.entries) if j == e)


@dataclass(frozen=True)
class MetricsReport:
    n: int
    proper: bool
    balanced_planes: list[bool]
    nonlinearity: int
    differential_uniformity: int
    fixed_points: int

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def to_text(self) -> str:
        planes = ",".join("1" if b else "0" for b in self.balanced_planes)
        return "\n".join([
            f"n={self.n}",
            f"proper={str(self.proper).lower()}",
            f"balanced_planes={planes}",
            f"nonlinearity={self.nonlinearity}",
            f"differential_uniformity={self.differential_uniformity}",
            f"fixed_points={self.fixed_points}",
        ]) + "\n"


def analyze(sbox: SBox, allow_large: bool = False) -> MetricsReport:
    return MetricsReport(
        n=sbox.n,
        proper=is_proper(sbox),
        balanced_planes=balancedness_profile(sbox),
        nonlinearity=nonlinearity(sbox, allow_large),
        differential_uniformity=differential_uniformity(sbox, allow_large),
        fixed_points=fixed_points(sbox),
    )
