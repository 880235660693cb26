from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import DES_S1
from oracles import plane_decimal
from sboxgf.bcn import (
    Bcn,
    BcnFormatError,
    bcn_to_decimal,
    bcn_to_polynomial,
    bcns_to_sbox,
    format_bcn,
    input_bcns,
    is_balanced,
    parse_bcn,
    parse_bcns,
    polynomial_to_bcn,
    sbox_to_bcns,
)
from sboxgf.gfpoly import GfPolynomial, format_polynomial, poly_normalize
from sboxgf.sbox import SBox, identity_sbox, is_proper, reverse_sbox

RENDERED_4BIT = {
    255: "x^7 + x^6 + x^5 + x^4 + x^3 + x^2 + x^1 + 1",
    3855: "x^11 + x^10 + x^9 + x^8 + x^3 + x^2 + x^1 + 1",
    13107: "x^13 + x^12 + x^9 + x^8 + x^5 + x^4 + x^1 + 1",
    21845: "x^14 + x^12 + x^10 + x^8 + x^6 + x^4 + x^2 + 1",
    42836: "x^15 + x^13 + x^10 + x^9 + x^8 + x^6 + x^4 + x^2",
    58425: "x^15 + x^14 + x^13 + x^10 + x^5 + x^4 + x^3 + 1",
    36577: "x^15 + x^11 + x^10 + x^9 + x^7 + x^6 + x^5 + 1",
    13965: "x^13 + x^12 + x^10 + x^9 + x^7 + x^3 + x^2 + 1",
}


class TestEncode:
    def test_des_s1(self, des_s1):
        ins, outs = sbox_to_bcns(des_s1)
        assert [b.value for b in outs] == [42836, 58425, 36577, 13965]
        assert [b.plane for b in outs] == [4, 3, 2, 1]
        assert all(b.role == "out" for b in outs)
        assert [b.value for b in ins] == [255, 3855, 13107, 21845]
        assert all(b.role == "in" for b in ins)

    def test_identity(self):
        _, outs = sbox_to_bcns(identity_sbox(4))
        assert [b.value for b in outs] == [255, 3855, 13107, 21845]

    def test_reverse_msb_plane(self):
        _, outs = sbox_to_bcns(reverse_sbox(4))
        assert outs[0].value == plane_decimal(list(range(15, -1, -1)), 4) == 65280

    def test_des_bit_rows(self, des_s1):
        # OBF4 row of the DES table, index 0 first
        _, outs = sbox_to_bcns(des_s1)
        assert outs[0].bits == (1, 0, 1, 0, 0, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 0)

    def test_8bit_identity_msb(self):
        _, outs = sbox_to_bcns(identity_sbox(8))
        assert bcn_to_decimal(outs[0]) == 2**128 - 1
        poly = bcn_to_polynomial(outs[0])
        assert [k for k, c in enumerate(poly.coeffs) if c] == list(range(128))

    @pytest.mark.parametrize("n", range(2, 9))
    def test_against_extraction_oracle(self, n):
        rng = np.random.default_rng(n)
        table = rng.permutation(1 << n).tolist()
        _, outs = sbox_to_bcns(SBox(n, tuple(table)))
        assert [b.value for b in outs] == [plane_decimal(table, k) for k in range(n, 0, -1)]

    @pytest.mark.parametrize("n", range(2, 9))
    def test_input_planes_are_constants(self, n):
        ins = input_bcns(n)
        idx = list(range(1 << n))
        assert [b.value for b in ins] == [plane_decimal(idx, k) for k in range(n, 0, -1)]
        other = SBox(n, tuple(reversed(idx)))
        assert sbox_to_bcns(other)[0] == ins


class TestDecode:
    def test_des_s1(self, des_s1):
        bcns = [Bcn(4, v, 4 - i) for i, v in enumerate([42836, 58425, 36577, 13965])]
        assert bcns_to_sbox(bcns) == des_s1

    def test_identity(self):
        bcns = [Bcn(4, v, 4 - i) for i, v in enumerate([255, 3855, 13107, 21845])]
        assert bcns_to_sbox(bcns) == identity_sbox(4)

    def test_zeros(self):
        s = bcns_to_sbox([Bcn(4, 0, k) for k in (4, 3, 2, 1)])
        assert s.entries == (0,) * 16 and not is_proper(s)

    def test_errors(self):
        with pytest.raises(ValueError):
            bcns_to_sbox([Bcn(4, 255, 4)] * 3)
        with pytest.raises(ValueError):
            bcns_to_sbox([Bcn(4, 255, 4), Bcn(3, 15, 3), Bcn(4, 1, 2), Bcn(4, 1, 1)])
        with pytest.raises(ValueError):
            bcns_to_sbox([])

    def test_exhaustive_n2(self):
        for entries in product(range(4), repeat=4):
            s = SBox(2, entries)
            assert bcns_to_sbox(sbox_to_bcns(s)[1]) == s

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_random_round_trip(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(200):
            s = SBox(n, tuple(rng.integers(0, 1 << n, 1 << n).tolist()))
            assert bcns_to_sbox(sbox_to_bcns(s)[1]) == s


class TestBalance:
    def test_examples(self):
        assert is_balanced(Bcn(4, 21845))
        assert not is_balanced(Bcn(4, 0))
        assert not is_balanced(Bcn(4, 0xFFFF))

    @given(st.integers(2, 7), st.data())
    def test_proper_implies_balanced(self, n, data):
        perm = data.draw(st.permutations(range(1 << n)))
        assert all(is_balanced(b) for b in sbox_to_bcns(SBox(n, tuple(perm)))[1])

    def test_converse_fails(self):
        # all planes balanced, table not a permutation
        bcns = [Bcn(4, 255, k) for k in (4, 3, 2, 1)]
        assert all(map(is_balanced, bcns))
        assert not is_proper(bcns_to_sbox(bcns))


class TestPolynomial:
    @pytest.mark.parametrize("dec,text", sorted(RENDERED_4BIT.items()))
    def test_rendering(self, dec, text):
        assert format_polynomial(bcn_to_polynomial(Bcn(4, dec))) == text

    def test_zero(self):
        assert bcn_to_polynomial(Bcn(4, 0)).is_zero()

    def test_inverse_examples(self):
        assert polynomial_to_bcn(poly_normalize([1] * 8, 2), 4).value == 255
        assert polynomial_to_bcn(poly_normalize([1], 2), 4).value == 1
        assert polynomial_to_bcn(GfPolynomial.monomial(15, 2), 4).value == 32768

    def test_inverse_errors(self):
        with pytest.raises(ValueError):
            polynomial_to_bcn(GfPolynomial.monomial(16, 2), 4)
        with pytest.raises(ValueError):
            polynomial_to_bcn(poly_normalize([1, 1], 3), 4)

    def test_bit_j_drives_degree(self):
        for j in range(16):
            b = Bcn.from_bits([1 if i == j else 0 for i in range(16)])
            assert bcn_to_polynomial(b).degree == 15 - j

    @given(st.integers(1, 8), st.data())
    def test_round_trip(self, n, data):
        v = data.draw(st.integers(0, (1 << (1 << n)) - 1))
        b = Bcn(n, v)
        poly = bcn_to_polynomial(b)
        assert poly.p == 2 and (not poly.coeffs or poly.coeffs[-1] == 1)
        assert polynomial_to_bcn(poly, n) == b


class TestText:
    def test_format_and_parse(self, des_s1):
        _, outs = sbox_to_bcns(des_s1)
        line = format_bcn(outs[0])
        assert line == ('n=4 plane=4 role=out bits=1010011101010100 dec=42836 '
                        'poly="x^15 + x^13 + x^10 + x^9 + x^8 + x^6 + x^4 + x^2"')
        assert parse_bcn(line) == outs[0]

    def test_dec_only(self):
        assert parse_bcn("n=4 plane=2 role=in dec=13107") == Bcn(4, 13107, 2, "in")

    def test_big_decimal(self):
        v = 2**128 - 1
        b = parse_bcn(f"n=8 plane=8 dec={v}")
        assert b.value == v and b.role == "out"
        assert parse_bcn(format_bcn(b)) == b

    @pytest.mark.parametrize("bad", [
        "plane=1 dec=3",
        "n=2 bits=0101 dec=3",
        "n=2 bits=012",
        "n=2 plane=1",
        "n=2 dec=16",
        "n=2 dec=3 role=sideways",
        "n=2 stray",
        'n=2 poly="x',
    ])
    def test_errors(self, bad):
        with pytest.raises(BcnFormatError):
            parse_bcn(bad)

    def test_parse_many(self):
        text = "# planes\nn=2 plane=2 dec=3\n\nn=2 plane=1 dec=5\n"
        assert [b.value for b in parse_bcns(text)] == [3, 5]
