from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import all_permutations
from sboxgf.bcn import Bcn, bcn_to_polynomial, is_balanced, sbox_to_bcns
from sboxgf.generator import (
    Sampler,
    SearchConfig,
    Verdict,
    balanced_values,
    candidate_stats,
    exhaustive_candidates,
    generate,
    irreducible_filter_is_empty,
    sample_candidate,
    search,
)
from sboxgf.gfpoly import is_irreducible
from sboxgf.sbox import SBox, identity_sbox, is_proper


def bcns4(*vals):
    return [Bcn(4, v, 4 - i) for i, v in enumerate(vals)]


class TestGenerate:
    def test_identity_accepted(self):
        rep = generate(bcns4(255, 3855, 13107, 21845))
        assert rep.verdict is Verdict.ACCEPTED and rep.assembled == identity_sbox(4)
        assert rep.proper is True and rep.balanced == (True,) * 4

    def test_zero_plane_unbalanced(self):
        rep = generate(bcns4(255, 0, 13107, 21845))
        assert rep.verdict is Verdict.REJECTED_UNBALANCED
        assert rep.assembled is None and rep.proper is None
        assert rep.balanced == (True, False, True, True)

    def test_repeated_plane_not_bijective(self):
        rep = generate(bcns4(255, 255, 255, 255))
        assert rep.verdict is Verdict.REJECTED_NOT_BIJECTIVE
        assert set(rep.assembled.entries) == {0, 15}

    def test_shape_errors(self):
        with pytest.raises(ValueError):
            generate(bcns4(255, 3855, 13107))
        with pytest.raises(ValueError):
            generate([Bcn(4, 255, 4), Bcn(3, 15, 3), Bcn(4, 1, 2), Bcn(4, 1, 1)])
        with pytest.raises(ValueError):
            generate([])

    @given(st.integers(2, 7), st.data())
    def test_pipeline_consistency(self, n, data):
        perm = data.draw(st.permutations(range(1 << n)))
        s = SBox(n, tuple(perm))
        rep = generate(sbox_to_bcns(s)[1])
        assert rep.accepted and rep.assembled == s


class TestExhaustive:
    def test_balanced_values_n2(self):
        assert balanced_values(2) == [3, 5, 6, 9, 10, 12]
        assert len(balanced_values(3)) == 70

    def test_36_pairs_24_accepted(self):
        tuples = list(exhaustive_candidates(2))
        assert len(tuples) == 36
        accepted = [generate(t) for t in tuples]
        good = {r.assembled.entries for r in accepted if r.accepted}
        assert len(good) == sum(r.accepted for r in accepted) == 24
        assert good == all_permutations(4)

    def test_search_exhaustive(self):
        hits = list(search(SearchConfig(n=2, mode="exhaustive", count=None)))
        assert len(hits) == 24
        assert {s.entries for _, s in hits} == all_permutations(4)

    def test_count_caps_exhaustive(self):
        assert len(list(search(SearchConfig(n=2, mode="exhaustive", count=5)))) == 5

    def test_exhaustive_only_n2(self):
        with pytest.raises(ValueError):
            SearchConfig(n=3, mode="exhaustive", count=None)
        with pytest.raises(ValueError):
            list(exhaustive_candidates(4))

    def test_stats(self):
        st_ = candidate_stats(SearchConfig(n=2, mode="exhaustive", count=None), 36)
        assert (st_.accepted, st_.rejected_not_bijective, st_.rejected_unbalanced) == (24, 12, 0)


class TestSampling:
    @pytest.mark.parametrize("sampler", list(Sampler))
    def test_deterministic(self, sampler):
        assert sample_candidate(4, 11, 3, sampler) == sample_candidate(4, 11, 3, sampler)
        assert sample_candidate(4, 11, 3, sampler) != sample_candidate(4, 11, 4, sampler)
        assert sample_candidate(4, 11, 3, sampler) != sample_candidate(4, 12, 3, sampler)

    @pytest.mark.parametrize("n", range(2, 10))
    def test_refine_always_proper(self, n):
        for i in range(20):
            rep = generate(sample_candidate(n, 5, i, Sampler.REFINE))
            assert rep.accepted

    def test_independent_planes_balanced(self):
        for i in range(50):
            assert all(map(is_balanced, sample_candidate(5, 1, i, Sampler.INDEPENDENT)))

    def test_refine_plane_marginal_uniform(self):
        # at n = 2 each plane of a uniform permutation is uniform over the 6 balanced vectors
        counts = np.zeros((2, 16), dtype=int)
        for i in range(6000):
            for k, b in enumerate(sample_candidate(2, 9, i, Sampler.REFINE)):
                counts[k, b.value] += 1
        vals = balanced_values(2)
        assert counts[:, [v for v in range(16) if v not in vals]].sum() == 0
        expected = 1000
        for k in range(2):
            chi2 = sum((counts[k, v] - expected) ** 2 / expected for v in vals)
            assert chi2 < 20.5  # chi-square, 5 dof, p ~ 0.001

    def test_refine_covers_all_permutations_n2(self):
        seen = {generate(sample_candidate(2, 0, i)).assembled.entries for i in range(400)}
        assert seen == all_permutations(4)


class TestSearch:
    def test_count_zero(self):
        assert list(search(SearchConfig(n=4, seed=1, count=0))) == []

    def test_determinism(self):
        cfg = SearchConfig(n=4, seed=42, count=1)
        assert list(search(cfg)) == list(search(cfg))

    def test_worker_independence(self):
        cfg = SearchConfig(n=6, seed=3, count=40)
        base = list(search(cfg, workers=1))
        assert list(search(cfg, workers=4, batch=7)) == base
        assert list(search(cfg, workers=2, batch=64)) == base

    def test_emitted_are_proper_and_balanced(self):
        for bcns, s in search(SearchConfig(n=5, seed=8, count=50)):
            assert is_proper(s)
            assert all(map(is_balanced, bcns))
            assert [b.plane for b in bcns] == [5, 4, 3, 2, 1]

    def test_independent_sampler_n4(self):
        hits = list(search(SearchConfig(n=4, seed=2, count=2, sampler="independent")))
        assert len(hits) == 2 and all(is_proper(s) for _, s in hits)

    def test_max_candidates_stops(self):
        cfg = SearchConfig(n=8, seed=0, count=1, sampler="independent", max_candidates=50)
        assert list(search(cfg)) == []

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(n=4, count=None)
        with pytest.raises(ValueError):
            SearchConfig(n=4, count=-1)
        with pytest.raises(ValueError):
            SearchConfig(n=4, seed=-1)
        with pytest.raises(ValueError):
            SearchConfig(n=4, seed=2**64)
        with pytest.raises(ValueError):
            SearchConfig(n=4, mode="sideways")


class TestIrreducibleFilter:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_balanced_irreducible_planes_oracle(self, n):
        # brute force: which balanced BCN polynomials are irreducible?
        irr = [v for v in balanced_values(n) if is_irreducible(bcn_to_polynomial(Bcn(n, v)))]
        assert irr == ([3] if n == 2 else [])
        assert irreducible_filter_is_empty(n)

    def test_exhaustive_n2_empty(self):
        assert list(search(SearchConfig(n=2, mode="exhaustive", count=None, require_irreducible=True))) == []

    def test_random_empty_not_error(self):
        assert list(search(SearchConfig(n=4, seed=1, count=3, require_irreducible=True))) == []

    def test_emitted_planes_irreducible(self):
        # vacuous for balanced planes, but the filter must hold whatever is emitted
        for bcns, _ in search(SearchConfig(n=2, mode="exhaustive", count=None, require_irreducible=True)):
            assert all(is_irreducible(bcn_to_polynomial(b)) for b in bcns)

    def test_stats_count_filtered(self):
        st_ = candidate_stats(SearchConfig(n=2, mode="exhaustive", count=None, require_irreducible=True), 36)
        assert st_.filtered_reducible == 24


class TestStats:
    def test_trials_must_be_positive(self):
        with pytest.raises(ValueError):
            candidate_stats(SearchConfig(n=4), 0)

    def test_deterministic(self):
        cfg = SearchConfig(n=4, seed=17, sampler="independent")
        a, b = candidate_stats(cfg, 1000), candidate_stats(cfg, 1000)
        assert a.as_dict() == b.as_dict()
        assert a.trials == 1000 and a.accepted + a.rejected_not_bijective == 1000

    def test_uniform_sampler_hits_balance_gate(self):
        st_ = candidate_stats(SearchConfig(n=3, seed=1, sampler="uniform"), 500)
        assert st_.rejected_unbalanced > 0
        assert st_.accepted + st_.rejected_not_bijective + st_.rejected_unbalanced == 500

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 2**64 - 1))
    def test_refine_always_accepts(self, seed):
        st_ = candidate_stats(SearchConfig(n=4, seed=seed), 20)
        assert st_.accepted == 20
