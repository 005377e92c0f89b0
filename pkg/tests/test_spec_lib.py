"""Bundled specifications: helper algebra, sampler validity, entry guards,
and end-to-end verification of the shipped specs and their broken variants."""

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from bigstep.kernel import (Constrained, FAIL, PASS, SampleBudget, UNIVERSE,
                            check_valid, check_verif, derive_one)
from bigstep.lang_extwhile import ExtState, PLUGIN as EXTWHILE
from bigstep.lang_fun import FCons, FNil, FNum, FVar, PLUGIN as FUN
from bigstep.lang_while import PLUGIN as WHILE
from bigstep.spec_lib import (MERGE_PROGRAM, SPECS, W_MG, cfm_of_list,
                              elems, fac_corpus, list_of_lstcfm,
                              merge_call_config, merge_expr, mglist_corpus,
                              msort_corpus, occ, occ_add, preserved, sep,
                              sorted_list, spec_fac, spec_fac_bad,
                              spec_mglist, spec_mglist_len, spec_msort,
                              spec_msort_nosort, unfolded_merge_expr)

B = SampleBudget(max_depth=512, max_samples=8, seed=0)


# ---------------------------------------------------------------------------
# Helper algebra
# ---------------------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5)), st.lists(st.integers(-5, 5)))
def test_occurrence_map_of_concatenation_is_the_sum(xs, ys):
    assert occ(xs + ys) == occ_add(occ(xs), occ(ys))


def test_sorted_list_predicate():
    assert sorted_list([]) and sorted_list([1]) and sorted_list([1, 1, 2])
    assert not sorted_list([2, 1])


def test_elems_and_sep_and_preserved():
    st_ = ExtState.of({"S": 0, "T": 3}, {0: 1, 1: 2, 4: 9}, 6)
    assert elems(st_, "S", 0, 2) == [1, 2, 0]
    assert elems(st_, "S", 2, 1) == []
    assert elems(st_, "X", 0, 1) is None
    assert sep(st_, ("S", 0, 2), ("T", 0, 2))
    assert not sep(st_, ("S", 0, 3), ("T", 0, 2))
    post = st_.with_loc(4, 8)
    assert preserved(st_, post, ["S", "T", ("S", 0, 2)])
    assert not preserved(st_, post, [("T", 0, 2)])
    assert preserved(st_, post, [("T", 5, 2)])  # empty fragment


def test_list_canonical_form_conversions_reject_non_lists():
    assert list_of_lstcfm(FCons(FVar("x"), FNil())) is None
    assert list_of_lstcfm(FNum(1)) is None
    assert list_of_lstcfm(cfm_of_list([2, 1])) == [2, 1]


# ---------------------------------------------------------------------------
# Factorial spec
# ---------------------------------------------------------------------------

def test_fac_spec_entries_guarded_by_positive_m():
    spec = spec_fac()
    good = fac_corpus([3])[0]
    assert isinstance(spec.at(None, good), Constrained)
    zero = fac_corpus([0])[0]
    assert spec.at(None, zero) is UNIVERSE


def test_fac_samplers_satisfy_their_own_sets():
    spec = spec_fac()
    for gamma in fac_corpus(range(1, 7)):
        sset = spec.at(None, gamma)
        samples = sset.sample(B)
        assert samples
        assert all(sset.contains(s) for s in samples)


def test_fac_spec_valid_and_verified_but_mutant_rejected():
    budget = SampleBudget(64, 16, 0)
    corpus = fac_corpus(range(1, 9))
    assert check_valid(WHILE, spec_fac(), corpus, budget).status == PASS
    assert check_verif(WHILE, spec_fac(), corpus, budget).status == PASS
    assert check_verif(WHILE, spec_fac_bad(), corpus,
                       budget).status == FAIL


# ---------------------------------------------------------------------------
# Array-merge spec
# ---------------------------------------------------------------------------

def test_msort_call_entry_describes_sorted_permutation():
    spec = spec_msort()
    gamma = merge_call_config(1, [1, 3], [2])
    sset = spec.at(1, gamma)
    assert isinstance(sset, Constrained)
    out = derive_one(EXTWHILE, gamma, SampleBudget(4096, 1, 0))
    assert sset.contains(out)
    # A wrong parameter value leaves the entry unconstrained.
    assert spec.at(0, gamma) is UNIVERSE


def test_msort_samplers_satisfy_their_own_sets():
    spec = spec_msort()
    for l, gamma in [(0, merge_call_config(0, [0, 2], [1, 1])),
                     (2, merge_call_config(2, [-1], [4]))]:
        sset = spec.at(l, gamma)
        samples = sset.sample(B)
        assert samples and all(sset.contains(s) for s in samples)


def test_msort_loop_entry_accepts_real_exit_and_rejects_corruption():
    spec = spec_msort()
    # Reach the merging loop from a call and check its entry directly.
    gamma = merge_call_config(0, [1, 3], [2])
    st0 = gamma.state
    inner = ExtState.of(
        dict(st0.names, **{"S": 0, "T": 3, "i": 0, "m": 1, "n": 2,
                           "j": 2, "k": 0}), dict(st0.heap), st0.nextloc)
    from bigstep.lang_extwhile import ExtConfig
    loop_cfg = ExtConfig(W_MG, inner, MERGE_PROGRAM)
    sset = spec.at(0, loop_cfg)
    assert isinstance(sset, Constrained)
    real = derive_one(EXTWHILE, loop_cfg, SampleBudget(4096, 1, 0))
    assert sset.contains(real)
    # Swapping the first two merged values breaks sortedness.
    base = real.name("T")
    corrupted = real.with_loc(base, real.loc(base + 1)) \
                    .with_loc(base + 1, real.loc(base))
    assert not sset.contains(corrupted)
    # The broken variant accepts the corruption.
    assert spec_msort_nosort().at(0, loop_cfg).contains(corrupted)


def test_msort_verified_on_generated_corpus_and_mutant_rejected():
    corpus = msort_corpus(6, 0) + [merge_call_config(0, [1, 3], [2])]
    assert check_verif(EXTWHILE, spec_msort(), corpus, B).status == PASS
    rep = check_verif(EXTWHILE, spec_msort_nosort(), corpus, B)
    assert rep.status == FAIL and rep.counterexamples


# ---------------------------------------------------------------------------
# List-merge spec
# ---------------------------------------------------------------------------

def test_mglist_entry_matches_both_recursion_shapes():
    spec = spec_mglist()
    c1, c2 = cfm_of_list([1, 2]), cfm_of_list([0])
    for gamma in (merge_expr(c1, c2), unfolded_merge_expr(c1, c2)):
        sset = spec.at(None, gamma)
        assert isinstance(sset, Constrained)
        assert sset.contains(cfm_of_list([0, 1, 2]))
        assert not sset.contains(cfm_of_list([1, 0, 2]))  # unsorted
        assert not sset.contains(cfm_of_list([0, 1]))  # wrong occurrences
    # Unsorted operand lists leave the entry unconstrained.
    assert spec.at(None, merge_expr(cfm_of_list([2, 1]), c2)) is UNIVERSE


def test_mglist_mutant_accepts_wrong_elements_of_right_length():
    sset = spec_mglist_len().at(None, merge_expr(cfm_of_list([1, 2]),
                                                 cfm_of_list([0])))
    assert sset.contains(cfm_of_list([-5, -5, -5]))


def test_mglist_verified_on_generated_corpus_and_mutant_rejected():
    corpus = mglist_corpus(6, 0) + [
        merge_expr(cfm_of_list([1, 1]), cfm_of_list([1]))]
    assert check_verif(FUN, spec_mglist(), corpus, B).status == PASS
    rep = check_verif(FUN, spec_mglist_len(), corpus, B)
    assert rep.status == FAIL and rep.counterexamples


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

def test_registry_names_languages_and_factories():
    assert set(SPECS) == {"fac", "fac-bad", "msort", "msort-nosort",
                          "mglist", "mglist-len"}
    for name, (lang, factory) in SPECS.items():
        spec = factory()
        assert lang in ("while", "extwhile", "fun")
        assert spec.param_domain
