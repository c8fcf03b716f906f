import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frcodes.constructions import fill_incidence, graph_to_fr, build_graph
from frcodes.core import (
    FRCode,
    FRParams,
    IncidenceMatrix,
    code_to_matrix,
    matrix_to_code,
    transpose_dual,
    validate,
)
from frcodes.equivalence import (
    are_equivalent,
    brute_force_equivalent,
    canonical_digest,
    canonical_form,
    invariant_fingerprint,
    shuffle_code,
)
from frcodes.errors import SearchBudgetExceeded, SizeTooLarge

from conftest import all_feasible_params


def lexmin_by_enumeration(matrix):
    """Smallest row-major matrix over all row orders and all column orders."""
    best = None
    for rows in permutations(matrix.cells):
        for cols in permutations(zip(*rows)):
            cand = tuple(zip(*cols))
            if best is None or cand < best:
                best = cand
    return IncidenceMatrix(best)


def all_codes(params, sorted_rows=False):
    """Every incidence matrix with the given line sums (optionally one row order only)."""
    n, theta, d, rho = params.as_tuple()
    supports = list(combinations(range(theta), d))
    out = []

    def rec(acc, weights):
        if len(acc) == n:
            if all(w == rho for w in weights):
                out.append(FRCode(params, tuple(tuple(c + 1 for c in s) for s in acc)))
            return
        for s in supports:
            if sorted_rows and acc and s < acc[-1]:
                continue
            if all(weights[c] < rho for c in s):
                for c in s:
                    weights[c] += 1
                rec(acc + [s], weights)
                for c in s:
                    weights[c] -= 1

    rec([], [0] * theta)
    return out


def test_canonical_matches_full_enumeration():
    rng = random.Random(7)
    checked = 0
    for params in all_feasible_params(4):
        if params.theta > 5:
            continue
        for code in all_codes(params, sorted_rows=True):
            m = code_to_matrix(shuffle_code(code, rng))
            assert canonical_form(m) == lexmin_by_enumeration(m)
            checked += 1
    assert checked > 20


def test_fingerprint_table1(table1_code):
    fp = invariant_fingerprint(table1_code)
    assert fp.pair_profile == (1,) * 10
    assert fp.params == table1_code.params


def test_fingerprint_alg1_5_10(alg1_5_10_code):
    prof = invariant_fingerprint(alg1_5_10_code).pair_profile
    assert {0, 1, 2, 3} <= set(prof)
    a, b, c, d, e = (set(u) for u in alg1_5_10_code.nodes)
    assert len(a & d) == 2 and len(c & e) == 3


def test_fingerprint_shuffle_invariant(example5_code):
    rng = random.Random(3)
    fp = invariant_fingerprint(example5_code)
    for _ in range(20):
        assert invariant_fingerprint(shuffle_code(example5_code, rng)) == fp


def test_canonical_shuffle_invariant(table1_code, example5_code):
    rng = random.Random(11)
    for code in (table1_code, example5_code):
        form = canonical_form(code)
        for _ in range(100):
            assert canonical_form(shuffle_code(code, rng)) == form


def test_canonical_idempotent(example5_code):
    form = canonical_form(example5_code)
    assert canonical_form(matrix_to_code(form, example5_code.params)) == form


def test_canonical_is_valid_matrix():
    for params in all_feasible_params(8):
        form = canonical_form(code_to_matrix(matrix_to_code(fill_incidence(params), params)))
        assert validate(form, params).valid


def test_canonical_table1_differs(table1_code, alg1_5_10_code):
    assert canonical_form(table1_code) != canonical_form(alg1_5_10_code)
    assert canonical_digest(table1_code) != canonical_digest(alg1_5_10_code)


def test_digest_is_sha256_hex(table1_code):
    digest = canonical_digest(table1_code)
    assert len(digest) == 64 and int(digest, 16) >= 0


def test_are_equivalent_renamed_columns(table1_code):
    rng = random.Random(5)
    perm = list(range(1, 11))
    rng.shuffle(perm)
    renamed = FRCode(table1_code.params, tuple(tuple(perm[p - 1] for p in u) for u in table1_code.nodes))
    assert are_equivalent(table1_code, renamed)


def test_are_equivalent_negative(table1_code, alg1_5_10_code, example5_code):
    assert not are_equivalent(table1_code, alg1_5_10_code)
    other = matrix_to_code(fill_incidence(FRParams(6, 12, 4, 2)), FRParams(6, 12, 4, 2))
    assert not are_equivalent(example5_code, other)


def test_brute_force_examples(triangle_code, four_cycle_code, table1_code):
    rng = random.Random(2)
    assert brute_force_equivalent(triangle_code, shuffle_code(triangle_code, rng))
    assert brute_force_equivalent(four_cycle_code, transpose_dual(four_cycle_code))
    assert not brute_force_equivalent(triangle_code, four_cycle_code)
    with pytest.raises(SizeTooLarge):
        brute_force_equivalent(table1_code, table1_code)


def test_brute_force_configurable_bound(table1_code):
    assert brute_force_equivalent(table1_code, table1_code, bound=10**9)


def test_oracle_agreement_4_4_2_2():
    codes = all_codes(FRParams(4, 4, 2, 2))
    assert len(codes) == 90
    for a in codes:
        for b in codes:
            assert are_equivalent(a, b) == brute_force_equivalent(a, b)


def test_oracle_agreement_5_5_2_2():
    rng = random.Random(0)
    codes = all_codes(FRParams(5, 5, 2, 2))
    assert len(codes) == 2040
    reps = {canonical_form(c): c for c in codes}
    assert len(reps) == 2  # the 5-cycle and a 2-cycle plus 3-cycle
    for code in codes:
        probe = shuffle_code(code, rng)
        for rep in reps.values():
            assert are_equivalent(probe, rep) == brute_force_equivalent(probe, rep)


def test_symmetric_families_stay_cheap():
    for n in range(5, 13):
        code = graph_to_fr(build_graph("circulant", n, 2))
        assert canonical_form(code, budget=20_000).shape == (n, n)
    k8 = matrix_to_code(fill_incidence(FRParams(8, 28, 7, 2)), FRParams(8, 28, 7, 2))
    canonical_form(k8, budget=50_000)


def test_budget_exceeded(example5_code):
    with pytest.raises(SearchBudgetExceeded):
        canonical_form(example5_code, budget=3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(all_feasible_params(9)), st.randoms(use_true_random=False))
def test_equivalence_reflexive_symmetric(params, rnd):
    c1 = matrix_to_code(fill_incidence(params), params)
    c2 = shuffle_code(c1, rnd)
    assert are_equivalent(c1, c1)
    assert are_equivalent(c1, c2) and are_equivalent(c2, c1)
    assert invariant_fingerprint(c1) == invariant_fingerprint(c2)
