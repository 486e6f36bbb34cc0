import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfz.groups import builtin_groups, cyclic, get_group, symmetric3
from hopfz.homcount import (SearchBudgetExceeded, abelianization, count_homs, format_abelian,
                            relation_matrix, search_homs)
from hopfz.ograph import Pi1Presentation, lens, pi1


def power(g, k):
    return tuple((g, 1) for _ in range(k))


def presentation(ngens, relators):
    return Pi1Presentation(ngens, tuple((w, ()) for w in relators))


def brute_force(P, G):
    """Every assignment of group elements to generators, checked directly."""
    count = 0
    for vals in itertools.product(range(G.order), repeat=P.ngens):
        ok = True
        for w in P.relators():
            x = 0
            for g, e in w:
                x = G.mul(x, vals[g] if e > 0 else G.inverse[vals[g]])
            ok &= x == 0
        count += ok
    return count


def test_empty_presentation():
    assert count_homs(Pi1Presentation(0, ()), symmetric3()) == 1


def test_involutions_of_s3():
    assert count_homs(presentation(1, [power(0, 2)]), symmetric3()) == 4


def test_cube_roots_in_z3():
    assert count_homs(presentation(1, [power(0, 3)]), cyclic(3)) == 3


def test_free_group_counts():
    assert count_homs(presentation(2, []), symmetric3()) == 36


def test_commutator_counts_commuting_pairs():
    comm = ((0, 1), (1, 1), (0, -1), (1, -1))
    # commuting pairs in S3: sum of centralizer sizes = |G| * #classes = 18
    assert count_homs(presentation(2, [comm]), symmetric3()) == 18


@st.composite
def presentations(draw):
    ngens = draw(st.integers(1, 3))
    letters = st.tuples(st.integers(0, ngens - 1), st.sampled_from((1, -1)))
    rels = draw(st.lists(st.lists(letters, min_size=1, max_size=5).map(tuple),
                         min_size=0, max_size=3))
    return presentation(ngens, rels)


@settings(max_examples=80, deadline=None)
@given(presentations(), st.sampled_from(["Z2", "Z3", "S3", "Q8"]))
def test_search_matches_brute_force(P, group):
    G = get_group(group)
    assert count_homs(P, G) == brute_force(P, G)


@settings(max_examples=40, deadline=None)
@given(presentations())
def test_trivial_group_has_one_hom(P):
    assert count_homs(P, cyclic(1)) == 1


def test_lens_counts_are_gcds():
    from math import gcd
    for p, m in itertools.product(range(1, 9), repeat=2):
        assert count_homs(pi1(lens(p)), cyclic(m)) == gcd(p, m)


def test_witnesses_satisfy_relations():
    P = pi1(lens(3))
    G = symmetric3()
    res = search_homs(P, G, max_witnesses=5)
    assert res.count == 3 and len(res.witnesses) == 3
    for vals in res.witnesses:
        for lhs, rhs in P.relations:
            def ev(w):
                x = 0
                for g, e in w:
                    x = G.mul(x, vals[g] if e > 0 else G.inverse[vals[g]])
                return x
            assert ev(lhs) == ev(rhs)


def test_node_budget_is_enforced():
    with pytest.raises(SearchBudgetExceeded):
        search_homs(presentation(3, []), builtin_groups()["Q8"], node_budget=10)


def test_abelianization_examples():
    assert abelianization(presentation(3, [])) == (3, ())
    assert abelianization(pi1(lens(1))) == (0, ())
    # Z/4 + Z/6 in invariant-factor form
    assert abelianization(presentation(2, [power(0, 4), power(1, 6)])) == (0, (2, 12))
    for p in range(2, 9):
        assert abelianization(pi1(lens(p))) == (0, (p,))


def test_relation_matrix_and_formatting():
    P = presentation(2, [((0, 1), (1, 1), (0, 1))])
    assert relation_matrix(P) == [[2, 1]]
    assert format_abelian(0, ()) == "0"
    assert format_abelian(1, (2, 4)) == "Z + Z/2 + Z/4"
