import random

import pytest

from hopfz.evaluator import EvalConfig, invariant
from hopfz.groups import cyclic, quaternion8, symmetric3
from hopfz.heisenberg import HeisenbergDouble
from hopfz.homcount import count_homs
from hopfz.hopf import get_algebra, restricted_borel_f2
from hopfz.moves import (MoveKind, MoveSite, StaleSite, admissible_sites, apply, find_sites,
                         format_pattern, fuzz, kind_names, move_table, parse_pattern)
from hopfz.ograph import lens, pi1, validate

from conftest import random_valid_graphs

QUICK = EvalConfig(cross_check=False)
GROUPS = [symmetric3(), quaternion8(), cyclic(4)]


def hom_counts(g):
    return [count_homs(pi1(g), G) for G in GROUPS]


# ---------------------------------------------------------------- table

def test_table_contents():
    names = kind_names()
    assert len(names) == 4 * 2 + 16 * 2 + 2
    assert {"CP-forward", "CP-backward", "MP4.4-backward", "ZeroTwo-a-insert"} <= set(names)
    for name, kind in move_table().items():
        if name.endswith("-insert"):
            assert kind.delta == 2 and all(not leg for leg in kind.source)
        elif name.endswith("-delete"):
            assert kind.delta == -2
        elif name.startswith("MP"):
            assert abs(kind.delta) == 1


def test_pattern_round_trip():
    text = "T1[a] Tb2[b] | Tb1[b] T2[a]"
    assert format_pattern(parse_pattern(text)) == text


def test_pattern_must_use_each_role_once():
    with pytest.raises(ValueError):
        MoveKind("bad", parse_pattern("T1[a] T1[a]"), parse_pattern("T1[a] T2[a]"))
    with pytest.raises(ValueError):
        parse_pattern("T3[a]")


def test_table_sides_are_identities():
    """Both sides of every move are equal in the tensor power of the Heisenberg double."""
    for name in ("S3", "D4*", "Z3"):
        hd = HeisenbergDouble(get_algebra(name))
        for kname, kind in move_table().items():
            lhs = [list(leg) for leg in kind.source]
            rhs = [list(leg) for leg in kind.target]
            assert hd.word_sum(lhs) == hd.word_sum(rhs), (name, kname)


def test_cp_is_not_a_consequence_of_the_other_identities():
    ub = HeisenbergDouble(restricted_borel_f2())
    for kname, kind in move_table().items():
        same = ub.word_sum([list(l) for l in kind.source]) == \
            ub.word_sum([list(l) for l in kind.target])
        assert same == (not kname.startswith("CP")), kname


# ---------------------------------------------------------------- sites

def test_insertion_applies_everywhere():
    sites = find_sites(lens(1), "ZeroTwo-a-insert")
    assert len(sites) == 2 * 2 + 2  # ordered arc pairs, doubled when equal


def test_deletion_and_mp_need_enough_vertices():
    for name in kind_names():
        kind = move_table()[name]
        if sum(map(len, kind.source)) > 2:
            assert find_sites(lens(1), name) == [], name


def test_sites_are_deterministic():
    g = random_valid_graphs(seed=9, count=1, min_n=3, max_n=4)[0]
    for name in kind_names("MP1"):
        assert find_sites(g, name) == find_sites(g, name)


def test_stale_site_is_rejected():
    g = lens(3)
    site = next(s for name in kind_names() if not name.endswith("insert")
                for s in find_sites(g, name))
    moved = MoveSite(site.kind, tuple((s + 1) % g.length for s in site.starts), site.binding)
    with pytest.raises(StaleSite):
        apply(g, moved)


# ---------------------------------------------------------------- rewriting

@pytest.mark.parametrize("variant", "abcd")
def test_insert_then_delete_round_trip(variant):
    for g in (lens(1), lens(2), lens(3)):
        for site in admissible_sites(g, f"ZeroTwo-{variant}-insert"):
            h = apply(g, site)
            assert h.n == g.n + 2
            back = [apply(h, s, check=False) for s in find_sites(h, f"ZeroTwo-{variant}-delete")]
            assert any(b.isomorphic(g) for b in back)


def test_forward_then_backward_round_trip():
    graphs = [lens(2), lens(3)] + random_valid_graphs(seed=12, count=10, min_n=2, max_n=4)
    checked = 0
    for g in graphs:
        for name in kind_names():
            if not name.endswith("-forward"):
                continue
            back_name = name.replace("-forward", "-backward")
            for site in admissible_sites(g, name):
                h = apply(g, site)
                assert any(apply(h, s, check=False).isomorphic(g)
                           for s in find_sites(h, back_name)), (name, g.circuit)
                checked += 1
    assert checked > 20


def test_moves_preserve_validity_and_invariants():
    H = get_algebra("S3")
    graphs = [lens(2), lens(3)] + random_valid_graphs(seed=2, count=12, min_n=2, max_n=4)
    rng = random.Random(0)
    for g in graphs:
        z, homs = invariant(g, H), hom_counts(g)
        for name in kind_names():
            sites = admissible_sites(g, name)
            for site in rng.sample(sites, min(len(sites), 3)):
                h = apply(g, site)
                r = validate(h)
                assert r.ok and r.regions == h.n + 1
                assert invariant(h, H, QUICK) == z, (name, g.circuit)
                assert hom_counts(h) == homs, (name, g.circuit)


def test_mp_moves_never_break_validity():
    for g in [lens(3)] + random_valid_graphs(seed=5, count=15, min_n=2, max_n=4):
        for name in kind_names("MP"):
            for site in find_sites(g, name):
                assert validate(apply(g, site, check=False)).ok, (name, g.circuit)


# ---------------------------------------------------------------- fuzzing

def test_fuzz_with_no_steps():
    trail = fuzz(lens(2), seed=0, steps=0)
    assert [s.graph for s in trail] == [lens(2)]


def test_fuzz_is_seeded():
    a = [s.graph for s in fuzz(lens(2), seed=3, steps=15)]
    b = [s.graph for s in fuzz(lens(2), seed=3, steps=15)]
    assert a == b


def test_fuzz_respects_vertex_budget():
    trail = fuzz(lens(3), seed=1, steps=40, vertex_budget=6)
    assert max(s.graph.n for s in trail) <= 6
    assert all(validate(s.graph).ok for s in trail)


def test_short_fuzz_keeps_projective_space_value():
    H = get_algebra("S3")
    for step in fuzz(lens(2), seed=4, steps=25, vertex_budget=8):
        assert invariant(step.graph, H, QUICK) == 4
