import dataclasses
import itertools
import json

import numpy as np
import pytest

from hopfz.exact import QQ, Field, Tensor
from hopfz.groups import (GroupTable, InvalidGroup, builtin_groups, cyclic, get_group,
                          symmetric3)
from hopfz.hopf import (HopfAlgebra, UnsupportedAlgebra, cocommutes_on, dual, function_algebra,
                        get_algebra, group_algebra, is_counimodular, is_involutory, is_unimodular,
                        is_valid, left_cointegral, left_integral, normalize_integrals, pair,
                        require_admissible, restricted_borel_f2, right_cointegral,
                        right_integral, unimodular_ratio, validate_hopf)


def proportional(u, v):
    u, v = list(u), list(v)
    k = next(b / a for a, b in zip(u, v) if a)
    return [k * a for a in u] == v


# ---------------------------------------------------------------- groups

@pytest.mark.parametrize("name", sorted(builtin_groups()))
def test_builtin_groups_have_expected_order(name):
    G = get_group(name)
    expected = {"S3": 6, "D4": 8, "Q8": 8}.get(name, int(name[1:]) if name[0] == "Z" else 0)
    assert G.order == expected


def test_group_table_rejects_garbage():
    with pytest.raises(InvalidGroup):
        GroupTable(((0, 1), (1, 1)))
    with pytest.raises(InvalidGroup):
        GroupTable(((1, 0), (0, 1)))


def test_group_aliases():
    assert get_group("QS3") == get_group("builtin:S3") == symmetric3()
    assert get_group("Q8").order == 8


def test_root_counts():
    S3 = symmetric3()
    assert [S3.count_roots(k) for k in (1, 2, 3, 6)] == [1, 4, 3, 6]


# ---------------------------------------------------------------- axioms

def test_z2_axioms_pass():
    assert all(validate_hopf(group_algebra(cyclic(2))).values())


def test_zero_antipode_fails_only_antipode_axioms():
    H = group_algebra(cyclic(2))
    broken = dataclasses.replace(H, antipode=Tensor(QQ, np.zeros((2, 2), dtype=np.int64)),
                                 _cache={})
    report = validate_hopf(broken)
    assert not report["antipode_left"] and not report["antipode_right"]
    assert all(v for k, v in report.items() if not k.startswith("antipode"))


def test_dual_s3_valid_and_involutory():
    H = dual(group_algebra(symmetric3()))
    assert is_valid(H)
    assert is_involutory(H)


@pytest.mark.parametrize("G", [cyclic(2), symmetric3()])
def test_group_algebras_involutory(G):
    assert is_involutory(group_algebra(G))


def test_dual_z3_involutory():
    assert is_involutory(dual(group_algebra(cyclic(3))))


def test_trivial_group_algebra():
    H = group_algebra(cyclic(1))
    assert H.dim == 1 and is_valid(H)
    assert all(x == 1 for t in (H.mult, H.unit, H.comult, H.counit, H.antipode)
               for x in np.ravel(np.array(t.to_scalars(), dtype=object)))


def test_every_builtin_satisfies_all_axioms(builtins):
    for name, H in builtins.items():
        assert is_valid(H), name


def test_dual_is_an_involution(builtins):
    for name, H in builtins.items():
        assert dual(dual(H)) == H, name


def test_json_round_trip(builtins, tmp_path):
    for name in ("S3", "Q8*", "Z5"):
        H = builtins[name]
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(H.to_json()))
        assert HopfAlgebra.load(path) == H
    Hp = group_algebra(cyclic(3), Field(5))
    assert HopfAlgebra.from_json(json.loads(json.dumps(Hp.to_json()))) == Hp


def test_group_table_file(tmp_path):
    path = tmp_path / "z3.json"
    path.write_text(json.dumps({"name": "Z3", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}))
    assert get_algebra(str(path)) == group_algebra(cyclic(3))


# ---------------------------------------------------------------- function algebra

def test_function_algebra_structure():
    G = symmetric3()
    F = function_algebra(G)
    M, S = F.scalars("mult"), F.scalars("antipode")
    for g, h, k in itertools.product(range(G.order), repeat=3):
        assert M[g][h][k] == (1 if g == h == k else 0)
    for g, h in itertools.product(range(G.order), repeat=2):
        assert S[g][h] == (1 if h == G.inverse[g] else 0)


# ---------------------------------------------------------------- integrals

def test_z2_integrals():
    H = group_algebra(cyclic(2))
    assert proportional(right_integral(H), [1, 0])
    assert proportional(left_cointegral(H), [1, 1])
    data = normalize_integrals(H)
    assert list(data.mu_R) == [1, 0] and list(data.e_L) == [1, 1]
    assert pair(data.mu_R, data.e_L) == 1


def test_z3_integral_normalization():
    H = group_algebra(cyclic(3))
    assert proportional(right_integral(H), [1, 0, 0])
    data = normalize_integrals(H)
    assert pair(data.mu_R, data.e_L) == 1 and pair(data.mu_L, data.e_L) == 1


def test_s3_cointegral_is_sum_of_elements():
    assert proportional(left_cointegral(group_algebra(symmetric3())), [1] * 6)


def test_dual_z2_integrals():
    H = dual(group_algebra(cyclic(2)))
    assert proportional(right_integral(H), [1, 1])
    assert proportional(left_cointegral(H), [1, 0])


def test_z2_over_f2_pairing_is_nondegenerate():
    data = normalize_integrals(group_algebra(cyclic(2), Field(2)))
    assert pair(data.mu_R, data.e_L) == 1


def test_integral_spaces_one_dimensional(builtins):
    for name, H in builtins.items():
        for fn in (right_integral, left_integral, left_cointegral, right_cointegral):
            assert len(fn(H)) == H.dim, (name, fn.__name__)


def test_modularity_flags(builtins):
    for name, H in builtins.items():
        assert is_unimodular(H) and is_counimodular(H), name


def test_right_cointegral_is_cocommutative(builtins):
    for name, H in builtins.items():
        assert cocommutes_on(H, normalize_integrals(H).e_R), name


def test_unimodular_ratio_squares_to_one(builtins):
    for name, H in builtins.items():
        k = unimodular_ratio(H)
        assert k * k == 1, name


# ---------------------------------------------------------------- negative control

def test_restricted_borel_is_rejected():
    H = restricted_borel_f2()
    assert is_valid(H) and is_involutory(H)
    assert is_counimodular(H) and not is_unimodular(H)
    with pytest.raises(UnsupportedAlgebra, match="unimodular"):
        require_admissible(H)


def test_get_algebra_forms(builtins):
    assert get_algebra("builtin:QS3") == builtins["S3"]
    assert get_algebra("S3*") == builtins["S3*"]
    assert get_algebra("dual(D4)") == builtins["D4*"]
    with pytest.raises(KeyError):
        get_algebra("nonsense")
