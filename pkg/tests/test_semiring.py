import json
from itertools import product

import pytest

from zdim.errors import AxiomError, SemiringFormatError
from zdim.semiring import (AXIOMS, builtin, builtin_boolean, builtin_chain, check_axioms,
                           load_semiring)

MOD4 = {
    "name": "Z4",
    "order": 4,
    "one": 1,
    "add": [[(a + b) % 4 for b in range(4)] for a in range(4)],
    "mul": [[(a * b) % 4 for b in range(4)] for a in range(4)],
}


def test_boolean_tables():
    B = builtin_boolean()
    assert B.order == 2
    assert B.add[1][1] == 1
    assert B.mul[1][1] == 1
    assert all(B.mul[0][x] == 0 == B.mul[x][0] for x in range(2))
    assert B.commutative and B.entire and B.antinegative


def test_boolean_all_axioms_pass():
    report = check_axioms(*[builtin_boolean().add, builtin_boolean().mul], 1)
    assert report.ok
    assert report.failed == []


def test_mod4_fails_antinegative_with_witness():
    report = check_axioms(MOD4["add"], MOD4["mul"], 1)
    assert not report.verdicts["antinegative"]
    assert report.witnesses["antinegative"] == (1, 3)
    assert not report.verdicts["entire"]
    assert report.witnesses["entire"] == (2, 2)


def test_witnesses_replay():
    report = check_axioms(MOD4["add"], MOD4["mul"], 1)
    a, b = report.witnesses["antinegative"]
    assert MOD4["add"][a][b] == 0 and (a, b) != (0, 0)
    a, b = report.witnesses["entire"]
    assert MOD4["mul"][a][b] == 0 and a and b


def test_chain3():
    C = builtin_chain(3)
    assert C.one == 2
    assert C.mul[1][2] == 1
    assert C.add[1][2] == 2
    assert check_axioms(C.add, C.mul, C.one).ok


def test_chain2_is_boolean():
    assert builtin_chain(2).same_tables(builtin_boolean())


@pytest.mark.parametrize("q", range(2, 7))
def test_chain_distributive_exhaustive(q):
    C = builtin_chain(q)
    for a, b, c in product(range(q), repeat=3):
        assert C.mul[a][C.add[b][c]] == C.add[C.mul[a][b]][C.mul[a][c]]
        assert C.mul[C.add[a][b]][c] == C.add[C.mul[a][c]][C.mul[b][c]]
    for a, b in product(range(q), repeat=2):
        assert C.mul[a][b] != 0 or 0 in (a, b)
        assert C.add[a][b] != 0 or a == b == 0


def test_chain_rejects_small_order():
    with pytest.raises(ValueError):
        builtin_chain(1)


def test_builtin_names():
    assert builtin("boolean").order == 2
    assert builtin("chain5").order == 5
    with pytest.raises(ValueError):
        builtin("tropical")


@pytest.mark.parametrize("add, mul, cell", [
    ([[0, 1], [1]], [[0, 0], [0, 1]], "add[1]"),
    ([[0, 1], [1, 2]], [[0, 0], [0, 1]], "add[1][1]"),
    ([[0, 1], [1, 1]], [[0, 0], [0, -1]], "mul[1][1]"),
])
def test_malformed_tables_name_the_cell(add, mul, cell):
    with pytest.raises(SemiringFormatError, match=cell.replace("[", r"\[").replace("]", r"\]")):
        check_axioms(add, mul, 1)


def test_non_commutative_flagged():
    # left-zero semigroup style multiplication breaks identities, but
    # commutativity failure must be reported independently
    add = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
    mul = [[0, 0, 0], [0, 1, 2], [0, 1, 2]]
    report = check_axioms(add, mul, 1)
    assert not report.verdicts["mul_commutative"]
    assert report.witnesses["mul_commutative"] == (1, 2)


def test_load_round_trip(tmp_path):
    path = tmp_path / "b.json"
    path.write_text(json.dumps(builtin_boolean().to_dict()))
    assert load_semiring(path).same_tables(builtin_boolean())


def test_load_chain3(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(builtin_chain(3).to_dict()))
    S = load_semiring(path)
    assert S.order == 3 and S.one == 2


def test_load_rejects_mod4(tmp_path):
    path = tmp_path / "z4.json"
    path.write_text(json.dumps(MOD4))
    with pytest.raises(AxiomError) as info:
        load_semiring(path)
    assert info.value.report.witnesses["antinegative"] == (1, 3)


def test_load_parse_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SemiringFormatError):
        load_semiring(path)
    path.write_text(json.dumps({"order": 2, "one": 1, "add": [[0, 1], [1, 1]]}))
    with pytest.raises(SemiringFormatError, match="mul"):
        load_semiring(path)


def test_report_lists_every_axiom():
    assert set(check_axioms(MOD4["add"], MOD4["mul"], 1).to_dict()["verdicts"]) == set(AXIOMS)
