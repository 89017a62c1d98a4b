from fractions import Fraction

import pytest

from subadjoint.liecore import check_antisymmetry, check_jacobi
from subadjoint.rootsys import (
    ChevalleyConstants,
    WeightVector,
    build_root_system,
    chevalley_table,
    classify_dynkin,
    node_orbit,
    string_length_down,
    to_fundamental_coords,
    to_simple_root_coords,
)

CLASSICAL_COUNTS = {
    "A1": 1, "A2": 3, "B3": 9, "B4": 16, "C3": 9, "D4": 12, "D5": 20,
    "F4": 24, "G2": 6, "E6": 36, "E7": 63, "E8": 120,
}


@pytest.mark.parametrize("label,count", sorted(CLASSICAL_COUNTS.items()))
def test_positive_root_counts(label, count):
    rs = build_root_system(label)
    assert len(rs.positive_roots) == count


def test_e8_dimension_bookkeeping():
    rs = build_root_system("E8")
    assert 8 + 2 * len(rs.positive_roots) == 248


def test_highest_root_dominates():
    for label in ("B3", "F4", "E6"):
        rs = build_root_system(label)
        theta = rs.highest_root
        for r in rs.positive_roots:
            assert all(t >= c for t, c in zip(theta, r))


def test_closure_property():
    # every positive root is simple or a simple plus a positive root
    for label in ("B3", "D4", "G2"):
        rs = build_root_system(label)
        pos = set(rs.positive_roots)
        for r in rs.positive_roots:
            if sum(r) == 1:
                continue
            assert any(
                tuple(x - int(i == j) for j, x in enumerate(r)) in pos
                for i in range(rs.rank)
            )


def test_unknown_labels_rejected():
    for bad in ("H4", "E9", "B1", "F5", "", "Q3"):
        with pytest.raises(ValueError):
            build_root_system(bad)


def test_deterministic_tables():
    a = chevalley_table(build_root_system("B3"))
    b = chevalley_table(build_root_system("B3"))
    assert a.labels == b.labels
    assert a.brackets == b.brackets


def test_sl2_relations():
    t = chevalley_table(build_root_system("A1"))
    h, e, f = {0: Fraction(1)}, {1: Fraction(1)}, {2: Fraction(1)}
    assert t.bracket(e, f) == h
    assert t.bracket(h, e) == {1: Fraction(2)}
    assert t.bracket(h, f) == {2: Fraction(-2)}


@pytest.mark.parametrize("label", ["A2", "B3", "C3", "D4", "G2", "F4"])
def test_chevalley_antisymmetry_and_jacobi(label):
    t = chevalley_table(build_root_system(label))
    assert check_antisymmetry(t)
    assert check_jacobi(t) == []


def test_corrupted_table_detected():
    t = chevalley_table(build_root_system("B3"))
    key = next(k for k, v in t.brackets.items() if v)
    tgt = next(iter(t.brackets[key]))
    t.brackets[key][tgt] += 1
    assert check_jacobi(t) != []


@pytest.mark.parametrize("label", ["B3", "G2", "F4", "D4"])
def test_structure_constants_string_property(label):
    rs = build_root_system(label)
    cc = ChevalleyConstants(rs)
    for a in rs.all_roots():
        for b in rs.all_roots():
            s = tuple(x + y for x, y in zip(a, b))
            if any(s) and rs.is_root(s):
                n = cc.n(a, b)
                assert abs(n) == string_length_down(rs, b, a) + 1


def test_integer_structure_constants():
    rs = build_root_system("F4")
    t = chevalley_table(rs)
    for vec in t.brackets.values():
        for c in vec.values():
            assert c.denominator == 1


def test_weight_conversion_a1():
    rs = build_root_system("A1")
    w = WeightVector((Fraction(1),), "fundamental")
    s = to_simple_root_coords(w, rs)
    assert s.coords == (Fraction(1, 2),)


def test_weight_conversion_a2():
    rs = build_root_system("A2")
    w = WeightVector((Fraction(1), Fraction(0)), "fundamental")
    s = to_simple_root_coords(w, rs)
    assert s.coords == (Fraction(2, 3), Fraction(1, 3))


def test_weight_conversion_roundtrip():
    rs = build_root_system("F4")
    for i in range(4):
        w = WeightVector(tuple(Fraction(int(i == j)) for j in range(4)),
                         "fundamental")
        back = to_fundamental_coords(to_simple_root_coords(w, rs), rs)
        assert back.coords == w.coords


def test_simple_roots_are_unit_vectors_in_simple_coords():
    rs = build_root_system("B4")
    for i in range(rs.rank):
        alpha = tuple(int(i == j) for j in range(rs.rank))
        w = WeightVector(
            tuple(rs.pairing(alpha, j) for j in range(rs.rank)), "fundamental"
        )
        s = to_simple_root_coords(w, rs)
        assert s.coords == tuple(Fraction(int(i == j)) for j in range(rs.rank))


def test_algebra_dimension_table():
    dims = {"A2": 8, "B3": 21, "C3": 21, "D4": 28, "G2": 14, "F4": 52,
            "E6": 78, "E7": 133}
    for label, dim in dims.items():
        rs = build_root_system(label)
        assert rs.rank + 2 * len(rs.positive_roots) == dim


def test_classify_dynkin_components():
    # A3 path
    cart = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    comps = classify_dynkin(cart)
    assert len(comps) == 1 and comps[0].type_label == "A3"
    # A1 x A1
    cart = [[2, 0], [0, 2]]
    comps = classify_dynkin(cart)
    assert sorted(c.type_label for c in comps) == ["A1", "A1"]
    # B2 with the short root's row carrying -2
    cart = [[2, -1], [-2, 2]]
    comps = classify_dynkin(cart)
    assert comps[0].type_label == "B2"
    assert comps[0].nodes == (0, 1)  # node 0 long


def test_classify_dynkin_on_built_systems():
    for label in ("B4", "D5", "E6", "E7", "F4", "G2"):
        rs = build_root_system(label)
        comps = classify_dynkin([list(r) for r in rs.cartan])
        assert len(comps) == 1
        assert comps[0].type_label == label


def test_node_orbits():
    assert node_orbit("A", 5, 2) == frozenset({2})
    assert node_orbit("A", 5, 0) == frozenset({0, 4})
    assert node_orbit("D", 6, 5) == frozenset({4, 5})
    assert node_orbit("D", 4, 0) == frozenset({0, 2, 3})
    assert node_orbit("E", 6, 0) == frozenset({0, 5})
    assert node_orbit("E", 7, 0) == frozenset({0})
