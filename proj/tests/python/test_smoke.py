import math

import pytest

import circlepack


def test_inscribed_unit_pocket():
    r = float(circlepack.inscribed_pocket_radius(1, 1, 1))
    assert abs(r - (2 / math.sqrt(3) - 1)) < 1e-12


def test_solve_3partition():
    out = circlepack.solve_3partition(["3/10", "3/10", "2/5"])
    assert out["feasible"]
    infeasible = circlepack.solve_3partition(["13/50"] * 3 + ["2/5", "41/100", "41/100"], n=2)
    assert not infeasible["feasible"]


def test_quadtree_roundtrip():
    r = "1/4"
    layout = circlepack.pack_quadtree([r] * 4)
    inst = {
        "container": layout["header"]["container"],
        "mode": "pack",
        "circles": [{"radius": r, "count": 4}],
    }
    assert circlepack.verify(inst, layout)["verdict"] == "valid"


def test_reduction_witness_verifies():
    art = circlepack.generate_reduction(["0.26", "0.3", "0.44", "0.27", "0.33", "0.40"], n=2, paper="rect")
    report = circlepack.verify(art["instance"], art["layout"], art["layout"]["header"]["tolerance"])
    assert report["verdict"] == "valid"


def test_two_leaf_scale():
    tree = {"nodes": ["a", "b"], "edges": [{"a": "a", "b": "b", "w": 1}], "leaves": ["a", "b"]}
    m, _ = circlepack.optimize_scale(tree, [(0, 0), (1, 0), (1, 1), (0, 1)])
    assert abs(m - math.sqrt(2)) < 1e-6


def test_parse_error():
    with pytest.raises(ValueError):
        circlepack.solve_3partition(["abc"])
