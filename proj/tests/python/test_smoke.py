"""Smoke tests for the python bindings."""

import fusionlab as fl


def test_groups():
    s4 = fl.group("S4")
    assert s4.order == 24
    assert s4.sylow_order(2) == 8
    assert s4.is_p_solvable(2)
    w = fl.group("wreath:S3:3")
    assert w.order == 648
    custom = fl.group_from_cycles(3, [[[1, 2]], [[1, 2, 3]]])
    assert custom.order == 6


def test_cohomology_dims():
    s3 = fl.group("S3")
    assert fl.cohomology(s3, 3, "trivial:1", 3) == [1, 0, 0, 1]
    assert fl.cohomology(s3, 3, "sign", 3) == [0, 1, 1, 0]
    c2 = fl.group("C2")
    assert fl.cohomology(c2, 2, "trivial:1", 3) == [1, 1, 1, 1]


def test_classify():
    s4 = fl.group("S4")
    classes = fl.classify(s4, 2)
    assert len(classes) == 7
    essentials = [c for c in classes if c["essential"]]
    assert len(essentials) == 1
    assert essentials[0]["order"] == 4


def test_stable_and_nerve():
    s4 = fl.group("S4")
    assert fl.stable_dims(s4, 2, "trivial:1", 3) == [1, 1, 2, 3]
    assert fl.nerve_dims(s4, 2, "trivial:1", "centric", 2) == [1, 1, 2]
    s3 = fl.group("S3")
    assert fl.stable_dims(s3, 3, "sign", 3) == [0, 1, 1, 0]


def test_run_check():
    rep = fl.run_check("coprime", "S3", 3, "sign", 3)
    assert rep["verdict"] == "pass"
    dims = [(d["lhs_dim"], d["rhs_dim"]) for d in rep["degrees"]]
    assert dims == [(0, 0), (1, 1), (1, 1), (0, 0)]
