"""Smoke test for the `codegree` extension module.

Build and install first:

    pip install --no-build-isolation -e crates/python

then run `python python/smoke_test.py` (or `pytest python/smoke_test.py`).
"""

import json

import codegree


def test_catalog_group_both_methods():
    g = codegree.Group.from_catalog("phi2_31", 5)
    assert g.order == 625
    out = g.compute()
    assert out["match"] is True
    assert out["formula"]["cod"] == [1, 5, 25, 125]
    assert g.codegrees_bruteforce() == [1, 5, 25, 125]
    assert codegree.expected_codegrees("phi2_31", 5) == [1, 5, 25, 125]


def test_character_table():
    t = codegree.Group.from_catalog("heisenberg", 3).character_table()
    assert len(t) == 11
    assert sum(d * d for d in t.degrees()) == 27
    assert t.check_orthogonality() is None
    assert t.codegree_set() == [1, 3, 9]
    assert len(t.to_dict()["rows"]) == 11


def test_presentation_round_trip():
    pres = codegree.Presentation(7, 3)
    pres.set_commutator(1, 0, [0, 0, 1])
    again = codegree.Presentation.from_json(pres.to_json())
    g = codegree.Group(again)
    assert g.order == 343 and not g.is_abelian()
    assert g.is_extraspecial() and g.is_vz()
    assert g.codegrees_formula() == [1, 7, 49]
    profile = g.profile()
    assert profile["center_order"] == 7 and profile["is_camina"]


def test_direct_product_and_formulas():
    heis = codegree.Presentation.from_catalog("heisenberg", 3)
    c9 = codegree.Presentation.from_catalog("abelian:2", 3)
    g = codegree.Group(heis.direct_product(c9))
    assert g.compute()["formula"]["method"] == "cod_vz_case(iv, I)"
    assert codegree.cod_abelian(5, [2, 1]) == [1, 5, 25]
    assert codegree.cod_extraspecial(3, 243) == [1, 3, 27]
    assert codegree.quadratic_nonresidue(7) == 3


def test_errors_are_value_errors():
    for call in (
        lambda: codegree.Group.from_catalog("phi2_31", 3),
        lambda: codegree.Group.from_catalog("phi2_31", 5, order_guard=100),
        lambda: codegree.Group.from_catalog("heisenberg", 4),
        lambda: codegree.Group.from_catalog("phi4_221a", 5).codegrees_formula(),
    ):
        try:
            call()
        except ValueError:
            continue
        raise AssertionError("expected ValueError")


def test_catalog_and_verify():
    entries = codegree.catalog_entries()
    assert any(e["template"] == "phi4_221f0" for e in entries)
    result = codegree.verify_suite("p3", primes=[3, 5], seed=7)
    assert result["pass"] and result["failed"] == 0
    json.dumps(result)


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print("ok", t.__name__)
    print(f"{len(tests)} passed")
