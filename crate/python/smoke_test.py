"""Smoke test for the homcalc Python bindings.

Build first:  pip install --no-build-isolation -e crates/python
Run:          python python/smoke_test.py
"""

import json
from fractions import Fraction

import homcalc_py as hc


def main():
    names = hc.fixture_names()
    assert "dual_numbers" in names and "broken_hom_assoc" in names

    a = hc.Algebra.fixture("dual_numbers")
    assert a.dim == 2 and a.is_regular and a.is_unital
    assert a.validate()["passed"]
    assert a.cohomology_dims(3) == [2, 1, 1, 1]
    assert a.homology_dims(3) == [2, 1, 1, 1]

    # round trip through the JSON spec format
    b = hc.Algebra.from_json(a.to_json())
    assert b.cohomology_dims(2) == a.cohomology_dims(2)

    f = a.random_cochain(1, seed=3)
    g = a.random_cochain(2, seed=4)
    assert f == a.random_cochain(1, seed=3)
    assert a.cup(f, g).degree == 3
    assert a.bracket(f, g).degree == 2
    assert a.coboundary(a.coboundary(f)).is_zero()

    ident = a.cochain(1, [1, 0, 0, Fraction(1, 1)])
    assert a.bracket(ident, ident).coeffs() == ["0"] * 4

    nil = hc.Algebra.fixture("nilpotent_twist")
    assert not nil.is_regular
    assert nil.cohomology_dims(2)[0] is None

    results = a.verify(["operad", "gerstenhaber"], trials=20)
    assert [r["suite"] for r in results] == ["operad", "gerstenhaber"]
    assert all(r["status"] == "pass" for r in results), json.dumps(results, indent=1)

    bad = hc.Algebra.fixture("broken_multiplicativity")
    assert any(r["status"] == "fail" for r in bad.verify(["operad"], trials=20))

    report = a.bv()
    assert report["theta"]["source"] == "found"
    assert report["via_theta"]["squares_to_zero"] is True
    assert a.find_theta() is not None

    try:
        hc.Algebra.from_json("{")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed spec accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
