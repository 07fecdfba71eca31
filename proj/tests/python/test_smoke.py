import pytest

import mvsp


def test_field_properties():
    F = mvsp.Field("2^6:1")
    assert (F.p, F.k, F.n, F.q, F.order) == (2, 1, 6, 2, 64)
    assert F.spec == "2^6:1"


def test_text_and_json_round_trip():
    F = mvsp.Field("3^2:1")
    assert mvsp.normalize(F, "x^5 - x^2 - 2x") == "x^5 + 2*x^2 + x"
    j = mvsp.to_json(F, "x^4 + g*x")
    assert [t["e"] for t in j["terms"]] == [4, 1]
    import json
    assert mvsp.from_json(F, json.dumps(j)) == "x^4 + (0,1)*x"


def test_example_g():
    r = mvsp.verify("2^6:1", "x^18 + x^9", "x^4 + x^2 + x")
    assert r["is_mvsp"] and r["member"]
    assert r["values"] == 4
    assert r["theta"] == [1, 0, 0, 0, 0, 0]
    assert mvsp.classify("2^6:1", "x^18 + x^9", any_degree=True)["kind"] == "none"


def test_dimensions():
    assert mvsp.basis("2^6:1", d=3)["dim"] == 12
    lift = mvsp.lift("2^6:1", "x^4 + x^2 + x")
    assert (lift["d"], lift["t"], lift["dim_lower"]) == (3, 2, 11)
    assert mvsp.linear_dim("2^6:1", "x^4 + x^2 + x")["dim"] == 11


def test_census_matches_enumeration():
    c = mvsp.census("2^3:1")
    assert c["members"] == 256 and c["discrepancies"] == 0
    assert len(mvsp.enumerate("2^3:1")) == 256


def test_reduction_and_orbits():
    ws = mvsp.reduce("3^6:1", "x^5 + x^2 + x")
    assert any(w["v"] == 2 and w["A"]["text"] == "T^2 + T + 1" for w in ws)
    assert [o["size"] for o in mvsp.orbits(5, 3)["orbits"]] == [1, 3, 3, 1]


def test_errors():
    with pytest.raises(ValueError):
        mvsp.verify("2^6:1", "x^")
    with pytest.raises(ValueError):
        mvsp.Field("4^2")
    with pytest.raises(mvsp.GuardError):
        mvsp.census("3^3:1")
