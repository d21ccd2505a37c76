"""Smoke test for the Python bindings.

Build and install first:
    pip install maturin
    pip install --no-build-isolation -e crates/py
then run `python python/smoke_test.py` (or `pytest python/smoke_test.py`).
"""

import json

import qcoideal_py as qc


def test_root_vector():
    x = qc.Element("E[a]*E[b] - q^-1*E[b]*E[a]")
    assert str(x) == "E[ab]"
    assert x == qc.Element("E[ab]")


def test_borel_commutator():
    subs = {"l": "1", "lp": qc.borel_constant()}
    x = qc.Element("E*K^-1 + l*K^-1", system="A1", subs=subs)
    y = qc.Element("F + lp*K^-1", system="A1", subs=subs)
    c = x.q_commutator(y, "q^2")
    assert c.scalar() == "q^3 / q^2 - 1"


def test_arithmetic_and_involutions():
    e = qc.Element("E[a]")
    f = qc.Element("F[a]")
    comm = e * f - f * e
    assert comm == qc.Element("(K[a] - K[a]^-1)/(q - q^-1)")
    assert (-e + e).is_zero
    assert e.omega().omega() == e
    assert e.antipode() == qc.Element("-K[-a]*E[a]")
    assert qc.Element.from_json(comm.to_json()) == comm


def test_coproduct_and_splits():
    terms = qc.Element("E[a]").coproduct()
    assert sorted((l, r) for _, l, r in terms) == [("E[a]", "1"), ("K[a]", "E[a]")]
    geq, leq, mixed = qc.Element("E[a]*F[b] + E[a] + F[b]").parts()
    assert str(mixed) == "E[a]*F[b]"
    assert sorted(qc.Element("E[a] + E[b]").e_degrees()) == ["a", "b"]
    assert len(qc.Element("E*K^-1 + K", system="A1").eta_split()) == 2


def test_coideal_checks():
    ok = qc.check(qc.homogeneous_rcs("A2", "sa", ["2a"], "sa"), degree=2)
    assert ok["status"] == "verified_up_to_d" and ok["torus_subhopf"]
    bad = qc.check(["E[a]"], system="A1", degree=2)
    assert bad["status"] == "failed"
    assert bad["witnesses"][0]["left"] == "K[a]"
    red = qc.reduce(["E*K^-1*F", "E*K^-1", "F", "K^2", "K^-2"], system="A1")
    assert "E[a]*K[-a]*F[a]" not in red and len(red) == 4


def test_catalog_and_repr():
    assert "sl3-3a" in qc.catalog_ids()
    reports = qc.verify_entry("sl2-borel-B", degree=2)
    assert all(r["passed"] for r in reports), json.dumps(reports, indent=1)
    e, = qc.repr_matrices(2, ["E"])
    assert e == [["0", "q^2 + 1 / q", "0"], ["0", "0", "1"], ["0", "0", "0"]]


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name} ok")
    print("smoke test passed")
