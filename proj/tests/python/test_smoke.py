import pytest

import freeatom


def test_fixture_free_algebra_sizes():
    b2 = freeatom.fixture_presentation("B2")
    assert len(freeatom.build_free_algebra(b2, 1)) == 4
    fa = freeatom.build_free_algebra(b2, 2)
    assert fa.size == 16
    assert fa.variables == ["x", "y"]
    assert fa.witness(0) == "x"
    assert sum(fa.layers) == 16


def test_relation_is_pointwise_inclusion():
    fa = freeatom.build_free_algebra(freeatom.fixture_presentation("B2"), 2)
    rel = freeatom.relation(fa, "(and x y)", "x")
    for a in range(fa.size):
        for b in range(fa.size):
            expected = all(u <= v for u, v in zip(fa.values(a), fa.values(b)))
            assert rel[a][b] == expected


def test_find_cover_certificate_fields():
    fa = freeatom.build_free_algebra(freeatom.fixture_presentation("B2"), 1)
    cert = freeatom.find_cover(fa, "(and x y)", "x", "zero", "one")
    assert list(cert) == [
        "alpha", "beta", "coordinate", "subalgebra", "c", "rho",
        "eta_equations", "eta_disequations", "delta", "epsilon", "gamma", "checks",
    ]
    assert cert["gamma"]["term"] == "(not x)"
    assert all(check["passed"] for check in cert["checks"])


def test_atomic_check_agrees():
    fa = freeatom.build_free_algebra(freeatom.fixture_presentation("D3min"), 1)
    report = freeatom.atomic_check(fa, "(min x y)", "x")
    assert report["atomic"] and report["agree"]
    assert report["oracle"]["strict_pairs"] == 189


def test_errors_map_to_exceptions():
    b2 = freeatom.fixture_presentation("B2")
    fa = freeatom.build_free_algebra(b2, 1)
    with pytest.raises(freeatom.ParseError):
        fa.element("(and x")
    with pytest.raises(freeatom.CapExceeded):
        freeatom.build_free_algebra(freeatom.fixture_presentation("D3"), 2, cap=10)
    with pytest.raises(freeatom.PreconditionError):
        freeatom.find_cover(fa, "(and x y)", "x", "one", "zero")


def test_load_algebras_and_cli():
    algebras = freeatom.load_algebras("algebra C\nsize 2\nop f 1\n1 0\n")
    assert algebras[0].name == "C" and algebras[0].table(0) == [1, 0]
    code, out, _ = freeatom.run_cli(["build-free", "--fixture", "B2", "-m", "2"])
    assert code == 0 and out.startswith("16 elements")
    code, _, err = freeatom.run_cli(["validate", "--fixture", "D3", "--switch", "(s x y v u)"])
    assert code == 3 and "(x,y,u,v)" in err


def test_fixture_listing():
    assert freeatom.fixture_names() == ["B2", "D3", "D3min", "S2"]
