from pathlib import Path

import pytest

import homolift

PROBLEMS = Path(__file__).resolve().parents[2] / "problems"


def test_howell_form_is_canonical():
    a = homolift.howell_form([[1, 1], [0, 3]], 6, 2)
    b = homolift.howell_form([[1, 4], [0, 3]], 6, 2)
    assert a == b
    # both rows are multiples of (2, 3)
    assert homolift.howell_form([[4, 6], [6, 9]], 0, 2) == [[2, 3]]
    assert homolift.howell_form([[4, 6], [6, 8]], 0, 2) == homolift.howell_form([[2, 0], [0, 2]], 0, 2)


def test_big_integers_over_z():
    big = 2**80
    rows = homolift.howell_form([[big, 0]], 0, 2)
    assert rows == [[big, 0]]
    assert homolift.quotient_invariants([[big, 0], [0, 1]], 0, 2) == [big]


def test_cyclic_lift():
    swap = [[0, 1], [1, 0]]
    assert homolift.solve_cyclic_lift(swap, 2, [0, 0], 3)["witness"] is not None
    # psi^2 = (1, 1) over Z_2 with psi swapping: alpha = (1, 0) gives (psi alpha)^2 = 0
    r = homolift.solve_cyclic_lift(swap, 2, [1, 1], 2)
    assert r["witness"] is not None
    # identity action, l = 2 over Z_2: 2 alpha = 0, so m0 = (1, 0) is obstructed
    ident = [[1, 0], [0, 1]]
    r = homolift.solve_cyclic_lift(ident, 2, [1, 0], 2)
    assert r["witness"] is None
    assert r["residue"] is not None and any(r["residue"])


def test_invariant_subgroups():
    swap = [[0, 1], [1, 0]]
    assert homolift.minimal_invariant_subgroup([swap], [[1, 0]], 3) == [[1, 0], [0, 1]]
    assert homolift.core([swap], [[1, 0]], 3) == []
    subs = homolift.enumerate_invariant_subgroups([swap], 3, quotient=[3])
    # the eigenlines (1,1) and (1,-1) of the swap
    assert sorted(subs) == sorted([[[1, 1]], [[1, 2]]])
    assert homolift.enumerate_invariant_subgroups([swap], 3, quotient=[3], workers=2) == subs


def test_riemann_hurwitz():
    assert homolift.riemann_hurwitz_genus(0, [5, 5, 5], 60) == 13
    with pytest.raises(homolift.HomoliftError) as exc:
        homolift.riemann_hurwitz_genus(0, [5, 5, 5], 12)
    assert exc.value.args[0] == "NonIntegerGenus"


def test_scenarios():
    names = homolift.scenario_names()
    assert "sec7.4.1-count40" in names
    r = homolift.run_scenario("sec7.4.1-count40")
    assert r["passed"]
    assert r["values"]["count"] == "40"
    assert r["text"].endswith("count=40 contains_b4=13 PASS\n")
    with pytest.raises(homolift.HomoliftError):
        homolift.run_scenario("no-such-scenario")


def test_problem_files():
    text = (PROBLEMS / "sec7.4.4.problem").read_text()
    r = homolift.run_problem(text)
    assert r["values"]["order"] == "486"
    assert r["values"]["verdict"] == "non-split"
    lift = homolift.run_problem(text, "solve-lift", ["r"])
    assert lift["values"]["verdict"] == "none"
    with pytest.raises(homolift.HomoliftError) as exc:
        homolift.run_problem("modulus 2\nrank 2\nbogus\n")
    assert exc.value.args[0] == "ParseError"
