import itertools

import pytest

import schur_lattice as sl


def brute_tuples(n, d, k):
    pts = list(itertools.product(range(1, n + 1), repeat=d))
    found = set()
    for combo in itertools.combinations_with_replacement(pts, k - 1):
        total = tuple(map(sum, zip(*combo)))
        if all(c <= n for c in total):
            found.add((total, combo))
    return found


def free(n, d, k, colors):
    index = {p: i for i, p in enumerate(itertools.product(range(1, n + 1), repeat=d))}
    for total, combo in brute_tuples(n, d, k):
        cs = {colors[index[p]] for p in combo} | {colors[index[total]]}
        if len(cs) == 1:
            return False
    return True


def test_enumeration_matches_brute_force_in_one_dimension():
    for n in range(1, 9):
        got = {(t["sum"], tuple(t["summands"])) for t in sl.enumerate_tuples(n, 1, k=3, j=1)}
        assert got == brute_tuples(n, 1, 3)


def test_rank_and_determinant():
    assert sl.rank([(1, 2), (2, 4)]) == 1
    assert sl.rank([(1, 0), (0, 1)]) == 2
    assert sl.vandermonde_det([1, 2, 3]) == 2
    assert sl.vandermonde_det([2, 4, 5]) == 6


def test_encode_and_solve():
    text = sl.encode_dimacs(3, 2, k=3, j=2, r=2)
    assert text.splitlines()[0] == "p cnf 9 6"
    assert sl.solve_dimacs(sl.encode_dimacs(7, 2, j=2, r=2))["status"] == "unsat"
    res = sl.solve_dimacs(sl.encode_dimacs(6, 2, j=2, r=2))
    assert res["status"] == "sat"
    assert len(res["model"]) == 36


def test_probe_certificate_is_free():
    res = sl.probe(6, 2, 2, r=2)
    assert res["status"] == "colorable"
    assert sl.verify_certificate(res["certificate"])["valid"]
    n, d, r, colors = sl.certificate_colors(res["certificate"])
    assert (n, d, r) == (6, 2, 2)
    # j = 2 excludes degenerate tuples, so only check the 1-dimensional case here
    one = sl.probe(4, 1, 1, r=2)
    n1, d1, _, c1 = sl.certificate_colors(one["certificate"])
    assert free(n1, d1, 3, c1)


def test_search_values():
    assert sl.find_schur_number(1, 1, r=2)["value"] == 5
    out = sl.find_schur_number(2, 2, r=2)
    assert out["outcome"] == "exact"
    assert out["value"] == 7
    assert [lvl[0] for lvl in out["levels"]] == list(range(2, 8))
    lb = sl.find_schur_number(2, 2, r=2, n_max=4)
    assert lb["outcome"] == "lower_bound"
    assert lb["value"] == 5


def test_oracle_agrees_with_probe():
    for n in range(1, 9):
        assert sl.brute_force_oracle(n, 1, 1, r=2) == sl.probe(n, 1, 1, r=2)["status"]


def test_verify_coloring_reports_a_violation():
    assert sl.verify_coloring(4, 1, 2, [1, 2, 2, 1]) is None
    v = sl.verify_coloring(3, 2, 2, [1] * 9, j=2)
    assert v["sum"] == (2, 3)


def test_bounds():
    assert sl.upper_bound_S(2, 2, 2) == 35
    assert sl.upper_bound_S(1, 1, 2) == 5
    assert sl.schur_3k_formula(4) == 43
    assert sl.known_schur_numbers()[3] == 14
    assert sl.ramsey_number(2, 3)[:2] == (6, 6)
    with pytest.raises(sl.NotTabulated):
        sl.ramsey_number(5, 3)


def test_witness():
    w = sl.extract_schur_witness(35, 2, 2, [1] * 35 * 35)
    assert w["clique"] == [1, 2, 3]
    assert w["sum"] == (2, 8)
    assert w["determinant"] == 2
    with pytest.raises(ValueError):
        sl.extract_schur_witness(34, 2, 2, [1] * 34 * 34)


def test_render():
    assert sl.render(2, 2, 2, [1, 2, 2, 1]) == "21\n12\n"
    assert sl.render(2, 2, 2, [1, 2, 2, 1], format="ppm")[:2] == b"P6"
    assert "<svg" in sl.render(2, 2, 2, [1, 2, 2, 1], format="svg")
    with pytest.raises(sl.RenderError):
        sl.render(2, 2, 9, [1, 2, 3, 9], format="svg")


def test_input_errors():
    with pytest.raises(ValueError):
        sl.enumerate_tuples(3, 1, k=3, j=2)
    with pytest.raises(ValueError):
        sl.verify_certificate("{")
