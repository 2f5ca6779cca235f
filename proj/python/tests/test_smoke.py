from fractions import Fraction

import pytest

import ksum


def test_planted_instance_is_solved():
    inst, planted = ksum.generate(n=40, k=3, seed=1, distribution="planted", range=1000, target=5)
    assert len(planted) == 3
    report = ksum.solve(inst, solver="self-reduce-3sum", base="sorted-3sum", g=4)
    assert report["decision"] is True
    assert report["witness"]["sum_check"] == 5
    assert report["g"] == 4


def test_decisions_match_brute_force():
    for seed in range(1, 11):
        inst, _ = ksum.generate(n=30, k=4, seed=seed, range=40, single_list=False)
        expect = ksum.solve(inst)["decision"]
        assert ksum.solve(inst, solver="schroeppel-shamir")["decision"] == expect
        assert ksum.solve(inst, solver="self-reduce-ksum", base="schroeppel-shamir", g=2)["decision"] == expect


def test_instance_text_round_trip():
    inst = ksum.Instance([[1, 2, 3], [4, 5, 6], [-7, 0, 7]], target=0)
    assert inst.k == 3 and inst.n == 3 and not inst.single_list
    assert ksum.parse_instance(inst.to_text()) == inst
    single = ksum.Instance([[0.5, -0.5, 2.0]], k=2, mode="real")
    assert single.mode == "real" and single.single_list
    assert single.lists == [[0.5, -0.5, 2.0]]


def test_space_cap_raises():
    inst, _ = ksum.generate(n=2000, k=3, seed=3)
    with pytest.raises(ksum.BudgetExceeded):
        ksum.solve(inst, solver="sorted-3sum", space_cap=100)
    with pytest.raises(ksum.ParseError):
        ksum.parse_instance("3 2 int 0 0\n1 2\n")


def test_planner_exponents_are_exact():
    assert ksum.plan_ksum(8)["time_exponent"] == Fraction(11, 2)
    assert ksum.plan_ksum(12)["time_exponent"] == Fraction(28, 3)
    two = ksum.plan_3sum_two_stage(Fraction(1, 2), Fraction(1, 8))
    assert two["time_exponent"] == Fraction(15, 8)
    report = ksum.check_constraints("lg/lglg", (0.5, -0.5, 0.5), (0.5, -0.5, 0.5), 2 ** 20)
    assert report["satisfied"]
    assert "8,1048576,1/2,11/2,1," in ksum.curve(8, 8)


def test_bench_is_deterministic():
    config = {"solvers": [{"solver": "self-reduce-3sum", "base": "sorted-3sum"}], "n": [128, 256], "seeds": [1, 2]}
    a = ksum.bench(config, with_wall_time=False)
    b = ksum.bench(config, with_wall_time=False)
    assert a == b
    assert a.splitlines()[0] == "n,g,h,comparisons,additions,input_reads,aux_words_peak,decision"
    assert len(a.splitlines()) == 5
