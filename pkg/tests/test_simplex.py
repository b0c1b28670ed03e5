from fractions import Fraction

from feederplace.simplex import max_uniform_slack, solve_equality_lp

F = Fraction


def test_optimal_simple():
    # maximize x + y subject to x + y + s = 1
    status, x, value = solve_equality_lp([[F(1), F(1), F(1)]], [F(1)], [F(1), F(1), F(0)])
    assert status == "optimal"
    assert value == 1


def test_infeasible():
    # x + y = -1 has no nonnegative solution
    status, x, value = solve_equality_lp([[F(1), F(1)]], [F(-1)], [F(0), F(0)])
    assert status == "infeasible"


def test_unbounded():
    # maximize x with only y pinned
    status, x, value = solve_equality_lp([[F(0), F(1)]], [F(1)], [F(1), F(0)])
    assert status == "unbounded"


def test_redundant_rows_ok():
    rows = [[F(1), F(1)], [F(2), F(2)]]
    status, x, value = solve_equality_lp(rows, [F(1), F(2)], [F(1), F(0)])
    assert status == "optimal"
    assert value == 1


def test_exact_rational_result():
    # x = 1/3 exactly, no tolerance games
    status, x, value = solve_equality_lp([[F(3)]], [F(1)], [F(1)])
    assert status == "optimal"
    assert x[0] == F(1, 3)


class TestUniformSlack:
    def test_balanced_pair_exists(self):
        # l0 + l1 == l2 + l3 admits the uniform strictly positive solution
        rows = [[F(1), F(1), F(-1), F(-1)]]
        loads = max_uniform_slack(rows, 4)
        assert loads is not None
        assert sum(loads) == 1
        assert all(v > 0 for v in loads)
        assert loads[0] + loads[1] == loads[2] + loads[3]

    def test_forced_zero_is_rejected(self):
        # l0 == 0 kills strict positivity
        rows = [[F(1), F(0)]]
        assert max_uniform_slack(rows, 2) is None

    def test_unconstrained_positive(self):
        loads = max_uniform_slack([], 3)
        assert loads == [F(1, 3)] * 3

    def test_no_variables_is_vacuous_witness(self):
        assert max_uniform_slack([], 0) == []

    def test_chain_of_equalities(self):
        # l0 == l1, l1 == l2 -> uniform thirds
        rows = [[F(1), F(-1), F(0)], [F(0), F(1), F(-1)]]
        loads = max_uniform_slack(rows, 3)
        assert loads == [F(1, 3)] * 3

    def test_incompatible_equalities(self):
        # l0 == l1 + l2 and l1 == l0 + l2 force l2 == 0
        rows = [[F(1), F(-1), F(-1)], [F(-1), F(1), F(-1)]]
        assert max_uniform_slack(rows, 3) is None

    def test_slack_is_maximized(self):
        # l0 == 3 l1 caps the smallest component at 1/4... the LP should
        # find min component == max possible, here l1 == 1/4, l0 == 3/4
        rows = [[F(1), F(-3)]]
        loads = max_uniform_slack(rows, 2)
        assert loads == [F(3, 4), F(1, 4)]
