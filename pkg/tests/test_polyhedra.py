from fractions import Fraction as Q

from pnoise.polyhedra import feasible, minimize


def test_feasible_box():
    # 0 <= x <= 1, 0 <= y <= 1, x + y <= 3/2
    cons = [((-1, 0), 0, False), ((1, 0), 1, False),
            ((0, -1), 0, False), ((0, 1), 1, False),
            ((1, 1), Q(3, 2), False)]
    assert feasible(cons, 2)


def test_infeasible_strict():
    # x < 0 and x >= 0
    assert not feasible([((1,), 0, True), ((-1,), 0, False)], 1)


def test_strict_interior_point():
    # 0 < x < 1 feasible over Q
    assert feasible([((-1,), 0, True), ((1,), 1, True)], 1)


def test_infeasible_plain():
    # x >= 2 and x <= 1
    assert not feasible([((-1,), -2, False), ((1,), 1, False)], 1)


def test_minimize_simple():
    # min t subject to t >= 3/4, t <= 5
    cons = [((-1,), Q(-3, 4), False), ((1,), 5, False)]
    assert minimize(cons, 1, 0) == Q(3, 4)


def test_minimize_with_elimination():
    # min t s.t. t >= x, t >= y, x >= 1, y >= 2, everything nonneg
    cons = [((1, -1, 0), 0, False),   # x - t <= 0
            ((0, 0, -1), -2, False),  # y >= 2 -> -y <= -2
            ((0, 1, -1), 0, False),   # hmm ordering: vars (t, x, y)
            ((0, -1, 0), -1, False)]  # x >= 1
    # rewrite cleanly: vars (t, x, y): x <= t, y <= t, x >= 1, y >= 2
    cons = [((-1, 1, 0), 0, False),
            ((-1, 0, 1), 0, False),
            ((0, -1, 0), -1, False),
            ((0, 0, -1), -2, False)]
    assert minimize(cons, 3, 0) == 2


def test_minimize_infeasible():
    cons = [((-1,), -2, False), ((1,), 1, False)]
    assert minimize(cons, 1, 0) is None


def test_two_generator_cone_no_common_dominator():
    # no z in Cone((1,0,1),(1/2,1,0)) with sup-norm <= 1 dominating both
    # generators: z = a*(1,0,1)+c*(1/2,1,0), z >= (1,0,1), z >= (1/2,1,0),
    # all coords <= 1.
    g1, g2 = (1, 0, 1), (Q(1, 2), 1, 0)
    cons = [((-1, 0), 0, False), ((0, -1), 0, False)]  # a, c >= 0
    join = tuple(max(x, y) for x, y in zip(g1, g2))
    for i in range(3):
        row = (g1[i], g2[i])
        cons.append(((-row[0], -row[1]), -join[i], False))  # z_i >= join_i
        cons.append(((row[0], row[1]), 1, False))           # z_i <= 1
    assert not feasible(cons, 2)
