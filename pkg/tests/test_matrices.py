import random
from fractions import Fraction

import pytest

from dkrigid.core import DilationProblem, Framework, Graph, sample_generic
from dkrigid.exactla import rank
from dkrigid.matrices import (
    affine_dimension,
    check_dk_equivalent,
    coordinate_rigidity_matrix,
    dilation_jacobian,
    dr_matrix,
    is_congruent,
    is_generically_dk_rigid,
    is_infinitesimally_dk_rigid,
    rigidity_matrix,
)

from conftest import random_graph


def k3_template(x, y):
    """The 5x6 Jacobian of K3 (d=2, k=1, v0=0) written out entry by entry."""
    x0, x1, x2 = x
    y0, y1, y2 = y
    return [
        [x0 - x1, x1 - x0, 0, y0 - y1, y1 - y0, 0],
        [x0 - x2, 0, x2 - x0, y0 - y2, 0, y2 - y0],
        [0, x1 - x2, x2 - x1, 0, y1 - y2, y2 - y1],
        [0, 0, 0, -y1 / y0**2, 1 / y0, 0],
        [0, 0, 0, -y2 / y0**2, 0, 1 / y0],
    ]


def test_constant_positions_give_zero_matrix():
    f = Framework.from_positions(Graph.complete(3), [(1, 1)] * 3)
    assert not any(rigidity_matrix(f).entries)


def test_k3_one_dimensional_rows():
    x = (Fraction(1), Fraction(2), Fraction(4))
    r = coordinate_rigidity_matrix(Graph.complete(3), x)
    assert r.tolist() == [[x[0] - x[1], x[1] - x[0], 0], [x[0] - x[2], 0, x[2] - x[0]],
                          [0, x[1] - x[2], x[2] - x[1]]]


def test_generic_k4_rank():
    assert rank(rigidity_matrix(sample_generic(Graph.complete(4), 2, 0))) == 5


def test_jacobian_matches_k3_template():
    pos = [(1, 5), (2, 7), (4, 3)]
    f = Framework.from_positions(Graph.complete(3), pos)
    j = dilation_jacobian(DilationProblem(f, 1, 0))
    x = tuple(Fraction(p[0]) for p in pos)
    y = tuple(Fraction(p[1]) for p in pos)
    assert j.tolist() == k3_template(x, y)
    assert list(j.row(3)) == [0, 0, 0, Fraction(-7, 25), Fraction(1, 5), 0]


def test_square_jacobian_rank(square):
    # The axis-aligned square projects edges 1-2 and 0-3 to zero length, so
    # an infinitesimal shear survives and the rank is 6 for every base vertex.
    for v0 in range(4):
        assert rank(dilation_jacobian(DilationProblem(square, 1, v0))) == 6
    assert rank(dr_matrix(square, 1)) == 3


def test_c4_generic_jacobian_rank():
    f = sample_generic(Graph.cycle(4), 2, 1)
    for v0 in range(4):
        assert rank(dilation_jacobian(DilationProblem(f, 1, v0))) == 7
    assert rank(dr_matrix(f, 1)) == 4 == 1 * 4 - 1 + 1


def test_c4_in_three_dimensions_row_bound():
    f = sample_generic(Graph.cycle(4), 3, 2)
    j = dilation_jacobian(DilationProblem(f, 2, 0))
    assert j.rows == 10 and j.cols == 12
    assert rank(j) <= 10 < 3 * 4 - 1


def test_dr_matrix_k3_last_column():
    f = Framework.from_positions(Graph.complete(3), [(1, 5), (2, 7), (4, 3)])
    dr = dr_matrix(f, 1)
    assert dr.column(3) == (4, 4, 16)
    assert (dr.rows, dr.cols) == (3, 4)


def test_rank_identity_random():
    rng = random.Random(11)
    for t in range(50):
        n = rng.randint(2, 7)
        d = rng.randint(2, 4)
        k = rng.randint(1, d - 1)
        g = random_graph(rng, n, rng.random())
        f = sample_generic(g, d, t)
        j = dilation_jacobian(DilationProblem(f, k, rng.randrange(n)))
        assert rank(dr_matrix(f, k)) == rank(j) - k * n + k
        assert (j.rows, j.cols) == (g.m + k * (n - 1), d * n)


def test_square_infinitesimal_verdicts(square):
    v = is_infinitesimally_dk_rigid(DilationProblem(square, 1))
    assert not v.answer and v.witness["rank"] == 3
    generic = sample_generic(Graph.cycle(4), 2, 4)
    assert is_infinitesimally_dk_rigid(DilationProblem(generic, 1))
    assert is_infinitesimally_dk_rigid(DilationProblem(generic, 1), use="jacobian")


def test_c4_never_32_rigid():
    for s in range(5):
        f = sample_generic(Graph.cycle(4), 3, s)
        assert not is_infinitesimally_dk_rigid(DilationProblem(f, 2))
        assert not is_infinitesimally_dk_rigid(DilationProblem(f, 2), use="jacobian")


def test_complete_clause():
    f = Framework.from_positions(Graph.complete(3), [(1, 1), (3, 1), (2, 5)])
    v = is_infinitesimally_dk_rigid(DilationProblem(f, 1))
    assert v.answer and v.method == "complete-clause"
    flat = Framework.from_positions(Graph.complete(3), [(1, 1), (2, 2), (3, 3)])
    assert not is_infinitesimally_dk_rigid(DilationProblem(flat, 1))
    assert affine_dimension([(0, 0, 1)]) == 0


def test_generic_verdict_labels():
    v = is_generically_dk_rigid(Graph.cycle(4), 2, 1)
    assert v.answer and v.method == "generic-rank"


def test_equivalent_to_itself(square):
    v = check_dk_equivalent(square, square, 1)
    assert v.answer and v.witness["alphas"] == {1: 1}


def test_sheared_square_not_equivalent(square):
    f7 = Fraction(7, 10)
    sheared = square.with_positions([(0, 0), (1, 0), (1 + f7, f7), (f7, f7)])
    v = check_dk_equivalent(square, sheared, 1)
    assert not v.answer
    assert v.witness["alphas"][1] is None
    assert not is_congruent(square, sheared)


def test_reflection_in_last_coordinate():
    f = sample_generic(Graph.cycle(5), 3, 9)
    g = f.with_positions([(a, b, -c) for a, b, c in f.positions])
    v = check_dk_equivalent(f, g, 1)
    assert v.answer and v.witness["alphas"] == {2: -1}
    assert v.witness["ratio_checks"][2] == {"star": True, "tree": True}


def test_ratio_systems_agree_on_random_pairs():
    rng = random.Random(3)
    for t in range(20):
        f = sample_generic(Graph.path(4), 3, t)
        scale = [Fraction(rng.choice([-3, -1, 2, 5]), rng.choice([1, 2, 7])) for _ in range(2)]
        if rng.random() < 0.5:
            pos = [(a, b * scale[0], c * scale[1]) for a, b, c in f.positions]
        else:
            pos = [(a, b * scale[0] + (v == 2), c) for v, (a, b, c) in enumerate(f.positions)]
        g = f.with_positions(pos)
        for v0 in range(4):
            check_dk_equivalent(f, g, 2, v0)  # raises if star and tree checks disagree


def test_congruence():
    f = sample_generic(Graph.cycle(4), 2, 5)
    moved = f.with_positions([(a + 3, b - 2) for a, b in f.positions])
    assert is_congruent(f, moved)
    swapped = list(f.positions)
    swapped[0], swapped[1] = swapped[1], swapped[0]
    # swapping two vertices changes d(0,2) unless it happens to equal d(1,2)
    assert not is_congruent(f, f.with_positions(swapped))


def test_v0_independence_random():
    rng = random.Random(21)
    for t in range(15):
        n = rng.randint(3, 6)
        d = rng.randint(2, 4)
        k = rng.randint(1, d - 1)
        f = sample_generic(random_graph(rng, n), d, t)
        ranks = {rank(dilation_jacobian(DilationProblem(f, k, v)))
                 for v in DilationProblem.valid_base_vertices(f, k)}
        assert len(ranks) == 1


def test_k_out_of_range():
    f = sample_generic(Graph.cycle(3), 2, 0)
    with pytest.raises(ValueError):
        dr_matrix(f, 2)
    with pytest.raises(ValueError):
        DilationProblem(f, 0)
