from fractions import Fraction

from hesslab import linalg
from hesslab.rng import rational_at


def random_matrix(rows, cols, seed, tag="lin"):
    return [[rational_at(tag, seed, r * cols + c, 9) for c in range(cols)]
            for r in range(rows)]


class TestRank:
    def test_identity(self):
        m = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
        assert linalg.rank(m) == 4

    def test_rank_deficient(self):
        m = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
        m = [[Fraction(x) for x in row] for row in m]
        assert linalg.rank(m) == 2

    def test_rank_via_transpose(self):
        m = random_matrix(5, 7, seed=3)
        t = [list(col) for col in zip(*m)]
        assert linalg.rank(m) == linalg.rank(t)


class TestNullspace:
    def test_orthogonality_to_rows(self):
        m = random_matrix(3, 6, seed=4)
        for v in linalg.nullspace(m):
            for row in m:
                assert sum(a * b for a, b in zip(row, v)) == 0

    def test_dimension_count(self):
        m = random_matrix(3, 6, seed=5)
        assert len(linalg.nullspace(m)) == 6 - linalg.rank(m)

    def test_empty_matrix_full_kernel(self):
        assert len(linalg.nullspace([], cols=4)) == 4


class TestSolveSpanInvert:
    def test_solve_round_trip(self):
        m = random_matrix(4, 4, seed=6)
        b = [rational_at("rhs", 6, i, 9) for i in range(4)]
        x = linalg.solve(m, b)
        if x is not None:
            got = [sum(m[i][j] * x[j] for j in range(4)) for i in range(4)]
            assert got == b

    def test_in_span(self):
        vs = [[Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)]]
        assert linalg.in_span(vs, [Fraction(5), Fraction(3)])
        assert not linalg.in_span([vs[0]], [Fraction(0), Fraction(1)])

    def test_invert(self):
        m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
        inv = linalg.invert(m)
        prod = linalg.matmul(m, inv)
        assert prod == [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]


class TestRowSpace:
    def test_incremental_rank_matches_batch(self):
        m = random_matrix(8, 5, seed=7)
        space = linalg.RowSpace(5)
        for row in m:
            space.add(row)
        assert space.rank == linalg.rank(m)

    def test_add_reports_growth(self):
        space = linalg.RowSpace(3)
        assert space.add([Fraction(1), Fraction(0), Fraction(0)])
        assert not space.add([Fraction(2), Fraction(0), Fraction(0)])
        assert space.add([Fraction(0), Fraction(1), Fraction(1)])
        assert space.rank == 2
