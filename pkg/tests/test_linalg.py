import random
from fractions import Fraction as F

import numpy as np

from cgalgebra.linalg import (
    charpoly,
    det,
    eval_poly,
    fraction_sqrt,
    gaussian_rational_roots,
    nullspace,
    rank,
    rational_roots,
    solve_in_span,
)
from cgalgebra.ring import Coefficient, GAMMA, GaussianRational, OMEGA

C = Coefficient.of


def rand_rational_matrix(rng, rows, cols):
    return [[C(F(rng.randint(-3, 3), rng.randint(1, 3))) for _ in range(cols)]
            for _ in range(rows)]


def mat_vec(m, v):
    out = []
    for row in m:
        s = Coefficient()
        for a, b in zip(row, v):
            s = s + a * b
        out.append(s)
    return out


class TestNullspace:
    def test_random_rational_matrices(self):
        rng = random.Random(3)
        for _ in range(60):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            m = rand_rational_matrix(rng, rows, cols)
            basis = nullspace(m)
            for v in basis:
                assert all(c.is_zero() for c in mat_vec(m, v))
            a = np.array([[complex(c.scalar_value()) for c in row] for row in m])
            numeric_rank = np.linalg.matrix_rank(a, tol=1e-9)
            assert len(basis) == cols - numeric_rank

    def test_polynomial_entries(self):
        # kernel of [[1, w], [w, w^2]] and of a gamma-Laurent matrix
        m = [[C(1), OMEGA], [OMEGA, OMEGA * OMEGA]]
        basis = nullspace(m)
        assert len(basis) == 1
        assert all(c.is_zero() for c in mat_vec(m, basis[0]))
        m2 = [[GAMMA, C(2)], [GAMMA * GAMMA, GAMMA * 2]]
        basis = nullspace(m2)
        assert len(basis) == 1
        assert all(c.is_zero() for c in mat_vec(m2, basis[0]))
        # dimension agrees with a random rational substitution
        sub = [[c.substitute(gamma=F(5, 7), omega=F(2, 3)) for c in row] for row in m2]
        assert len(nullspace(sub)) == 1

    def test_empty_matrix(self):
        basis = nullspace([], ncols=3)
        assert len(basis) == 3


class TestSolveAndRank:
    def test_solve_in_span(self):
        cols = [[C(1), C(0), C(2)], [C(0), C(1), C(1)]]
        target = [C(3), C(2), C(8)]
        sol = solve_in_span(cols, target)
        assert sol == [C(3), C(2)]
        assert solve_in_span(cols, [C(0), C(0), C(1)]) is None

    def test_rank(self):
        assert rank([[C(1), C(2)], [C(2), C(4)]]) == 1
        assert rank([[C(1), C(0)], [C(0), C(1)]]) == 2


class TestDetCharpoly:
    def test_against_numpy(self):
        rng = random.Random(8)
        for _ in range(25):
            n = rng.randint(1, 4)
            m = rand_rational_matrix(rng, n, n)
            d = det(m)
            a = np.array([[complex(c.scalar_value()) for c in row] for row in m])
            assert abs(complex(d.scalar_value()) - np.linalg.det(a)) < 1e-9
            cp = charpoly(m)
            # evaluate det(xI - m) at x = 2 both ways
            lhs = complex(eval_poly(cp, C(2)).scalar_value())
            rhs = np.linalg.det(2 * np.eye(n) - a)
            assert abs(lhs - rhs) < 1e-9

    def test_polynomial_charpoly(self):
        m = [[OMEGA, C(0)], [C(1), -OMEGA]]
        cp = charpoly(m)  # x^2 - w^2
        assert cp[2] == C(1) and cp[1].is_zero() and cp[0] == -(OMEGA * OMEGA)


class TestUnivariate:
    def test_rational_roots_basic(self):
        roots = rational_roots([F(-2), F(-1), F(1)])  # (x-2)(x+1)
        assert roots == [(F(-1), 1), (F(2), 1)]
        assert rational_roots([F(0), F(0), F(1)]) == [(F(0), 2)]
        # double roots and fractional roots together: (x-3)^2 (3x-1)
        p = [F(-9), F(33), F(-19), F(3)]
        assert rational_roots(p) == [(F(1, 3), 1), (F(3), 2)]

    def test_rational_roots_none(self):
        assert rational_roots([F(1), F(0), F(1)]) == []  # x^2 + 1

    def test_fraction_sqrt(self):
        assert fraction_sqrt(F(4)) == 2
        assert fraction_sqrt(F(4, 9)) == F(2, 3)
        assert fraction_sqrt(F(2)) is None
        assert fraction_sqrt(F(-1)) is None

    def test_gaussian_rational_roots(self):
        # (x - 2)(x - i)
        cs = [GaussianRational(0, 2), GaussianRational(-2, -1), GaussianRational(1, 0)]
        assert gaussian_rational_roots(cs) == [F(2)]
