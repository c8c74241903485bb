from collections import Counter
from fractions import Fraction as F

import pytest

from cgalgebra.errors import NotClosed, NotInIdeal, NonQuadratic, SingularLimit
from cgalgebra.ring import Coefficient, GAMMA, GaussianRational, I
from cgalgebra.weyl import WeylOp, commutator, multiply, parse_op, print_op
from cgalgebra.realizations import (
    cga32_table,
    contraction_table,
    decoupled_generic,
    enhanced_extras,
    gen_osc,
    gen_params,
    realization_free,
    realization_osc,
    omega_ops,
    theta_family,
)
from cgalgebra.invariance import (
    close_algebra,
    contract,
    crit_eq1,
    crit_eq2,
    critical_frequencies,
    find_symmetries,
    lambda_candidates,
    multiplier_division,
    onshell_report,
)


def inv_op(omega=None, gamma=0):
    return WeylOp.dt().scale(I) - theta_family(omega, gamma, 0)


class TestMultiplierDivision:
    def test_free_list(self):
        r = realization_free()
        op_p, op_0, op_m = omega_ops(r)
        f = multiplier_division(commutator(r["z-"], op_p), op_p)
        assert print_op(f) == "t^1 * (8)"
        f = multiplier_division(commutator(r["z+"], op_0), op_0)
        assert print_op(f) == "t^-1 * (1)"
        f = multiplier_division(commutator(r["z+"], op_m), op_m)
        assert print_op(f) == "t^-1 * (2)"

    def test_osc_list(self):
        r = realization_osc()
        _, op_0, _ = omega_ops(r)
        f = multiplier_division(commutator(r["z-"], op_0), op_0)
        assert print_op(f) == "e[-2,0] * (2i)"

    def test_zero_candidate(self):
        _, op_0, _ = omega_ops(realization_osc())
        assert multiplier_division(WeylOp.zero(), op_0).is_zero()

    def test_not_in_ideal(self):
        _, op_0, _ = omega_ops(realization_osc())
        with pytest.raises(NotInIdeal):
            multiplier_division(WeylOp.coord(0), op_0)

    def test_reports(self):
        r = realization_free()
        op_p, _, _ = omega_ops(r)
        rep = onshell_report(r, op_p)
        assert rep.ok
        assert set(rep.nonzero()) == {"z0", "z-"}
        r = realization_osc()
        _, op_0, _ = omega_ops(r)
        rep = onshell_report(r, op_0)
        assert rep.ok
        assert set(rep.nonzero()) == {"z+", "z-"}


class TestCriticalFrequencies:
    def test_exact_solution_set(self):
        sols = critical_frequencies()
        assert {s.omega for s in sols} == {F(3), F(-3), F(1, 3), F(-1, 3)}
        by = {}
        for s in sols:
            by.setdefault(s.omega, set()).add(s.lam)
        assert by[F(3)] == {F(2), F(-2)}
        assert by[F(-3)] == {F(2), F(-2)}
        assert by[F(1, 3)] == {F(2, 3)}
        assert by[F(-1, 3)] == {F(-2, 3)}

    def test_back_substitution(self):
        for s in critical_frequencies():
            assert crit_eq1(s.lam, s.omega) == 0
            assert crit_eq2(s.lam, s.omega) == 0

    def test_brute_force_oracle(self):
        """Enumerate small rationals and compare against the solver output."""
        found = set()
        denoms = range(1, 7)
        nums = range(-10, 11)
        omegas = {F(p, q) for p in nums for q in denoms}
        lams = {F(p, q) for p in nums for q in denoms if p != 0}
        for w in omegas:
            for lam in lams:
                if crit_eq1(lam, w) == 0 and crit_eq2(lam, w) == 0:
                    found.add((w, lam))
        got = {(s.omega, s.lam) for s in critical_frequencies()}
        assert got == found


class TestLambdaCandidates:
    def test_decoupled_generic_formal(self):
        h = theta_family(None, 0, 0).substitute(gamma=0)
        cands = set(lambda_candidates(h))
        want = {(F(0), 0), (F(1), 0), (F(-1), 0), (F(2), 0), (F(-2), 0),
                (F(0), 1), (F(0), -1), (F(0), 2), (F(0), -2),
                (F(1), 1), (F(-1), -1), (F(1), -1), (F(-1), 1)}
        assert cands >= want

    def test_harmonic_only(self):
        h = parse_op("x^2 * (1/2) + Dx^2 * (-1/2)")
        cands = {m for m, n in lambda_candidates(h) if n == 0}
        assert cands >= {F(0), F(1), F(-1), F(2), F(-2)}

    def test_coupled_equals_decoupled(self):
        dec = lambda_candidates(theta_family(3, 0, 0).substitute(gamma=0))
        coup = lambda_candidates(theta_family(3, None, 0))
        assert dec == coup
        assert {m for m, _ in dec} == {F(0), F(1), F(-1), F(2), F(-2),
                                       F(3), F(-3), F(4), F(-4), F(6), F(-6)}

    def test_non_quadratic_rejected(self):
        with pytest.raises(NonQuadratic):
            lambda_candidates(parse_op("x^3 * (1)"))
        with pytest.raises(NonQuadratic):
            lambda_candidates(parse_op("t^1*x^1 * (1)"))


class TestFindSymmetries:
    def test_generic_dimension_is_9(self):
        res = find_symmetries(inv_op(None))
        assert len(res) == 9
        profile = Counter(r.lam for r in res)
        assert profile[(F(0), 0)] == 3
        assert profile[(F(2), 0)] == profile[(F(-2), 0)] == 1
        assert profile[(F(1), 0)] == profile[(F(-1), 0)] == 1
        assert profile[(F(0), 1)] == profile[(F(0), -1)] == 1

    @pytest.mark.parametrize("w,expected", [(1, 12), (3, 12)])
    def test_critical_dimensions(self, w, expected):
        res = find_symmetries(inv_op(w))
        assert len(res) == expected

    def test_lambda_profiles_distinguish_the_tables(self):
        p3 = Counter(r.lam for r in find_symmetries(inv_op(3)))
        p1 = Counter(r.lam for r in find_symmetries(inv_op(1)))
        assert p3 != p1
        assert p3[(F(-6), 0)] == 1 and p3[(F(-4), 0)] == 1
        assert p1[(F(-2), 0)] == 3 and p1[(F(0), 0)] == 4

    def test_generic_span_matches_catalog(self):
        """Each of the 9 solutions decomposes over the generic catalog.

        Decomposition coefficients live in the fraction field (1/w shows up
        for the zero-phase block), so span membership is checked after a
        rational frequency substitution.
        """
        res = find_symmetries(inv_op(None))
        dg = decoupled_generic(None)
        gens = [dg[n].substitute(omega=13) for n in dg.names()]
        sols = [r.generator.substitute(omega=13) for r in res]
        from cgalgebra.linalg import solve_in_span
        arity = 2
        keys = sorted({m for g in gens for m, _ in g.terms()} |
                      {m for s in sols for m, _ in s.terms()},
                      key=lambda m: m.sort_key(arity))
        idx = {m: i for i, m in enumerate(keys)}
        cols = []
        for g in gens:
            col = [Coefficient() for _ in keys]
            for m, c in g.terms():
                col[idx[m]] = c
            cols.append(col)
        for s in sols:
            target = [Coefficient() for _ in keys]
            for m, c in s.terms():
                target[idx[m]] = c
            assert solve_in_span(cols, target) is not None

    def test_full_formal_scan_finds_uniform_family(self):
        """Scanning multiples and mixed phases reveals a 12-dimensional space
        whose three extra members specialize to the critical-frequency extras."""
        h = theta_family(None, 0, 0).substitute(gamma=0)
        res = find_symmetries(inv_op(None), lam_set=lambda_candidates(h))
        assert len(res) == 12
        lams = {r.lam for r in res}
        assert (F(1), -1) in lams and (F(-1), -1) in lams and (F(0), -2) in lams

    def test_every_result_reverifies(self):
        om = inv_op(3)
        for r in find_symmetries(om):
            assert (commutator(r.generator, om) - multiply(r.multiplier, om)).is_zero()

    def test_first_order_ansatz_drops_dt_family(self):
        res = find_symmetries(inv_op(3), ansatz="first-order")
        assert len(res) == 9  # z+-, z0, and the pure-Dt direction drop out
        assert all(not any(m.dt_pow for m, _ in r.generator.terms()) for r in res)

    def test_gen_osc_time_phase_families(self):
        for sign in (1, -1):
            p = gen_params(F(3, 2), (sign,))
            res = find_symmetries(gen_osc(p), lam_set=[2, -2])
            assert len(res) == 2
            assert all(any(m.dt_pow for m, _ in r.generator.terms()) for r in res)

    def test_rank_52_both_sign_choices(self):
        for signs in ((1, 1), (-1, 1)):
            p = gen_params(F(5, 2), signs, gammas=(GAMMA, GAMMA * 2))
            res = find_symmetries(gen_osc(p), lam_set=[2, -2], coeff_degree_bound=2)
            assert {r.lam for r in res} == {(F(2), 0), (F(-2), 0)}
            assert all(any(m.dt_pow for m, _ in r.generator.terms()) for r in res)


class TestCloseAlgebra:
    def test_heisenberg(self):
        tbl = close_algebra([WeylOp.coord(0), WeylOp.deriv(0), WeylOp.one()],
                            ["x", "dx", "one"])
        assert tbl.bracket("x", "dx") == {"one": Coefficient.of(-1)}
        assert "one" in tbl.central

    def test_not_closed(self):
        with pytest.raises(NotClosed) as err:
            close_algebra([WeylOp.coord(0), WeylOp.deriv(0)], ["x", "dx"])
        assert err.value.pair == ("x", "dx")
        assert err.value.residual == WeylOp.one().scale(-1)  # [x, Dx] = -1

    def test_dependent_generators_rejected(self):
        with pytest.raises(ValueError):
            close_algebra([WeylOp.coord(0), WeylOp.coord(0).scale(2)])

    def _full_table(self, w):
        dg = decoupled_generic(w)
        ex = enhanced_extras(w)
        names = list(dg.names()) + list(ex)
        gens = [dg[n] for n in dg.names()] + list(ex.values())
        tbl = close_algebra(gens, names)
        tbl.validate()
        return tbl

    def test_omega3_table(self):
        tbl = self._full_table(3)
        assert tbl.bracket("r-1", "r-2") == {"r-3": Coefficient.of(-2)}
        assert tbl.bracket("d", "r-1") == {"r-1": Coefficient.of(-1)}
        assert tbl.bracket("d", "r-2") == {"r-2": Coefficient.of(-2)}
        assert tbl.bracket("d", "r-3") == {"r-3": Coefficient.of(-3)}
        assert tbl.bracket("w+omega", "r-1") == {"w+1": Coefficient.of(1)}
        assert tbl.bracket("w-1", "r-1") == {"w-omega": Coefficient.of(2)}
        assert tbl.bracket("w+omega", "r-3") == {"w-omega": Coefficient.of(2)}
        assert tbl.central == frozenset({"c"})

    def test_omega1_table(self):
        tbl = self._full_table(1)
        assert tbl.bracket("q1", "q3") == {"q2": Coefficient.of(-2)}
        assert tbl.bracket("w+omega", "q1") == {"w+1": Coefficient.of(1)}
        assert tbl.bracket("w-1", "q1") == {"w-omega": Coefficient.of(2)}
        assert tbl.bracket("w+omega", "q2") == {"w-omega": Coefficient.of(2)}
        # the raising bracket closes on q1ahead of the quoted label
        assert tbl.bracket("z+", "q3") == {"q1": Coefficient.of(GaussianRational(0, -2))}
        # d-grading of the extras differs from the omega=3 one
        assert tbl.bracket("d", "q1") == {}
        assert tbl.bracket("d", "q2") == {"q2": Coefficient.of(-1)}
        assert tbl.bracket("d", "q3") == {"q3": Coefficient.of(-1)}

    def test_tables_inequivalent(self):
        t3 = self._full_table(3)
        t1 = self._full_table(1)
        extras3 = [t3.bracket("d", n).get(n) for n in ("r-1", "r-2", "r-3")]
        extras1 = [t1.bracket("d", n).get(n, Coefficient()) for n in ("q1", "q2", "q3")]
        deg3 = sorted(str(c) for c in extras3)
        deg1 = sorted(str(c or Coefficient()) for c in extras1)
        assert deg3 != deg1


class TestContraction:
    def test_limit_exists_for_both_realizations(self):
        for builder in (realization_free, realization_osc):
            contracted = contract(builder())
            assert set(contracted.gens) == set(builder().gens)

    def test_contracted_operators(self):
        c = contract(realization_osc())
        assert print_op(c["w-3"]) == "e[-3,0]*y^1 * (-48)"
        assert c["c"] == WeylOp.one()
        assert c["z+"] == realization_osc().gens["z+"]  # untouched at power 0

    def test_contracted_table_closes(self):
        c = contract(realization_osc())
        from cgalgebra.invariance import verify_table
        assert verify_table(c, contraction_table()).ok

    def test_central_charge_bracket(self):
        c = contract(realization_osc())
        # [w~_|k|, w~_-|k|] = (3 - 2|k|) 16 c~ with c~ = 1
        assert commutator(c["w+1"], c["w-1"]) == WeylOp.scalar(16)
        assert commutator(c["w+3"], c["w-3"]) == WeylOp.scalar(-48)

    def test_not_a_subalgebra(self):
        c = contract(realization_osc())
        assert commutator(c["z+"], c["z-"]).is_zero()
        assert cga32_table().bracket("z+", "z-") != {}

    def test_singular_without_rescaling(self):
        with pytest.raises(SingularLimit):
            contract(realization_osc(), powers={n: 0 for n in cga32_table().names})
