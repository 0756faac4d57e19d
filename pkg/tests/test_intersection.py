"""Unit tests for the intersection-number integrands and their identities."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from quasimap.exact import LinForm, MPoly, linform
from quasimap.intersection import (
    IntegrandSpec,
    compute_w,
    e6_factors,
    integrate_class,
    mixed_insertion_closed_form,
    mixed_insertion_residue,
    telescoped_insertion_residue,
    wall_form,
    wall_insertion_residue,
    wall_split_check,
    wall_split_sides,
)
from quasimap.residues import ResiduePlan
from quasimap.series import f0_coeff, f1_hat_coeff, mirror_w
from quasimap.toric import sr_ideal, volume_form


def _etilde(nvars, x, y):
    return 144 * MPoly.product(
        nvars,
        [
            LinForm.variable(x),
            LinForm.variable(y),
            linform((x, 1), (y, 5)),
            linform((x, 3), (y, 3)),
            linform((x, 5), (y, 1)),
        ],
    )


def test_e6_factorization_identity():
    nvars = 2
    e6 = MPoly.product(nvars, e6_factors(0, 1))
    assert e6.homogeneous_degree() == 7
    cofactors = MPoly.product(nvars, [linform((0, 2), (1, 1)), linform((0, 1), (1, 2))])
    assert e6 == _etilde(nvars, 0, 1) * cofactors
    # reduced form: e6 / ((2x+y)(x+2y)) = 432 x y (x+y) (5x+y) (x+5y)
    reduced = 432 * MPoly.product(
        nvars,
        [
            LinForm.variable(0),
            LinForm.variable(1),
            linform((0, 1), (1, 1)),
            linform((0, 5), (1, 1)),
            linform((0, 1), (1, 5)),
        ],
    )
    assert _etilde(nvars, 0, 1) == reduced


def test_e6_boundary_evaluations():
    nvars = 2
    e6 = MPoly.product(nvars, e6_factors(0, 1))
    assert e6.evaluate([Fraction(1), Fraction(0)]) == 0
    assert e6.evaluate([Fraction(1), Fraction(1)]) == 6 ** 7


def test_integrand_structure_degree_one():
    f = IntegrandSpec.insertions(1, 1, 0).build()
    assert f.scalar == 48
    powers = {tuple(sorted(fac.form.coeffs)): fac.multiplicity for fac in f.den}
    assert powers == {(0,): 2, (1,): 3}
    assert f.num.homogeneous_degree() == 3


def test_compute_w_known_examples():
    assert compute_w(1, 1, 0) == 1488
    assert compute_w(1, 2, -1) == 240
    assert compute_w(1, 0, 0) == 0


def test_compute_w_matches_mirror_coefficients():
    w = mirror_w(3)
    for d in (1, 2, 3):
        assert compute_w(d, 1, 0) / 2 == w[d - 1]


def test_compute_w_matches_period_coefficients():
    for d in (1, 2, 3):
        assert Fraction(d, 2) * compute_w(d, 2, -1) == f0_coeff(d)


def test_volume_normalization():
    for d in (1, 2, 3):
        assert integrate_class(d, volume_form(d)) == 1


def test_ideal_annihilation_explicit_samples():
    # r0 * z1^3 and r1 * z0^3 at degree one; a middle generator at degree two
    g1 = sr_ideal(1)
    assert integrate_class(1, g1[0] * MPoly.monomial(2, {1: 3})) == 0
    assert integrate_class(1, g1[1] * MPoly.monomial(2, {0: 3})) == 0
    g2 = sr_ideal(2)
    assert integrate_class(2, g2[1] * MPoly.monomial(3, {0: 7})) == 0
    assert integrate_class(2, g2[1] * MPoly.monomial(3, {2: 7})) == 0


def test_ideal_annihilation_sampled():
    rng = random.Random(515151)
    for d in (1, 2):
        nvars = d + 1
        for gen in sr_ideal(d):
            comp = 6 * d + 2 - gen.homogeneous_degree()
            for _ in range(10):
                exps = [0] * nvars
                for _ in range(comp):
                    exps[rng.randrange(nvars)] += 1
                mono = MPoly(nvars, {tuple(exps): Fraction(1)})
                assert integrate_class(d, gen * mono) == 0


def test_degree_selection_zeroes():
    assert integrate_class(1, MPoly.monomial(2, {0: 5})) == 0
    assert integrate_class(2, MPoly.monomial(3, {0: 7, 1: 6})) == 0
    assert integrate_class(1, MPoly.monomial(2, {0: 8})) != 0


def test_integrate_class_validates_variable_count():
    with pytest.raises(ValueError):
        integrate_class(2, MPoly.monomial(2, {0: 1}))


def test_order_independence_on_standard_integrands():
    for d in (1, 2):
        vol = volume_form(d)
        assert integrate_class(d, vol) == integrate_class(d, vol, plan=ResiduePlan.descending(d))
        for a, b in ((1, 0), (2, -1)):
            from quasimap.residues import iterated_residue

            up = iterated_residue(IntegrandSpec.insertions(d, a, b).build(), ResiduePlan.ascending(d))
            down = iterated_residue(IntegrandSpec.insertions(d, a, b).build(), ResiduePlan.descending(d))
            assert up == down


def test_mixed_insertion_values():
    assert mixed_insertion_residue(1) == mixed_insertion_closed_form(1) == 744
    assert mixed_insertion_residue(2) == mixed_insertion_closed_form(2) == 302256
    assert mixed_insertion_residue(3) == mixed_insertion_closed_form(3)


def test_wall_split_identity():
    lhs, rhs = wall_split_sides(2, 1)
    assert lhs == rhs == 89280  # (1488/2) * (240/2)
    assert wall_split_check(3, 1)
    assert wall_split_check(3, 2)


def test_wall_split_argument_validation():
    with pytest.raises(ValueError):
        wall_insertion_residue(2, 2)


def test_telescoped_insertion_values():
    assert telescoped_insertion_residue(1) == 744
    assert telescoped_insertion_residue(2) == 562932
    for d in (1, 2, 3):
        assert telescoped_insertion_residue(d) == f1_hat_coeff(d)


def test_telescoping_linear_identity():
    # sum_f f * (2 z_{d-f} - z_{d-f-1} - z_{d-f+1}) = d (z1 - z0) + z0 - z_d
    for d in range(2, 7):
        total = LinForm.zero()
        for f in range(1, d):
            total = total + wall_form(d - f) * f
        expected = LinForm({0: Fraction(1 - d), 1: Fraction(d), d: Fraction(-1)})
        assert total == expected


def test_degree_zero_insertions_vanish():
    for d in (1, 2):
        for a in (-1, 0, 1, 2):
            for b in (-1, 0, 1, 2):
                if a + b != 1:
                    assert compute_w(d, a, b) == 0
