"""Iterated residue evaluation of factored rational functions.

A ``FactoredRat`` integrand is integrated one variable at a time.  For the
current variable ``z_j`` every live branch contributes one residue per
*prescribed* pole, i.e. per distinct point ``z_j = p`` cut out by a
denominator factor whose allowed-set contains ``j``.  The residue at a point
uses the full local pole order (all factors vanishing there, allowed or not);
tags only select which points are visited.  Branches are never summed against
each other before the very end, where each survivor must be an exact rational
constant.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .exact import FactoredRat, LinForm


class ResidueError(ValueError):
    """Raised for ill-posed residue requests or a non-scalar final remainder."""


@dataclass(frozen=True)
class ResiduePlan:
    """Order in which variables are integrated out.

    ``degree_target`` records the numerator degree that survives the
    homogeneity selection (the dimension count of the ambient pairing); it is
    informational, the engine recomputes the selection from the integrand.
    """

    order: tuple[int, ...]
    degree_target: int | None = None

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("order must be a permutation of 0..d")

    @classmethod
    def ascending(cls, d: int) -> ResiduePlan:
        return cls(tuple(range(d + 1)), 6 * d + 2)

    @classmethod
    def descending(cls, d: int) -> ResiduePlan:
        return cls(tuple(range(d, -1, -1)), 6 * d + 2)


@dataclass(frozen=True)
class BranchTerm:
    """One live branch: its value and the variables still to be integrated."""

    value: FactoredRat
    remaining: tuple[int, ...] = field(default=())


def residue_at_point(f: FactoredRat, var: int, point: LinForm) -> FactoredRat:
    """Residue of ``f`` at ``z_var = point``.

    With ``m`` the total multiplicity of all denominator factors vanishing on
    ``z_var = point``, the residue is
    ``(1/(m-1)!) * d^{m-1}/dz_var^{m-1} [(z_var - point)^m * f]`` evaluated at
    ``z_var = point``; each vanishing factor ``c*(z_var - point)`` contributes
    ``c**multiplicity`` to the extracted scalar.  The result no longer
    involves ``z_var``.
    """
    if point.coeff(var):
        raise ResidueError("ill-formed point: it involves the residue variable")
    vanishing = []
    surviving = []
    for fac in f.den:
        if fac.form.subst(var, point).is_zero():
            vanishing.append(fac)
        else:
            surviving.append(fac)
    if not vanishing:
        raise ResidueError(f"not a pole: no denominator factor vanishes on z{var} = point")
    m = sum(fac.multiplicity for fac in vanishing)
    scalar = f.scalar
    for fac in vanishing:
        scalar /= fac.form.coeff(var) ** fac.multiplicity
    g = FactoredRat(scalar, f.num, surviving)
    for _ in range(m - 1):
        g = g.derivative(var)
    if m > 1:
        g = g.scale(Fraction(1, factorial(m - 1)))
    return g.subst(var, point).reduce()


def homogeneity_filter(f: FactoredRat, d: int) -> FactoredRat:
    """Keep the numerator component that can survive the iterated residue.

    Each single-variable residue raises the total degree of a homogeneous
    rational function by one, so only the numerator component of degree
    ``deg(denominator) - (d+1)`` can reach a nonzero constant after the d+1
    integrations; every other component is annihilated and is discarded here.
    """
    if f.is_zero():
        return f
    target = f.den_degree() - (d + 1)
    return FactoredRat(f.scalar, f.num.homogeneous_component(target), f.den)


def _prescribed_points(f: FactoredRat, var: int) -> list[LinForm]:
    points = {}
    for fac in f.den:
        if var in fac.allowed and fac.form.coeff(var):
            p = fac.form.solve_for(var)
            points[p.key()] = p
    return [points[k] for k in sorted(points)]


def _default_threads() -> int:
    return os.cpu_count() or 1


def iterated_residue(f: FactoredRat, plan: ResiduePlan, threads: int | None = None) -> Fraction:
    """Run the full residue prescription and return the exact rational value.

    Branches spawned at different poles are processed independently (and, when
    ``threads > 1``, concurrently); the final value is the sum of the scalar
    survivors, which is independent of scheduling because rational addition is
    exact.  Raises :class:`ResidueError` when a surviving term still carries
    variables after the last integration.
    """
    nvars = f.nvars
    if len(plan.order) != nvars:
        raise ResidueError("plan does not cover the integrand's variables")
    if threads is None:
        threads = _default_threads()
    d = nvars - 1
    start = homogeneity_filter(f, d).reduce()
    branches = [] if start.is_zero() else [BranchTerm(start, tuple(plan.order))]
    for step, var in enumerate(plan.order):
        rest = tuple(plan.order[step + 1:])
        tasks = []
        for b in branches:
            for p in _prescribed_points(b.value, var):
                tasks.append((b.value, var, p))
        if threads > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                values = list(pool.map(lambda t: residue_at_point(*t), tasks))
        else:
            values = [residue_at_point(*t) for t in tasks]
        branches = [BranchTerm(v, rest) for v in values if not v.is_zero()]
    total = Fraction(0)
    for b in branches:
        if b.value.den or not b.value.num.is_constant():
            raise ResidueError(
                "non-scalar remainder after the last variable: " + b.value.render()
            )
        total += b.value.scalar * b.value.num.constant_value()
    return total
