"""The verification ladder: every pinned value, exactly, with one line per check.

Each ``check_*`` function returns a list of :class:`CheckResult` whose
comparisons are exact (rational arithmetic, tolerance zero).  The CLI
``verify`` subcommand and the acceptance test suite both run these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import FactoredRat, LinForm, MPoly
from .intersection import (
    IntegrandSpec,
    compute_w,
    integrate_class,
    mixed_insertion_closed_form,
    mixed_insertion_residue,
    telescoped_insertion_residue,
    wall_split_sides,
)
from .residues import ResiduePlan, iterated_residue
from .series import (
    f0_coeff,
    f1_hat_coeff,
    j_from_w,
    lagrange_oracle,
    mirror_w,
    pf_first_failure,
)
from .toric import (
    build_fan,
    det_Bk,
    eval_recession,
    orientation_enumeration,
    relation_check,
    sr_ideal_factors,
    volume_form,
)

W_KNOWN = (744, 473652, 451734080, 510531007770)
J_KNOWN = (744, 196884, 21493760, 864299970, 20245856256)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    expected: str
    actual: str

    def line(self) -> str:
        label = "PASS" if self.ok else "FAIL"
        return f"{label} {self.name}: expected {self.expected}, actual {self.actual}"


def _cmp(name: str, expected, actual) -> CheckResult:
    return CheckResult(name, expected == actual, str(expected), str(actual))


def check_w_coefficients(dmax: int = 4, threads: int | None = None) -> list[CheckResult]:
    """Half the two-point number w(O_z O_1)_{0,d} equals the d-th mirror coefficient."""
    out = []
    mirror = mirror_w(dmax) if dmax > len(W_KNOWN) else None
    for d in range(1, dmax + 1):
        expected = Fraction(W_KNOWN[d - 1]) if d <= len(W_KNOWN) else mirror[d - 1]
        out.append(_cmp(f"w-coefficient d={d}", expected, compute_w(d, 1, 0, threads) / 2))
    return out


def check_period_coefficients(dmax: int = 5, threads: int | None = None) -> list[CheckResult]:
    """(d/2) * w(O_{z^2} O_{z^-1})_{0,d} equals the holomorphic period coefficient."""
    return [
        _cmp(
            f"period coefficient d={d}",
            f0_coeff(d),
            Fraction(d, 2) * compute_w(d, 2, -1, threads),
        )
        for d in range(1, dmax + 1)
    ]


def check_volume_normalization(dmax: int = 5, threads: int | None = None) -> list[CheckResult]:
    """The volume class integrates to exactly 1."""
    return [
        _cmp(f"volume normalization d={d}", Fraction(1), integrate_class(d, volume_form(d), threads=threads))
        for d in range(1, dmax + 1)
    ]


def _random_monomial(nvars: int, degree: int, rng: random.Random) -> MPoly:
    exps = [0] * nvars
    for _ in range(degree):
        exps[rng.randrange(nvars)] += 1
    return MPoly(nvars, {tuple(exps): Fraction(1)})


def check_ideal_annihilation(
    dmax: int = 3, samples: int = 10, seed: int = 1113, threads: int | None = None
) -> list[CheckResult]:
    """Each ideal generator times complementary-degree monomials integrates to 0."""
    rng = random.Random(seed)
    out = []
    for d in range(1, dmax + 1):
        nvars = d + 1
        for gi, factors in enumerate(sr_ideal_factors(d)):
            gen = MPoly.const(nvars, 1)
            gdeg = 0
            for form, mult in factors:
                gen = gen * form.to_mpoly(nvars) ** mult
                gdeg += mult
            comp = 6 * d + 2 - gdeg
            bad = []
            for _ in range(samples):
                mono = _random_monomial(nvars, comp, rng)
                value = integrate_class(d, gen * mono, threads=threads)
                if value:
                    bad.append((mono.render(), str(value)))
            out.append(
                CheckResult(
                    f"ideal annihilation d={d} generator={gi}",
                    not bad,
                    f"0 on {samples} samples",
                    "all zero" if not bad else f"nonzero at {bad[0]}",
                )
            )
    return out


def check_degree_selection(
    dmax: int = 3, samples: int = 20, seed: int = 62, threads: int | None = None
) -> list[CheckResult]:
    """Monomials of total degree != 6d+2 integrate to 0."""
    rng = random.Random(seed)
    out = []
    for d in range(1, dmax + 1):
        nvars = d + 1
        bad = []
        for _ in range(samples):
            degree = rng.randrange(0, 8 * d + 4)
            if degree == 6 * d + 2:
                degree += 1
            mono = _random_monomial(nvars, degree, rng)
            value = integrate_class(d, mono, threads=threads)
            if value:
                bad.append((mono.render(), str(value)))
        out.append(
            CheckResult(
                f"degree selection d={d}",
                not bad,
                f"0 on {samples} samples",
                "all zero" if not bad else f"nonzero at {bad[0]}",
            )
        )
    return out


def check_order_independence(dmax: int = 3, threads: int | None = None) -> list[CheckResult]:
    """Ascending and descending integration orders agree on the standard integrands."""
    out = []
    for d in range(1, dmax + 1):
        for a, b in ((1, 0), (2, -1)):
            up = iterated_residue(
                IntegrandSpec.insertions(d, a, b).build(), ResiduePlan.ascending(d), threads
            )
            down = iterated_residue(
                IntegrandSpec.insertions(d, a, b).build(), ResiduePlan.descending(d), threads
            )
            out.append(_cmp(f"order independence d={d} insertions=({a},{b})", up, down))
        vol = volume_form(d)
        up = integrate_class(d, vol, threads=threads)
        down = integrate_class(d, vol, plan=ResiduePlan.descending(d), threads=threads)
        out.append(_cmp(f"order independence d={d} volume", up, down))
    return out


def check_insertion_identities(dmax: int = 4, threads: int | None = None) -> list[CheckResult]:
    """Mixed insertion closed form, chain splitting, telescoped insertion."""
    out = []
    for d in range(1, dmax + 1):
        out.append(
            _cmp(
                f"mixed insertion d={d}",
                mixed_insertion_closed_form(d),
                mixed_insertion_residue(d, threads),
            )
        )
    for d in range(2, dmax + 1):
        for f in range(1, d):
            lhs, rhs = wall_split_sides(d, f, threads)
            out.append(_cmp(f"chain splitting d={d} f={f}", lhs, rhs))
    for d in range(1, dmax + 1):
        out.append(
            _cmp(
                f"telescoped insertion d={d}",
                f1_hat_coeff(d),
                telescoped_insertion_residue(d, threads),
            )
        )
    return out


def _expected_sr_factors(d: int) -> list[list[tuple[LinForm, int]]]:
    gens = [[(LinForm({0: 1}), 4), (LinForm({0: 2, 1: 1}), 1)]]
    for i in range(1, d):
        gens.append([
            (LinForm({i: 1}), 4),
            (LinForm({i - 1: 1, i: 2}), 1),
            (LinForm({i: 2, i + 1: 1}), 1),
            (LinForm({i - 1: -1, i: 2, i + 1: -1}), 1),
        ])
    gens.append([(LinForm({d: 1}), 4), (LinForm({d - 1: 1, d: 2}), 1)])
    return gens


def check_toric(
    relation_dmax: int = 10, det_kmax: int = 30, orientation_dmax: int = 4
) -> list[CheckResult]:
    """Ray relations, corner determinants, orientation positivity, ideal generators."""
    out = []
    for d in range(1, relation_dmax + 1):
        out.append(_cmp(f"ray relations d={d}", True, relation_check(build_fan(d))))
    dets_ok = all(det_Bk(k) == 9 * k - 6 for k in range(1, det_kmax + 1))
    out.append(
        CheckResult(
            f"corner determinants k<={det_kmax}",
            dets_ok,
            "9k-6 for all k",
            "all match" if dets_ok else "mismatch",
        )
    )
    for d in range(1, orientation_dmax + 1):
        rep = orientation_enumeration(d)
        out.append(
            CheckResult(
                f"orientation d={d}",
                rep.all_positive and rep.region_count == 4 ** d,
                f"{4 ** d} regions, all determinants positive",
                f"{rep.region_count} regions, min determinant {rep.min_det}",
            )
        )
    for d in (1, 2):
        got = sr_ideal_factors(d)
        expected = _expected_sr_factors(d)
        out.append(
            CheckResult(
                f"ideal generators d={d}",
                got == expected,
                "stated factor lists",
                "match" if got == expected else "mismatch",
            )
        )
    return out


def check_series() -> list[CheckResult]:
    """Differential-equation recursion, mirror coefficients, j-coefficients, two routes."""
    out = []
    failure = pf_first_failure(20)
    out.append(
        CheckResult(
            "differential-equation check N=20",
            failure is None,
            "no failing order through 20",
            "none" if failure is None else f"fails at order {failure}",
        )
    )
    mirror = mirror_w(4)
    for d in range(1, 5):
        out.append(_cmp(f"mirror coefficient w_{d}", Fraction(W_KNOWN[d - 1]), mirror[d - 1]))
    j = j_from_w(5)
    for d in range(1, 6):
        out.append(_cmp(f"j coefficient j_{d}", Fraction(J_KNOWN[d - 1]), j[d - 1]))
    composed, inverted = j_from_w(8), lagrange_oracle(8)
    out.append(
        CheckResult(
            "j reconstruction routes N=8",
            composed == inverted,
            "composition and inversion routes agree",
            "agree" if composed == inverted else "diverge",
        )
    )
    return out


def check_properties(threads: int | None = None) -> list[CheckResult]:
    """Seeded property suite: degree zeros, linearity, closure, recession map."""
    out = []
    bad = [
        (d, a, b)
        for d in (1, 2, 3)
        for a in (-1, 0, 1, 2)
        for b in (-1, 0, 1, 2)
        if a + b != 1 and compute_w(d, a, b, threads) != 0
    ]
    out.append(
        CheckResult(
            "degree zeros a+b != 1",
            not bad,
            "w = 0 for all off-degree insertions",
            "all zero" if not bad else f"nonzero at {bad[0]}",
        )
    )

    rng = random.Random(90521)
    lin_ok = True
    for d in (1, 2):
        base = IntegrandSpec.insertions(d, 1, 0).build()
        for _ in range(3):
            alpha = Fraction(rng.randint(1, 9), rng.randint(1, 5))
            beta = Fraction(rng.randint(-9, -1), rng.randint(1, 5))
            nf = _random_monomial(d + 1, base.num.degree(), rng)
            ng = _random_monomial(d + 1, base.num.degree(), rng)
            fa = FactoredRat(base.scalar, nf, base.den)
            fb = FactoredRat(base.scalar, ng, base.den)
            combo = FactoredRat(base.scalar, alpha * nf + beta * ng, base.den)
            plan = ResiduePlan.ascending(d)
            lhs = iterated_residue(combo, plan, threads)
            rhs = alpha * iterated_residue(fa, plan, threads) + beta * iterated_residue(fb, plan, threads)
            lin_ok = lin_ok and lhs == rhs
    out.append(CheckResult("residue linearity", lin_ok, "linear in the numerator", "linear" if lin_ok else "violation"))

    f = IntegrandSpec.insertions(2, 1, 0).build()
    point = LinForm({1: Fraction(1), 2: Fraction(1)})
    g = f.derivative(0).derivative(1).subst(0, point).derivative(2).reduce()
    closure_ok = all(fac.allowed <= fac.form.support for fac in g.den)
    out.append(
        CheckResult(
            "denominator closure",
            closure_ok,
            "linear tagged factors only",
            "closed" if closure_ok else "violation",
        )
    )

    rng = random.Random(40961)
    hom_ok = True
    inj_ok = True
    for d in (1, 2, 3, 4):
        for _ in range(50):
            alpha = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(d + 1)]
            t = Fraction(rng.randint(1, 30), rng.randint(1, 9))
            left = eval_recession(d, [t * x for x in alpha])
            right = [t * y for y in eval_recession(d, alpha)]
            hom_ok = hom_ok and left == right
        seen: dict[tuple, tuple] = {}
        for _ in range(10_000):
            alpha = tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(d + 1))
            image = tuple(eval_recession(d, list(alpha)))
            prev = seen.get(image)
            if prev is not None and prev != alpha:
                inj_ok = False
            seen[image] = alpha
    out.append(CheckResult("recession homogeneity", hom_ok, "F(t a) = t F(a)", "holds" if hom_ok else "violation"))
    out.append(
        CheckResult(
            "recession sampled injectivity",
            inj_ok,
            "no collisions on 10^4 samples per degree",
            "injective" if inj_ok else "collision found",
        )
    )
    return out


def run_verification(
    degree_max: int, threads: int | None = None, emit=None
) -> tuple[bool, list[CheckResult]]:
    """Run the full ladder with residue degrees capped at ``degree_max``."""
    if degree_max < 1:
        raise ValueError("degree_max must be >= 1")
    results: list[CheckResult] = []

    def run(batch):
        for r in batch:
            results.append(r)
            if emit:
                emit(r.line())

    run(check_w_coefficients(min(degree_max, 5), threads))
    run(check_period_coefficients(min(degree_max, 5), threads))
    run(check_volume_normalization(min(degree_max, 5), threads))
    run(check_ideal_annihilation(min(degree_max, 3), threads=threads))
    run(check_degree_selection(min(degree_max, 3), threads=threads))
    run(check_order_independence(min(degree_max, 3), threads))
    run(check_insertion_identities(min(degree_max, 4), threads))
    run(check_toric())
    run(check_series())
    run(check_properties(threads))
    return all(r.ok for r in results), results
