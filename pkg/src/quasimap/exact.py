"""Exact arithmetic: linear forms, sparse polynomials, factored rational functions.

Every quantity is an exact ``fractions.Fraction``; nothing here ever touches
floating point.  The three layers are

* ``LinForm``   -- homogeneous linear forms ``sum_j c_j z_j`` (no constant term),
* ``MPoly``     -- sparse multivariate polynomials over the rationals,
* ``FactoredRat`` -- ``scalar * num / prod(form_i ** m_i)`` with each
  denominator factor tagged by the set of variables whose integration contour
  encloses its zero locus.

All values are immutable after construction and safe to share between
concurrent workers; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

Rat = Fraction


def _as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class LinForm:
    """A homogeneous linear form ``sum_j c_j z_j`` with rational coefficients.

    Constant terms are deliberately unrepresentable: the whole calculus is
    homogeneous, so a constant appearing in a pole locus would signal a bug.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        d = {}
        for v, c in items:
            c = _as_rat(c)
            if c:
                d[int(v)] = c
        self.coeffs = d

    @classmethod
    def variable(cls, j: int) -> LinForm:
        return cls({j: Fraction(1)})

    @classmethod
    def zero(cls) -> LinForm:
        return cls()

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int) -> Fraction:
        return self.coeffs.get(j, Fraction(0))

    def __add__(self, other: LinForm) -> LinForm:
        d = dict(self.coeffs)
        for v, c in other.coeffs.items():
            d[v] = d.get(v, Fraction(0)) + c
        return LinForm(d)

    def __sub__(self, other: LinForm) -> LinForm:
        return self + (-other)

    def __neg__(self) -> LinForm:
        return LinForm({v: -c for v, c in self.coeffs.items()})

    def __mul__(self, s) -> LinForm:
        s = _as_rat(s)
        return LinForm({v: c * s for v, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, s) -> LinForm:
        return self * (Fraction(1) / _as_rat(s))

    def __eq__(self, other) -> bool:
        return isinstance(other, LinForm) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def key(self) -> tuple:
        """Deterministic sort key."""
        return tuple(sorted(self.coeffs.items()))

    def subst(self, var: int, point: LinForm) -> LinForm:
        """Replace ``z_var`` by the linear form ``point``."""
        if var in point.support:
            raise ValueError("substitution point must not involve the substituted variable")
        c = self.coeffs.get(var)
        if c is None:
            return self
        rest = LinForm({v: w for v, w in self.coeffs.items() if v != var})
        return rest + point * c

    def solve_for(self, var: int) -> LinForm:
        """The point ``z_var = p`` with ``self = 0``, i.e. ``p = -(self - c*z_var)/c``."""
        c = self.coeffs.get(var)
        if not c:
            raise ValueError(f"form does not involve z_{var}")
        return LinForm({v: -w / c for v, w in self.coeffs.items() if v != var})

    def canonicalized(self) -> tuple[Fraction, LinForm]:
        """Write ``self = scale * canon`` with integer ``canon`` of content 1.

        The first (lowest-index) nonzero coefficient of ``canon`` is positive,
        so proportional forms always canonicalize to the identical object.
        """
        if not self.coeffs:
            raise ValueError("the zero form has no canonical representative")
        den_lcm = lcm(*(c.denominator for c in self.coeffs.values()))
        num_gcd = gcd(*(abs((c * den_lcm).numerator) for c in self.coeffs.values()))
        scale = Fraction(num_gcd, den_lcm)
        if self.coeffs[min(self.coeffs)] < 0:
            scale = -scale
        return scale, LinForm({v: c / scale for v, c in self.coeffs.items()})

    def evaluate(self, values: list[Fraction]) -> Fraction:
        return sum((c * values[v] for v, c in self.coeffs.items()), Fraction(0))

    def to_mpoly(self, nvars: int) -> MPoly:
        terms = {}
        for v, c in self.coeffs.items():
            e = [0] * nvars
            e[v] = 1
            terms[tuple(e)] = c
        return MPoly(nvars, terms)

    def render(self, names: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for v, c in sorted(self.coeffs.items()):
            mag = abs(c)
            term = f"{names}{v}" if mag == 1 else f"{mag}*{names}{v}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LinForm({self.render()})"


class MPoly:
    """A sparse multivariate polynomial: exponent vector -> rational coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = int(nvars)
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _as_rat(c)
                if c:
                    if len(e) != self.nvars:
                        raise ValueError("exponent vector length differs from variable count")
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> MPoly:
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> MPoly:
        return cls(nvars, {(0,) * nvars: _as_rat(c)})

    @classmethod
    def variable(cls, nvars: int, j: int) -> MPoly:
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Mapping[int, int], c=1) -> MPoly:
        e = [0] * nvars
        for v, k in exps.items():
            if k < 0:
                raise ValueError("monomial exponents must be nonnegative")
            e[v] = k
        return cls(nvars, {tuple(e): _as_rat(c)})

    @classmethod
    def product(cls, nvars: int, factors: Iterable[LinForm | MPoly]) -> MPoly:
        out = cls.const(nvars, 1)
        for f in factors:
            out = out * (f.to_mpoly(nvars) if isinstance(f, LinForm) else f)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def _check(self, other: MPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different variable contexts")

    def __add__(self, other: MPoly) -> MPoly:
        self._check(other)
        d = dict(self.terms)
        for e, c in other.terms.items():
            d[e] = d.get(e, Fraction(0)) + c
        return MPoly(self.nvars, d)

    def __sub__(self, other: MPoly) -> MPoly:
        return self + (-other)

    def __neg__(self) -> MPoly:
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> MPoly:
        if not isinstance(other, MPoly):
            s = _as_rat(other)
            return MPoly(self.nvars, {e: c * s for e, c in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        d: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = d.get(e)
                d[e] = ca * cb if v is None else v + ca * cb
        return MPoly(self.nvars, d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MPoly:
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def variables(self) -> frozenset[int]:
        used = set()
        for e in self.terms:
            used.update(v for v, k in enumerate(e) if k)
        return frozenset(used)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common total degree, or None when the terms mix degrees."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_component(self, k: int) -> MPoly:
        return MPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def derivative(self, var: int) -> MPoly:
        d = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                e2 = list(e)
                e2[var] = k - 1
                key = tuple(e2)
                d[key] = d.get(key, Fraction(0)) + c * k
        return MPoly(self.nvars, d)

    def subst_linear(self, var: int, point: LinForm) -> MPoly:
        """Replace ``z_var`` by the linear form ``point`` (which must not involve it)."""
        if var in point.support:
            raise ValueError("substitution point must not involve the substituted variable")
        by_exp: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[var]
            e2 = list(e)
            e2[var] = 0
            by_exp.setdefault(k, {})[tuple(e2)] = c
        point_poly = point.to_mpoly(self.nvars)
        out = MPoly.zero(self.nvars)
        power = MPoly.const(self.nvars, 1)
        for k in range(max(by_exp, default=0) + 1):
            if k:
                power = power * point_poly
            part = by_exp.get(k)
            if part:
                out = out + MPoly(self.nvars, part) * power
        return out

    def divide_linear(self, form: LinForm) -> MPoly | None:
        """Exact quotient ``self / form``, or None when a remainder is left.

        Synthetic division against the pivot variable of ``form``: writing
        ``form = c*z_p + t`` and ``self = sum_k P_k z_p^k``, the quotient
        coefficients satisfy ``Q_{k-1} = (P_k - t*Q_k)/c`` from the top down,
        and the division is exact iff ``P_0 - t*Q_0 = 0``.
        """
        if form.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero():
            return self
        pivot = min(form.support)
        c = form.coeff(pivot)
        t = LinForm({v: w for v, w in form.coeffs.items() if v != pivot})
        slices: dict[int, dict] = {}
        top = 0
        for e, coeff in self.terms.items():
            k = e[pivot]
            top = max(top, k)
            e2 = list(e)
            e2[pivot] = 0
            slices.setdefault(k, {})[tuple(e2)] = coeff
        if top == 0:
            return None
        t_poly = t.to_mpoly(self.nvars)
        zp = MPoly.variable(self.nvars, pivot)
        q_k = MPoly.zero(self.nvars)
        quotient = MPoly.zero(self.nvars)
        for k in range(top, 0, -1):
            p_k = MPoly(self.nvars, slices.get(k, {}))
            q_km1 = (p_k - t_poly * q_k) * (Fraction(1) / c)
            quotient = quotient + q_km1 * zp ** (k - 1)
            q_k = q_km1
        p_0 = MPoly(self.nvars, slices.get(0, {}))
        if not (p_0 - t_poly * q_k).is_zero():
            return None
        return quotient

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        if self.is_zero():
            return Fraction(1)
        den = lcm(*(c.denominator for c in self.terms.values()))
        num = gcd(*(abs((c * den).numerator) for c in self.terms.values()))
        return Fraction(num, den)

    def evaluate(self, values: list[Fraction]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for j, k in enumerate(e):
                if k:
                    v *= values[j] ** k
            total += v
        return total

    def render(self, names: str = "z") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{names}{j}" if k == 1 else f"{names}{j}^{k}" for j, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                term = str(mag)
            elif mag == 1:
                term = mono
            else:
                term = f"{mag}*{mono}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self.render()})"


@dataclass(frozen=True)
class TaggedFactor:
    """A denominator factor ``form ** multiplicity``.

    ``allowed`` is the set of variables whose contour encloses the zero locus
    of ``form``; the residue engine only visits poles through allowed tags,
    while local pole orders always count every vanishing factor.
    """

    form: LinForm
    multiplicity: int
    allowed: frozenset[int]

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if self.form.is_zero():
            raise ValueError("denominator factor must not be the zero form")
        if not frozenset(self.allowed) <= self.form.support:
            raise ValueError("allowed set must lie inside the support of the form")
        object.__setattr__(self, "allowed", frozenset(self.allowed))


class FactoredRat:
    """Rational function ``scalar * num / prod(form_i ** m_i)`` in factored shape.

    The constructor canonicalizes each denominator form (absorbing the
    extracted rational scale into ``scalar``), merges proportional factors by
    adding multiplicities and taking the union of their allowed sets, and
    extracts the content of the numerator.  ``num = 0`` collapses the whole
    object to the zero function.
    """

    __slots__ = ("scalar", "num", "den")

    def __init__(self, scalar, num: MPoly, den: Iterable = ()):
        scalar = _as_rat(scalar)
        merged: dict[tuple, list] = {}
        for fac in den:
            if isinstance(fac, TaggedFactor):
                form, mult, allowed = fac.form, fac.multiplicity, fac.allowed
            else:
                form, mult, allowed = fac
            scale, canon = form.canonicalized()
            scalar /= scale ** mult
            key = canon.key()
            entry = merged.get(key)
            if entry is None:
                merged[key] = [canon, mult, frozenset(allowed)]
            else:
                entry[1] += mult
                entry[2] = entry[2] | frozenset(allowed)
        if num.is_zero() or scalar == 0:
            self.scalar = Fraction(0)
            self.num = MPoly.zero(num.nvars)
            self.den = ()
            return
        c = num.content()
        if num.terms[max(num.terms)] < 0:
            c = -c
        if c != 1:
            scalar *= c
            num = num * (Fraction(1) / c)
        self.scalar = scalar
        self.num = num
        self.den = tuple(
            TaggedFactor(form, mult, allowed)
            for _, (form, mult, allowed) in sorted(merged.items())
        )

    def is_zero(self) -> bool:
        return self.scalar == 0

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def den_degree(self) -> int:
        return sum(f.multiplicity for f in self.den)

    def variables(self) -> frozenset[int]:
        used = set(self.num.variables())
        for f in self.den:
            used |= f.form.support
        return frozenset(used)

    def scale(self, s) -> FactoredRat:
        return FactoredRat(self.scalar * _as_rat(s), self.num, self.den)

    def derivative(self, var: int) -> FactoredRat:
        """Exact partial derivative.

        Uses ``d/dz (N * prod f_i^{-m_i}) = (N' - N * sum m_i f_i'/f_i) * prod f_i^{-m_i}``
        with one combined numerator over ``prod f_i^{m_i+1}``; factors not
        involving ``var`` are left untouched.
        """
        involved = [f for f in self.den if var in f.form.support]
        others = [f for f in self.den if var not in f.form.support]
        n_prime = self.num.derivative(var)
        if not involved:
            return FactoredRat(self.scalar, n_prime, others)
        nvars = self.num.nvars
        total = n_prime * MPoly.product(nvars, (f.form for f in involved))
        for i, f in enumerate(involved):
            rest = MPoly.product(nvars, (g.form for j, g in enumerate(involved) if j != i))
            total = total - (f.form.coeff(var) * f.multiplicity) * (self.num * rest)
        new_den = others + [TaggedFactor(f.form, f.multiplicity + 1, f.allowed) for f in involved]
        return FactoredRat(self.scalar, total, new_den)

    def reduce(self) -> FactoredRat:
        """Cancel denominator factors that divide the numerator exactly.

        Value-preserving and idempotent; cancellation is an optimization for
        the residue engine, never required for correctness.
        """
        if self.is_zero():
            return self
        num = self.num
        new_den = []
        for f in self.den:
            mult = f.multiplicity
            while mult > 0:
                q = num.divide_linear(f.form)
                if q is None:
                    break
                num = q
                mult -= 1
            if mult:
                new_den.append(TaggedFactor(f.form, mult, f.allowed))
        return FactoredRat(self.scalar, num, new_den)

    def subst(self, var: int, point: LinForm) -> FactoredRat:
        """Substitute ``z_var = point``; no denominator factor may vanish there."""
        num = self.num.subst_linear(var, point)
        den = []
        for f in self.den:
            form = f.form.subst(var, point)
            if form.is_zero():
                raise ZeroDivisionError("substitution hits a denominator zero locus")
            allowed = (f.allowed - {var}) & form.support
            den.append((form, f.multiplicity, allowed))
        return FactoredRat(self.scalar, num, den)

    def evaluate(self, values: list[Fraction]) -> Fraction:
        v = self.scalar * self.num.evaluate(values)
        for f in self.den:
            fv = f.form.evaluate(values)
            if fv == 0:
                raise ZeroDivisionError("evaluation point lies on a pole")
            v /= fv ** f.multiplicity
        return v

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FactoredRat)
            and self.scalar == other.scalar
            and self.num == other.num
            and self.den == other.den
        )

    __hash__ = None

    def render(self, names: str = "z") -> str:
        if self.is_zero():
            return "0"
        parts = [str(self.scalar), f"({self.num.render(names)})"]
        for f in self.den:
            parts.append(f"/ ({f.form.render(names)})^{f.multiplicity}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"FactoredRat({self.render()})"


def linform(*pairs: tuple[int, int | Fraction]) -> LinForm:
    """Convenience builder: ``linform((0, 2), (1, -1))`` is ``2*z0 - z1``."""
    return LinForm({v: _as_rat(c) for v, c in pairs})
