"""Toric data of the degree-d two-pointed quasi-map moduli of P(1,1,1,3).

The fan lives in dimension ``6d+2`` and has ``7d+3`` rays: three families
``v_{0,j}, v_{1,j}, v_{2,j}`` (one per coordinate block of the target), the
``3d+1`` rays ``v_{3,j}`` for the weight-3 coordinate, and the ``d-1``
compactifying rays ``u_k``.  Completeness and simpliciality reduce to finite
linear algebra: the ray relations checked by :func:`relation_check`, the
positivity of every linearity-region determinant of the gluing map
(:func:`orientation_enumeration`, with the corner determinants
:func:`det_Bk`), and the sampled injectivity of its recession function
(:func:`eval_recession`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exact import LinForm, MPoly

P_VECTORS = ((-1, -1), (1, 0), (0, 1))


def _v_label(i: int, j: int) -> str:
    return f"v{i}_{j}"


def _u_label(k: int) -> str:
    return f"u{k}"


@dataclass(frozen=True)
class FanData:
    """Ray matrix and primitive collections of the degree-d fan."""

    d: int
    labels: tuple[str, ...]
    rays: dict[str, tuple[int, ...]]
    primitive_collections: tuple[tuple[str, ...], ...]

    @property
    def dimension(self) -> int:
        return 6 * self.d + 2

    @property
    def ray_count(self) -> int:
        return len(self.labels)

    def ray(self, label: str) -> tuple[int, ...]:
        return self.rays[label]


def build_fan(d: int) -> FanData:
    """Assemble the rays and primitive collections for degree ``d >= 1``.

    Coordinates: ``2(d+1)`` rows of pair blocks, then ``3d+1`` rows for the
    weight-3 block, then ``d-1`` rows for the compactifying block.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    dim = 6 * d + 2
    pair_rows = 2 * (d + 1)
    mid_rows = 3 * d + 1
    labels: list[str] = []
    rays: dict[str, tuple[int, ...]] = {}

    def w_entry(row: int, j: int) -> int:
        return max(0, 3 - abs(row - 3 * j))

    for i in range(3):
        for j in range(d + 1):
            col = [0] * dim
            col[2 * j] = P_VECTORS[i][0]
            col[2 * j + 1] = P_VECTORS[i][1]
            if i == 0:
                for r in range(mid_rows):
                    col[pair_rows + r] = -w_entry(r, j)
                # v'_j = -e_{j-1} + 2 e_j - e_{j+1} in the (d-1)-block, 1-indexed basis
                for basis, coeff in ((j - 1, -1), (j, 2), (j + 1, -1)):
                    if 1 <= basis <= d - 1:
                        col[pair_rows + mid_rows + basis - 1] = coeff
            labels.append(_v_label(i, j))
            rays[_v_label(i, j)] = tuple(col)
    for j in range(3 * d + 1):
        col = [0] * dim
        col[pair_rows + j] = 1
        labels.append(_v_label(3, j))
        rays[_v_label(3, j)] = tuple(col)
    for k in range(1, d):
        col = [0] * dim
        col[pair_rows + mid_rows + k - 1] = -1
        labels.append(_u_label(k))
        rays[_u_label(k)] = tuple(col)

    collections = [
        tuple(_v_label(i, 0) for i in range(3)) + (_v_label(3, 0), _v_label(3, 1))
    ]
    for i in range(1, d):
        collections.append(
            tuple(_v_label(t, i) for t in range(3))
            + (_v_label(3, 3 * i - 1), _v_label(3, 3 * i), _v_label(3, 3 * i + 1), _u_label(i))
        )
    collections.append(
        tuple(_v_label(i, d) for i in range(3)) + (_v_label(3, 3 * d - 1), _v_label(3, 3 * d))
    )
    return FanData(d, tuple(labels), rays, tuple(collections))


def _relation_coefficients(d: int) -> list[dict[str, int]]:
    """The d+1 integer relations among the rays (out-of-range u terms drop)."""
    relations = []
    rel0 = {_v_label(0, 0): 1, _v_label(1, 0): 1, _v_label(2, 0): 1,
            _v_label(3, 0): 3, _v_label(3, 1): 2, _v_label(3, 2): 1}
    if 1 <= d - 1:
        rel0[_u_label(1)] = -1
    relations.append(rel0)
    for i in range(1, d):
        rel = {_v_label(0, i): 1, _v_label(1, i): 1, _v_label(2, i): 1,
               _v_label(3, 3 * i - 2): 1, _v_label(3, 3 * i - 1): 2, _v_label(3, 3 * i): 3,
               _v_label(3, 3 * i + 1): 2, _v_label(3, 3 * i + 2): 1}
        for k, c in ((i - 1, -1), (i, 2), (i + 1, -1)):
            if 1 <= k <= d - 1:
                rel[_u_label(k)] = rel.get(_u_label(k), 0) + c
        relations.append(rel)
    reld = {_v_label(0, d): 1, _v_label(1, d): 1, _v_label(2, d): 1,
            _v_label(3, 3 * d - 2): 1, _v_label(3, 3 * d - 1): 2, _v_label(3, 3 * d): 3}
    if 1 <= d - 1:
        reld[_u_label(d - 1)] = -1
    relations.append(reld)
    return relations


def relation_defects(fan: FanData) -> list[int]:
    """Indices of ray relations that fail as exact integer vector identities."""
    dim = fan.dimension
    bad = []
    for idx, rel in enumerate(_relation_coefficients(fan.d)):
        total = [0] * dim
        for label, coeff in rel.items():
            col = fan.rays[label]
            for r in range(dim):
                total[r] += coeff * col[r]
        if any(total):
            bad.append(idx)
    return bad


def relation_check(fan: FanData) -> bool:
    """True iff all d+1 ray relations hold exactly."""
    return not relation_defects(fan)


def max_cone_count(d: int) -> int:
    """Number of maximal simplicial cones: one omitted ray per collection."""
    return 25 * 7 ** (d - 1)


class DivisorClasses:
    """Rewrite table sending every ray's divisor class into the H basis.

    ``H_j`` is the class shared by ``v_{0,j}, v_{1,j}, v_{2,j}``; the weight-3
    and compactifying classes rewrite as ``3H_j``, ``2H_j + H_{j+1}``,
    ``H_j + 2H_{j+1}`` and ``-H_{k-1} + 2H_k - H_{k+1}``.
    """

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("degree must be >= 1")
        self.d = d
        table: dict[str, LinForm] = {}
        for i in range(3):
            for j in range(d + 1):
                table[_v_label(i, j)] = LinForm.variable(j)
        for m in range(3 * d + 1):
            j, r = divmod(m, 3)
            if r == 0:
                table[_v_label(3, m)] = LinForm({j: Fraction(3)})
            elif r == 1:
                table[_v_label(3, m)] = LinForm({j: Fraction(2), j + 1: Fraction(1)})
            else:
                table[_v_label(3, m)] = LinForm({j: Fraction(1), j + 1: Fraction(2)})
        for k in range(1, d):
            table[_u_label(k)] = LinForm({k - 1: Fraction(-1), k: Fraction(2), k + 1: Fraction(-1)})
        self.table = table

    def rewrite(self, label: str) -> LinForm:
        return self.table[label]

    def collection_product(self, collection: tuple[str, ...], nvars: int) -> MPoly:
        return MPoly.product(nvars, (self.table[label] for label in collection))


def _wall(i: int) -> LinForm:
    return LinForm({i - 1: Fraction(-1), i: Fraction(2), i + 1: Fraction(-1)})


def sr_ideal_factors(d: int) -> list[list[tuple[LinForm, int]]]:
    """The d+1 ideal generators as (linear form, multiplicity) factor lists."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    gens: list[list[tuple[LinForm, int]]] = []
    gens.append([(LinForm.variable(0), 4), (LinForm({0: Fraction(2), 1: Fraction(1)}), 1)])
    for i in range(1, d):
        gens.append([
            (LinForm.variable(i), 4),
            (LinForm({i - 1: Fraction(1), i: Fraction(2)}), 1),
            (LinForm({i: Fraction(2), i + 1: Fraction(1)}), 1),
            (_wall(i), 1),
        ])
    gens.append([(LinForm.variable(d), 4), (LinForm({d - 1: Fraction(1), d: Fraction(2)}), 1)])
    return gens


def sr_ideal(d: int) -> list[MPoly]:
    """Expanded generators of the intersection-ring ideal in H_0..H_d."""
    nvars = d + 1
    out = []
    for factors in sr_ideal_factors(d):
        p = MPoly.const(nvars, 1)
        for form, mult in factors:
            p = p * form.to_mpoly(nvars) ** mult
        out.append(p)
    return out


def volume_form_factors(d: int) -> tuple[Fraction, list[tuple[LinForm, int]]]:
    """Scalar and factor list of the degree-(6d+2) volume class."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    factors: list[tuple[LinForm, int]] = []
    for i in range(d + 1):
        factors.append((LinForm.variable(i), 3))
    for i in range(d):
        factors.append((LinForm({i: Fraction(2), i + 1: Fraction(1)}), 1))
        factors.append((LinForm({i: Fraction(1), i + 1: Fraction(2)}), 1))
    for k in range(1, d):
        factors.append((_wall(k), 1))
    return Fraction(3 ** (d + 1)), factors


def volume_form(d: int) -> MPoly:
    """The class dual to a smooth point, ``3^{d+1} * prod H_i^3 * ...`` expanded."""
    scalar, factors = volume_form_factors(d)
    nvars = d + 1
    p = MPoly.const(nvars, scalar)
    for form, mult in factors:
        p = p * form.to_mpoly(nvars) ** mult
    return p


def _int_det(rows: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_Bk(k: int) -> int:
    """Determinant of the (k+1)x(k+1) corner matrix; equals ``9k - 6``.

    First row ``(2, 1, 0, ...)``, tridiagonal ``(-1, 2, -1)`` interior, last
    row ``(..., 1, 2)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = k + 1
    rows = []
    for r in range(n):
        row = [0] * n
        if r == 0:
            row[0], row[1] = 2, 1
        elif r == n - 1:
            row[n - 2], row[n - 1] = 1, 2
        else:
            row[r - 1], row[r], row[r + 1] = -1, 2, -1
        rows.append(row)
    return _int_det(rows)


def _row_choices(d: int) -> list[list[tuple[int, ...]]]:
    def e(*pairs):
        row = [0] * (d + 1)
        for idx, c in pairs:
            row[idx] += c
        return tuple(row)

    choices = [[e((0, 1)), e((0, 2), (1, 1))]]
    for i in range(1, d):
        choices.append([
            e((i, 1)),
            e((i - 1, 1), (i, 2)),
            e((i, 2), (i + 1, 1)),
            e((i - 1, -1), (i, 2), (i + 1, -1)),
        ])
    choices.append([e((d, 1)), e((d - 1, 1), (d, 2))])
    return choices


@dataclass(frozen=True)
class OrientationReport:
    """Outcome of enumerating every linearity region of the gluing map."""

    d: int
    region_count: int
    min_det: int
    violations: tuple[tuple[int, ...], ...]

    @property
    def all_positive(self) -> bool:
        return not self.violations and self.min_det > 0


def orientation_enumeration(d: int) -> OrientationReport:
    """Check ``det > 0`` on every linearity region of the piecewise map.

    Row 0 selects its gradient from two options, middle rows from four, row d
    from two, giving ``4 * 4^(d-1)`` regions in total; any non-positive
    determinant is reported together with its selection pattern.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    choices = _row_choices(d)
    count = 0
    min_det = None
    violations = []
    for selection in product(*(range(len(c)) for c in choices)):
        rows = [list(choices[r][s]) for r, s in enumerate(selection)]
        det = _int_det(rows)
        count += 1
        if min_det is None or det < min_det:
            min_det = det
        if det <= 0:
            violations.append(selection)
    return OrientationReport(d, count, min_det, tuple(violations))


def eval_recession(d: int, alpha: list[Fraction]) -> list[Fraction]:
    """Componentwise min-expressions of the recession map on R^{d+1}.

    Positively homogeneous: ``F(t*alpha) = t*F(alpha)`` for ``t >= 0``; its
    injectivity (sampled elsewhere) is what makes the fan complete.
    """
    if len(alpha) != d + 1:
        raise ValueError("alpha must have length d+1")
    a = [Fraction(x) for x in alpha]
    out = [min(a[0], 2 * a[0] + a[1])]
    for i in range(1, d):
        out.append(min(a[i], a[i - 1] + 2 * a[i], 2 * a[i] + a[i + 1],
                       -a[i - 1] + 2 * a[i] - a[i + 1]))
    out.append(min(a[d], a[d - 1] + 2 * a[d]))
    return out
