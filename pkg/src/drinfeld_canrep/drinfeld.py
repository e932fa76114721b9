"""The Drinfeld curve X Y^q - X^q Y - Z^(q+1) = 0 and its SL_2(F_q) action.

Points live in P^2 over GF(q) or an extension GF(q^m); the curve parameter
q is carried separately from the field of the coordinates. Vanishing
orders of the basis differentials at the points at infinity are given in
closed form and recomputed from Artin-Schreier expansions in the charts
X = 1 (s = Y/X, t = Z/X) and Y = 1 (v = X/Y, w = Z/Y).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .gfq import (
    Embedding,
    FieldElement,
    FieldSpec,
    PowerSeries,
    TooLarge,
    build_extension,
    series_solve_artin_schreier,
)
from .sl2 import GroupElement, enumerate_group, group_order

AFFINE = "affine"
INFINITY_GENERIC = "infinity-both-nonzero"
POINT_100 = "[1:0:0]"
POINT_010 = "[0:1:0]"
POINT_CLASSES = (AFFINE, INFINITY_GENERIC, POINT_100, POINT_010)

AFFINE_EXT_CAP = 1 << 8

CHART_EQUATIONS = {
    "Z": "x*y^q - x^q*y - 1",
    "X": "s^q - s - t^(q+1)",
    "Y": "v - v^q - w^(q+1)",
}


class PrecisionTooLow(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class NotOnCurve(ValueError):
    pass


def _curve_value(spec: FieldSpec, x: int, y: int, z: int, q: int) -> int:
    lhs = spec.sub(spec.mul(x, spec.pow(y, q)), spec.mul(spec.pow(x, q), y))
    return spec.sub(lhs, spec.pow(z, q + 1))


def on_curve(x: FieldElement, y: FieldElement, z: FieldElement, q: int | None = None) -> bool:
    spec = x.spec
    q = spec.q if q is None else q
    return _curve_value(spec, x.value, y.value, z.value, q) == 0


@dataclass(frozen=True)
class ProjectivePoint:
    """A curve point scaled so that its first nonzero coordinate is 1."""

    x: FieldElement
    y: FieldElement
    z: FieldElement
    q: int

    @classmethod
    def make(cls, x, y, z, q: int | None = None) -> "ProjectivePoint":
        spec = x.spec
        q = spec.q if q is None else q
        coords = [x, y, z]
        lead = next((c for c in coords if c.value), None)
        if lead is None:
            raise NotOnCurve("[0:0:0] is not a projective point")
        inv = lead.inv()
        x, y, z = (c * inv for c in coords)
        if not on_curve(x, y, z, q):
            raise NotOnCurve(f"[{x.value}:{y.value}:{z.value}] is not on the curve for q={q}")
        return cls(x, y, z, q)

    @property
    def spec(self) -> FieldSpec:
        return self.x.spec

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.x.value, self.y.value, self.z.value)

    @property
    def at_infinity(self) -> bool:
        return self.z.value == 0

    @property
    def point_class(self) -> str:
        if not self.at_infinity:
            return AFFINE
        if self.y.value == 0:
            return POINT_100
        if self.x.value == 0:
            return POINT_010
        return INFINITY_GENERIC

    def serialize(self) -> str:
        return " ".join(str(v) for v in self.key)

    def __repr__(self):
        return f"[{self.x.value}:{self.y.value}:{self.z.value}]"


def act(g: GroupElement, P: ProjectivePoint, embed: Embedding | None = None) -> ProjectivePoint:
    """[x:y:z] -> [a x + b y : c x + d y : z]."""
    if embed is None:
        a, b, c, d = g.a, g.b, g.c, g.d
    else:
        a, b, c, d = (embed(e) for e in (g.a, g.b, g.c, g.d))
    image = ProjectivePoint.make(a * P.x + b * P.y, c * P.x + d * P.y, P.z, P.q)
    if image.at_infinity != P.at_infinity:
        raise AssertionError("action moved a point across the line at infinity")
    return image


def points_at_infinity(spec: FieldSpec) -> list[ProjectivePoint]:
    """[1:y:0] for y in F_q in encoding order, then [0:1:0]."""
    pts = [ProjectivePoint.make(spec.one, spec.element(y), spec.zero) for y in range(spec.q)]
    pts.append(ProjectivePoint.make(spec.zero, spec.one, spec.zero))
    return pts


def _affine_arrays(spec: FieldSpec, m: int) -> tuple[FieldSpec, Embedding, np.ndarray, np.ndarray]:
    if spec.q**m > AFFINE_EXT_CAP:
        raise TooLarge(f"{spec.q}^{m} exceeds the affine enumeration cap {AFFINE_EXT_CAP}")
    ext, emb = build_extension(spec, m)
    q, Q = spec.q, ext.q
    powq = np.array([ext.pow(v, q) for v in range(Q)], dtype=np.int64)
    X, Y = np.meshgrid(np.arange(Q, dtype=np.int64), np.arange(Q, dtype=np.int64), indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    lhs = ext.sub_arr(ext.mul_arr(X, powq[Y]), ext.mul_arr(powq[X], Y))
    mask = lhs == 1
    return ext, emb, X[mask], Y[mask]


def affine_points_over_extension(spec: FieldSpec, m: int) -> list[ProjectivePoint]:
    """All points [x:y:1] of the affine chart with x, y in GF(q^m)."""
    ext, _, X, Y = _affine_arrays(spec, m)
    one = ext.one
    return [ProjectivePoint.make(ext.element(int(x)), ext.element(int(y)), one, spec.q) for x, y in zip(X, Y)]


@dataclass
class FreeActionReport:
    q: int
    m: int
    n_points: int
    n_group: int
    n_checks: int
    violations: list = field(default_factory=list)
    vacuous: bool = False
    scope: str = ""

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        if not self.passed:
            return "fail"
        return "vacuous" if self.vacuous else "pass"

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "points": self.n_points,
            "checks": self.n_checks,
            "violations": len(self.violations),
            "status": self.status,
            "scope": self.scope,
        }


def verify_free_action(spec: FieldSpec, m: int) -> FreeActionReport:
    """No non-identity g fixes an affine point with coordinates in GF(q^m)."""
    ext, emb, X, Y = _affine_arrays(spec, m)
    group = enumerate_group(spec)
    report = FreeActionReport(
        q=spec.q,
        m=m,
        n_points=len(X),
        n_group=len(group),
        n_checks=0,
        vacuous=len(X) == 0,
        scope=f"GF({spec.q}^{m})-rational points of the affine chart",
    )
    for g in group:
        if g.is_identity():
            continue
        a, b, c, d = (emb.map_int(v) for v in g.key)
        X2 = ext.add_arr(ext.mul_arr(a, X), ext.mul_arr(b, Y))
        Y2 = ext.add_arr(ext.mul_arr(c, X), ext.mul_arr(d, Y))
        fixed = np.flatnonzero((X2 == X) & (Y2 == Y))
        report.n_checks += len(X)
        for k in fixed:
            report.violations.append((g.key, (int(X[k]), int(Y[k]))))
    return report


@dataclass
class TransitivityReport:
    q: int
    orbit: list
    stabilizer: list
    infinity_points: list

    @property
    def orbit_size(self) -> int:
        return len(self.orbit)

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)

    @property
    def stabilizer_upper_triangular(self) -> bool:
        return all(k[2] == 0 for k in self.stabilizer)

    @property
    def passed(self) -> bool:
        q = self.q
        return (
            sorted(self.orbit) == sorted(self.infinity_points)
            and self.orbit_size == q + 1
            and self.stabilizer_order == q * (q - 1)
            and self.stabilizer_upper_triangular
            and group_order(q) % self.orbit_size == 0
        )

    def to_dict(self) -> dict:
        return {
            "orbit_size": self.orbit_size,
            "stabilizer_order": self.stabilizer_order,
            "stabilizer_upper_triangular": self.stabilizer_upper_triangular,
            "status": "pass" if self.passed else "fail",
        }


def verify_transitivity_at_infinity(spec: FieldSpec) -> TransitivityReport:
    base = ProjectivePoint.make(spec.one, spec.zero, spec.zero)
    orbit, stab = set(), []
    for g in enumerate_group(spec):
        image = act(g, base)
        orbit.add(image.key)
        if image.key == base.key:
            stab.append(g.key)
    return TransitivityReport(
        q=spec.q,
        orbit=sorted(orbit),
        stabilizer=stab,
        infinity_points=[P.key for P in points_at_infinity(spec)],
    )


# -- vanishing orders -------------------------------------------------------


def check_index(q: int, i: int, j: int) -> None:
    if i < 0 or j < 0 or i + j > q - 2:
        raise IndexOutOfRange(f"({i}, {j}) is not a differential index for q={q}")


def vanishing_order_closed_form(q: int, i: int, j: int, point_class: str) -> int:
    check_index(q, i, j)
    if point_class == AFFINE:
        return 0
    if point_class == INFINITY_GENERIC:
        return q - 2 - (i + j)
    if point_class == POINT_100:
        return q - 2 - i + j * q
    if point_class == POINT_010:
        return q - 2 - j + i * q
    raise ValueError(f"unknown point class {point_class!r}")


def default_precision(q: int) -> int:
    return q * q + q + 1


def local_expansion(spec: FieldSpec, P: ProjectivePoint, precision: int, chart: str) -> PowerSeries:
    """s(t) in chart X, or v(w) in chart Y, around the point P at infinity."""
    if chart == "X":
        if P.x.value == 0:
            raise ValueError("chart X needs x != 0")
        s0 = (P.y / P.x).value
        return series_solve_artin_schreier(spec, s0, precision, sign=1)
    if chart == "Y":
        if P.y.value == 0:
            raise ValueError("chart Y needs y != 0")
        v0 = (P.x / P.y).value
        return series_solve_artin_schreier(spec, v0, precision, sign=-1)
    raise ValueError(f"unknown chart {chart!r}")


@functools.lru_cache(maxsize=256)
def _expansion_powers(spec: FieldSpec, P: ProjectivePoint, precision: int, chart: str) -> tuple[PowerSeries, ...]:
    local = local_expansion(spec, P, precision, chart)
    powers = [PowerSeries.constant(spec, 1, precision)]
    for _ in range(spec.q - 2):
        powers.append(powers[-1] * local)
    return tuple(powers)


def vanishing_order_via_series(
    spec: FieldSpec, i: int, j: int, P: ProjectivePoint, precision: int | None = None, chart: str | None = None
) -> int:
    """Valuation of -t^(q-2-i-j) s^j (chart X) or -w^(q-2-i-j) v^i (chart Y)."""
    q = spec.q
    check_index(q, i, j)
    if not P.at_infinity:
        raise ValueError("series orders are computed only at points at infinity")
    precision = default_precision(q) if precision is None else precision
    chart = chart or ("X" if P.x.value else "Y")
    power = j if chart == "X" else i
    expr = -(_expansion_powers(spec, P, precision, chart)[power].shift(q - 2 - (i + j)))
    val = expr.valuation()
    if val is None:
        raise PrecisionTooLow(f"no nonzero coefficient below t^{precision} for ({i}, {j}) at {P}")
    return val


def canonical_degree_check(spec: FieldSpec, i: int, j: int) -> int:
    """Sum of closed-form orders of the differential over every point at infinity.

    Affine points contribute 0, so this is the degree of its divisor.
    """
    return sum(vanishing_order_closed_form(spec.q, i, j, P.point_class) for P in points_at_infinity(spec))


@dataclass
class OrderRow:
    i: int
    j: int
    orders: dict
    series_ok: bool
    total: int

    def to_dict(self) -> dict:
        return {"i": self.i, "j": self.j, **self.orders, "series_ok": self.series_ok, "total": self.total}


def order_table(spec: FieldSpec, precision: int | None = None) -> list[OrderRow]:
    """One row per differential index, degree-major then i descending."""
    q = spec.q
    pts = points_at_infinity(spec)
    rows = []
    for k in range(q - 1):
        for i in range(k, -1, -1):
            j = k - i
            orders = {c: vanishing_order_closed_form(q, i, j, c) for c in POINT_CLASSES}
            ok = True
            for P in pts:
                charts = [c for c, coord in (("X", P.x), ("Y", P.y)) if coord.value]
                for chart in charts:
                    try:
                        got = vanishing_order_via_series(spec, i, j, P, precision, chart)
                    except PrecisionTooLow:
                        ok = False
                        continue
                    if got != orders[P.point_class]:
                        ok = False
            rows.append(OrderRow(i, j, orders, ok, canonical_degree_check(spec, i, j)))
    return rows
