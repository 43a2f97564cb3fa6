"""Elliptic fibrations over the t-line as Weierstrass models over Q(t).

A FibrationModel is y^2 = x^3 + a(t)x + b(t) with RatFn coefficients.
Multisections come in five shapes (zero section, constant-x, parametrized,
graph on a quartic-model fibration, split list); each fiber cuts out a
Galois-stable zero-cycle whose group-law sum (the trace) is rational, and
tau(p) = [d]p - trace is the workhorse class map.

Fiber points are only ever constructed over Q or quadratic fields. Anything
needing a larger field raises TraceFieldTooLarge instead of approximating;
ramification analysis reports higher-degree parameter factors unresolved,
with an exact all-singular divisibility certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .elliptic import (
    INFINITY,
    EllipticCurve,
    InfiniteOrder,
    InfinityBranch,
    Point,
    QuarticModel,
    ec_add,
    ec_mul,
    ec_neg,
    quartic_to_weierstrass,
    torsion_certify,
)
from .errors import (
    DomainError,
    EmptySampleSet,
    PoleAtParameter,
    SingularFiberSkip,
    TraceFieldTooLarge,
    UnsupportedRepresentation,
)
from .exactmath import (
    Poly,
    RatFn,
    is_square,
    poly_gcd,
    quadratic_field,
    rat_sqrt,
    rational_roots,
    squarefree_decompose,
    squarefree_part,
)
from .exactmath.numfield import NumField, NumFieldElement

Rat = Fraction


def _as_ratfn(x) -> RatFn:
    if isinstance(x, RatFn):
        return x
    return RatFn(x)


@dataclass(frozen=True)
class FibrationModel:
    """Generic fiber y^2 = x^3 + a(t)x + b(t) over Q(t)."""

    a: RatFn
    b: RatFn

    def __post_init__(self):
        object.__setattr__(self, "a", _as_ratfn(self.a))
        object.__setattr__(self, "b", _as_ratfn(self.b))
        disc = self.discriminant
        if disc.is_zero:
            raise DomainError("fibration has identically zero discriminant")

    @property
    def discriminant(self) -> RatFn:
        a, b = self.a, self.b
        return -16 * (4 * a * a * a + 27 * b * b)

    @property
    def c4(self) -> RatFn:
        return -48 * self.a

    @property
    def zero_section(self) -> Point:
        """The point at infinity of every fiber."""
        return INFINITY

    def singular_parameters(self) -> list[Rat]:
        """Rational parameters where the fiber is singular or undefined."""
        found = set()
        disc = self.discriminant
        for r, _ in rational_roots(disc.num):
            found.add(r)
        for fn in (self.a, self.b):
            for r, _ in rational_roots(fn.den):
                found.add(r)
        return sorted(found)


@dataclass(frozen=True)
class SingularFiber:
    b: Rat


def specialize(model: FibrationModel, b: Rat):
    """The fiber curve at t = b, or a SingularFiber marker."""
    if model.a.den(b) == 0 or model.b.den(b) == 0:
        raise PoleAtParameter(f"coefficient pole at t = {b}")
    a_val = model.a(b)
    b_val = model.b(b)
    if 4 * a_val**3 + 27 * b_val**2 == 0:
        return SingularFiber(b)
    return EllipticCurve(a_val, b_val)


def _order_at(fn: RatFn, b: Rat) -> int:
    if fn.is_zero:
        raise ZeroDivisionError("order of the zero function")
    num_mult = fn.num.root_multiplicity(b)
    den_mult = fn.den.root_multiplicity(b)
    return num_mult - den_mult


@dataclass(frozen=True)
class FiberType:
    ord_delta: int
    ord_c4: int | None  # None encodes c4 identically zero
    label: str
    irreducible: bool | None


def fiber_type(model: FibrationModel, b: Rat) -> FiberType:
    """Minimal I0/I1/II classifier; anything else is Other with
    irreducibility left undecided."""
    if model.a.den(b) == 0 or model.b.den(b) == 0:
        raise PoleAtParameter(f"coefficient pole at t = {b}")
    ord_delta = _order_at(model.discriminant, b)
    c4 = model.c4
    ord_c4 = None if c4.is_zero else _order_at(c4, b)
    if ord_delta == 0:
        return FiberType(0, ord_c4, "I0", True)
    if ord_delta == 1 and ord_c4 == 0:
        return FiberType(1, ord_c4, "I1", True)
    if ord_delta == 2 and (ord_c4 is None or ord_c4 >= 1):
        return FiberType(2, ord_c4, "II", True)
    return FiberType(ord_delta, ord_c4, "Other", None)


# -- multisections --


@dataclass(frozen=True)
class ZeroSection:
    @property
    def degree(self) -> int:
        return 1


@dataclass(frozen=True)
class ConstantX:
    c: Rat

    @property
    def degree(self) -> int:
        return 2


@dataclass(frozen=True)
class Parametrized:
    """Curve s -> (t(s), x(s), y(s)) with y^2 = x^3 + a(t)x + b(t) identically."""

    t: RatFn
    x: RatFn
    y: RatFn

    @property
    def degree(self) -> int:
        return max(self.t.num.degree, self.t.den.degree)


@dataclass(frozen=True)
class GraphOnQuartic:
    """Graph z = p(t) on a quartic-model fibration w^2 = sum_i f_i(t) z^i.

    fiber_coeffs lists (f_0, ..., f_4) with f_4 a nonzero square constant;
    sign picks the branch at infinity used for the Weierstrass conversion.
    generator optionally names a point (t0, w0) on w^2 = G(t), G = F(t, p(t)),
    used by enumeration when the covering curve is elliptic.
    """

    p: Poly
    fiber_coeffs: tuple
    sign: int = 1
    generator: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "fiber_coeffs", tuple(Poly(c) if not isinstance(c, Poly) else c for c in self.fiber_coeffs))
        if len(self.fiber_coeffs) != 5:
            raise DomainError("a quartic-model fibration takes five coefficient polynomials")
        if self.p.degree > 2:
            raise DomainError("graph sections have degree at most 2 in t")
        lead = self.fiber_coeffs[4]
        if lead.degree > 0 or lead.is_zero:
            raise DomainError("the z^4 coefficient must be a nonzero constant")
        if not is_square(lead.coefficient(0)):
            raise DomainError("the z^4 coefficient must be a rational square")

    @property
    def degree(self) -> int:
        return 2


@dataclass(frozen=True)
class SplitList:
    """Finitely many sections (x_i(t), y_i(t))."""

    sections: tuple  # of (RatFn, RatFn) pairs

    def __post_init__(self):
        object.__setattr__(
            self,
            "sections",
            tuple((_as_ratfn(x), _as_ratfn(y)) for x, y in self.sections),
        )

    @property
    def degree(self) -> int:
        return len(self.sections)


Multisection = ZeroSection | ConstantX | Parametrized | GraphOnQuartic | SplitList


@dataclass(frozen=True)
class ZeroCycle:
    b: Rat
    support: tuple  # of (Point, multiplicity)

    @property
    def total_degree(self) -> int:
        return sum(m for _, m in self.support)


@dataclass(frozen=True)
class TracePoint:
    b: Rat
    value: Point


def graph_cover_poly(m: GraphOnQuartic) -> Poly:
    """G(t) = F(t, p(t)): the polynomial whose square roots give the fiber
    points of the graph multisection."""
    total = Poly()
    power = Poly([Fraction(1)])
    for coeff in m.fiber_coeffs:
        total = total + coeff * power
        power = power * m.p
    return total


def graph_cover_normalized(m: GraphOnQuartic) -> tuple[Poly, Poly]:
    """Split G = q * r^2 with q squarefree (odd-multiplicity part).

    Points of the normalized covering curve w~^2 = q(t) lift to the surface
    via w = w~ * r(t)."""
    g = graph_cover_poly(m)
    q = Poly([g.lead])
    r = Poly([Fraction(1)])
    for factor, mult in squarefree_decompose(g):
        if mult % 2:
            q = q * factor
        r = r * factor ** (mult // 2)
    return q, r


def _eval_ratfn(fn: RatFn, value):
    """Evaluate over any field element; None signals a pole."""
    den = fn.den(value)
    if not den:
        return None
    return fn.num(value) / den


def _embed_point(field: NumField, p: Point) -> Point:
    if p.is_infinity:
        return INFINITY
    return Point(field.embed(p.x), field.embed(p.y))


def _embed_curve(field: NumField, curve: EllipticCurve) -> EllipticCurve:
    return EllipticCurve(field.embed(curve.a), field.embed(curve.b))


def _rationalize_point(p: Point) -> Point:
    if p.is_infinity:
        return INFINITY
    x, y = p.x, p.y
    if isinstance(x, NumFieldElement):
        if not (x.is_rational and y.is_rational):
            raise DomainError(f"expected a rational point, got {p}")
        return Point(x.as_fraction(), y.as_fraction())
    return p


def _pair_on_vertical(curve: EllipticCurve, x_val: Rat, b: Rat) -> list[tuple[Point, int]]:
    """Fiber points with a fixed rational x-coordinate, over Q or Q(sqrt)."""
    rhs = x_val**3 + curve.a * x_val + curve.b
    if rhs == 0:
        return [(Point(x_val, Fraction(0)), 2)]
    if is_square(rhs):
        w = rat_sqrt(rhs)
        return [(Point(x_val, w), 1), (Point(x_val, -w), 1)]
    K = NumField(Poly([-rhs, Fraction(0), Fraction(1)]), "w")
    w = K.gen
    return [
        (Point(K.embed(x_val), w), 1),
        (Point(K.embed(x_val), -w), 1),
    ]


def graph_fiber_chart(m: GraphOnQuartic, b: Rat, field: NumField | None = None):
    """Per-fiber Weierstrass conversion of w^2 = F(b, z); returns (curve, fwd)."""
    coeffs = tuple(c(b) for c in m.fiber_coeffs)
    if field is not None:
        coeffs = tuple(field.embed(c) for c in coeffs)
    model = QuarticModel(coeffs, InfinityBranch(m.sign))
    curve, fwd, _inv = quartic_to_weierstrass(model)
    return curve, fwd


def _graph_cycle(model: FibrationModel, m: GraphOnQuartic, b: Rat, curve: EllipticCurve):
    z0 = m.p(b)
    g_val = graph_cover_poly(m)(b)
    if g_val == 0:
        fiber_curve, fwd = graph_fiber_chart(m, b)
        if fiber_curve != curve:
            raise DomainError("graph multisection is attached to a different fibration")
        return [(fwd(z0, Fraction(0)), 2)]
    if is_square(g_val):
        w0 = rat_sqrt(g_val)
        fiber_curve, fwd = graph_fiber_chart(m, b)
        if fiber_curve != curve:
            raise DomainError("graph multisection is attached to a different fibration")
        return [(fwd(z0, w0), 1), (fwd(z0, -w0), 1)]
    K = NumField(Poly([-g_val, Fraction(0), Fraction(1)]), "w")
    fiber_curve, fwd = graph_fiber_chart(m, b, field=K)
    if fiber_curve != _embed_curve(K, curve):
        raise DomainError("graph multisection is attached to a different fibration")
    w0 = K.gen
    return [
        (fwd(K.embed(z0), w0), 1),
        (fwd(K.embed(z0), -w0), 1),
    ]


def _ratfn_value_at_infinity(fn: RatFn):
    """Limit at s = infinity: a Fraction, or None when the limit is a pole."""
    n, d = fn.num.degree, fn.den.degree
    if fn.is_zero:
        return Fraction(0)
    if n > d:
        return None
    if n < d:
        return Fraction(0)
    return fn.num.lead / fn.den.lead


def _parametrized_cycle(m: Parametrized, b: Rat, curve: EllipticCurve):
    d = m.degree
    solver = m.t.num - b * m.t.den
    support: list[tuple[Point, int]] = []

    drop = d - solver.degree
    if drop > 0:
        # the missing preimages sit at s = infinity
        lx = _ratfn_value_at_infinity(m.x)
        ly = _ratfn_value_at_infinity(m.y)
        pt = INFINITY if lx is None or ly is None else Point(lx, ly)
        support.append((pt, drop))

    remaining = solver
    for s0, mult in rational_roots(solver):
        xv = _eval_ratfn(m.x, s0)
        yv = _eval_ratfn(m.y, s0)
        pt = INFINITY if xv is None or yv is None else Point(xv, yv)
        support.append((pt, mult))
        for _ in range(mult):
            remaining = remaining.exact_div(Poly([-s0, Fraction(1)]))

    if remaining.degree > 0:
        for factor, mult in squarefree_decompose(remaining):
            if factor.degree == 0:
                continue
            if factor.degree != 2:
                raise TraceFieldTooLarge(
                    f"fiber points at t = {b} need a degree-{factor.degree} factor {factor}"
                )
            K, the, conj = quadratic_field(factor, "s")
            for root in (the, conj):
                xv = _eval_ratfn(m.x, root)
                yv = _eval_ratfn(m.y, root)
                if xv is None or yv is None:
                    support.append((INFINITY, mult))
                    continue
                if xv.is_rational and yv.is_rational:
                    support.append((Point(xv.as_fraction(), yv.as_fraction()), mult))
                else:
                    support.append((Point(xv, yv), mult))
    return support


def _split_cycle(m: SplitList, b: Rat):
    support = []
    for x_fn, y_fn in m.sections:
        xv = _eval_ratfn(x_fn, b)
        yv = _eval_ratfn(y_fn, b)
        pt = INFINITY if xv is None or yv is None else Point(xv, yv)
        support.append((pt, 1))
    return support


def _check_support(curve: EllipticCurve, support) -> None:
    fields = {}
    for pt, mult in support:
        if pt.is_infinity or isinstance(pt.x, Fraction):
            if not curve.contains(pt):
                raise DomainError(f"cycle point {pt} is off the fiber")
            continue
        K = pt.x.field
        ek = fields.setdefault(K, _embed_curve(K, curve))
        if not ek.contains(pt):
            raise DomainError(f"cycle point {pt} is off the fiber")


def _galois_stable(support) -> bool:
    quad = {}
    for pt, mult in support:
        if pt.is_infinity or isinstance(pt.x, Fraction):
            continue
        key = (pt.x.field, pt.x.coeffs, pt.y.coeffs)
        quad[key] = quad.get(key, 0) + mult
    for (K, xc, yc), mult in quad.items():
        x = NumFieldElement(K, xc)
        y = NumFieldElement(K, yc)
        cx, cy = x.conjugate(), y.conjugate()
        ckey = (K, cx.coeffs, cy.coeffs)
        if quad.get(ckey, 0) != mult:
            return False
    return True


def _sum_cycle(curve: EllipticCurve, support) -> Point:
    """Group-law sum with multiplicity; quadratic points are summed inside
    their field and the result must descend to Q."""
    total = INFINITY
    by_field: dict[NumField, list[tuple[Point, int]]] = {}
    for pt, mult in support:
        if pt.is_infinity or isinstance(pt.x, Fraction):
            total = ec_add(curve, total, ec_mul(curve, mult, pt))
        else:
            by_field.setdefault(pt.x.field, []).append((pt, mult))
    for K, pts in by_field.items():
        ek = _embed_curve(K, curve)
        acc = INFINITY
        for pt, mult in pts:
            acc = ec_add(ek, acc, ec_mul(ek, mult, pt))
        acc = _rationalize_point(acc)
        total = ec_add(curve, total, acc)
    return total


def trace_cycle(model: FibrationModel, m: Multisection, b: Rat) -> tuple[ZeroCycle, TracePoint]:
    """The fiber zero-cycle of the multisection at t = b and its group sum."""
    fiber = specialize(model, b)
    if isinstance(fiber, SingularFiber):
        raise SingularFiberSkip(f"fiber at t = {b} is singular")

    if isinstance(m, ZeroSection):
        support = [(INFINITY, 1)]
    elif isinstance(m, ConstantX):
        support = _pair_on_vertical(fiber, m.c, b)
    elif isinstance(m, Parametrized):
        support = _parametrized_cycle(m, b, fiber)
    elif isinstance(m, GraphOnQuartic):
        support = _graph_cycle(model, m, b, fiber)
    elif isinstance(m, SplitList):
        support = _split_cycle(m, b)
    else:
        raise UnsupportedRepresentation(f"unknown multisection {m!r}")

    _check_support(fiber, support)
    cycle = ZeroCycle(b, tuple(support))
    if cycle.total_degree != m.degree:
        raise DomainError(
            f"cycle at t = {b} has degree {cycle.total_degree}, expected {m.degree}"
        )
    if not _galois_stable(support):
        raise DomainError(f"cycle at t = {b} is not Galois-stable")
    trace = _rationalize_point(_sum_cycle(fiber, support))
    return cycle, TracePoint(b, trace)


def tau_map(model: FibrationModel, m: Multisection, p: Point, b: Rat) -> Point:
    """tau(p) = [d]p - trace of the fiber cycle, on the smooth fiber at b."""
    fiber = specialize(model, b)
    if isinstance(fiber, SingularFiber):
        raise SingularFiberSkip(f"fiber at t = {b} is singular")
    _cycle, trace = trace_cycle(model, m, b)
    d = m.degree
    return ec_add(fiber, ec_mul(fiber, d, p), ec_neg(trace.value))


# -- order probing --


@dataclass(frozen=True)
class Order:
    """Sample-level evidence: every pairwise cycle difference is killed by m."""

    m: int


@dataclass(frozen=True)
class NoOrderUpTo:
    """Proof: some sampled fiber has a pairwise difference not killed by any
    m below the cap (the defining property quantifies over all fibers)."""

    m_max: int


def _smallest_killer(curve: EllipticCurve, p: Point, m_max: int) -> int | None:
    if p.is_infinity:
        return 1
    acc = p
    for m in range(1, m_max + 1):
        if acc.is_infinity:
            return m
        acc = ec_add(curve, acc, p)
    return None


def order_probe(model: FibrationModel, m: Multisection, fiber_samples, m_max: int):
    """Smallest m killing all pairwise cycle differences over the samples
    (evidence), or a proof that no order <= m_max works."""
    samples = list(fiber_samples)
    if not samples:
        raise EmptySampleSet("order probe needs at least one fiber sample")
    overall = 1
    for b in samples:
        fiber = specialize(model, b)
        if isinstance(fiber, SingularFiber):
            raise SingularFiberSkip(f"fiber at t = {b} is singular")
        cycle, _trace = trace_cycle(model, m, b)
        pts = [pt for pt, _mult in cycle.support]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                diff = _difference_on_fiber(fiber, pts[i], pts[j])
                if diff is None:
                    raise TraceFieldTooLarge(
                        f"difference at t = {b} mixes incompatible fields"
                    )
                curve_for, point = diff
                killer = _smallest_killer(curve_for, point, m_max)
                if killer is None:
                    return NoOrderUpTo(m_max)
                overall = overall * killer // math.gcd(overall, killer)
    if overall > m_max:
        return NoOrderUpTo(m_max)
    return Order(overall)


def _difference_on_fiber(curve: EllipticCurve, p: Point, q: Point):
    """p - q on the fiber, lifting into a common field when needed."""

    def field_of(pt):
        if pt.is_infinity or isinstance(pt.x, Fraction):
            return None
        return pt.x.field

    fp, fq = field_of(p), field_of(q)
    if fp is None and fq is None:
        return curve, ec_add(curve, p, ec_neg(q))
    K = fp or fq
    if fp is not None and fq is not None and fp != fq:
        return None
    ek = _embed_curve(K, curve)
    pk = p if fp is not None else _embed_point(K, p)
    qk = q if fq is not None else _embed_point(K, q)
    return ek, ec_add(ek, pk, ec_neg(qk))


# -- ramification --


@dataclass(frozen=True)
class RamificationPoint:
    b: object  # Rat or NumFieldElement
    point: Point
    salient: bool


@dataclass(frozen=True)
class UnresolvedRamification:
    """A parameter factor of degree > 2; all_singular certifies that every
    root of the factor is a singular-fiber parameter."""

    factor: Poly
    all_singular: bool


@dataclass(frozen=True)
class RamificationReport:
    points: tuple
    unresolved: tuple = ()

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def _delta_nonzero_at(model: FibrationModel, b) -> bool:
    disc = model.discriminant
    den = disc.den(b)
    if not den:
        return False
    return bool(disc.num(b))


def _all_roots_singular(model: FibrationModel, factor: Poly, through=None) -> bool:
    """Every root of factor is a zero of the discriminant (exactly)."""
    disc = model.discriminant
    target = disc.num if through is None else through
    sf = squarefree_part(factor)
    g = poly_gcd(sf, squarefree_part(target))
    return g.degree == sf.degree


def _param_entries(model: FibrationModel, factor_poly: Poly, point_at):
    """Resolve rational and quadratic parameter roots into report entries."""
    entries = []
    unresolved = []
    remaining = factor_poly
    for r, mult in rational_roots(factor_poly):
        entries.append((r, mult))
        for _ in range(mult):
            remaining = remaining.exact_div(Poly([-r, Fraction(1)]))
    if remaining.degree > 0:
        for factor, mult in squarefree_decompose(remaining):
            if factor.degree == 0:
                continue
            if factor.degree == 2:
                _K, the, conj = quadratic_field(factor, "b")
                entries.append((the, mult))
                entries.append((conj, mult))
            else:
                unresolved.append(
                    UnresolvedRamification(factor.monic(), _all_roots_singular(model, factor))
                )
    points = []
    for b_val, _mult in entries:
        pt, salient = point_at(b_val)
        points.append(RamificationPoint(b_val, pt, salient))
    return points, unresolved


def ramification_points(model: FibrationModel, m: Multisection) -> RamificationReport:
    """Ramification of the multisection's projection to the t-line, resolved
    over degree <= 2 parameter fields; salient means the fiber there is smooth."""
    if isinstance(m, (ZeroSection, SplitList)):
        return RamificationReport(points=())

    if isinstance(m, ConstantX):
        c = m.c
        h = model.a * c + model.b + c**3
        if h.is_zero:
            raise DomainError("constant-x multisection lies in the singular locus")

        def point_at(b_val):
            if isinstance(b_val, Fraction):
                pt = Point(c, Fraction(0))
                return pt, _delta_nonzero_at(model, b_val)
            K = b_val.field
            pt = Point(K.embed(c), K.zero)
            disc = model.discriminant
            den = disc.den(b_val)
            salient = bool(den) and bool(disc.num(b_val))
            return pt, salient

        points, unresolved = _param_entries(model, h.num, point_at)
        return RamificationReport(tuple(points), tuple(unresolved))

    if isinstance(m, Parametrized):
        n, d = m.t.num, m.t.den
        crit = n.derivative() * d - n * d.derivative()
        if crit.is_zero:
            raise DomainError("parametrized multisection has constant t(s)")
        # exclude critical parameters that are poles of t(s)
        crit_clean = crit
        g = poly_gcd(crit, d)
        while g.degree > 0:
            crit_clean = crit_clean.exact_div(g)
            g = poly_gcd(crit_clean, d)

        disc_pullback = None
        disc = model.discriminant
        num_pull = disc.num(m.t)  # Poly evaluated at RatFn
        if isinstance(num_pull, RatFn):
            disc_pullback = num_pull.num
        else:
            disc_pullback = Poly([num_pull])

        def point_at(s_val):
            xv = _eval_ratfn(m.x, s_val)
            yv = _eval_ratfn(m.y, s_val)
            pt = INFINITY if xv is None or yv is None else Point(xv, yv)
            tv = _eval_ratfn(m.t, s_val)
            if tv is None:
                return pt, False
            if isinstance(tv, NumFieldElement) and tv.is_rational:
                tv = tv.as_fraction()
            if isinstance(tv, Fraction):
                salient = _delta_nonzero_at(model, tv)
            else:
                den = disc.den(tv)
                salient = bool(den) and bool(disc.num(tv))
            if isinstance(pt, Point) and not pt.is_infinity:
                px, py = pt.x, pt.y
                if isinstance(px, NumFieldElement) and px.is_rational and py.is_rational:
                    pt = Point(px.as_fraction(), py.as_fraction())
            return pt, salient

        # note: ramification parameters are s-values; report carries t-image
        entries = []
        unresolved = []
        remaining = crit_clean
        for s0, mult in rational_roots(crit_clean):
            entries.append(s0)
            for _ in range(mult):
                remaining = remaining.exact_div(Poly([-s0, Fraction(1)]))
        if remaining.degree > 0:
            for factor, _mult in squarefree_decompose(remaining):
                if factor.degree == 0:
                    continue
                if factor.degree == 2:
                    _K, the, conj = quadratic_field(factor, "s")
                    entries.extend([the, conj])
                else:
                    unresolved.append(
                        UnresolvedRamification(
                            factor.monic(),
                            _all_roots_singular(model, factor, through=disc_pullback),
                        )
                    )
        points = []
        for s_val in entries:
            pt, salient = point_at(s_val)
            tv = _eval_ratfn(m.t, s_val)
            if isinstance(tv, NumFieldElement) and tv.is_rational:
                tv = tv.as_fraction()
            points.append(RamificationPoint(tv, pt, salient))
        return RamificationReport(tuple(points), tuple(unresolved))

    if isinstance(m, GraphOnQuartic):
        g = graph_cover_poly(m)
        if g.is_zero:
            raise DomainError("graph multisection lies on the branch locus")
        doubled = poly_gcd(g, g.derivative())
        if doubled.degree == 0:
            return RamificationReport(points=())

        def point_at(b_val):
            if isinstance(b_val, Fraction):
                _curve, fwd = graph_fiber_chart(m, b_val)
                pt = fwd(m.p(b_val), Fraction(0))
                return pt, _delta_nonzero_at(model, b_val)
            K = b_val.field
            coeffs = tuple(c(b_val) for c in m.fiber_coeffs)
            model_k = QuarticModel(coeffs, InfinityBranch(m.sign))
            _curve, fwd, _inv = quartic_to_weierstrass(model_k)
            pt = fwd(m.p(b_val), K.zero)
            disc = model.discriminant
            den = disc.den(b_val)
            salient = bool(den) and bool(disc.num(b_val))
            return pt, salient

        points, unresolved = _param_entries(model, doubled, point_at)
        return RamificationReport(tuple(points), tuple(unresolved))

    raise UnsupportedRepresentation(f"no ramification rule for {m!r}")


# -- section differences --


@dataclass(frozen=True)
class NonTorsion:
    """Proof: some smooth specialization of s1 - s2 has infinite order."""

    witness: Rat


@dataclass(frozen=True)
class TorsionEvidence:
    order: int


def _section_point(section, b: Rat) -> Point:
    if isinstance(section, ZeroSection):
        return INFINITY
    x_fn, y_fn = section
    xv = _eval_ratfn(_as_ratfn(x_fn), b)
    yv = _eval_ratfn(_as_ratfn(y_fn), b)
    return INFINITY if xv is None or yv is None else Point(xv, yv)


def section_difference_order(model: FibrationModel, s1, s2, samples, bound: int | None = None):
    """NonTorsion proof or per-sample torsion evidence for s1 - s2."""
    samples = list(samples)
    if not samples:
        raise EmptySampleSet("section difference probe needs samples")
    orders = []
    for b in samples:
        fiber = specialize(model, b)
        if isinstance(fiber, SingularFiber):
            raise SingularFiberSkip(f"fiber at t = {b} is singular")
        p1 = _section_point(s1, b)
        p2 = _section_point(s2, b)
        diff = ec_add(fiber, p1, ec_neg(p2))
        res = torsion_certify(fiber, diff, bound=bound)
        if isinstance(res, InfiniteOrder):
            return NonTorsion(witness=b)
        orders.append(res.order)
    total = 1
    for o in orders:
        total = total * o // math.gcd(total, o)
    return TorsionEvidence(total)


# -- the chart at t = infinity --


def chart_swap(model: FibrationModel) -> tuple[FibrationModel, int]:
    """Model in the coordinate u = 1/t: a_new = u^(2e) a(1/u),
    b_new = u^(3e) b(1/u) with e the minimal even rebalancing exponent.
    The fiber over t = infinity is the new model's fiber at u = 0."""

    def at_inv(fn: RatFn) -> tuple[RatFn, int]:
        # fn(1/u) = u^(deg den - deg num) * rev(num)/rev(den)
        rn = Poly(list(reversed(fn.num.coeffs)))
        rd = Poly(list(reversed(fn.den.coeffs)))
        return RatFn(rn, rd), fn.den.degree - fn.num.degree

    u = RatFn(Poly([Fraction(0), Fraction(1)]))
    a_inv, a_shift = at_inv(model.a)
    b_inv, b_shift = at_inv(model.b)

    # reversal leaves nonzero constant terms, so the order of fn(1/u) at
    # u = 0 is exactly the degree shift
    need = 0
    if not model.a.is_zero:
        need = max(need, -((a_shift) // 2) if a_shift < 0 else 0)
    if not model.b.is_zero:
        need = max(need, -((b_shift) // 3) if b_shift < 0 else 0)
    e = need if need % 2 == 0 else need + 1

    a_new = a_inv * u ** (2 * e + a_shift) if not model.a.is_zero else RatFn(0)
    b_new = b_inv * u ** (3 * e + b_shift) if not model.b.is_zero else RatFn(0)
    return FibrationModel(a_new, b_new), e
