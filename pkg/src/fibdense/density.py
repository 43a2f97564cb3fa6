"""Rational-point production on elliptic fibrations.

The pipeline: enumerate rational points of a multisection up to a parameter
height bound, certify that the class-map image tau(p) has infinite order on
its fiber, then translate p by multiples of tau(p) to flood the fiber with
verified rational points. Reports aggregate per-fiber outcomes and stay
byte-stable across runs and thread counts.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .elliptic import (
    INFINITY,
    InfiniteOrder,
    InfinityBranch,
    Point,
    QuarticModel,
    ec_add,
    ec_mul,
    naive_height,
    quartic_to_weierstrass,
    torsion_certify,
)
from .errors import (
    DomainError,
    EmptyFamily,
    MapUndefined,
    NoGeneratorSupplied,
    PoleAtParameter,
    SingularFiberSkip,
    TraceFieldTooLarge,
    UnsupportedRepresentation,
)
from .exactmath import enumerate_rationals, rat_to_string
from .fibration import (
    ConstantX,
    FibrationModel,
    GraphOnQuartic,
    Parametrized,
    SingularFiber,
    SplitList,
    ZeroSection,
    graph_cover_normalized,
    graph_fiber_chart,
    specialize,
    tau_map,
)

Rat = Fraction


@dataclass(frozen=True)
class NonTorsion:
    pass


@dataclass(frozen=True)
class Torsion:
    m: int


@dataclass(frozen=True)
class Skipped:
    reason: str


@dataclass(frozen=True)
class CertificationResult:
    b: Rat
    base: Point
    tau: Point | None
    verdict: NonTorsion | Torsion | Skipped


@dataclass(frozen=True)
class FiberOutcome:
    b: Rat
    result: CertificationResult
    points: tuple  # of (k, Point), k the translate index (0 = untranslated)


@dataclass(frozen=True)
class DensityReport:
    fibers_attempted: int
    fibers_certified: int
    points_emitted: int
    max_height_seen: int
    per_fiber: tuple  # of FiberOutcome, sorted by fiber parameter


@dataclass(frozen=True)
class Exhausted:
    reports: tuple


def _eval_or_none(fn, value):
    den = fn.den(value)
    if not den:
        return None
    return fn.num(value) / den


def enumerate_multisection_points(model: FibrationModel, m, height_bound: int):
    """(fiber parameter, point) pairs for every rational point of the
    multisection with parameter height up to the bound, in enumeration order."""
    if height_bound < 0:
        raise UnsupportedRepresentation("height bound must be nonnegative")

    out: list[tuple[Rat, Point]] = []

    if isinstance(m, ZeroSection):
        for b in enumerate_rationals(height_bound):
            out.append((b, INFINITY))
        return out

    if isinstance(m, ConstantX):
        c = m.c
        h = model.a * c + model.b + c**3
        n, d = h.num, h.den
        if max(n.degree, d.degree) != 1:
            raise UnsupportedRepresentation(
                "constant-x enumeration needs a degree-1 fiber-parameter equation"
            )
        n0, n1 = n.coefficient(0), n.coefficient(1)
        d0, d1 = d.coefficient(0), d.coefficient(1)
        for y in enumerate_rationals(height_bound):
            v = y * y
            # solve n(t) - v d(t) = 0
            lead = n1 - v * d1
            if lead == 0:
                continue
            t = (v * d0 - n0) / lead
            out.append((t, Point(c, y)))
        return out

    if isinstance(m, Parametrized):
        for s in enumerate_rationals(height_bound):
            if m.t.den(s) == 0:
                continue
            b = m.t(s)
            xv = _eval_or_none(m.x, s)
            yv = _eval_or_none(m.y, s)
            pt = INFINITY if xv is None or yv is None else Point(xv, yv)
            out.append((b, pt))
        return out

    if isinstance(m, SplitList):
        for b in enumerate_rationals(height_bound):
            for x_fn, y_fn in m.sections:
                xv = _eval_or_none(x_fn, b)
                yv = _eval_or_none(y_fn, b)
                pt = INFINITY if xv is None or yv is None else Point(xv, yv)
                out.append((b, pt))
        return out

    if isinstance(m, GraphOnQuartic):
        if m.generator is None:
            raise NoGeneratorSupplied(
                "enumerating a graph multisection needs a generator on its covering curve"
            )
        q, r = graph_cover_normalized(m)
        if q.degree != 4:
            raise UnsupportedRepresentation(
                "covering curve enumeration needs a degree-4 squarefree cover"
            )
        t0, w0 = m.generator
        if w0 * w0 != q(t0):
            raise DomainError(f"generator ({t0}, {w0}) is not on the covering curve")
        cover = QuarticModel(tuple(q.coefficient(i) for i in range(5)), InfinityBranch(1))
        curve, fwd, inv = quartic_to_weierstrass(cover)
        g = fwd(t0, w0)
        if g.is_infinity:
            raise UnsupportedRepresentation("generator maps to the group origin")
        for k in range(1, height_bound + 1):
            for signed in (k, -k):
                pk = ec_mul(curve, signed, g)
                if pk.is_infinity:
                    continue
                try:
                    tk, wk = inv(pk)
                except MapUndefined:
                    continue
                b = tk
                w_surface = wk * r(tk)
                _fiber, chart = graph_fiber_chart(m, b)
                out.append((b, chart(m.p(b), w_surface)))
        return out

    raise UnsupportedRepresentation(f"cannot enumerate points of {m!r}")


def certify_and_translate(model, m, b, p: Point, k_max: int, torsion_bound=None):
    """Certify tau(p) non-torsion and emit the translates p + k tau(p).

    Returns (CertificationResult, points); the list is empty unless the
    verdict is NonTorsion, in which case it holds k_max + 1 translates
    indexed from k = 0 (the base point itself).
    """
    try:
        fiber = specialize(model, b)
    except PoleAtParameter:
        return CertificationResult(b, p, None, Skipped("pole")), []
    if isinstance(fiber, SingularFiber):
        return CertificationResult(b, p, None, Skipped("singular")), []
    try:
        q = tau_map(model, m, p, b)
    except TraceFieldTooLarge:
        return CertificationResult(b, p, None, Skipped("trace field too large")), []
    except SingularFiberSkip:
        return CertificationResult(b, p, None, Skipped("singular")), []
    cert = torsion_certify(fiber, q, bound=torsion_bound)
    if isinstance(cert, InfiniteOrder):
        points = []
        acc = p
        for _k in range(k_max + 1):
            points.append(acc)
            acc = ec_add(fiber, acc, q)
        return CertificationResult(b, p, q, NonTorsion()), points
    return CertificationResult(b, p, q, Torsion(cert.order)), []


def _fiber_work(model, m, b, base_points, k_max, torsion_bound):
    """Try each rational base point once; emit the first certified fiber's
    translates plus every enumerated base point on that fiber."""
    first_result = None
    for p in base_points:
        result, translates = certify_and_translate(model, m, b, p, k_max, torsion_bound)
        if first_result is None:
            first_result = result
        if isinstance(result.verdict, NonTorsion):
            fiber = specialize(model, b)
            emitted = []
            seen = set()
            for k, pt in enumerate(translates):
                if pt.is_infinity:
                    continue
                if not fiber.contains(pt):
                    raise DomainError(f"translate {pt} failed on-curve re-verification")
                key = (pt.x, pt.y)
                if key not in seen:
                    seen.add(key)
                    emitted.append((k, pt))
            for extra in base_points:
                if extra.is_infinity:
                    continue
                if not fiber.contains(extra):
                    raise DomainError(f"base point {extra} failed on-curve re-verification")
                key = (extra.x, extra.y)
                if key not in seen:
                    seen.add(key)
                    emitted.append((0, extra))
            return FiberOutcome(b, result, tuple(emitted))
    return FiberOutcome(b, first_result, ())


def densify(model, m, height_bound: int, k_max: int = 5, torsion_bound=None, threads: int = 1):
    """Sweep the multisection enumeration and aggregate a density report,
    deterministically sorted by fiber parameter."""
    pairs = enumerate_multisection_points(model, m, height_bound)
    fibers: dict[Rat, list[Point]] = {}
    for b, p in pairs:
        bucket = fibers.setdefault(b, [])
        if p not in bucket:
            bucket.append(p)

    items = list(fibers.items())
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(
                pool.map(
                    lambda it: _fiber_work(model, m, it[0], it[1], k_max, torsion_bound),
                    items,
                )
            )
    else:
        outcomes = [_fiber_work(model, m, b, pts, k_max, torsion_bound) for b, pts in items]

    outcomes.sort(key=lambda o: o.b)
    certified = sum(1 for o in outcomes if isinstance(o.result.verdict, NonTorsion))
    distinct = set()
    max_height = 0
    for o in outcomes:
        for _k, pt in o.points:
            distinct.add((o.b, pt.x, pt.y))
            max_height = max(max_height, naive_height(pt))
    return DensityReport(
        fibers_attempted=len(outcomes),
        fibers_certified=certified,
        points_emitted=len(distinct),
        max_height_seen=max_height,
        per_fiber=tuple(outcomes),
    )


def family_strategy(model, family, height_bound: int, k_max: int = 5, torsion_bound=None, threads: int = 1):
    """Run densify over candidate multisections in order; return the first
    member that certifies a fiber, or Exhausted with every report."""
    family = list(family)
    if not family:
        raise EmptyFamily("family strategy needs at least one multisection")
    reports = []
    for idx, m in enumerate(family):
        report = densify(model, m, height_bound, k_max, torsion_bound, threads)
        if report.fibers_certified >= 1:
            return idx, report
        reports.append(report)
    return Exhausted(tuple(reports))


# -- serialization --


def _point_json(p: Point):
    if p.is_infinity:
        return "inf"
    return [rat_to_string(p.x), rat_to_string(p.y)]


def _verdict_json(v):
    if isinstance(v, NonTorsion):
        return {"verdict": "non_torsion"}
    if isinstance(v, Torsion):
        return {"verdict": "torsion", "order": v.m}
    return {"verdict": "skipped", "reason": v.reason}


def report_to_json(report: DensityReport) -> str:
    doc = {
        "fibers_attempted": report.fibers_attempted,
        "fibers_certified": report.fibers_certified,
        "points_emitted": report.points_emitted,
        "max_height_seen": report.max_height_seen,
        "per_fiber": [
            {
                "b": rat_to_string(o.b),
                **_verdict_json(o.result.verdict),
                "base": _point_json(o.result.base),
                "tau": _point_json(o.result.tau) if o.result.tau is not None else None,
                "points": [
                    {"k": k, "x": rat_to_string(pt.x), "y": rat_to_string(pt.y)}
                    for k, pt in o.points
                ],
            }
            for o in report.per_fiber
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def report_to_csv(report: DensityReport) -> str:
    lines = ["b,x,y,k"]
    for o in report.per_fiber:
        for k, pt in o.points:
            lines.append(
                f"{rat_to_string(o.b)},{rat_to_string(pt.x)},{rat_to_string(pt.y)},{k}"
            )
    return "\n".join(lines) + "\n"
