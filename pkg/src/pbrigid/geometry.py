"""Geometry of the weighted hypersurface X = Proj B_S in P(w_0, ..., w_n).

Most of this module is specific to surfaces (n = 3) of cotype 0, i.e. the
well-formed quasismooth case.  There Sing(X) is X meets Sing(P), and since
every three of the four weights are coprime the singular points lie on the
coordinate edges {x_j = x_l = 0}.  Along an edge {i, k} the partial
derivative in x_k does not vanish, so X is locally the graph of x_k over the
complementary coordinates (x_j, x_l) and the stabilizer mu_g, g = gcd(w_i, w_k),
acts there with weights (w_j, w_l) mod g.

Delta denotes the curve V+(x_n) cut out by the last coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import arith
from .dualgraph import Curve, IntersectionGraph, contract_all, singular_curve_notes
from .symb import CurveSingularity, Polynomial, diagonal_curve_singularity, graded_monomials, pham_brieskorn


class GeometryError(ValueError):
    pass


def _surface_tuple(S: Sequence[int]) -> tuple[int, ...]:
    S = arith.as_tuple(S)
    if len(S) != 4:
        raise GeometryError(f"surface computations need 4 exponents, got {len(S)}")
    if arith.cotype(S) != 0:
        raise GeometryError(f"{S} has cotype {arith.cotype(S)}; Proj B_S is not well-formed")
    return S


def well_formed(S: Sequence[int]) -> bool:
    return arith.cotype(S) == 0


@dataclass(frozen=True)
class SingularPoint:
    edge: tuple[int, int]
    count: int
    order: int
    type_weights: tuple[int, int]
    mult_delta: int  # 0 when the points are off Delta
    angles: tuple[Fraction, ...] = field(default=(), compare=False)

    @property
    def normalized_type(self) -> tuple[int, int]:
        """(1, q) with 1/k(q1, q2) ~ 1/k(1, q2 / q1), when q1 is a unit mod k."""
        q1, q2 = self.type_weights
        k = self.order
        if math.gcd(q1, k) != 1:
            return self.type_weights
        return (1, q2 * pow(q1, -1, k) % k)

    def label(self) -> str:
        q1, q2 = self.type_weights
        return f"1/{self.order}({q1},{q2})"

    def to_json(self) -> dict:
        return {
            "edge": list(self.edge),
            "count": self.count,
            "order": self.order,
            "type_weights": list(self.type_weights),
            "normalized_type": list(self.normalized_type),
            "mult_delta": self.mult_delta,
            "angles": [str(a) for a in self.angles],
        }


def edge_orbits(S: Sequence[int], i: int, k: int) -> list[tuple[Fraction, ...]]:
    """Points of X on the edge {i, k} (other coordinates zero), as orbits.

    In the chart x_i = 1 the points are the roots of t^a_k = -1, written as
    angles (2j+1)/(2 a_k) in turns.  The residual scaling lambda in mu_{w_i}
    acts on x_k by lambda^{w_k}, i.e. adds multiples of w_k / w_i to the angle.
    Each orbit is returned as a sorted tuple of angles.
    """
    S = arith.as_tuple(S)
    w = arith.weights(S).weights
    ak = S[k]
    roots = {Fraction(2 * j + 1, 2 * ak) for j in range(ak)}
    step = Fraction(w[k], w[i])
    orbits = []
    seen: set[Fraction] = set()
    for r in sorted(roots):
        if r in seen:
            continue
        orbit = {(r + s * step) % 1 for s in range(w[i])}
        assert orbit <= roots, "scaling action must permute the roots"
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits


def singular_points(S: Sequence[int]) -> list[SingularPoint]:
    S = _surface_tuple(S)
    w = arith.weights(S).weights
    n = len(S) - 1
    out = []
    for i in range(len(S)):
        for k in range(i + 1, len(S)):
            g = math.gcd(w[i], w[k])
            if g == 1:
                continue
            j, l = (m for m in range(len(S)) if m not in (i, k))
            orbits = edge_orbits(S, i, k)
            out.append(SingularPoint(
                edge=(i, k),
                count=len(orbits),
                order=g,
                type_weights=(w[j] % g, w[l] % g),
                mult_delta=0 if n in (i, k) else 1,
                angles=tuple(o[0] for o in orbits),
            ))
    return out


def canonical_square(S: Sequence[int]) -> Fraction:
    S = _surface_tuple(S)
    wv = arith.weights(S)
    alpha = wv.total_degree - sum(wv.weights)
    return Fraction(alpha * alpha * wv.total_degree, math.prod(wv.weights))


def hyperplane_square(S: Sequence[int]) -> Fraction:
    """H^2 for the class H of O_X(1): L / (w_0 w_1 w_2 w_3)."""
    S = _surface_tuple(S)
    wv = arith.weights(S)
    return Fraction(wv.total_degree, math.prod(wv.weights))


def delta_square(S: Sequence[int]) -> Fraction:
    """Delta^2 for Delta = V+(x_n), whose class is w_n H."""
    S = _surface_tuple(S)
    wn = arith.weights(S).weights[-1]
    return wn * wn * hyperplane_square(S)


def delta_intersections(S: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(Delta^2, Delta.(-K)), using -K = |alpha| H and Delta = w_n H; needs alpha < 0."""
    S = _surface_tuple(S)
    alpha = arith.amplitude(S)
    if alpha >= 0:
        raise GeometryError(f"{S} has amplitude {alpha} >= 0; -K is not ample")
    wn = arith.weights(S).weights[-1]
    return delta_square(S), -alpha * wn * hyperplane_square(S)


@dataclass(frozen=True)
class DiscrepancyData:
    order: int
    discrepancy: Fraction
    exceptional_self_int: int


def discrepancy(k: int) -> DiscrepancyData:
    """Minimal resolution of 1/k(1,1): one (-k)-curve with discrepancy -1 + 2/k."""
    if k < 2:
        raise GeometryError(f"order must be >= 2, got {k}")
    return DiscrepancyData(k, Fraction(-1) + Fraction(2, k), -k)


@dataclass(frozen=True)
class SurfaceReport:
    tuple: tuple[int, ...]
    weights: tuple[int, ...]
    total_degree: int
    well_formed: bool
    singular_points: list[SingularPoint]
    K_squared: Fraction
    delta_squared: Fraction
    amplitude: int

    @property
    def delta_dot_anticanonical(self) -> Fraction | None:
        if self.amplitude >= 0:
            return None
        return delta_intersections(self.tuple)[1]

    def to_json(self) -> dict:
        dak = self.delta_dot_anticanonical
        return {
            "tuple": list(self.tuple),
            "weights": list(self.weights),
            "total_degree": self.total_degree,
            "well_formed": self.well_formed,
            "amplitude": self.amplitude,
            "K_squared": str(self.K_squared),
            "delta_squared": str(self.delta_squared),
            "delta_dot_anticanonical": None if dak is None else str(dak),
            "singular_points": [p.to_json() for p in self.singular_points],
        }


def surface_report(S: Sequence[int]) -> SurfaceReport:
    S = _surface_tuple(S)
    wv = arith.weights(S)
    return SurfaceReport(
        tuple=S,
        weights=wv.weights,
        total_degree=wv.total_degree,
        well_formed=well_formed(S),
        singular_points=singular_points(S),
        K_squared=canonical_square(S),
        delta_squared=delta_square(S),
        amplitude=arith.amplitude(S),
    )


def _point_names(points: list[SingularPoint]) -> list[tuple[str, int]]:
    by_order: dict[int, int] = {}
    for p in points:
        by_order[p.order] = by_order.get(p.order, 0) + p.count
    names = []
    used: dict[int, int] = {}
    for p in points:
        for _ in range(p.count):
            total = by_order[p.order]
            idx = used.get(p.order, 0)
            used[p.order] = idx + 1
            if total == 1:
                names.append((f"E{p.order}", p.order))
            elif total == 2:
                names.append((f"E{p.order}{'+-'[idx]}", p.order))
            else:
                names.append((f"E{p.order}_{idx + 1}", p.order))
    return names


def resolution_graph(S: Sequence[int]) -> IntersectionGraph:
    """Minimal resolution of X with the strict transform of Delta and all exceptional curves.

    Needs every singular point to be of type 1/k(1,1), so each is resolved by a
    single (-k)-curve E_p with discrepancy b_p = -1 + 2/k.  Delta is a
    coordinate line in the orbifold chart at the points it contains, so
    sigma^*Delta = Delta~ + sum_{p in Delta} E_p / k_p and

        Delta~^2 = Delta^2 - sum_{p in Delta} 1/k_p
        K~.Delta~ = K.Delta + sum_{p in Delta} b_p
        K~^2 = K^2 - sum_p k_p b_p^2.

    Points off Delta give isolated vertices.
    """
    S = _surface_tuple(S)
    points = singular_points(S)
    for p in points:
        if p.normalized_type != (1, 1):
            raise GeometryError(f"{S}: point of type {p.label()} is not 1/k(1,1)")
    named = _point_names(points)
    on_delta = [p.mult_delta == 1 for p in points for _ in range(p.count)]

    wv = arith.weights(S)
    wn = wv.weights[-1]
    alpha = arith.amplitude(S)
    h2 = hyperplane_square(S)
    dt2 = delta_square(S) - sum(Fraction(1, k) for (_, k), on in zip(named, on_delta) if on)
    if dt2.denominator != 1:
        raise GeometryError(f"{S}: strict transform of Delta has non-integral square {dt2}")
    k_dt = alpha * wn * h2 + sum(discrepancy(k).discrepancy
                                 for (_, k), on in zip(named, on_delta) if on)
    if k_dt.denominator != 1:
        raise GeometryError(f"{S}: non-integral K.Delta~ = {k_dt}")
    k2 = canonical_square(S) - sum(k * discrepancy(k).discrepancy ** 2 for _, k in named)
    if k2.denominator != 1:
        raise GeometryError(f"{S}: non-integral K^2 = {k2} on the resolution")

    curves = [Curve("Delta", int(dt2), int(k_dt))]
    curves += [Curve(name, -k, k - 2) for name, k in named]
    edges = [("Delta", name, 1) for (name, _), on in zip(named, on_delta) if on]
    return IntersectionGraph.build(curves, edges, int(k2))


def resolution_canonical_square(S: Sequence[int]) -> int:
    return resolution_graph(S).ambient_k_squared


# Curves whose singularity type is known from the geometry of the contraction
# but cannot be read off intersection numbers (tangency vs. two transverse points).
_KNOWN_CUSPIDAL = {(2, 3, 5, 30): "cuspidal rational curve (E3 and E5 were tangent at one point)"}


@dataclass
class Blowdown:
    tuple: tuple[int, ...]
    resolution: IntersectionGraph
    final: IntersectionGraph
    trace: list
    notes: dict[str, str]

    @property
    def degree(self) -> int:
        return self.final.ambient_k_squared

    def to_json(self) -> dict:
        return {
            "tuple": list(self.tuple),
            "resolution": self.resolution.to_json(),
            "trace": [r.to_json() for r in self.trace],
            "final": self.final.to_json(),
            "degree": self.degree,
            "notes": dict(sorted(self.notes.items())),
        }


def blowdown(S: Sequence[int], order: Sequence[str] | None = None) -> Blowdown:
    """Resolve X, then contract (-1)-curves in the support of sigma^*Delta."""
    S = _surface_tuple(S)
    G = resolution_graph(S)
    final, trace = contract_all(G, order)
    notes = singular_curve_notes(final, G)
    label = _KNOWN_CUSPIDAL.get(arith.canonical(S))
    if label and len(final) == 1 and notes:
        (name,) = final.curves
        notes[name] = label
    return Blowdown(S, G, final, trace, notes)


# ---------------------------------------------------------------------------
# Members of |3 Delta| on Proj B_{2,3,4,12}


def linear_system_monomials(S: Sequence[int], degree: int) -> list[tuple[int, ...]]:
    """Monomials spanning the degree-``degree`` piece of the graded ring of X.

    Only valid below the relation degree L, where B_S agrees with the
    polynomial ring.
    """
    wv = arith.weights(S)
    if degree >= wv.total_degree:
        raise GeometryError("degree must be below the degree of the relation")
    return graded_monomials(wv.weights, degree)


def three_delta_member(S: Sequence[int] = (2, 3, 4, 12)) -> Polynomial:
    """The affine curve C cap D+(x_3) for C = V+(x_2 + lambda x_3^3), lambda symbolic.

    Returned as a polynomial in (x, y, lambda) = (x_0, x_1, lambda), obtained
    by putting x_3 = 1 and x_2 = -lambda into the defining equation.
    """
    S = _surface_tuple(S)
    if linear_system_monomials(S, 3) != [(0, 0, 0, 3), (0, 0, 1, 0)]:
        raise GeometryError(f"{S}: degree 3 is not spanned by x_2 and x_3^3")
    R = pham_brieskorn(S)
    x, y, lam = (Polynomial.var(3, i) for i in range(3))
    return R.relation.substitute([x, y, -lam, Polynomial.const(3, 1)])


def member_singularity(lam_power4) -> CurveSingularity:
    """Singularity of C cap D+(x_3) given the value of lambda^4."""
    f = three_delta_member()
    # f = x^2 + y^3 + c(lambda) with c depending on lambda^4 only
    c_poly = Polynomial(3, {m: c for m, c in f.terms.items() if m[0] == m[1] == 0})
    rest = f - c_poly
    if rest != Polynomial.var(3, 0, 2) + Polynomial.var(3, 1, 3):
        raise GeometryError("unexpected shape of the restricted equation")
    if any(m[2] % 4 for m in c_poly.terms):
        raise GeometryError("constant part is not a polynomial in lambda^4")
    mu = Polynomial.var(1, 0)
    c_of_mu = Polynomial(1, {(m[2] // 4,): c for m, c in c_poly.terms.items()})
    c = c_of_mu.substitute([mu]).evaluate([lam_power4])
    return diagonal_curve_singularity(2, 3, c)
