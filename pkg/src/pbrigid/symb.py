"""Polynomials over Q(i), presented graded rings and derivations on them.

A derivation of k[X_0..X_n]/<f> is given by the images of the generators;
it extends to all polynomials by the Leibniz rule and descends to the
quotient exactly when D(f) lies in <f>.  All relations handled here are monic
in a designated "lead" variable which occurs only as a pure power, so
division by the relation gives a unique normal form and ideal membership is
decided by a zero remainder.

Local nilpotency is certified on generators only: for a derivation of a
finitely generated algebra over a field of characteristic zero, D is locally
nilpotent as soon as every generator is killed by some power of D, because
the set of elements with that property is a subalgebra (Leibniz rule).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import arith
from .gaussian import I, GaussianRational

Monomial = tuple[int, ...]


class SymbError(ValueError):
    """Malformed ring, derivation, or unsupported witness request."""


def _gq(c) -> GaussianRational:
    return GaussianRational.coerce(c)


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over Q(i)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, GaussianRational] = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise SymbError(f"monomial {m} has wrong arity for {nvars} variables")
            c = _gq(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "Polynomial":
        exps = [0] * nvars
        exps[i] = power
        return cls._raw(nvars, {tuple(exps): GaussianRational(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise SymbError("polynomials live in different rings")
            return other
        return Polynomial.const(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Polynomial":
        c = _gq(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._lift(other)
        terms: dict[Monomial, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m)
                terms[m] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial._raw(self.nvars, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise SymbError("negative power of a polynomial")
        result = Polynomial.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == Polynomial.const(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def derivative(self, i: int) -> "Polynomial":
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                dm = m[:i] + (e - 1,) + m[i + 1:]
                terms[dm] = c * e
        return Polynomial._raw(self.nvars, terms)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(w * e for w, e in zip(weights, m)) for m in self.terms}

    def homogeneous_degree(self, weights: Sequence[int]) -> int | None:
        """Weighted degree if homogeneous and nonzero, else None."""
        degs = self.weighted_degrees(weights)
        return degs.pop() if len(degs) == 1 else None

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace variable j by ``images[j]`` (all in one common ring)."""
        if len(images) != self.nvars:
            raise SymbError("substitution needs one image per variable")
        if not images:
            raise SymbError("substitution into a ring without variables")
        target = images[0].nvars
        out = Polynomial.zero(target)
        cache: dict[tuple[int, int], Polynomial] = {}
        for m, c in self.terms.items():
            term = Polynomial.const(target, c)
            for j, e in enumerate(m):
                if e:
                    key = (j, e)
                    if key not in cache:
                        cache[key] = images[j] ** e
                    term = term * cache[key]
            out = out + term
        return out

    def evaluate(self, point: Sequence) -> GaussianRational:
        total = GaussianRational(0)
        pt = [_gq(x) for x in point]
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = v * x ** e
            total = total + v
        return total

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            cs = str(c)
            if c.re and c.im:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.format()})"

    def to_json(self) -> list[dict]:
        return [
            {"coeff": self.terms[m].to_json(), "exps": list(m)}
            for m in sorted(self.terms)
        ]

    @classmethod
    def from_json(cls, nvars: int, data: Sequence[Mapping]) -> "Polynomial":
        terms: dict[Monomial, GaussianRational] = {}
        for t in data:
            m = tuple(int(e) for e in t["exps"])
            if any(e < 0 for e in m):
                raise SymbError(f"negative exponent in {m}")
            terms[m] = terms.get(m, GaussianRational(0)) + GaussianRational.from_json(t["coeff"])
        return cls(nvars, terms)


# ---------------------------------------------------------------------------
# Presented rings


@dataclass(frozen=True)
class PresentedRing:
    """k[names] / <relation>, graded by ``weights``.

    ``relation`` must be ``X_lead^a + rest`` with ``rest`` free of X_lead.
    """

    names: tuple[str, ...]
    weights: tuple[int, ...]
    relation: Polynomial
    lead: int = 0
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.names) != len(self.weights) or self.relation.nvars != len(self.names):
            raise SymbError("names, weights and relation disagree on the number of variables")
        self.lead_power  # validates the relation shape
        if self.relation.homogeneous_degree(self.weights) is None:
            raise SymbError("relation is not homogeneous for the given weights")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def lead_power(self) -> int:
        lead = self.lead
        if not 0 <= lead < self.nvars:
            raise SymbError(f"lead index {lead} out of range")
        pure = [m for m in self.relation.terms
                if m[lead] and all(e == 0 for j, e in enumerate(m) if j != lead)]
        mixed = [m for m in self.relation.terms
                 if m[lead] and any(e for j, e in enumerate(m) if j != lead)]
        if len(pure) != 1 or mixed or self.relation.terms[pure[0]] != 1:
            raise SymbError(
                f"relation must be monic in {self.names[lead]} and contain it only as a pure power"
            )
        return pure[0][lead]

    @property
    def degree(self) -> int:
        return self.relation.homogeneous_degree(self.weights)

    def gen(self, i: int) -> Polynomial:
        return Polynomial.var(self.nvars, i)

    def to_json(self) -> dict:
        return {
            "names": list(self.names),
            "weights": list(self.weights),
            "relation": self.relation.to_json(),
            "lead": self.lead,
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PresentedRing":
        names = tuple(data["names"])
        return cls(
            names,
            tuple(int(w) for w in data["weights"]),
            Polynomial.from_json(len(names), data["relation"]),
            int(data.get("lead", 0)),
            dict(data.get("metadata", {})),
        )


def pham_brieskorn(S: Sequence[int], lead: int = 0) -> PresentedRing:
    """B_S = k[X_0..X_n]/<X_0^a_0 + ... + X_n^a_n> with its standard grading."""
    S = arith.as_tuple(S)
    n = len(S)
    f = Polynomial.zero(n)
    for i, a in enumerate(S):
        f = f + Polynomial.var(n, i, a)
    w = arith.weights(S)
    return PresentedRing(tuple(f"X{i}" for i in range(n)), w.weights, f, lead,
                         {"exponents": list(S)})


def reduce(p: Polynomial, R: PresentedRing) -> Polynomial:
    """Normal form of p modulo the relation: X_lead-degree below its pure power."""
    if p.nvars != R.nvars:
        raise SymbError("polynomial and ring have different numbers of variables")
    lead, a = R.lead, R.lead_power
    if all(m[lead] < a for m in p.terms):
        return p
    neg_rest = -(R.relation - Polynomial.var(R.nvars, lead, a))
    powers = [Polynomial.const(R.nvars, 1)]
    out: dict[Monomial, GaussianRational] = {}

    def add(m, c):
        s = out.get(m)
        s = c if s is None else s + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)

    for m, c in p.terms.items():
        q, r = divmod(m[lead], a)
        if q == 0:
            add(m, c)
            continue
        while len(powers) <= q:
            powers.append(powers[-1] * neg_rest)
        base = m[:lead] + (r,) + m[lead + 1:]
        for m2, c2 in powers[q].terms.items():
            add(tuple(x + y for x, y in zip(base, m2)), c * c2)
    return Polynomial._raw(R.nvars, out)


# ---------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class Derivation:
    images: tuple[Polynomial, ...]

    @classmethod
    def from_map(cls, nvars: int, images: Mapping[int, Polynomial]) -> "Derivation":
        return cls(tuple(images.get(i, Polynomial.zero(nvars)) for i in range(nvars)))

    @classmethod
    def zero(cls, nvars: int) -> "Derivation":
        return cls.from_map(nvars, {})

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def to_json(self) -> list:
        return [img.to_json() for img in self.images]

    @classmethod
    def from_json(cls, nvars: int, data: Sequence) -> "Derivation":
        if len(data) != nvars:
            raise SymbError(f"derivation has {len(data)} images, ring has {nvars} variables")
        return cls(tuple(Polynomial.from_json(nvars, d) for d in data))


def _check_arity(D: Derivation, R: PresentedRing) -> None:
    if len(D.images) != R.nvars or any(img.nvars != R.nvars for img in D.images):
        raise SymbError("derivation and ring have different variables")


def apply(D: Derivation, p: Polynomial) -> Polynomial:
    """D(p) = sum_j dp/dX_j * D(X_j) in the polynomial ring."""
    out = Polynomial.zero(p.nvars)
    for j, img in enumerate(D.images):
        if img:
            dp = p.derivative(j)
            if dp:
                out = out + dp * img
    return out


def is_well_defined(D: Derivation, R: PresentedRing) -> bool:
    _check_arity(D, R)
    return reduce(apply(D, R.relation), R).is_zero()


def homogeneous_degree(D: Derivation, R: PresentedRing,
                       weights: Sequence[int] | None = None) -> int | float | None:
    """Common degree h with deg D(X_j) = deg X_j + h for every nonzero image.

    Returns ``-math.inf`` for the zero derivation and None when the images are
    not homogeneous of one common shift.  ``weights`` defaults to the ring's
    grading.
    """
    _check_arity(D, R)
    weights = tuple(R.weights if weights is None else weights)
    if len(weights) != R.nvars:
        raise SymbError("grading has the wrong number of weights")
    h = None
    for w, img in zip(weights, D.images):
        if not img:
            continue
        d = img.homogeneous_degree(weights)
        if d is None:
            return None
        if h is None:
            h = d - w
        elif d - w != h:
            return None
    return -math.inf if h is None else h


@dataclass(frozen=True)
class NilpotencyResult:
    certified: bool
    max_steps: int | None
    steps: tuple[int | None, ...]
    bound: int

    def __str__(self):
        if self.certified:
            return f"Certified({self.max_steps})"
        return "ExceededBound"


def nilpotency_steps(D: Derivation, R: PresentedRing, x: Polynomial, bound: int) -> int | None:
    """Smallest k <= bound with D^k(x) = 0 in R, or None."""
    y = reduce(x, R)
    k = 0
    while y:
        if k >= bound:
            return None
        y = reduce(apply(D, y), R)
        k += 1
    return k


def check_locally_nilpotent(D: Derivation, R: PresentedRing, bound: int) -> NilpotencyResult:
    if not is_well_defined(D, R):
        raise SymbError("derivation does not preserve the ideal of the relation")
    steps = tuple(nilpotency_steps(D, R, R.gen(j), bound) for j in range(R.nvars))
    if any(s is None for s in steps):
        return NilpotencyResult(False, None, steps, bound)
    return NilpotencyResult(True, max(steps), steps, bound)


def certification_bound(S: Sequence[int]) -> int:
    return 2 * max(S) + 2


# ---------------------------------------------------------------------------
# Witnesses for non-rigid Pham-Brieskorn rings


@dataclass(frozen=True)
class Witness:
    """A nonzero LND of a presentation of B_S, with provenance."""

    id: str
    exponents: tuple[int, ...]
    ring: PresentedRing
    derivation: Derivation
    construction: str

    def certify(self, bound: int | None = None) -> NilpotencyResult:
        bound = certification_bound(self.exponents) if bound is None else bound
        return check_locally_nilpotent(self.derivation, self.ring, bound)

    def to_json(self, certify: bool = True) -> dict:
        out = {
            "id": self.id,
            "exponents": list(self.exponents),
            "construction": self.construction,
            "ring": self.ring.to_json(),
            "derivation": self.derivation.to_json(),
            "well_defined": is_well_defined(self.derivation, self.ring),
            "homogeneous_degree": _json_degree(homogeneous_degree(self.derivation, self.ring)),
        }
        if certify:
            res = self.certify()
            out["nilpotency"] = {
                "certified": res.certified,
                "max_steps": res.max_steps,
                "steps": list(res.steps),
                "bound": res.bound,
            }
        return out


def _json_degree(h):
    if h is None:
        return None
    if h == -math.inf:
        return "-inf"
    return h


def witness_unit_exponent(S: Sequence[int], j: int | None = None) -> Witness:
    """LND of B_S when some a_i = 1: D(x_j) = 1, D(x_i) = -a_j x_j^(a_j - 1)."""
    S = arith.as_tuple(S)
    if 1 not in S:
        raise SymbError(f"{S} has no exponent equal to 1")
    i = S.index(1)
    if j is None:
        j = next(k for k in range(len(S)) if k != i)
    if j == i or not 0 <= j < len(S):
        raise SymbError(f"slice variable index {j} must differ from {i} and be in range")
    R = pham_brieskorn(S, lead=i)
    n = R.nvars
    D = Derivation.from_map(n, {
        j: Polynomial.const(n, 1),
        i: Polynomial.var(n, j, S[j] - 1).scale(-S[j]),
    })
    return Witness(f"unit-exponent:i={i},j={j}", S, R, D, "unit-exponent")


def witness_double_two(S: Sequence[int]) -> Witness:
    """LND of B_S when a_i = a_j = 2, written in coordinates u = X_i + iX_j, v = X_i - iX_j.

    On uv + sum_{l != i,j} X_l^a_l the derivation D(u) = 0, D(X_m) = u,
    D(v) = -a_m X_m^(a_m - 1) kills the relation, and u is in its kernel.
    """
    S = arith.as_tuple(S)
    twos = [k for k, a in enumerate(S) if a == 2]
    if len(twos) < 2:
        raise SymbError(f"{S} has fewer than two exponents equal to 2")
    i, j = twos[0], twos[1]
    m = next(k for k in range(len(S)) if k not in (i, j))
    n = len(S)
    names = [f"X{k}" for k in range(n)]
    names[i], names[j] = "u", "v"
    w = arith.weights(S)
    f = Polynomial.var(n, i) * Polynomial.var(n, j)
    for k, a in enumerate(S):
        if k not in (i, j):
            f = f + Polynomial.var(n, k, a)
    R = PresentedRing(tuple(names), w.weights, f, lead=m, metadata={
        "exponents": list(S),
        "u": f"X{i} + sqrt(-1)*X{j}",
        "v": f"X{i} - sqrt(-1)*X{j}",
        "u_index": i,
        "v_index": j,
    })
    D = Derivation.from_map(n, {
        m: Polynomial.var(n, i),
        j: Polynomial.var(n, m, S[m] - 1).scale(-S[m]),
    })
    return Witness(f"double-two:i={i},j={j},m={m}", S, R, D, "double-two")


def to_original_coordinates(w: Witness) -> tuple[PresentedRing, Derivation]:
    """Pull a double-two witness back to B_S in the coordinates X_0..X_n.

    With X_i = (u + v)/2 and X_j = (u - v)/(2i): D(X_i) = (D u + D v)/2,
    D(X_j) = (D u - D v)/(2i), and the other images are rewritten through
    u -> X_i + iX_j, v -> X_i - iX_j.
    """
    if w.construction != "double-two":
        R = pham_brieskorn(w.exponents, lead=w.ring.lead)
        return R, w.derivation
    S = w.exponents
    n = len(S)
    i = w.ring.metadata["u_index"]
    j = w.ring.metadata["v_index"]
    X = [Polynomial.var(n, k) for k in range(n)]
    to_x = list(X)
    to_x[i] = X[i] + X[j].scale(I)
    to_x[j] = X[i] - X[j].scale(I)
    img = [p.substitute(to_x) for p in w.derivation.images]
    du, dv = img[i], img[j]
    images = list(img)
    images[i] = (du + dv).scale(GaussianRational(1, 0) / 2)
    images[j] = (du - dv).scale(1 / (2 * I))
    lead = next(k for k in range(n) if k not in (i, j))
    return pham_brieskorn(S, lead=lead), Derivation(tuple(images))


# ---------------------------------------------------------------------------
# Plane curves x^a + y^b + c = 0


class CurveSingularity(enum.Enum):
    SMOOTH = "Smooth"
    SINGULAR_AT_ORIGIN = "SingularAtOrigin"


def diagonal_curve(a: int, b: int, c) -> Polynomial:
    return Polynomial.var(2, 0, a) + Polynomial.var(2, 1, b) + Polynomial.const(2, c)


def diagonal_curve_singularity(a: int, b: int, c) -> CurveSingularity:
    """Singularity of the affine curve x^a + y^b + c = 0 (a, b >= 2).

    The partials a x^(a-1), b y^(b-1) vanish simultaneously only at the
    origin, so the curve is singular iff the origin lies on it.
    """
    if a < 2 or b < 2:
        raise SymbError("exponents must be at least 2")
    f = diagonal_curve(a, b, c)
    origin = (0, 0)
    assert f.derivative(0).evaluate(origin) == 0 and f.derivative(1).evaluate(origin) == 0
    if f.evaluate(origin):
        return CurveSingularity.SMOOTH
    return CurveSingularity.SINGULAR_AT_ORIGIN


def graded_monomials(weights: Sequence[int], degree: int) -> list[Monomial]:
    """Exponent vectors of all monomials of the given weighted degree."""
    out = []

    def rec(k, left, prefix):
        if k == len(weights) - 1:
            if left % weights[k] == 0:
                out.append(prefix + (left // weights[k],))
            return
        for e in range(left // weights[k] + 1):
            rec(k + 1, left - e * weights[k], prefix + (e,))

    if degree >= 0 and weights:
        rec(0, degree, ())
    return sorted(out)
