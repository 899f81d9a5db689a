"""Battery of reference checks: every published number the package can recompute.

Each check recomputes a value through the library and compares it with the
literal published value.  ``run_battery`` never raises; a crashing check is
reported as failed with the exception text.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable

from . import arith, geometry, symb
from .classify import Status, classify
from .dualgraph import contract
from .gaussian import I


@dataclass(frozen=True)
class Check:
    name: str
    description: str
    passed: bool
    expected: str
    actual: str

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "passed": self.passed,
            "expected": self.expected,
            "actual": self.actual,
        }


GAMMA3_MINUS = {
    (2, 3, 3, 6), (2, 3, 6, 6), (2, 4, 4, 4), (3, 3, 3, 3),
    (3, 3, 4, 4), (3, 3, 5, 5), (2, 3, 4, 12), (2, 3, 5, 30),
}


def _points(S):
    return sorted((p.order, p.count, p.normalized_type, p.mult_delta)
                  for p in geometry.singular_points(S))


def _check_gamma_minus():
    return sorted(GAMMA3_MINUS), sorted(arith.enumerate_gamma_minus(3))


def _check_surface_23530():
    S = (2, 3, 5, 30)
    r = geometry.surface_report(S)
    expected = ((15, 10, 6, 1), -2, Fraction(2, 15), (Fraction(1, 30), Fraction(1, 15)),
                [(2, 1, (1, 1), 1), (3, 1, (1, 1), 1), (5, 1, (1, 1), 1)])
    actual = (r.weights, r.amplitude, r.K_squared, geometry.delta_intersections(S), _points(S))
    return expected, actual


def _check_surface_23412():
    S = (2, 3, 4, 12)
    r = geometry.surface_report(S)
    expected = ((6, 4, 3, 1), -2, Fraction(2, 3), Fraction(1, 3),
                [(2, 1, (1, 1), 1), (3, 2, (1, 1), 1)])
    actual = (r.weights, r.amplitude, r.K_squared, geometry.delta_intersections(S)[1], _points(S))
    return expected, actual


def _resolution_summary(S):
    G = geometry.resolution_graph(S)
    branches = sorted(G.curves[n].self_int for n in G.neighbors("Delta"))
    return G.curves["Delta"].self_int, branches, G.ambient_k_squared


def _check_resolution_23530():
    return (-1, [-5, -3, -2], -2), _resolution_summary((2, 3, 5, 30))


def _check_resolution_23412():
    return (-1, [-3, -3, -2], 0), _resolution_summary((2, 3, 4, 12))


def _check_sigma_delta():
    # sigma^*Delta = Delta~ + E2/2 + E3/3 + E5/5: the coefficients are 1/k, recovered
    # from Delta^2 - Delta~^2 = sum 1/k
    S = (2, 3, 5, 30)
    d2 = geometry.delta_intersections(S)[0]
    dt2 = geometry.resolution_graph(S).curves["Delta"].self_int
    return Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 5), d2 - dt2


def _replay(S, order):
    G = geometry.resolution_graph(S)
    steps = []
    for v in order:
        G, _ = contract(G, v)
        curves = sorted((n, c.self_int) for n, c in G.curves.items())
        edges = sorted((tuple(sorted(k)), m) for k, m in G.edges.items())
        steps.append((curves, edges, G.ambient_k_squared))
    return steps


def _check_replay_23530():
    expected = [
        ([("E2", -1), ("E3", -2), ("E5", -4)],
         [(("E2", "E3"), 1), (("E2", "E5"), 1), (("E3", "E5"), 1)], -1),
        ([("E3", -1), ("E5", -3)], [(("E3", "E5"), 2)], 0),
        ([("E5", 1)], [], 1),
    ]
    actual = _replay((2, 3, 5, 30), ["Delta", "E2", "E3"])
    final = geometry.blowdown((2, 3, 5, 30), ["Delta", "E2", "E3"]).final
    return (expected, 1), (actual, final.curves["E5"].p_a)


def _check_replay_23412():
    expected = [
        ([("E2", -1), ("E3+", -2), ("E3-", -2)],
         [(("E2", "E3+"), 1), (("E2", "E3-"), 1), (("E3+", "E3-"), 1)], 1),
        ([("E3+", -1), ("E3-", -1)], [(("E3+", "E3-"), 2)], 2),
    ]
    auto = geometry.blowdown((2, 3, 4, 12))
    return (expected, 2), (_replay((2, 3, 4, 12), ["Delta", "E2"]), auto.degree)


def _check_fano_rigid():
    statuses = {S: classify(S).status.value for S in sorted(GAMMA3_MINUS)}
    return {S: "Rigid" for S in statuses}, statuses


def _main_criterion_mismatches(max_entry: int):
    bad = []
    for S in combinations_with_replacement(range(1, max_entry + 1), 4):
        expect_nr = 1 in S or S.count(2) >= 2
        st = classify(S).status
        if (st is Status.NOT_RIGID) != expect_nr or (not expect_nr and st is not Status.RIGID):
            bad.append(S)
    return bad


def _check_sweep():
    return [], _main_criterion_mismatches(12)


def _check_witnesses():
    failed = []
    for S in combinations_with_replacement(range(1, 13), 4):
        v = classify(S)
        if v.status is not Status.NOT_RIGID:
            continue
        w = v.witness()
        if not (symb.is_well_defined(w.derivation, w.ring) and w.certify().certified):
            failed.append(S)
    return [], failed


def _check_classify_examples():
    expected = {
        (1, 5, 7, 9): ("NotRigid", "UnitExponent"),
        (2, 2, 3, 4): ("NotRigid", "DoubleTwo"),
        (2, 3, 5, 30): ("Rigid", "FanoThreefoldCase"),
    }
    actual = {}
    for S in expected:
        v = classify(S)
        actual[S] = (v.status.value, v.trace.leaves()[-1].kind.value)
    return expected, actual


def _check_discrepancy():
    return ([Fraction(0), Fraction(-1, 3), Fraction(-3, 5)],
            [geometry.discrepancy(k).discrepancy for k in (2, 3, 5)])


def _check_three_delta():
    # lambda^2 = i gives lambda^4 = -1; any other lambda^4 gives a smooth member
    cusp = geometry.member_singularity(I ** 2)
    smooth = [geometry.member_singularity(v) for v in (0, 1, 2, I)]
    monos = geometry.linear_system_monomials((2, 3, 4, 12), 3)
    return ((symb.CurveSingularity.SINGULAR_AT_ORIGIN, [symb.CurveSingularity.SMOOTH] * 4,
             [(0, 0, 0, 3), (0, 0, 1, 0)]),
            (cusp, smooth, monos))


def _check_double_two_lnd():
    w = symb.witness_double_two((2, 2, 3, 4))
    return (True, "Certified"), (symb.is_well_defined(w.derivation, w.ring),
                                 str(w.certify()).split("(")[0])


CHECKS: list[tuple[str, str, Callable]] = [
    ("gamma3-minus", "the eight Fano tuples in dimension 3", _check_gamma_minus),
    ("surface-2-3-5-30", "weights, amplitude, K^2, Delta data, singular points", _check_surface_23530),
    ("surface-2-3-4-12", "weights, amplitude, K^2, Delta.(-K), singular points", _check_surface_23412),
    ("resolution-2-3-5-30", "Delta~^2, branches, K~^2", _check_resolution_23530),
    ("resolution-2-3-4-12", "Delta~^2, branches, K~^2", _check_resolution_23412),
    ("pullback-of-delta", "coefficients 1/2 + 1/3 + 1/5 of sigma^*Delta", _check_sigma_delta),
    ("contraction-2-3-5-30", "Delta, E2, E3 contracted; cuspidal E5 of square 1, K^2 = 1", _check_replay_23530),
    ("contraction-2-3-4-12", "Delta, E2 contracted; tangent (-1)-pair, K^2 = 2", _check_replay_23412),
    ("fano-threefolds-rigid", "classify gives Rigid on all eight", _check_fano_rigid),
    ("main-criterion-sweep", "entries <= 12: NotRigid iff a 1 or two 2s", _check_sweep),
    ("witnesses-certified", "every NotRigid witness in the sweep is a certified LND", _check_witnesses),
    ("classify-examples", "unit exponent, double two, (2,3,5,30)", _check_classify_examples),
    ("discrepancies", "-1 + 2/k for k = 2, 3, 5", _check_discrepancy),
    ("three-delta-members", "members of |3 Delta|: cuspidal iff lambda^4 = -1", _check_three_delta),
    ("double-two-lnd", "the LND on B_{2,2,3,4}", _check_double_two_lnd),
]


def run_battery() -> list[Check]:
    out = []
    for name, desc, fn in CHECKS:
        try:
            expected, actual = fn()
            out.append(Check(name, desc, expected == actual, str(expected), str(actual)))
        except Exception as exc:  # a crash is a failed check, not a crashed battery
            out.append(Check(name, desc, False, "no error", f"{type(exc).__name__}: {exc}"))
    return out
