"""Rigidity verdicts for B_S with a proof trace.

Decision order:

1. an exponent equal to 1: B_S is a polynomial ring, not rigid;
2. two exponents equal to 2: an explicit LND exists, not rigid;
3. otherwise S is in Gamma_n and the verdict follows the induction on n:
   n = 2 is the Kaliman-Zaidenberg base case, cotype 0 tuples are leaves
   (rigid when alpha >= 0, by the known list when n = 3 and alpha < 0, open
   when n >= 4 and alpha < 0), cotype >= 2 drops an offending exponent and
   cotype 1 replaces the offending exponent a_i by a_i L, L = lcm(S_i), then
   compares with the cotype 0 tuple carrying L in position i.

The cotype >= 2 step rests on the fact that for two offending indices j, k
a homogeneous LND kills x_j or x_k.  So at most one offending coordinate
escapes the kernel, and rigidity of B_{S_j} for two offending j suffices.
For n <= 4 every drop lands in a dimension where all of Gamma is rigid; from
n = 5 on the drops may themselves be open, and the step only reports Rigid
when two of them are.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import arith, symb
from .arith import ExponentTuple, TupleError


class Status(enum.Enum):
    NOT_RIGID = "NotRigid"
    RIGID = "Rigid"
    CONJECTURALLY_RIGID = "ConjecturallyRigid"


class StepKind(enum.Enum):
    UNIT_EXPONENT = "UnitExponent"
    DOUBLE_TWO = "DoubleTwo"
    BASE_SURFACE_KZ = "BaseSurfaceKZ"
    AMPLITUDE_NON_NEGATIVE = "AmplitudeNonNegative"
    FANO_THREEFOLD_CASE = "FanoThreefoldCase"
    FANO_OPEN_CASE = "FanoOpenCase"
    COTYPE_AT_LEAST_TWO_DROP = "CotypeAtLeastTwoDrop"
    COTYPE_ONE_LCM_SUBSTITUTION = "CotypeOneLcmSubstitution"
    ORDER_PROPAGATION = "OrderPropagation"


# Where the rigidity of each Gamma_3^- member comes from.
CPW_TABLE = "cheltsov-park-won-table"
CHELTSOV_LC = "cheltsov-log-canonical"
DELTA_BLOWDOWN = "delta-resolution-blowdown"

FANO_THREEFOLD_CITATIONS: Mapping[ExponentTuple, str] = {
    (2, 3, 3, 6): CPW_TABLE,
    (2, 3, 6, 6): CPW_TABLE,
    (2, 4, 4, 4): CPW_TABLE,
    (3, 3, 3, 3): CPW_TABLE,
    (3, 3, 4, 4): CHELTSOV_LC,
    (3, 3, 5, 5): CHELTSOV_LC,
    (2, 3, 4, 12): DELTA_BLOWDOWN,
    (2, 3, 5, 30): DELTA_BLOWDOWN,
}


@dataclass(frozen=True)
class Step:
    kind: StepKind
    tuple: ExponentTuple
    status: Status
    info: Mapping[str, object] = field(default_factory=dict)
    children: tuple["Step", ...] = ()

    def leaves(self) -> list["Step"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def to_json(self) -> dict:
        out: dict = {"step": self.kind.value, "tuple": list(self.tuple), "status": self.status.value}
        for k, v in self.info.items():
            out[k] = list(v) if isinstance(v, tuple) else v
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out

    def render(self, indent: int = 0) -> list[str]:
        extra = ", ".join(f"{k}={_fmt(v)}" for k, v in self.info.items())
        head = f"{'  ' * indent}{self.kind.value} {_fmt(self.tuple)}"
        if extra:
            head += f" [{extra}]"
        head += f" -> {self.status.value}"
        lines = [head]
        for c in self.children:
            lines += c.render(indent + 1)
        return lines


def _fmt(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


ProofTrace = Step


@dataclass(frozen=True)
class Verdict:
    tuple: ExponentTuple
    status: Status
    trace: Step
    witness_id: str | None = None

    def witness(self) -> symb.Witness | None:
        """Rebuild the LND behind a NotRigid verdict."""
        if self.status is not Status.NOT_RIGID:
            return None
        if self.trace.kind is StepKind.UNIT_EXPONENT:
            return symb.witness_unit_exponent(self.tuple, self.trace.info["j"])
        return symb.witness_double_two(self.tuple)

    def to_json(self) -> dict:
        out = {"tuple": list(self.tuple), "status": self.status.value, "trace": self.trace.to_json()}
        if self.witness_id is not None:
            out["witness_id"] = self.witness_id
        return out


class ClassifyError(ValueError):
    pass


def cotype_one_substitute(S: Sequence[int], i: int) -> tuple[ExponentTuple, ExponentTuple]:
    """(S with a_i -> a_i L, S with a_i -> L) for L = lcm(S_i), when i is the unique offending index.

    B_S is rigid if the first is, and the second is a cotype 0 tuple below
    the first in the order <=^i.
    """
    S = arith.as_tuple(S)
    off = arith.offending_indices(S)
    if len(off) != 1:
        raise ClassifyError(f"{S} has cotype {len(off)}, expected 1")
    if not 0 <= i < len(S):
        raise TupleError(f"index {i} out of range for {S}")
    if off[0] != i:
        raise ClassifyError(f"index {i} is not the offending index of {S} (that is {off[0]})")
    L = arith._lcm_without(S, i)
    substituted = S[:i] + (S[i] * L,) + S[i + 1:]
    comparison = S[:i] + (L,) + S[i + 1:]
    assert arith.cotype(comparison) == 0 and arith.leq_order(comparison, substituted, i)
    return substituted, comparison


def propagate_rigidity(S_known: Sequence[int], S_target: Sequence[int], i: int) -> bool:
    """True iff S_known <=^i S_target, so rigidity of B_{S_known} carries over."""
    return arith.leq_order(S_known, S_target, i)


def _cotype_zero_leaf(S: ExponentTuple) -> Step:
    alpha = arith.amplitude(S)
    if alpha >= 0:
        return Step(StepKind.AMPLITUDE_NON_NEGATIVE, S, Status.RIGID, {"amplitude": alpha})
    if len(S) == 4:
        key = arith.canonical(S)
        cite = FANO_THREEFOLD_CITATIONS.get(key)
        assert cite is not None, f"{S} should be one of the eight Fano threefold cases"
        return Step(StepKind.FANO_THREEFOLD_CASE, S, Status.RIGID,
                    {"member": key, "citation": cite})
    return Step(StepKind.FANO_OPEN_CASE, S, Status.CONJECTURALLY_RIGID, {"amplitude": alpha})


def _drop_step(S: ExponentTuple, off: list[int]) -> Step:
    # largest offending index first; for n <= 4 every drop is rigid
    subs = []
    for i in sorted(off, reverse=True):
        child = arith.drop(S, i)
        assert arith.in_gamma(child), f"{child} left Gamma"
        subs.append((i, _trace(child)))
    rigid = [(i, t) for i, t in subs if t.status is Status.RIGID]
    if len(rigid) >= 2:
        (i, t), (j, u) = rigid[0], rigid[1]
        status = Status.RIGID
    else:
        (i, t) = rigid[0] if rigid else subs[0]
        (j, u) = next((p for p in subs if p[0] != i))
        status = Status.CONJECTURALLY_RIGID
    info = {"index": i, "companion": j, "offending": tuple(off)}
    if len(S) <= 5:
        # every tuple of Gamma_2 and Gamma_3 is rigid, so one drop tells the story
        return Step(StepKind.COTYPE_AT_LEAST_TWO_DROP, S, status, info, (t,))
    return Step(StepKind.COTYPE_AT_LEAST_TWO_DROP, S, status, info, (t, u))


@functools.lru_cache(maxsize=65536)
def _trace(S: ExponentTuple) -> Step:
    ones = [k for k, a in enumerate(S) if a == 1]
    if ones:
        i = ones[0]
        j = next(k for k in range(len(S)) if k != i)
        return Step(StepKind.UNIT_EXPONENT, S, Status.NOT_RIGID, {"i": i, "j": j})
    twos = [k for k, a in enumerate(S) if a == 2]
    if len(twos) >= 2:
        return Step(StepKind.DOUBLE_TWO, S, Status.NOT_RIGID, {"i": twos[0], "j": twos[1]})
    if len(S) == 3:
        return Step(StepKind.BASE_SURFACE_KZ, S, Status.RIGID)
    off = arith.offending_indices(S)
    if not off:
        return _cotype_zero_leaf(S)
    if len(off) >= 2:
        return _drop_step(S, off)
    (i,) = off
    substituted, comparison = cotype_one_substitute(S, i)
    leaf = _trace(comparison)
    prop = Step(StepKind.ORDER_PROPAGATION, substituted, leaf.status,
                {"comparison": comparison, "index": i}, (leaf,))
    return Step(StepKind.COTYPE_ONE_LCM_SUBSTITUTION, S, leaf.status,
                {"index": i, "lcm": math.lcm(*(S[:i] + S[i + 1:])), "substituted": substituted},
                (prop,))


def classify(S: Sequence[int]) -> Verdict:
    S = arith.as_tuple(S)
    trace = _trace(S)
    wid = None
    if trace.kind is StepKind.UNIT_EXPONENT:
        wid = f"unit-exponent:i={trace.info['i']},j={trace.info['j']}"
    elif trace.kind is StepKind.DOUBLE_TWO:
        wid = symb.witness_double_two(S).id
    return Verdict(S, trace.status, trace, wid)
