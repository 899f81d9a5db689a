"""Exact combinatorics of exponent tuples (a_0, ..., a_n).

All functions accept any sequence of positive Python ints and return plain
tuples, so results can be hashed, sorted and compared directly.  Integers are
arbitrary precision throughout.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

ExponentTuple = tuple[int, ...]


class TupleError(ValueError):
    """Raised for malformed exponent tuples or out-of-range indices."""


def as_tuple(S: Iterable[int], min_len: int = 3) -> ExponentTuple:
    S = tuple(S)
    if len(S) < min_len:
        raise TupleError(f"expected at least {min_len} exponents, got {len(S)}: {S}")
    for a in S:
        if isinstance(a, bool) or not isinstance(a, int):
            raise TupleError(f"exponents must be integers, got {a!r}")
        if a < 1:
            raise TupleError(f"exponents must be positive, got {a}")
    return S


def _check_index(S: ExponentTuple, i: int) -> None:
    if not 0 <= i < len(S):
        raise TupleError(f"index {i} out of range for tuple of length {len(S)}")


def canonical(S: Iterable[int]) -> ExponentTuple:
    """Representative of the permutation class: non-decreasing order."""
    return tuple(sorted(S))


def lcm_tuple(S: Sequence[int]) -> int:
    return math.lcm(*as_tuple(S))


def drop(S: Sequence[int], i: int) -> ExponentTuple:
    """Remove entry i.  The result must itself be a valid tuple (length >= 3)."""
    S = as_tuple(S)
    _check_index(S, i)
    if len(S) < 4:
        raise TupleError(f"dropping an entry from {S} leaves fewer than 3 exponents")
    return S[:i] + S[i + 1:]


def _lcm_without(S: ExponentTuple, i: int) -> int:
    return math.lcm(*S[:i], *S[i + 1:])


def offending_indices(S: Sequence[int]) -> list[int]:
    """Indices i with a_i not dividing lcm of the other entries."""
    S = as_tuple(S)
    return [i for i, a in enumerate(S) if _lcm_without(S, i) % a]


def cotype(S: Sequence[int]) -> int:
    return len(offending_indices(S))


def normalize(S: Sequence[int]) -> ExponentTuple:
    S = as_tuple(S)
    d = math.gcd(*S)
    return tuple(a // d for a in S)


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[int, ...]
    total_degree: int


def weights(S: Sequence[int]) -> WeightVector:
    """Grading deg(X_i) = L / a_i making X_0^a_0 + ... + X_n^a_n homogeneous of degree L."""
    S = as_tuple(S)
    L = math.lcm(*S)
    return WeightVector(tuple(L // a for a in S), L)


def amplitude(S: Sequence[int]) -> int:
    w = weights(S)
    return w.total_degree - sum(w.weights)


def g_i(S: Sequence[int], i: int) -> int:
    S = as_tuple(S)
    _check_index(S, i)
    return math.gcd(S[i], _lcm_without(S, i))


def leq_order(S: Sequence[int], T: Sequence[int], i: int) -> bool:
    """True iff S <=^i T, i.e. S and T agree off position i and g_i(T) | a_i | a'_i."""
    S, T = as_tuple(S), as_tuple(T)
    if len(S) != len(T):
        raise TupleError(f"length mismatch: {S} vs {T}")
    _check_index(S, i)
    if S[:i] + S[i + 1:] != T[:i] + T[i + 1:]:
        return False
    return S[i] % g_i(T, i) == 0 and T[i] % S[i] == 0


class GammaClass(enum.Enum):
    NOT_IN_GAMMA = "NotInGamma"
    GAMMA_ONLY = "GammaOnly"
    GAMMA_PLUS = "GammaPlus"
    GAMMA_MINUS = "GammaMinus"


def in_gamma(S: Sequence[int]) -> bool:
    S = as_tuple(S)
    return min(S) >= 2 and S.count(2) <= 1


def gamma_class(S: Sequence[int]) -> GammaClass:
    S = as_tuple(S)
    if not in_gamma(S):
        return GammaClass.NOT_IN_GAMMA
    if cotype(S) != 0:
        return GammaClass.GAMMA_ONLY
    if amplitude(S) >= 0:
        return GammaClass.GAMMA_PLUS
    return GammaClass.GAMMA_MINUS


# ---------------------------------------------------------------------------
# Enumeration of Gamma^-
#
# For a sorted tuple a_0 <= ... <= a_n,  alpha < 0  <=>  sum 1/a_i > 1.
# Say positions 0..k-1 are fixed with reciprocal sum s < 1.  The r = n+1-k
# remaining entries are all >= a_k, so sum > 1 forces s + r/a_k > 1, i.e.
#     a_k < r / (1 - s).
# For n = 3 every prefix of length <= 2 has s < 1 (the largest possible is
# 1/2 + 1/3, since at most one entry equals 2), which bounds a_0, a_1, a_2:
#     a_0 <= 3,  a_1 <= 5,  a_2 <= 11.
# The last entry is then bounded by cotype 0: a_n | lcm(a_0, ..., a_{n-1}),
# so a_n <= lcm of the prefix (at most lcm(2, 3, 11) = 66).
# For n >= 4 a prefix can already have s >= 1 (e.g. 2, 3, 3) with two or more
# free positions left; the divisibility conditions alone do not bound those,
# so a caller-supplied maximum entry is required.
# ---------------------------------------------------------------------------


def _sum_bound(prefix: tuple[int, ...], remaining: int) -> int | None:
    """Largest a with sum(1/prefix) + remaining/a > 1, or None if unbounded."""
    s = sum((Fraction(1, a) for a in prefix), Fraction(0))
    if s >= 1:
        return None
    # a < remaining / (1 - s)
    q = Fraction(remaining) / (1 - s)
    return math.ceil(q) - 1


def _candidates(prefix: tuple[int, ...], n: int, max_entry: int | None) -> range:
    k = len(prefix)
    lo = prefix[-1] if prefix else 2
    if lo == 2 and 2 in prefix:
        lo = 3
    if k == n:
        hi = math.lcm(*prefix)
    else:
        hi = _sum_bound(prefix, n + 1 - k)
        if hi is None:
            if max_entry is None:
                raise TupleError(
                    f"no finite bound for position {k} after prefix {prefix}; "
                    "supply a maximum entry"
                )
            hi = max_entry
    if max_entry is not None:
        hi = min(hi, max_entry)
    return range(lo, hi + 1)


def _search_depth_first(n: int, max_entry: int | None) -> set[ExponentTuple]:
    found = set()
    stack: list[tuple[int, ...]] = [()]
    while stack:
        prefix = stack.pop()
        if len(prefix) == n + 1:
            if gamma_class(prefix) is GammaClass.GAMMA_MINUS:
                found.add(prefix)
            continue
        for a in _candidates(prefix, n, max_entry):
            stack.append(prefix + (a,))
    return found


def _search_breadth_first(n: int, max_entry: int | None) -> set[ExponentTuple]:
    level: list[tuple[int, ...]] = [()]
    for _ in range(n + 1):
        level = [p + (a,) for p in level for a in reversed(_candidates(p, n, max_entry))]
    return {S for S in level if gamma_class(S) is GammaClass.GAMMA_MINUS}


_STRATEGIES = {"depth-first": _search_depth_first, "breadth-first": _search_breadth_first}


def enumerate_gamma_minus(
    n: int, max_entry: int | None = None, strategy: str = "depth-first"
) -> list[ExponentTuple]:
    """Sorted canonical representatives of Gamma_n^-.

    For n = 3 the list is complete without a bound.  For n >= 4 the search
    needs ``max_entry`` and only covers tuples whose entries are <= it.
    """
    if n < 3:
        raise TupleError(f"Gamma^- enumeration needs n >= 3, got n = {n}")
    if n >= 4 and max_entry is None:
        raise TupleError(f"n = {n} needs an explicit maximum entry")
    try:
        search = _STRATEGIES[strategy]
    except KeyError:
        raise TupleError(f"unknown search strategy {strategy!r}") from None
    return sorted(search(n, max_entry))


def _class_slice(args: tuple[int, int, int, GammaClass]) -> list[ExponentTuple]:
    n, first, max_entry, cls = args
    out = []
    for rest in combinations_with_replacement(range(first, max_entry + 1), n):
        S = (first,) + rest
        if gamma_class(S) is cls:
            out.append(S)
    return out


def enumerate_class(
    n: int, cls: GammaClass, max_entry: int, jobs: int = 1
) -> list[ExponentTuple]:
    """Brute-force listing of sorted (n+1)-tuples with entries <= max_entry in class ``cls``."""
    if n < 2:
        raise TupleError(f"n must be >= 2, got {n}")
    if max_entry < 1:
        raise TupleError(f"maximum entry must be positive, got {max_entry}")
    work = [(n, first, max_entry, cls) for first in range(1, max_entry + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_class_slice, work))
    else:
        parts = [_class_slice(w) for w in work]
    return sorted(S for part in parts for S in part)
