"""Leading genus-h coefficients from symmetric-group characters.

A diagram of genus h needs at least 2h crossings, and the coefficient at
that threshold (and the next one) reduces to counting pairs of
permutations in prescribed conjugacy classes.  The class-delta functions
expand over irreducible characters, and on a full cycle only hook-shaped
tableaux contribute, collapsing everything to a single sum over the arm
length s.  This module carries the resulting closed forms together with
raw permutation-scan oracles that recompute the same numbers from the
definition, feasible for small h.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def f_min(h: int) -> Fraction:
    """Weighted count of genus-h diagrams with the minimal 2h crossings."""
    if h < 1:
        raise ValueError("the threshold formula needs h >= 1")
    return Fraction(double_factorial(4 * h - 1), 4 * h * (2 * h + 1))


def f_next(h: int) -> Fraction:
    """The g^(2h+1) coefficient of the genus-h free energy."""
    if h < 1:
        raise ValueError("the subleading formula needs h >= 1")
    total = Fraction(0)
    for s in range(2 * h + 1):
        term = Fraction(
            (-1) ** ((s + 1) // 2) * comb(2 * h, s // 2), comb(4 * h + 1, s)
        )
        term *= sum(Fraction(1, p) for p in range(s + 1, 4 * h + 2 - s))
        total += term
    return Fraction(double_factorial(4 * h + 1), (2 * h + 1) ** 2) * total


# -- hook characters ---------------------------------------------------------


def hook_dimension(n2: int, s: int) -> int:
    """Dimension of the hook with arm s in the symmetric group on n2 letters."""
    if not 0 <= s <= n2 - 1:
        raise ValueError(f"arm length {s} out of range for {n2} boxes")
    return factorial(n2 - 1) // (factorial(s) * factorial(n2 - s - 1))


def hook_character(n2: int, s: int, cls) -> int:
    """Character of the arm-s hook on a class given as a cycle-type tuple.

    Supported classes: the full cycle (n2,), the fixed-point-free
    involution type (2,)*k, and two-cycle types (p, n2-p); these are the
    only ones the coefficient formulas need.
    """
    if not 0 <= s <= n2 - 1:
        raise ValueError(f"arm length {s} out of range for {n2} boxes")
    cls = tuple(sorted(cls, reverse=True))
    if sum(cls) != n2:
        raise ValueError(f"class {cls} is not a partition of {n2}")
    if cls == (n2,):
        return (-1) ** s
    if cls == (2,) * (n2 // 2):
        return (-1) ** ((s + 1) // 2) * comb(n2 // 2 - 1, s // 2)
    if len(cls) == 2:
        p = cls[1]
        if s + 1 <= p <= n2 - s - 1:
            return (-1) ** s
        if n2 - s <= p <= s:
            return (-1) ** (s + 1)
        return 0
    raise ValueError(f"unsupported class {cls}")


def class_size(n2: int, cls) -> int:
    """Number of permutations of the given cycle type."""
    cls = tuple(sorted(cls, reverse=True))
    if sum(cls) != n2:
        raise ValueError(f"class {cls} is not a partition of {n2}")
    counts: dict[int, int] = {}
    for j in cls:
        counts[j] = counts.get(j, 0) + 1
    denom = 1
    for j, a in counts.items():
        denom *= factorial(a) * j**a
    return factorial(n2) // denom


# -- brute-force oracles -----------------------------------------------------


def _cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


def _full_cycles(n2: int):
    """All permutations of 0..n2-1 consisting of one n2-cycle."""
    for rest in itertools.permutations(range(1, n2)):
        perm = [0] * n2
        prev = 0
        for x in rest:
            perm[prev] = x
            prev = x
        perm[prev] = 0
        yield tuple(perm)


def brute_force_leading(h: int) -> Fraction:
    """Recompute f_min(h) by scanning permutation pairs directly.

    Both permutations run over full cycles; the product sigma^-1 tau must
    be a fixed-point-free involution.  Feasible for h <= 2 (the h = 2
    scan touches about 25 million pairs).
    """
    if h < 1 or h > 2:
        raise ValueError("the scan is only feasible for h in {1, 2}")
    n = 2 * h
    n2 = 2 * n
    target = (2,) * n
    hits = 0
    for sigma in _full_cycles(n2):
        inv = [0] * n2
        for i, x in enumerate(sigma):
            inv[x] = i
        for tau in _full_cycles(n2):
            if _cycle_type(tuple(tau[inv[i]] for i in range(n2))) == target:
                hits += 1
    return Fraction(hits, double_factorial(n2 - 1) * 2**n * factorial(n))


def brute_force_next(h: int) -> Fraction:
    """Recompute f_next(h) from the definition; feasible for h = 1 only.

    Three faces mean one of the two face permutations is a full cycle and
    the other splits in two, giving the overall factor 2.
    """
    if h != 1:
        raise ValueError("the scan is only feasible for h = 1")
    n = 2 * h + 1
    n2 = 2 * n
    target = (2,) * n
    hits = 0
    for sigma in _full_cycles(n2):
        inv = [0] * n2
        for i, x in enumerate(sigma):
            inv[x] = i
        for tau in itertools.permutations(range(n2)):
            if len(_cycle_type(tau)) != 2:
                continue
            if _cycle_type(tuple(tau[inv[i]] for i in range(n2))) == target:
                hits += 1
    return Fraction(2 * hits, double_factorial(n2 - 1) * 2**n * factorial(n))
