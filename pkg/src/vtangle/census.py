"""Isomorph-free generation of canonical diagrams, with counting tables.

The relabelling group of an ``n``-crossing diagram has order ``n! 2^n``
(block permutations times block orientations); for tangles the marked block
is fixed pointwise, leaving ``(n-1)! 2^(n-1)``.  Rather than filtering all
of ``S_2n``, the search assigns ``sigma`` images position by position under
the rule that keeps the partial assignment equal to its own rooted code at
root 0 (new blocks must appear as the lowest unused even label).  A finished
assignment is emitted only when it equals its canonical code over all
roots, so each equivalence class surfaces exactly once, in sorted order.

A tangle scan can stall on pieces that hang off the marked crossing; the
generator then lets the marked values open the next block, mirroring the
rooted-code rule, so connected tangles are produced without ever placing a
block that nothing points at.  Disconnected tangles are not enumerated.

A hot-loop version of the same search lives in ``_kernels`` and is used
automatically for larger sizes; this module's generator is the readable
reference implementation and the fallback.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .perms import Perm, conjugate
from .codes import canonical_code, canonical_code_stats
from .diagrams import (
    LinkDiagram,
    TangleDiagram,
    genus,
    component_count,
    is_connected,
    has_self_energy,
)


def canonical_form(d: LinkDiagram) -> Perm:
    """Lexicographically minimal image list over all relabellings of ``d``.

    Two diagrams are relabelling-equivalent exactly when their canonical
    forms agree.  For tangles the minimum is over relabellings fixing the
    marked block pointwise.
    """
    return canonical_code(d.sigma, marked=isinstance(d, TangleDiagram))


def canonical_diagram(d: LinkDiagram) -> LinkDiagram:
    return type(d)(d.n, canonical_form(d))


# -- the relabelling group, for oracles and property tests -------------------


def relabelling_elements(n2: int, fix_marked: bool = False):
    """All relabellings of ``0..n2-1`` commuting with the block pairing.

    Factorially large; meant for small-size oracles only.
    """
    nb = n2 // 2 - (1 if fix_marked else 0)
    for bperm in itertools.permutations(range(nb)):
        for flips in itertools.product((0, 1), repeat=nb):
            g = [0] * n2
            for b in range(nb):
                g[2 * b] = 2 * bperm[b] + flips[b]
                g[2 * b + 1] = 2 * bperm[b] + 1 - flips[b]
            if fix_marked:
                g[n2 - 2] = n2 - 2
                g[n2 - 1] = n2 - 1
            yield tuple(g)


def canonical_form_bruteforce(d: LinkDiagram) -> Perm:
    """Minimum over the whole relabelling group; oracle for small ``n``."""
    marked = isinstance(d, TangleDiagram)
    return min(
        conjugate(g, d.sigma)
        for g in relabelling_elements(d.size, fix_marked=marked)
    )


# -- generation --------------------------------------------------------------


def _link_leaves(n2: int, allow_stall: bool):
    """All link sigma in rooted-normal form at root 0, lexicographically.

    ``allow_stall`` controls what happens when no block was forced into the
    next slot pair: prune (a stall means a disconnected prefix, the right
    choice when only connected diagrams are wanted) or auto-place the
    slot's own block and continue.
    """
    sigma = [-1] * n2
    used = [False] * n2

    def rec(p: int, m: int):
        if p == n2:
            yield tuple(sigma)
            return
        if p > m:
            if not allow_stall:
                return
            yield from rec(p, p + 1)  # auto-place block {p, p+1}
            return
        for v in range(min(m + 1, n2 - 1) + 1):
            if used[v]:
                continue
            sigma[p] = v
            used[v] = True
            yield from rec(p + 1, m + 2 if v == m + 1 else m)
            used[v] = False
        sigma[p] = -1

    yield from rec(0, 1)


def _tangle_leaves(n2: int):
    """Connected marked sigma in rooted-normal form at root 0.

    Slots below ``n2 - 2`` are filled in order with values that are either
    already-opened labels, the next fresh even label (opening a block), or
    a marked label.  On a stall the pending marked slots take over, exactly
    as in the rooted-code scan: the first one may open the stalled block
    (value = stall position) or spend its value on an old label and pass
    the stall to the second.  A stall is only resolvable when some earlier
    slot already took a marked value (``touched``): that is the bridge tying
    the scanned prefix to the marked crossing, and without it the prefix is
    a sealed piece nothing later can reach.  Leftover values go to the
    remaining marked slots at the end.  Every leaf is connected.
    """
    top = n2 - 2
    sigma = [-1] * n2
    used = [False] * n2

    def rec(p: int, m: int, pending: tuple[int, ...], touched: bool):
        if p == top:
            rest = [v for v in range(n2) if not used[v]]
            assert len(rest) == len(pending)
            for order in itertools.permutations(rest):
                for q, v in zip(pending, order):
                    sigma[q] = v
                if sigma[top] >= top and sigma[top + 1] >= top:
                    continue  # marked crossing sealed off from the rest
                yield tuple(sigma)
            for q in pending:
                sigma[q] = -1
            return
        if p > m:
            if not pending or not touched:
                return
            q, tail = pending[0], pending[1:]
            sigma[q] = p
            used[p] = True
            yield from rec(p, p + 1, tail, touched)  # opens block {p, p+1}
            used[p] = False
            old = [v for v in range(m + 1) if not used[v]]
            old += [v for v in (top, top + 1) if not used[v]]
            for v in old:
                sigma[q] = v
                used[v] = True
                yield from rec(p, m, tail, touched)  # stall passes along
                used[v] = False
            sigma[q] = -1
            return
        choices = [v for v in range(m + 1) if not used[v]]
        if m + 1 < top:
            choices.append(m + 1)
        choices += [v for v in (top, top + 1) if not used[v]]
        for v in choices:
            sigma[p] = v
            used[v] = True
            opens = v == m + 1 and v < top
            yield from rec(p + 1, m + 2 if opens else m, pending, touched or v >= top)
            used[v] = False
        sigma[p] = -1

    yield from rec(0, 1, (top, top + 1), False)


@dataclass(frozen=True)
class CensusEntry:
    diagram: LinkDiagram
    genus: int
    components: int
    symmetry: int

    @property
    def code(self) -> str:
        return self.diagram.to_code()


def _kernel_entries(n: int, mode: str, no_self_energy: bool, genus_range):
    """Run the array state machine from ``_kernels`` and wrap its rows."""
    import numpy as np

    from . import _kernels

    marked = mode == "tangle"
    n2 = 2 * (n + 1) if marked else 2 * n
    h_min, h_max = genus_range if genus_range is not None else (0, n2)
    cap = 1 << 14
    while True:
        out_sigma = np.zeros((cap, n2), dtype=np.int16)
        out_meta = np.zeros((cap, 3), dtype=np.int16)
        machine = _kernels._tangle_census if marked else _kernels._link_census
        cnt = machine(n2, h_min, h_max, not no_self_energy, out_sigma, out_meta)
        if cnt == -3:
            cap *= 8
            continue
        if cnt == -2:
            raise AssertionError("connected tangle with nontrivial stabilizer")
        if cnt == -4:
            raise AssertionError("generator let a disconnected diagram through")
        break
    rows = sorted(
        (tuple(int(x) for x in out_sigma[i]), i) for i in range(cnt)
    )
    for sigma, i in rows:
        d: LinkDiagram = TangleDiagram(n + 1, sigma) if marked else LinkDiagram(n, sigma)
        yield CensusEntry(
            d, int(out_meta[i, 0]), int(out_meta[i, 1]), int(out_meta[i, 2])
        )


def enumerate_diagrams(
    n: int,
    mode: str = "link",
    connected: bool = True,
    no_self_energy: bool = True,
    genus_range: tuple[int, int] | None = None,
    engine: str = "auto",
):
    """Stream of canonical diagrams with ``n`` crossings, one per class.

    For tangles ``n`` counts *real* crossings (the marked one is extra).
    Emission order is sorted by code.  Each entry carries genus, component
    count and the symmetry order (for tangles the stabilizer is checked to
    be trivial, so symmetry is always 1 there).

    ``engine`` picks the implementation: ``"reference"`` is the recursive
    generator below, ``"kernel"`` the array state machine from
    ``_kernels``, and ``"auto"`` uses the kernel whenever it is compiled.
    Both produce identical streams.
    """
    if mode not in ("link", "tangle"):
        raise ValueError(f"mode must be 'link' or 'tangle': {mode!r}")
    marked = mode == "tangle"
    if marked and not connected:
        raise ValueError("tangle enumeration only covers connected diagrams")
    n2 = 2 * (n + 1) if marked else 2 * n
    if n < 1:
        raise ValueError("need at least one crossing")
    if engine not in ("auto", "reference", "kernel"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "auto":
        from . import _kernels

        engine = "kernel" if (_kernels.JIT_ENABLED and connected) else "reference"
    if engine == "kernel":
        if not connected:
            raise ValueError("the kernel engine only enumerates connected diagrams")
        yield from _kernel_entries(n, mode, no_self_energy, genus_range)
        return

    # Stall decisions write the marked slots out of tuple order, so the
    # tangle stream needs an explicit sort to come out lexicographic.
    leaves = sorted(_tangle_leaves(n2)) if marked else _link_leaves(n2, not connected)
    for sigma in leaves:
        if marked:
            d: LinkDiagram = TangleDiagram(n + 1, sigma)
        else:
            d = LinkDiagram(n, sigma)
        if connected:
            assert is_connected(d), "generator let a disconnected diagram through"
        h = genus(d)
        if genus_range is not None and not genus_range[0] <= h <= genus_range[1]:
            continue
        code, mult = canonical_code_stats(sigma, marked)
        if code != sigma:
            continue
        if connected and marked:
            assert mult == 1, "connected tangle with nontrivial stabilizer"
        if no_self_energy and has_self_energy(d):
            continue
        roots = n2 - 2 if marked else n2
        assert connected is False or roots % mult == 0
        yield CensusEntry(d, h, component_count(d), mult)


# -- counting ----------------------------------------------------------------


@dataclass
class CountTable:
    """Counts of canonical diagrams indexed by (crossings, genus)."""

    mode: str
    connected: bool
    no_self_energy: bool
    counts: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def row(self, n: int) -> dict[int, int]:
        return {h: c for (m, h), c in sorted(self.counts.items()) if m == n}


def count_table(
    n_max: int,
    mode: str = "link",
    connected: bool = True,
    no_self_energy: bool = True,
) -> CountTable:
    table = CountTable(mode, connected, no_self_energy)
    for n in range(1, n_max + 1):
        for entry in enumerate_diagrams(n, mode, connected, no_self_energy):
            key = (n, entry.genus)
            table.counts[key] = table.counts.get(key, 0) + 1
    return table


def weighted_link_counts(n_max: int) -> dict[tuple[int, int], Fraction]:
    """Sum of 1/symmetry over connected link diagrams, by (n, genus).

    Self-energies are allowed here: these are the free-energy weights.
    """
    out: dict[tuple[int, int], Fraction] = {}
    for n in range(1, n_max + 1):
        for entry in enumerate_diagrams(n, "link", connected=True, no_self_energy=False):
            key = (n, entry.genus)
            out[key] = out.get(key, Fraction(0)) + Fraction(1, entry.symmetry)
    return out
