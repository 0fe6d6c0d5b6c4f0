"""Array state machines for the census hot path.

Everything here is written against numpy arrays so the same source runs two
ways: compiled by numba when it is importable and ``VTANGLE_JIT`` is not
``0`` (the default), or interpreted as plain numpy otherwise.  The public
entry points return flat arrays; ``census`` wraps them back into diagram
objects.  The recursive generators in ``census`` remain the readable
reference implementation, and the test suite holds the two paths to
byte-identical output.

Layout of the search state mirrors the reference: ``sigma`` is filled slot
by slot, ``m`` is the highest opened label, a two-bit mask tracks which
marked slots are still pending, and each stack frame remembers the choice
it last tried so backtracking can resume after it.
"""

from __future__ import annotations

import os

import numpy as np

JIT_ENABLED = os.environ.get("VTANGLE_JIT", "1").lower() not in ("0", "false", "no")

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        JIT_ENABLED = False

if not JIT_ENABLED:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


# -- small helpers -----------------------------------------------------------


@njit(cache=True)
def _cycle_count(p, seen):
    seen[:] = 0
    count = 0
    for start in range(p.shape[0]):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = 1
            x = p[x]
    return count


@njit(cache=True)
def _cycle_ids(p, ids):
    ids[:] = -1
    k = 0
    for start in range(p.shape[0]):
        if ids[start] >= 0:
            continue
        x = start
        while ids[x] < 0:
            ids[x] = k
            x = p[x]
        k += 1
    return k


@njit(cache=True)
def _orbit_covers(sigma, tau, a, b, seen, stack):
    """Size of the orbit of 0 under the two maps composed with swap(a, b)."""
    n2 = sigma.shape[0]
    seen[:] = 0
    seen[0] = 1
    stack[0] = 0
    sp = 1
    size = 1
    while sp > 0:
        sp -= 1
        x = stack[sp]
        y = x
        if y == a:
            y = b
        elif y == b:
            y = a
        for nxt in (sigma[y], tau[y]):
            if not seen[nxt]:
                seen[nxt] = 1
                size += 1
                stack[sp] = nxt
                sp += 1
    return size


@njit(cache=True)
def _self_energy(sigma, tau, sid, tid, seen, stack):
    n2 = sigma.shape[0]
    _cycle_ids(sigma, sid)
    _cycle_ids(tau, tid)
    for a in range(n2):
        for b in range(a + 1, n2):
            if sid[a] == sid[b] and tid[a] == tid[b]:
                if _orbit_covers(sigma, tau, a, b, seen, stack) < n2:
                    return True
    return False


@njit(cache=True)
def _components(sigma, tau, it, rr, seen):
    """Strand count: half the cycles of the pairing-composed under map."""
    n2 = sigma.shape[0]
    for i in range(n2):
        it[tau[i]] = i
    for i in range(n2):
        rr[i] = sigma[it[i]] ^ 1
    return _cycle_count(rr, seen) // 2


# -- rooted codes ------------------------------------------------------------


@njit(cache=True)
def _rooted_into(sigma, root, marked, g, occ, code):
    """Promotion scan; fills ``code`` and returns False on disconnection."""
    n2 = sigma.shape[0]
    g[:] = -1
    occ[:] = -1
    pend0 = False
    pend1 = False
    if marked:
        g[n2 - 2] = n2 - 2
        g[n2 - 1] = n2 - 1
        occ[n2 - 2] = n2 - 2
        occ[n2 - 1] = n2 - 1
        pend0 = True
        pend1 = True
    g[root] = 0
    g[root ^ 1] = 1
    occ[0] = root
    occ[1] = root ^ 1
    free = 2
    p = 0
    while p < n2:
        if occ[p] < 0:
            while (pend0 or pend1) and occ[p] < 0:
                if pend0:
                    q = n2 - 2
                    pend0 = False
                else:
                    q = n2 - 1
                    pend1 = False
                v = sigma[occ[q]]
                if g[v] < 0:
                    g[v] = free
                    g[v ^ 1] = free + 1
                    occ[free] = v
                    occ[free + 1] = v ^ 1
                    free += 2
            if occ[p] < 0:
                return False
            continue
        v = sigma[occ[p]]
        if g[v] < 0:
            g[v] = free
            g[v ^ 1] = free + 1
            occ[free] = v
            occ[free + 1] = v ^ 1
            free += 2
        p += 1
    for i in range(n2):
        code[i] = g[sigma[occ[i]]]
    return True


@njit(cache=True)
def _canon_stats(sigma, marked, g, occ, code):
    """(-1, 0) on disconnection, else (1 if canonical else 0, multiplicity).

    Stops early as soon as some rooted code is smaller than ``sigma``.
    """
    n2 = sigma.shape[0]
    limit = n2 - 2 if marked else n2
    mult = 0
    for root in range(limit):
        if not _rooted_into(sigma, root, marked, g, occ, code):
            return -1, 0
        cmp = 0
        for i in range(n2):
            if code[i] != sigma[i]:
                cmp = -1 if code[i] < sigma[i] else 1
                break
        if cmp < 0:
            return 0, 0
        if cmp == 0:
            mult += 1
    return 1, mult


# -- census state machines ---------------------------------------------------

_REGULAR = 0
_STALL = 1
_END = 2


@njit(cache=True)
def _push_filters(sigma, n, marked, h_min, h_max, keep_self_energy,
                  tau, g, occ, code, it, rr, sid, tid, seen, stack,
                  out_sigma, out_meta, count):
    """Run the leaf filter chain; returns the new row count (or -2 on a
    symmetry violation, -3 on buffer overflow)."""
    n2 = sigma.shape[0]
    for i in range(n2):
        tau[i] = sigma[i ^ 1]
    cs = _cycle_count(sigma, seen)
    ct = _cycle_count(tau, seen)
    h = 1 - (cs + ct - n) // 2
    if h < h_min or h > h_max:
        return count
    ok, mult = _canon_stats(sigma, marked, g, occ, code)
    if ok < 0:
        return -4  # a generated leaf must never be disconnected
    if ok == 0:
        return count
    if marked and mult != 1:
        return -2
    if not keep_self_energy and _self_energy(sigma, tau, sid, tid, seen, stack):
        return count
    if count >= out_sigma.shape[0]:
        return -3
    for i in range(n2):
        out_sigma[count, i] = sigma[i]
    out_meta[count, 0] = h
    out_meta[count, 1] = _components(sigma, tau, it, rr, seen)
    out_meta[count, 2] = mult
    return count + 1


@njit(cache=True)
def _link_census(n2, h_min, h_max, keep_self_energy, out_sigma, out_meta):
    """Connected link diagrams, canonical only, in lexicographic order."""
    n = n2 // 2
    sigma = np.full(n2, -1, np.int64)
    used = np.zeros(n2, np.uint8)
    f_m = np.zeros(n2 + 1, np.int64)
    f_v = np.full(n2 + 1, -1, np.int64)
    tau = np.zeros(n2, np.int64)
    g = np.zeros(n2, np.int64)
    occ = np.zeros(n2, np.int64)
    code = np.zeros(n2, np.int64)
    it = np.zeros(n2, np.int64)
    rr = np.zeros(n2, np.int64)
    sid = np.zeros(n2, np.int64)
    tid = np.zeros(n2, np.int64)
    seen = np.zeros(n2, np.uint8)
    stack = np.zeros(n2, np.int64)

    count = 0
    sp = 0
    f_m[0] = 1
    f_v[0] = -1
    while sp >= 0:
        p = sp
        m = f_m[sp]
        # withdraw the previous choice at this slot
        if f_v[sp] >= 0:
            used[f_v[sp]] = 0
            sigma[p] = -1
        # next value in scan order: unused in 0..m, then m+1
        v = f_v[sp] + 1
        while v <= m and used[v]:
            v += 1
        if v > m + 1 or v >= n2 or (v == m + 1 and used[v]):
            f_v[sp] = -1
            sp -= 1
            continue
        f_v[sp] = v
        sigma[p] = v
        used[v] = 1
        child_m = m + 2 if v == m + 1 else m
        if p + 1 == n2:
            count = _push_filters(sigma, n, False, h_min, h_max,
                                  keep_self_energy, tau, g, occ, code, it, rr,
                                  sid, tid, seen, stack, out_sigma, out_meta,
                                  count)
            if count < 0:
                return count
            continue
        if p + 1 > child_m:
            continue  # stalled prefix: disconnected, prune
        sp += 1
        f_m[sp] = child_m
        f_v[sp] = -1
    return count


@njit(cache=True)
def _tangle_census(n2, h_min, h_max, keep_self_energy, out_sigma, out_meta):
    """Connected marked diagrams, canonical only.

    Frames come in three kinds.  A regular frame decides one slot below the
    marked pair; a stall frame spends a pending marked slot on a value (its
    first choice opens the stalled block); an end frame deals the leftover
    values onto whichever marked slots are still pending.  The emitted rows
    are in generation order, not lexicographic order; the caller sorts.
    """
    n = n2 // 2
    top = n2 - 2
    sigma = np.full(n2, -1, np.int64)
    used = np.zeros(n2, np.uint8)
    cap = n2 + 4
    f_kind = np.zeros(cap, np.int64)
    f_p = np.zeros(cap, np.int64)
    f_m = np.zeros(cap, np.int64)
    f_pend = np.zeros(cap, np.int64)  # bit 0: slot top, bit 1: slot top+1
    f_touch = np.zeros(cap, np.int64)
    f_q = np.zeros(cap, np.int64)
    f_v = np.full(cap, -1, np.int64)
    tau = np.zeros(n2, np.int64)
    g = np.zeros(n2, np.int64)
    occ = np.zeros(n2, np.int64)
    code = np.zeros(n2, np.int64)
    it = np.zeros(n2, np.int64)
    rr = np.zeros(n2, np.int64)
    sid = np.zeros(n2, np.int64)
    tid = np.zeros(n2, np.int64)
    seen = np.zeros(n2, np.uint8)
    stack = np.zeros(n2, np.int64)

    count = 0
    sp = 0
    f_kind[0] = _REGULAR
    f_p[0] = 0
    f_m[0] = 1
    f_pend[0] = 3
    f_touch[0] = 0
    f_v[0] = -1

    while sp >= 0:
        kind = f_kind[sp]

        if kind == _END:
            pend = f_pend[sp]
            s0 = top if pend & 1 else top + 1
            s1 = top + 1
            k = (1 if pend & 1 else 0) + (1 if pend & 2 else 0)
            # leftover values, at most two
            r0 = -1
            r1 = -1
            for v in range(n2):
                if not used[v]:
                    if r0 < 0:
                        r0 = v
                    else:
                        r1 = v
            c = f_v[sp] + 1
            emitted = False
            while c <= (1 if k == 2 else 0):
                if k == 1:
                    sigma[s0] = r0
                elif k == 2:
                    sigma[s0] = r0 if c == 0 else r1
                    sigma[s1] = r1 if c == 0 else r0
                if sigma[top] >= top and sigma[top + 1] >= top:
                    c += 1  # marked crossing sealed off from the rest
                    continue
                count = _push_filters(sigma, n, True, h_min, h_max,
                                      keep_self_energy, tau, g, occ, code,
                                      it, rr, sid, tid, seen, stack,
                                      out_sigma, out_meta, count)
                if count < 0:
                    return count
                f_v[sp] = c
                emitted = True
                break
            if not emitted:
                if pend & 1:
                    sigma[top] = -1
                if pend & 2:
                    sigma[top + 1] = -1
                f_v[sp] = -1
                sp -= 1
            continue

        if kind == _STALL:
            p = f_p[sp]
            m = f_m[sp]
            q = f_q[sp]
            if f_v[sp] >= 0:
                used[f_v[sp]] = 0
                sigma[q] = -1
            if f_v[sp] < 0:
                v = p  # opening move first
            else:
                v = 0 if f_v[sp] == p else f_v[sp] + 1
                while v <= m and used[v]:
                    v += 1
                if m < v < top:
                    v = top
                if v == top and used[top]:
                    v = top + 1
                if v == top + 1 and used[top + 1]:
                    v = top + 2
            if v > top + 1:
                f_v[sp] = -1
                sp -= 1
                continue
            f_v[sp] = v
            sigma[q] = v
            used[v] = 1
            child_m = p + 1 if v == p else m
            child_p = p
            child_pend = f_pend[sp]
            child_touch = f_touch[sp]
        else:
            p = f_p[sp]
            m = f_m[sp]
            if f_v[sp] >= 0:
                used[f_v[sp]] = 0
                sigma[p] = -1
            v = f_v[sp] + 1
            while v <= m and used[v]:
                v += 1
            if v == m + 1 and m + 1 >= top:
                v = top
            if m + 1 < v < top:
                v = top
            if v == top and used[top]:
                v = top + 1
            if v == top + 1 and used[top + 1]:
                v = top + 2
            if v > top + 1:
                f_v[sp] = -1
                sp -= 1
                continue
            f_v[sp] = v
            sigma[p] = v
            used[v] = 1
            opens = v == m + 1 and v < top
            child_m = m + 2 if opens else m
            child_p = p + 1
            child_pend = f_pend[sp]
            child_touch = 1 if (f_touch[sp] or v >= top) else 0

        # push the child frame unless it is dead on arrival
        if child_p == top:
            sp += 1
            f_kind[sp] = _END
            f_pend[sp] = child_pend
            f_v[sp] = -1
        elif child_p > child_m:
            if child_pend == 0 or child_touch == 0:
                continue  # sealed prefix, nothing can reach it
            sp += 1
            f_kind[sp] = _STALL
            f_p[sp] = child_p
            f_m[sp] = child_m
            f_q[sp] = top if child_pend & 1 else top + 1
            f_pend[sp] = child_pend & ~(1 if child_pend & 1 else 2)
            f_touch[sp] = child_touch
            f_v[sp] = -1
        else:
            sp += 1
            f_kind[sp] = _REGULAR
            f_p[sp] = child_p
            f_m[sp] = child_m
            f_pend[sp] = child_pend
            f_touch[sp] = child_touch
            f_v[sp] = -1
    return count
