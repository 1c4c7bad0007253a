"""Pure-Python oracle kernels.

Semantics mirror the compiled extension bit for bit (same iteration order,
same verdicts, same witnesses); this module is the fallback when the
extension is unavailable and the reference the extension is tested against.
Masks are Python ints, so formulas are not limited to 64 closure nodes.
"""

from __future__ import annotations

import time

from .encode import K_AND, K_ATOM, K_FALSE, K_NEXT, K_NOTATOM, K_OR, K_RELEASE, K_TRUE, K_UNTIL

SAT, UNSAT, TIMEOUT = 1, 0, 2


def _consistent_states(kinds, left, right, max_states):
    """All maximal consistent closure subsets, as bitmasks over nodes."""
    n = len(kinds)
    dec = [i for i in range(n) if kinds[i] in (K_ATOM, K_NEXT, K_UNTIL, K_RELEASE)]
    if 1 << len(dec) > max_states:
        return None
    states = []
    for bits in range(1 << len(dec)):
        val = [False] * n
        for j, i in enumerate(dec):
            val[i] = bool(bits >> j & 1)
        ok = True
        for i in range(n):
            k = kinds[i]
            if k == K_TRUE:
                val[i] = True
            elif k == K_FALSE:
                val[i] = False
            elif k == K_NOTATOM:
                val[i] = not val[left[i]]
            elif k == K_AND:
                val[i] = val[left[i]] and val[right[i]]
            elif k == K_OR:
                val[i] = val[left[i]] or val[right[i]]
            elif k == K_UNTIL:
                u, l, r = val[i], val[left[i]], val[right[i]]
                if (r and not u) or (u and not (l or r)):
                    ok = False
                    break
            elif k == K_RELEASE:
                v, l, r = val[i], val[left[i]], val[right[i]]
                if (v and not r) or (l and r and not v):
                    ok = False
                    break
        if ok:
            mask = 0
            for i in range(n):
                if val[i]:
                    mask |= 1 << i
            states.append(mask)
    return states


def _forced_masks(kinds, left, right, states):
    """Per state: bits a successor must contain / must avoid."""
    fin, fout = [], []
    for s in states:
        fi = fo = 0
        for i in range(len(kinds)):
            k = kinds[i]
            if k == K_NEXT:
                if s >> i & 1:
                    fi |= 1 << left[i]
                else:
                    fo |= 1 << left[i]
            elif k == K_UNTIL:
                if s >> i & 1:
                    if not s >> right[i] & 1:
                        fi |= 1 << i
                elif s >> left[i] & 1:
                    fo |= 1 << i
            elif k == K_RELEASE:
                if s >> i & 1:
                    if not s >> left[i] & 1:
                        fi |= 1 << i
                elif s >> right[i] & 1:
                    fo |= 1 << i
        fin.append(fi)
        fout.append(fo)
    return fin, fout


def _tableau_graph(kinds, left, right, max_states):
    states = _consistent_states(kinds, left, right, max_states)
    if states is None or len(states) > max_states:
        return None
    fin, fout = _forced_masks(kinds, left, right, states)
    return states, fin, fout


def _succ(states, fin, fout, v):
    fi, fo = fin[v], fout[v]
    return [w for w, t in enumerate(states) if t & fi == fi and not t & fo]


def _fair(scc, states, eventualities):
    for u, r in eventualities:
        if not any(not states[w] >> u & 1 or states[w] >> r & 1 for w in scc):
            return False
    return True


def _fair_sccs(kinds, left, right, states, fin, fout, initials, deadline):
    """Tarjan from the initial states; yields fair non-trivial SCCs."""
    eventualities = [(i, right[i]) for i in range(len(kinds)) if kinds[i] == K_UNTIL]
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    counter = [0]

    for start in initials:
        if start in index:
            continue
        work = [(start, None, iter(_succ(states, fin, fout, start)))]
        index[start] = lowlink[start] = counter[0]
        counter[0] += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            if deadline is not None and time.monotonic() > deadline:
                yield TIMEOUT
                return
            v, parent, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, v, iter(_succ(states, fin, fout, w))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if parent is not None:
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.append(w)
                    if w == v:
                        break
                nontrivial = len(scc) > 1 or (states[v] & fin[v] == fin[v] and not states[v] & fout[v])
                if nontrivial and _fair(scc, states, eventualities):
                    yield scc


def tableau_sat(kinds, left, right, max_states, time_budget):
    """Decide satisfiability of an encoded NNF formula; returns SAT/UNSAT/TIMEOUT."""
    kinds, left, right = list(kinds), list(left), list(right)
    graph = _tableau_graph(kinds, left, right, max_states)
    if graph is None:
        return TIMEOUT
    states, fin, fout = graph
    root = len(kinds) - 1
    initials = [i for i, s in enumerate(states) if s >> root & 1]
    deadline = time.monotonic() + time_budget if time_budget else None
    for res in _fair_sccs(kinds, left, right, states, fin, fout, initials, deadline):
        if res == TIMEOUT:
            return TIMEOUT
        return SAT
    return UNSAT


def _state_letter(s, kinds, atom_id):
    letter = 0
    for i in range(len(kinds)):
        if kinds[i] == K_ATOM and s >> i & 1:
            letter |= 1 << atom_id[i]
    return letter


def _bfs_path(states, fin, fout, sources, targets, within=None):
    """Shortest path from any source to any target; list of state indices."""
    from collections import deque

    parent = {s: None for s in sources}
    dq = deque(sources)
    while dq:
        v = dq.popleft()
        if v in targets:
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in _succ(states, fin, fout, v):
            if w not in parent and (within is None or w in within):
                parent[w] = v
                dq.append(w)
    return None


def tableau_witness(kinds, left, right, atom_id, max_states, time_budget):
    """Like tableau_sat but extracts a satisfying lasso on SAT.

    Returns (status, prefix_letters, period_letters); letters are atom
    bitmasks in the encoding's atom order.
    """
    kinds, left, right, atom_id = list(kinds), list(left), list(right), list(atom_id)
    graph = _tableau_graph(kinds, left, right, max_states)
    if graph is None:
        return TIMEOUT, None, None
    states, fin, fout = graph
    root = len(kinds) - 1
    initials = [i for i, s in enumerate(states) if s >> root & 1]
    deadline = time.monotonic() + time_budget if time_budget else None
    for res in _fair_sccs(kinds, left, right, states, fin, fout, initials, deadline):
        if res == TIMEOUT:
            return TIMEOUT, None, None
        scc = res
        members = set(scc)
        entry = _bfs_path(states, fin, fout, initials, members)
        prefix_states, cycle_start = entry[:-1], entry[-1]
        # closed walk through every SCC state, so each eventuality is served
        walk = [cycle_start]
        for target in scc:
            if target == walk[-1]:
                continue
            hop = _bfs_path(states, fin, fout, [walk[-1]], {target}, within=members)
            walk.extend(hop[1:])
        if len(walk) > 1 and walk[-1] == cycle_start:
            walk.pop()  # the wrap-around provides the closing edge
        elif walk[-1] != cycle_start:
            back = _bfs_path(states, fin, fout, [walk[-1]], {cycle_start}, within=members)
            walk.extend(back[1:-1])
        # single-state fair SCCs are non-trivial, hence self-looping
        prefix = [_state_letter(states[v], kinds, atom_id) for v in prefix_states]
        period = [_state_letter(states[v], kinds, atom_id) for v in walk]
        return SAT, prefix, period
    return UNSAT, None, None


def _rot1(mask, q):
    return (mask >> 1) | ((mask & 1) << (q - 1))


def _cycle_truth(kinds, left, right, atom_id, letters, q):
    """Truth of each node at each cycle position, as bitmasks over positions."""
    full = (1 << q) - 1
    cyc = [0] * len(kinds)
    for i in range(len(kinds)):
        k = kinds[i]
        if k == K_TRUE:
            cyc[i] = full
        elif k == K_FALSE:
            cyc[i] = 0
        elif k == K_ATOM:
            m = 0
            for pos in range(q):
                if letters[pos] >> atom_id[i] & 1:
                    m |= 1 << pos
            cyc[i] = m
        elif k == K_NOTATOM:
            cyc[i] = ~cyc[left[i]] & full
        elif k == K_AND:
            cyc[i] = cyc[left[i]] & cyc[right[i]]
        elif k == K_OR:
            cyc[i] = cyc[left[i]] | cyc[right[i]]
        elif k == K_NEXT:
            cyc[i] = _rot1(cyc[left[i]], q)
        elif k == K_UNTIL:
            l, r = cyc[left[i]], cyc[right[i]]
            v = r
            while True:
                nv = r | (l & _rot1(v, q))
                if nv == v:
                    break
                v = nv
            cyc[i] = v
        elif k == K_RELEASE:
            l, r = cyc[left[i]], cyc[right[i]]
            v = full
            while True:
                nv = r & (l | _rot1(v, q))
                if nv == v:
                    break
                v = nv
            cyc[i] = v
    return cyc


def _extend(kinds, left, right, atom_id, letter, succ_vec):
    """Node truths one position earlier, given the letter there and the next vector."""
    out = 0
    for i in range(len(kinds)):
        k = kinds[i]
        if k == K_TRUE:
            b = 1
        elif k == K_FALSE:
            b = 0
        elif k == K_ATOM:
            b = letter >> atom_id[i] & 1
        elif k == K_NOTATOM:
            b = 1 - (out >> left[i] & 1)
        elif k == K_AND:
            b = out >> left[i] & out >> right[i] & 1
        elif k == K_OR:
            b = (out >> left[i] | out >> right[i]) & 1
        elif k == K_NEXT:
            b = succ_vec >> left[i] & 1
        elif k == K_UNTIL:
            b = (out >> right[i] | (out >> left[i] & succ_vec >> i)) & 1
        else:  # K_RELEASE
            b = out >> right[i] & (out >> left[i] | succ_vec >> i) & 1
        out |= b << i
    return out


def lasso_search(kinds, left, right, atom_id, n_atoms, max_prefix, max_period):
    """Search for a satisfying lasso within the bounds.

    Returns (prefix_letters, period_letters) or None. Periods are enumerated
    shortest first; for each, achievable truth vectors are propagated
    backwards through up to max_prefix free positions.
    """
    kinds, left, right, atom_id = list(kinds), list(left), list(right), list(atom_id)
    n = len(kinds)
    root = n - 1
    n_letters = 1 << n_atoms
    for q in range(1, max_period + 1):
        for code in range(n_letters**q):
            letters = [(code // n_letters**i) % n_letters for i in range(q)]
            cyc = _cycle_truth(kinds, left, right, atom_id, letters, q)
            entry = 0
            for i in range(n):
                entry |= (cyc[i] & 1) << i
            if entry >> root & 1:
                return [], letters
            seen = {entry}
            pool = [(entry, -1, -1)]  # vector, letter, parent pool index
            frontier = [0]
            for _ in range(max_prefix):
                nxt = []
                for pi in frontier:
                    vec = pool[pi][0]
                    for x in range(n_letters):
                        nv = _extend(kinds, left, right, atom_id, x, vec)
                        if nv in seen:
                            continue
                        seen.add(nv)
                        pool.append((nv, x, pi))
                        if nv >> root & 1:
                            prefix = []
                            j = len(pool) - 1
                            while pool[j][1] != -1:
                                prefix.append(pool[j][1])
                                j = pool[j][2]
                            return prefix, letters
                        nxt.append(len(pool) - 1)
                if not nxt:
                    break
                frontier = nxt
    return None
