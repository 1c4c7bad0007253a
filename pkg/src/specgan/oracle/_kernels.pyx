# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled oracle kernels: tableau satisfiability and bounded-lasso search.

Twin of specgan.oracle.pykernels with identical verdicts, iteration order and
witnesses; closure masks are uint64, so formulas are limited to 63 unique
subformulas (the wrapper falls back to the Python kernel beyond that).
"""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc
from libc.time cimport clock, CLOCKS_PER_SEC

ctypedef unsigned long long u64

cdef enum:
    K_FALSE = 0
    K_TRUE = 1
    K_ATOM = 2
    K_NOTATOM = 3
    K_AND = 4
    K_OR = 5
    K_NEXT = 6
    K_UNTIL = 7
    K_RELEASE = 8

SAT, UNSAT, TIMEOUT = 1, 0, 2


cdef double _now() noexcept:
    return <double>clock() / CLOCKS_PER_SEC


cdef struct Graph:
    u64 *states
    u64 *fin
    u64 *fout
    long n_states


cdef int _build_graph(const unsigned char[:] kinds, const int[:] left, const int[:] right,
                      long max_states, Graph *out) except -1:
    """Enumerate consistent states and forced-successor masks. Returns 0 ok, 2 budget."""
    cdef int n = kinds.shape[0]
    cdef int dec[64]
    cdef int n_dec = 0
    cdef int i, j, k
    cdef bint val[64]
    cdef bint ok, u, l, r
    cdef u64 bits, mask, cap
    cdef long count = 0

    for i in range(n):
        k = kinds[i]
        if k == K_ATOM or k == K_NEXT or k == K_UNTIL or k == K_RELEASE:
            dec[n_dec] = i
            n_dec += 1
    if n_dec >= 63 or (<u64>1 << n_dec) > <u64>max_states:
        return 2

    cap = <u64>1 << n_dec
    out.states = <u64 *>malloc(cap * sizeof(u64))
    out.fin = <u64 *>malloc(cap * sizeof(u64))
    out.fout = <u64 *>malloc(cap * sizeof(u64))
    if out.states == NULL or out.fin == NULL or out.fout == NULL:
        raise MemoryError()

    for bits in range(cap):
        for j in range(n_dec):
            val[dec[j]] = (bits >> j) & 1
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
                u = val[i]; l = val[left[i]]; r = val[right[i]]
                if (r and not u) or (u and not (l or r)):
                    ok = False
                    break
            elif k == K_RELEASE:
                u = val[i]; l = val[left[i]]; r = val[right[i]]
                if (u and not r) or (l and r and not u):
                    ok = False
                    break
        if not ok:
            continue
        mask = 0
        for i in range(n):
            if val[i]:
                mask |= <u64>1 << i
        out.states[count] = mask
        count += 1
    out.n_states = count

    cdef u64 s, fi, fo
    for j in range(count):
        s = out.states[j]
        fi = 0
        fo = 0
        for i in range(n):
            k = kinds[i]
            if k == K_NEXT:
                if (s >> i) & 1:
                    fi |= <u64>1 << left[i]
                else:
                    fo |= <u64>1 << left[i]
            elif k == K_UNTIL:
                if (s >> i) & 1:
                    if not (s >> right[i]) & 1:
                        fi |= <u64>1 << i
                elif (s >> left[i]) & 1:
                    fo |= <u64>1 << i
            elif k == K_RELEASE:
                if (s >> i) & 1:
                    if not (s >> left[i]) & 1:
                        fi |= <u64>1 << i
                elif (s >> right[i]) & 1:
                    fo |= <u64>1 << i
        out.fin[j] = fi
        out.fout[j] = fo
    return 0


cdef void _free_graph(Graph *gr) noexcept:
    free(gr.states); free(gr.fin); free(gr.fout)


def tableau_sat(kinds_arr, left_arr, right_arr, long max_states, double time_budget):
    """Tarjan over the reachable tableau graph, hunting a fair non-trivial SCC."""
    cdef const unsigned char[:] kinds = np.ascontiguousarray(kinds_arr, dtype=np.uint8)
    cdef const int[:] left = np.ascontiguousarray(left_arr, dtype=np.int32)
    cdef const int[:] right = np.ascontiguousarray(right_arr, dtype=np.int32)
    cdef int n = kinds.shape[0]
    cdef Graph gr
    if _build_graph(kinds, left, right, max_states, &gr) == 2:
        return TIMEOUT

    cdef long S = gr.n_states
    cdef int root = n - 1
    cdef int n_ev = 0
    cdef int ev_u[64]
    cdef int ev_r[64]
    cdef int i
    for i in range(n):
        if kinds[i] == K_UNTIL:
            ev_u[n_ev] = i
            ev_r[n_ev] = right[i]
            n_ev += 1

    # Tarjan scratch
    cdef long *index = <long *>malloc(S * sizeof(long))
    cdef long *lowlink = <long *>malloc(S * sizeof(long))
    cdef bint *onstack = <bint *>malloc(S * sizeof(bint))
    cdef long *stack = <long *>malloc(S * sizeof(long))
    cdef long *fr_node = <long *>malloc(S * sizeof(long))
    cdef long *fr_next = <long *>malloc(S * sizeof(long))
    cdef long *scc_buf = <long *>malloc(S * sizeof(long))
    if index == NULL or lowlink == NULL or onstack == NULL or stack == NULL \
            or fr_node == NULL or fr_next == NULL or scc_buf == NULL:
        _free_graph(&gr)
        raise MemoryError()

    cdef long counter = 0, sp = 0, fp, v, w, cand, start, scc_len, e
    cdef u64 fi, fo, t
    cdef bint fair, served, advanced
    cdef int result = UNSAT
    cdef double deadline = _now() + time_budget
    cdef long ticks = 0

    for i in range(S):
        index[i] = -1
        onstack[i] = False

    try:
        for start in range(S):
            if result != UNSAT:
                break
            if not (gr.states[start] >> root) & 1 or index[start] >= 0:
                continue
            index[start] = counter; lowlink[start] = counter; counter += 1
            stack[sp] = start; sp += 1; onstack[start] = True
            fr_node[0] = start; fr_next[0] = 0
            fp = 1
            while fp > 0:
                v = fr_node[fp - 1]
                fi = gr.fin[v]; fo = gr.fout[v]
                advanced = False
                cand = fr_next[fp - 1]
                while cand < S:
                    ticks += 1
                    if ticks & 0xFFFF == 0 and _now() > deadline:
                        result = TIMEOUT
                        break
                    t = gr.states[cand]
                    if (t & fi) == fi and (t & fo) == 0:
                        w = cand
                        if index[w] < 0:
                            fr_next[fp - 1] = cand + 1
                            index[w] = counter; lowlink[w] = counter; counter += 1
                            stack[sp] = w; sp += 1; onstack[w] = True
                            fr_node[fp] = w; fr_next[fp] = 0
                            fp += 1
                            advanced = True
                            break
                        if onstack[w] and index[w] < lowlink[v]:
                            lowlink[v] = index[w]
                    cand += 1
                if result != UNSAT:
                    break
                if advanced:
                    continue
                fp -= 1
                if fp > 0 and lowlink[v] < lowlink[fr_node[fp - 1]]:
                    lowlink[fr_node[fp - 1]] = lowlink[v]
                if lowlink[v] == index[v]:
                    scc_len = 0
                    while True:
                        w = stack[sp - 1]; sp -= 1; onstack[w] = False
                        scc_buf[scc_len] = w; scc_len += 1
                        if w == v:
                            break
                    t = gr.states[v]
                    if scc_len > 1 or ((t & gr.fin[v]) == gr.fin[v] and (t & gr.fout[v]) == 0):
                        fair = True
                        for e in range(n_ev):
                            served = False
                            for w in range(scc_len):
                                t = gr.states[scc_buf[w]]
                                if not (t >> ev_u[e]) & 1 or (t >> ev_r[e]) & 1:
                                    served = True
                                    break
                            if not served:
                                fair = False
                                break
                        if fair:
                            result = SAT
                            break
    finally:
        free(index); free(lowlink); free(onstack); free(stack)
        free(fr_node); free(fr_next); free(scc_buf)
        _free_graph(&gr)
    return result


cdef u64 _rot1(u64 mask, int q) noexcept:
    return (mask >> 1) | ((mask & 1) << (q - 1))


cdef u64 _extend(const unsigned char[:] kinds, const int[:] left, const int[:] right,
                 const int[:] atom_id, int n, u64 letter, u64 succ_vec) noexcept:
    cdef u64 out = 0
    cdef u64 b
    cdef int i, k
    for i in range(n):
        k = kinds[i]
        if k == K_TRUE:
            b = 1
        elif k == K_FALSE:
            b = 0
        elif k == K_ATOM:
            b = (letter >> atom_id[i]) & 1
        elif k == K_NOTATOM:
            b = 1 ^ ((out >> left[i]) & 1)
        elif k == K_AND:
            b = (out >> left[i]) & (out >> right[i]) & 1
        elif k == K_OR:
            b = ((out >> left[i]) | (out >> right[i])) & 1
        elif k == K_NEXT:
            b = (succ_vec >> left[i]) & 1
        elif k == K_UNTIL:
            b = ((out >> right[i]) | ((out >> left[i]) & (succ_vec >> i))) & 1
        else:
            b = (out >> right[i]) & ((out >> left[i]) | (succ_vec >> i)) & 1
        out |= b << i
    return out


def lasso_search(kinds_arr, left_arr, right_arr, atom_id_arr, int n_atoms,
                 int max_prefix, int max_period):
    """Backward truth-vector propagation over every period within the bounds."""
    cdef const unsigned char[:] kinds = np.ascontiguousarray(kinds_arr, dtype=np.uint8)
    cdef const int[:] left = np.ascontiguousarray(left_arr, dtype=np.int32)
    cdef const int[:] right = np.ascontiguousarray(right_arr, dtype=np.int32)
    cdef const int[:] atom_id = np.ascontiguousarray(atom_id_arr, dtype=np.int32)
    cdef int n = kinds.shape[0]
    cdef int root = n - 1
    cdef u64 n_letters = <u64>1 << n_atoms
    if n > 63 or max_period > 32 or n_atoms > 32:
        raise ValueError("formula or bounds exceed compiled kernel limits")

    cdef u64 cyc[64]
    cdef u64 letters[32]
    cdef int q, i, k, pos
    cdef u64 code, n_codes, full, v, nv, l, r, entry, x, vec
    cdef u64 rem

    # growable pool of (vector, letter, parent) plus per-level frontiers
    cdef long pool_cap = 1024
    cdef u64 *pool_vec = <u64 *>malloc(pool_cap * sizeof(u64))
    cdef long *pool_letter = <long *>malloc(pool_cap * sizeof(long))
    cdef long *pool_parent = <long *>malloc(pool_cap * sizeof(long))
    cdef long pool_len, level, f_begin, f_end, pi, j
    if pool_vec == NULL or pool_letter == NULL or pool_parent == NULL:
        raise MemoryError()

    # open-addressing seen-set of vectors
    cdef long tbl_cap, tbl_len
    cdef u64 *tbl = NULL
    cdef u64 EMPTY = <u64>0xFFFFFFFFFFFFFFFF  # vectors never use all 64 bits (n <= 63)
    cdef u64 h, probe

    try:
        for q in range(1, max_period + 1):
            full = (<u64>1 << q) - 1
            n_codes = 1
            for pos in range(q):
                n_codes *= n_letters
            for code in range(n_codes):
                rem = code
                for pos in range(q):
                    letters[pos] = rem % n_letters
                    rem //= n_letters
                # truth of every node on the cycle
                for i in range(n):
                    k = kinds[i]
                    if k == K_TRUE:
                        cyc[i] = full
                    elif k == K_FALSE:
                        cyc[i] = 0
                    elif k == K_ATOM:
                        v = 0
                        for pos in range(q):
                            if (letters[pos] >> atom_id[i]) & 1:
                                v |= <u64>1 << pos
                        cyc[i] = v
                    elif k == K_NOTATOM:
                        cyc[i] = (~cyc[left[i]]) & full
                    elif k == K_AND:
                        cyc[i] = cyc[left[i]] & cyc[right[i]]
                    elif k == K_OR:
                        cyc[i] = cyc[left[i]] | cyc[right[i]]
                    elif k == K_NEXT:
                        cyc[i] = _rot1(cyc[left[i]], q)
                    elif k == K_UNTIL:
                        l = cyc[left[i]]; r = cyc[right[i]]
                        v = r
                        while True:
                            nv = r | (l & _rot1(v, q))
                            if nv == v:
                                break
                            v = nv
                        cyc[i] = v
                    else:
                        l = cyc[left[i]]; r = cyc[right[i]]
                        v = full
                        while True:
                            nv = r & (l | _rot1(v, q))
                            if nv == v:
                                break
                            v = nv
                        cyc[i] = v
                entry = 0
                for i in range(n):
                    entry |= (cyc[i] & 1) << i
                if (entry >> root) & 1:
                    return [], [letters[pos] for pos in range(q)]

                # reset seen-set and pool
                tbl_cap = 256
                if tbl != NULL:
                    free(tbl)
                tbl = <u64 *>malloc(tbl_cap * sizeof(u64))
                if tbl == NULL:
                    raise MemoryError()
                for j in range(tbl_cap):
                    tbl[j] = EMPTY
                tbl_len = 0
                pool_len = 0

                # insert entry
                h = (entry * <u64>0x9E3779B97F4A7C15) & (tbl_cap - 1)
                tbl[h] = entry
                tbl_len += 1
                pool_vec[0] = entry; pool_letter[0] = -1; pool_parent[0] = -1
                pool_len = 1
                f_begin = 0; f_end = 1

                for level in range(max_prefix):
                    if f_begin == f_end:
                        break
                    for pi in range(f_begin, f_end):
                        vec = pool_vec[pi]
                        for x in range(n_letters):
                            nv = _extend(kinds, left, right, atom_id, n, x, vec)
                            # probe seen-set
                            probe = (nv * <u64>0x9E3779B97F4A7C15) & (tbl_cap - 1)
                            while tbl[probe] != EMPTY and tbl[probe] != nv:
                                probe = (probe + 1) & (tbl_cap - 1)
                            if tbl[probe] == nv:
                                continue
                            tbl[probe] = nv
                            tbl_len += 1
                            if pool_len == pool_cap:
                                pool_cap *= 2
                                pool_vec = <u64 *>_grow_u64(pool_vec, pool_len, pool_cap)
                                pool_letter = <long *>_grow_long(pool_letter, pool_len, pool_cap)
                                pool_parent = <long *>_grow_long(pool_parent, pool_len, pool_cap)
                            pool_vec[pool_len] = nv
                            pool_letter[pool_len] = <long>x
                            pool_parent[pool_len] = pi
                            pool_len += 1
                            if (nv >> root) & 1:
                                prefix = []
                                j = pool_len - 1
                                while pool_letter[j] != -1:
                                    prefix.append(pool_letter[j])
                                    j = pool_parent[j]
                                return prefix, [letters[pos] for pos in range(q)]
                            # grow seen table at 2/3 load
                            if tbl_len * 3 >= tbl_cap * 2:
                                tbl = _rehash(tbl, &tbl_cap, EMPTY)
                    f_begin = f_end
                    f_end = pool_len
    finally:
        free(pool_vec); free(pool_letter); free(pool_parent)
        if tbl != NULL:
            free(tbl)
    return None


cdef u64 *_grow_u64(u64 *buf, long n, long cap):
    cdef u64 *nb = <u64 *>malloc(cap * sizeof(u64))
    if nb == NULL:
        free(buf)
        raise MemoryError()
    cdef long i
    for i in range(n):
        nb[i] = buf[i]
    free(buf)
    return nb


cdef long *_grow_long(long *buf, long n, long cap):
    cdef long *nb = <long *>malloc(cap * sizeof(long))
    if nb == NULL:
        free(buf)
        raise MemoryError()
    cdef long i
    for i in range(n):
        nb[i] = buf[i]
    free(buf)
    return nb


cdef u64 *_rehash(u64 *tbl, long *cap, u64 EMPTY):
    cdef long old_cap = cap[0]
    cdef long new_cap = old_cap * 2
    cdef u64 *nt = <u64 *>malloc(new_cap * sizeof(u64))
    if nt == NULL:
        free(tbl)
        raise MemoryError()
    cdef long i
    cdef u64 probe
    for i in range(new_cap):
        nt[i] = EMPTY
    for i in range(old_cap):
        if tbl[i] != EMPTY:
            probe = (tbl[i] * <u64>0x9E3779B97F4A7C15) & (new_cap - 1)
            while nt[probe] != EMPTY:
                probe = (probe + 1) & (new_cap - 1)
            nt[probe] = tbl[i]
    free(tbl)
    cap[0] = new_cap
    return nt
