# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled assignment enumerator.

Must stay observationally identical to ``_kernel_py.solve``: same
solutions, same lexicographic order, same generate-and-test candidate
accounting against the budget.
"""

import array

from cpython cimport array


def solve(domains, constraints, long long cap):
    cdef Py_ssize_t n = len(domains)
    cdef long long capp = cap + 1
    if n == 0:
        return [()], 1, cap < 1

    cdef array.array dom_a = array.array('q', [int(d) for d in domains])
    cdef long long[::1] dom = dom_a

    # Saturated suffix products of the raw candidate space.
    cdef array.array suf_a = array.array('q', [1] * (n + 1))
    cdef long long[::1] suffix = suf_a
    cdef Py_ssize_t k
    cdef long long p
    for k in range(n - 1, -1, -1):
        p = suffix[k + 1] * dom[k] if dom[k] < capp else capp
        suffix[k] = p if p < capp else capp

    # Flatten constraints, grouped by the later of their two slots.
    per_slot = [[] for _ in range(n)]
    tbl_list = []
    cdef Py_ssize_t ii, jj
    for (i, ti, j, tj) in constraints:
        ii, jj = i, j
        if ti is None:
            toff_i = -1
        else:
            toff_i = len(tbl_list)
            tbl_list.extend(ti)
        if tj is None:
            toff_j = -1
        else:
            toff_j = len(tbl_list)
            tbl_list.extend(tj)
        per_slot[max(ii, jj)].append((ii, toff_i, jj, toff_j))

    cdef Py_ssize_t ncons = sum(len(g) for g in per_slot)
    cdef array.array start_a = array.array('q', [0] * (n + 1))
    cdef long long[::1] start = start_a
    ci_l, ti_l, cj_l, tj_l = [], [], [], []
    for k in range(n):
        start[k] = len(ci_l)
        for (a, b, c, d) in per_slot[k]:
            ci_l.append(a)
            ti_l.append(b)
            cj_l.append(c)
            tj_l.append(d)
    start[n] = ncons

    cdef long long[::1] ci = array.array('q', ci_l or [0])
    cdef long long[::1] ti_off = array.array('q', ti_l or [0])
    cdef long long[::1] cj = array.array('q', cj_l or [0])
    cdef long long[::1] tj_off = array.array('q', tj_l or [0])
    cdef long long[::1] tbl = array.array('q', tbl_list or [0])

    cdef array.array x_a = array.array('q', [0] * n)
    cdef long long[::1] x = x_a

    sols = []
    cdef long long examined = 0
    cdef bint exceeded = False
    cdef Py_ssize_t pos = 0
    cdef long long a_val, b_val, c0, c1
    cdef bint ok
    x[0] = -1
    while pos >= 0:
        x[pos] += 1
        if x[pos] >= dom[pos]:
            pos -= 1
            continue
        ok = True
        for k in range(start[pos], start[pos + 1]):
            a_val = x[ci[k]]
            c0 = ti_off[k]
            if c0 >= 0:
                a_val = tbl[c0 + a_val]
            b_val = x[cj[k]]
            c1 = tj_off[k]
            if c1 >= 0:
                b_val = tbl[c1 + b_val]
            if a_val != b_val:
                ok = False
                break
        if not ok:
            examined += suffix[pos + 1]
            if examined > cap:
                exceeded = True
                break
            continue
        if pos == n - 1:
            examined += 1
            if examined > cap:
                exceeded = True
                break
            sols.append(tuple(x_a))
        else:
            pos += 1
            x[pos] = -1
    return sols, examined, exceeded
