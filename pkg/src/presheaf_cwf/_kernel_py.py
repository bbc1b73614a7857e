"""Pure-Python assignment enumerator (fallback for the compiled kernel).

The procedure must stay observationally identical to ``_kernel_c.solve``:
same solutions, same order, same candidate accounting.
"""

from __future__ import annotations


def solve(domains, constraints, cap):
    """Enumerate assignments of finite domains under table-equality constraints.

    ``domains``: sequence of non-negative ints; slot k ranges over
    ``range(domains[k])``.  ``constraints``: tuples ``(i, ti, j, tj)``
    requiring ``(ti[x[i]] if ti else x[i]) == (tj[x[j]] if tj else x[j])``.
    ``cap``: candidate budget; candidates are counted as if every tuple of
    the raw product space were generated and tested, so pruning does not
    change the count.

    Returns ``(solutions, examined, exceeded)`` where ``solutions`` is the
    lexicographically ordered list of satisfying tuples found within the
    budget.  When ``exceeded`` is true the list holds the solutions seen
    among the first ``cap`` raw candidates.
    """
    n = len(domains)
    capp = cap + 1
    if n == 0:
        return [()], 1, 1 > cap

    # Saturated suffix products: number of raw candidates below slot k.
    suffix = [1] * (n + 1)
    for k in range(n - 1, -1, -1):
        p = suffix[k + 1] * domains[k]
        suffix[k] = p if p < capp else capp

    # Constraints become checkable once their later slot is assigned.
    at = [[] for _ in range(n)]
    for (i, ti, j, tj) in constraints:
        at[max(i, j)].append((i, ti, j, tj))

    sols = []
    examined = 0
    exceeded = False
    x = [0] * n
    pos = 0
    x[0] = -1
    while pos >= 0:
        x[pos] += 1
        if x[pos] >= domains[pos]:
            pos -= 1
            continue
        ok = True
        for (i, ti, j, tj) in at[pos]:
            a = x[i]
            if ti is not None:
                a = ti[a]
            b = x[j]
            if tj is not None:
                b = tj[b]
            if a != b:
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
            sols.append(tuple(x))
        else:
            pos += 1
            x[pos] = -1
    return sols, examined, exceeded
