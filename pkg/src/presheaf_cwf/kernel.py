"""Backend selection for the assignment enumerator.

Every exhaustive search in the package (natural transformations, presheaf
maps, term families, dependent-function elements) reduces to one problem:
enumerate tuples ``x`` with ``x[k] in range(domains[k])`` subject to
constraints ``ti[x[i]] == tj[x[j]]`` where ``ti``/``tj`` are lookup tables
(``None`` meaning the identity).  The compiled kernel and the pure-Python
fallback implement the same search; set ``PRESHEAF_CWF_KERNEL=py`` or
``=c`` to force one.
"""

from __future__ import annotations

import os

from .errors import BudgetExceededError

_requested = os.environ.get("PRESHEAF_CWF_KERNEL", "auto")
if _requested not in ("auto", "c", "py"):
    raise ValueError(f"PRESHEAF_CWF_KERNEL must be 'auto', 'c' or 'py', got {_requested!r}")

if _requested in ("auto", "c"):
    try:
        from . import _kernel_c as _impl
        BACKEND = "c"
    except ImportError:
        if _requested == "c":
            raise
        from . import _kernel_py as _impl
        BACKEND = "py"
else:
    from . import _kernel_py as _impl
    BACKEND = "py"

# Budgets above this are clamped so the compiled counter cannot overflow.
_MAX_CAP = 1 << 60


def enumerate_assignments(domains, constraints, cap, what="assignments"):
    """All satisfying tuples in lexicographic order.

    ``cap`` bounds the raw candidate space (counted generate-and-test style,
    before filtering); raises :class:`BudgetExceededError` carrying the
    partial result count when the budget runs out.
    """
    if cap <= 0:
        raise ValueError("enumeration cap must be positive")
    sols, _examined, exceeded = _impl.solve(list(domains), list(constraints),
                                            min(int(cap), _MAX_CAP))
    if exceeded:
        raise BudgetExceededError(what, cap, len(sols))
    return sols
