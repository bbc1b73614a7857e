"""Contexts, context maps, and types/terms in context.

A context is a presheaf H; a context map is a presheaf map.  A type T in
context H carries a finite set T(I, rho) for every object I and
environment rho in H(I), plus a table T(I,J,f,rho,-): T(I,rho) ->
T(J,f(rho)) for every arrow f: J -> I.  A term picks an element of
T(I,rho) for every (I,rho), compatibly with those tables.

Extension H.T, the projection p, the variable q, substitution on types and
terms, and pairing (sigma;u) form the substitution calculus; the
equations they satisfy are exercised exhaustively by the rules module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import catcore, kernel, presheaf
from .catcore import FinCategory
from .errors import MismatchError
from .presheaf import FinSet, Presheaf, PshMap, same_presheaf, same_pshmap
from .report import ValidationReport, Violation

Ctx = Presheaf
Sub = PshMap

identity_sub = presheaf.identity_pshmap


def compose_subs(sigma: Sub, delta: Sub) -> Sub:
    """sigma after delta: delta: K -> H, sigma: H -> G gives K -> G."""
    return presheaf.compose_pshmaps(sigma, delta)


@dataclass(frozen=True)
class TyInCtx:
    ctx: Presheaf
    sets: tuple[tuple[FinSet, ...], ...]
    morph: tuple[tuple[tuple[int, ...], ...], ...]
    form: tuple | None = field(default=None, compare=False)

    def set_at(self, i: int, rho: int) -> FinSet:
        return self.sets[i][rho]


@dataclass(frozen=True)
class TmInCtx:
    ctx: Presheaf
    ty: TyInCtx
    elem: tuple[tuple[int, ...], ...]


def same_ty(t1: TyInCtx, t2: TyInCtx) -> bool:
    """Pointwise table equality, ignoring element labels and any former tag."""
    return (
        same_presheaf(t1.ctx, t2.ctx)
        and tuple(tuple(s.size for s in row) for row in t1.sets)
        == tuple(tuple(s.size for s in row) for row in t2.sets)
        and t1.morph == t2.morph
    )


def same_tm(u1: TmInCtx, u2: TmInCtx) -> bool:
    return same_presheaf(u1.ctx, u2.ctx) and same_ty(u1.ty, u2.ty) and u1.elem == u2.elem


# ---------------------------------------------------------------------------
# validation

def validate_ty(t: TyInCtx) -> ValidationReport:
    vs = []
    h = t.ctx
    c = h.base
    if len(t.sets) != c.n_objects or len(t.morph) != c.n_arrows:
        return ValidationReport("type", (Violation(
            "table arity", f"{len(t.sets)} set rows / {c.n_objects} objects, "
            f"{len(t.morph)} morph rows / {c.n_arrows} arrows", structural=True),))
    for i in range(c.n_objects):
        if len(t.sets[i]) != h.sets[i].size:
            vs.append(Violation("set arity",
                                f"at object {c.objects[i]}: {len(t.sets[i])} rows for "
                                f"{h.sets[i].size} environments", structural=True))
    for f in range(c.n_arrows):
        i, j = c.cod(f), c.dom(f)
        if len(t.morph[f]) != h.sets[i].size:
            vs.append(Violation("morph arity",
                                f"tables for {c.arrow_name(f)}", structural=True))
            continue
        for rho in range(h.sets[i].size):
            tab = t.morph[f][rho]
            if len(tab) != t.sets[i][rho].size:
                vs.append(Violation(
                    "morph arity", f"{c.arrow_name(f)} at environment {rho}",
                    structural=True))
            elif any(not 0 <= v < t.sets[j][h.restrict[f][rho]].size for v in tab):
                vs.append(Violation(
                    "morph range", f"{c.arrow_name(f)} at environment {rho}",
                    structural=True))
    if vs:
        return ValidationReport("type", tuple(vs))
    for i in range(c.n_objects):
        ident = c.identity[i]
        for rho in range(h.sets[i].size):
            for u in range(t.sets[i][rho].size):
                got = t.morph[ident][rho][u]
                if got != u:
                    vs.append(Violation(
                        "identity morphism",
                        f"object {c.objects[i]}, environment {rho}, element {u}",
                        lhs=str(got), rhs=str(u)))
    # composite g-then-f for g: K -> J, f: J -> I
    for (g, f), gf in sorted(c.comp.items()):
        i = c.cod(f)
        for rho in range(h.sets[i].size):
            frho = h.restrict[f][rho]
            for u in range(t.sets[i][rho].size):
                lhs = t.morph[gf][rho][u]
                rhs = t.morph[g][frho][t.morph[f][rho][u]]
                if lhs != rhs:
                    vs.append(Violation(
                        "composed morphism",
                        f"arrows ({c.arrow_name(g)}, {c.arrow_name(f)}), "
                        f"environment {rho}, element {u}",
                        lhs=str(lhs), rhs=str(rhs)))
    return ValidationReport("type", tuple(vs))


def validate_tm(t: TmInCtx) -> ValidationReport:
    vs = []
    h = t.ctx
    c = h.base
    if not same_presheaf(h, t.ty.ctx):
        return ValidationReport("term", (Violation(
            "context", "term context differs from its type's context", structural=True),))
    if len(t.elem) != c.n_objects:
        return ValidationReport("term", (Violation(
            "element arity", f"{len(t.elem)}/{c.n_objects}", structural=True),))
    for i in range(c.n_objects):
        if len(t.elem[i]) != h.sets[i].size:
            vs.append(Violation("element arity", f"at object {c.objects[i]}",
                                structural=True))
        elif any(not 0 <= e < t.ty.sets[i][rho].size
                 for rho, e in enumerate(t.elem[i])):
            vs.append(Violation("element range", f"at object {c.objects[i]}",
                                structural=True))
    if vs:
        return ValidationReport("term", tuple(vs))
    for f in range(c.n_arrows):
        i, j = c.cod(f), c.dom(f)
        for rho in range(h.sets[i].size):
            lhs = t.ty.morph[f][rho][t.elem[i][rho]]
            rhs = t.elem[j][h.restrict[f][rho]]
            if lhs != rhs:
                vs.append(Violation("naturality",
                                    f"arrow {c.arrow_name(f)}, environment {rho}",
                                    lhs=str(lhs), rhs=str(rhs)))
    return ValidationReport("term", tuple(vs))


# ---------------------------------------------------------------------------
# contexts and simple families

def empty_ctx(c: FinCategory) -> Ctx:
    """The terminal presheaf: a singleton environment everywhere."""
    return presheaf.constant_presheaf(c, 1)


def discrete_ty(h: Ctx, a: FinSet) -> TyInCtx:
    """The constant family on a fixed set, with identity tables."""
    c = h.base
    ident = tuple(range(a.size))
    sets = tuple(tuple(a for _ in range(h.sets[i].size)) for i in range(c.n_objects))
    morph = tuple(
        tuple(ident for _ in range(h.sets[c.cod(f)].size)) for f in range(c.n_arrows))
    return TyInCtx(h, sets, morph, form=("discrete", a))


def discrete_tm(h: Ctx, a: FinSet, k: int) -> TmInCtx:
    if not 0 <= k < a.size:
        raise ValueError(f"element {k} out of range for a set of size {a.size}")
    elem = tuple(tuple(k for _ in range(h.sets[i].size)) for i in range(h.base.n_objects))
    return TmInCtx(h, discrete_ty(h, a), elem)


def presheaf_ty(h: Ctx, p: Presheaf) -> TyInCtx:
    """The family that ignores the environment and varies over the base
    like p does; generalizes discrete_ty away from constant presheaves."""
    if not catcore.same_category(h.base, p.base):
        raise MismatchError("presheaf_ty: presheaf lives over a different base")
    c = h.base
    sets = tuple(
        tuple(p.sets[i] for _ in range(h.sets[i].size)) for i in range(c.n_objects))
    morph = tuple(
        tuple(p.restrict[f] for _ in range(h.sets[c.cod(f)].size))
        for f in range(c.n_arrows))
    return TyInCtx(h, sets, morph)


# ---------------------------------------------------------------------------
# context extension

def ext_offsets(h: Ctx, t: TyInCtx):
    """Per object: (offsets per environment, total size) of the pair set."""
    out = []
    for i in range(h.base.n_objects):
        offs = []
        total = 0
        for rho in range(h.sets[i].size):
            offs.append(total)
            total += t.sets[i][rho].size
        out.append((tuple(offs), total))
    return tuple(out)


def ctx_extend(h: Ctx, t: TyInCtx) -> Ctx:
    """H.T: environments are pairs (rho, u) with u in T(I,rho), ordered
    lexicographically; restriction acts on both components."""
    c = h.base
    offs = ext_offsets(h, t)
    sets = tuple(FinSet(offs[i][1]) for i in range(c.n_objects))
    restrict = []
    for f in range(c.n_arrows):
        i, j = c.cod(f), c.dom(f)
        tab = []
        for rho in range(h.sets[i].size):
            frho = h.restrict[f][rho]
            for u in range(t.sets[i][rho].size):
                tab.append(offs[j][0][frho] + t.morph[f][rho][u])
        restrict.append(tuple(tab))
    return Presheaf(c, sets, tuple(restrict))


def ext_unpair(h: Ctx, t: TyInCtx, i: int, k: int) -> tuple[int, int]:
    """Inverse of the pair encoding at object i."""
    offs = ext_offsets(h, t)[i][0]
    rho = max(r for r in range(len(offs)) if offs[r] <= k and t.sets[i][r].size > 0)
    return rho, k - offs[rho]


def proj_p(h: Ctx, t: TyInCtx) -> Sub:
    """First projection H.T -> H."""
    ext = ctx_extend(h, t)
    comps = []
    for i in range(h.base.n_objects):
        row = []
        for rho in range(h.sets[i].size):
            row += [rho] * t.sets[i][rho].size
        comps.append(tuple(row))
    return PshMap(ext, h, tuple(comps))


def var_q(h: Ctx, t: TyInCtx) -> TmInCtx:
    """The last variable: a term of (T)p over H.T picking the second
    pair component."""
    p = proj_p(h, t)
    tp = ty_subst(t, p)
    elem = []
    for i in range(h.base.n_objects):
        row = []
        for rho in range(h.sets[i].size):
            row += list(range(t.sets[i][rho].size))
        elem.append(tuple(row))
    return TmInCtx(p.source, tp, tuple(elem))


# ---------------------------------------------------------------------------
# substitution

def _subst_tables(t: TyInCtx, sigma: Sub):
    c = sigma.source.base
    sets = tuple(
        tuple(t.sets[i][sigma.components[i][rho]]
              for rho in range(sigma.source.sets[i].size))
        for i in range(c.n_objects))
    morph = tuple(
        tuple(t.morph[f][sigma.components[c.cod(f)][rho]]
              for rho in range(sigma.source.sets[c.cod(f)].size))
        for f in range(c.n_arrows))
    return sets, morph


def ty_subst(t: TyInCtx, sigma: Sub) -> TyInCtx:
    """(T)sigma: reindex the family along a context map sigma: H -> G."""
    if not same_presheaf(t.ctx, sigma.target):
        raise MismatchError("ty_subst: context map does not land in the type's context")
    sets, morph = _subst_tables(t, sigma)
    return TyInCtx(sigma.source, sets, morph, form=_subst_form(t.form, sigma))


def _subst_form(form, sigma: Sub):
    if form is None:
        return None
    kind = form[0]
    if kind == "discrete":
        return form
    if kind == "sigma":
        _, a, b = form
        return ("sigma", ty_subst(a, sigma), ty_subst(b, shift_sub(sigma, a)))
    if kind == "pi":
        _, a, b, data = form
        c = sigma.source.base
        fwd = tuple(
            tuple(data[i][sigma.components[i][rho]]
                  for rho in range(sigma.source.sets[i].size))
            for i in range(c.n_objects))
        return ("pi", ty_subst(a, sigma), ty_subst(b, shift_sub(sigma, a)), fwd)
    raise AssertionError(f"unknown former tag {kind!r}")


def tm_subst(t: TmInCtx, sigma: Sub) -> TmInCtx:
    """(t)sigma, a term of (T)sigma."""
    if not same_presheaf(t.ctx, sigma.target):
        raise MismatchError("tm_subst: context map does not land in the term's context")
    elem = tuple(
        tuple(t.elem[i][sigma.components[i][rho]]
              for rho in range(sigma.source.sets[i].size))
        for i in range(sigma.source.base.n_objects))
    return TmInCtx(sigma.source, ty_subst(t.ty, sigma), elem)


def sub_pair(sigma: Sub, u: TmInCtx, a: TyInCtx) -> Sub:
    """(sigma; u): H -> G.A from sigma: H -> G and u at (A)sigma."""
    if not same_presheaf(a.ctx, sigma.target):
        raise MismatchError("sub_pair: type does not live over the map's target")
    if not same_presheaf(u.ctx, sigma.source):
        raise MismatchError("sub_pair: term does not live over the map's source")
    exp_sets, exp_morph = _subst_tables(a, sigma)
    got_sets = tuple(tuple(s.size for s in row) for row in u.ty.sets)
    if got_sets != tuple(tuple(s.size for s in row) for row in exp_sets) \
            or u.ty.morph != exp_morph:
        raise MismatchError("sub_pair: term's type is not (A)sigma")
    g = sigma.target
    ext = ctx_extend(g, a)
    offs = ext_offsets(g, a)
    comps = tuple(
        tuple(offs[i][0][sigma.components[i][rho]] + u.elem[i][rho]
              for rho in range(sigma.source.sets[i].size))
        for i in range(g.base.n_objects))
    return PshMap(sigma.source, ext, comps)


def sub_single(u: TmInCtx) -> Sub:
    """[u] = (1; u): H -> H.A for a term u of A over H."""
    return sub_pair(identity_sub(u.ctx), u, u.ty)


def shift_sub(sigma: Sub, a: TyInCtx) -> Sub:
    """(sigma p, q): H.(A sigma) -> G.A, the substitution pushed under a
    binder.  Derived from the primitives rather than built directly."""
    asub = ty_subst(a, sigma)
    h = sigma.source
    p = proj_p(h, asub)
    q = var_q(h, asub)
    return sub_pair(compose_subs(sigma, p), q, a)


# ---------------------------------------------------------------------------
# exhaustive term enumeration

def enumerate_terms(h: Ctx, t: TyInCtx, cap: int = 1_000_000) -> list[TmInCtx]:
    """All terms of T over H, lexicographic on the flattened element table."""
    if not same_presheaf(h, t.ctx):
        raise MismatchError("enumerate_terms: type lives over a different context")
    c = h.base
    offsets = []
    total = 0
    for i in range(c.n_objects):
        offsets.append(total)
        total += h.sets[i].size
    domains = []
    for i in range(c.n_objects):
        domains += [t.sets[i][rho].size for rho in range(h.sets[i].size)]
    constraints = []
    for f in range(c.n_arrows):
        i, j = c.cod(f), c.dom(f)
        for rho in range(h.sets[i].size):
            constraints.append((offsets[i] + rho, t.morph[f][rho],
                                offsets[j] + h.restrict[f][rho], None))
    sols = kernel.enumerate_assignments(domains, constraints, cap, what="terms")
    out = []
    for s in sols:
        elem = tuple(
            tuple(s[offsets[i] + rho] for rho in range(h.sets[i].size))
            for i in range(c.n_objects))
        out.append(TmInCtx(h, t, elem))
    return out
