"""Finite categories, functors, and natural transformations.

Objects and arrows are addressed by non-negative indices into the owning
category's object/arrow lists; labels and names ride along for reporting.
Composition tables are stored in diagrammatic order: ``comp[(f, g)]`` is
"f then g" and is defined exactly when ``cod(f) == dom(g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from . import kernel
from .errors import BudgetExceededError, MismatchError
from .report import ValidationReport, Violation

ObjId = int
ArrId = int


@dataclass(frozen=True)
class Arrow:
    name: str
    dom: ObjId
    cod: ObjId


@dataclass(frozen=True, eq=True)
class FinCategory:
    objects: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    identity: tuple[ArrId, ...]
    comp: Mapping[tuple[ArrId, ArrId], ArrId]

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def dom(self, f: ArrId) -> ObjId:
        return self.arrows[f].dom

    def cod(self, f: ArrId) -> ObjId:
        return self.arrows[f].cod

    def id_arrow(self, x: ObjId) -> ArrId:
        return self.identity[x]

    def is_identity(self, f: ArrId) -> bool:
        return self.identity[self.arrows[f].dom] == f and self.arrows[f].dom == self.arrows[f].cod

    def compose(self, f: ArrId, g: ArrId) -> ArrId:
        """f then g; raises MismatchError on non-composable arrows."""
        try:
            return self.comp[(f, g)]
        except KeyError:
            raise MismatchError(
                f"arrows {self.arrow_name(f)} and {self.arrow_name(g)} do not compose"
            ) from None

    def hom(self, x: ObjId, y: ObjId) -> tuple[ArrId, ...]:
        return tuple(f for f, a in enumerate(self.arrows) if a.dom == x and a.cod == y)

    def arrow_name(self, f: ArrId) -> str:
        return self.arrows[f].name

    def object_label(self, x: ObjId) -> str:
        return self.objects[x]


def same_category(c1: FinCategory, c2: FinCategory) -> bool:
    """Structural equality ignoring labels and arrow names."""
    return (
        c1.n_objects == c2.n_objects
        and tuple((a.dom, a.cod) for a in c1.arrows) == tuple((a.dom, a.cod) for a in c2.arrows)
        and c1.identity == c2.identity
        and dict(c1.comp) == dict(c2.comp)
    )


# ---------------------------------------------------------------------------
# construction helpers

def _with_identities(labels, extra_arrows, comp_extra):
    """Category from non-identity data: identities get indices 0..n-1 and
    all identity compositions are filled in."""
    n = len(labels)
    arrows = [Arrow(f"id_{labels[x]}", x, x) for x in range(n)]
    arrows += [Arrow(name, d, c) for (name, d, c) in extra_arrows]
    comp = {}
    for f, af in enumerate(arrows):
        for g, ag in enumerate(arrows):
            if af.cod != ag.dom:
                continue
            if f < n:
                comp[(f, g)] = g
            elif g < n:
                comp[(f, g)] = f
    comp.update(comp_extra)
    return FinCategory(tuple(labels), tuple(arrows), tuple(range(n)), comp)


def discrete_cat(n: int) -> FinCategory:
    """n objects, identity arrows only."""
    if n < 0:
        raise ValueError("object count must be non-negative")
    return _with_identities([f"x{i}" for i in range(n)], [], {})


def terminal_cat() -> FinCategory:
    return _with_identities(["*"], [], {})


def walking_arrow() -> FinCategory:
    """Two objects a, b and a single arrow f: a -> b."""
    return _with_identities(["a", "b"], [("f", 0, 1)], {})


def parallel_pair() -> FinCategory:
    """Two objects with two parallel arrows u, v: a -> b."""
    return _with_identities(["a", "b"], [("u", 0, 1), ("v", 0, 1)], {})


def chain_cat(n: int) -> FinCategory:
    """The linear order on n objects: one arrow i -> j for each i <= j."""
    if n < 0:
        raise ValueError("object count must be non-negative")
    labels = [chr(ord("a") + i) for i in range(n)]
    extra = []
    index = {}
    for i in range(n):
        for j in range(i + 1, n):
            index[(i, j)] = n + len(extra)
            extra.append((f"s{i}{j}", i, j))
    comp_extra = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                comp_extra[(index[(i, j)], index[(j, k)])] = index[(i, k)]
    return _with_identities(labels, extra, comp_extra)


def op_cat(c: FinCategory) -> FinCategory:
    """Same objects and arrows with dom/cod swapped; comp'(f,g) = comp(g,f)."""
    arrows = tuple(Arrow(a.name, a.cod, a.dom) for a in c.arrows)
    comp = {(g, f): h for (f, g), h in c.comp.items()}
    return FinCategory(c.objects, arrows, c.identity, comp)


# ---------------------------------------------------------------------------
# validation

def validate_category(c: FinCategory) -> ValidationReport:
    vs = []
    n, m = c.n_objects, c.n_arrows
    for f, a in enumerate(c.arrows):
        if not (0 <= a.dom < n and 0 <= a.cod < n):
            vs.append(Violation("arrow endpoints", f"arrow {a.name} (index {f}) out of range",
                                structural=True))
    if len(c.identity) != n:
        vs.append(Violation("identity map", f"expected {n} entries, got {len(c.identity)}",
                            structural=True))
    else:
        for x, i in enumerate(c.identity):
            if not (0 <= i < m):
                vs.append(Violation("identity map", f"id of {c.objects[x]} out of range",
                                    structural=True))
    composable = {(f, g) for f in range(m) for g in range(m)
                  if c.arrows[f].cod == c.arrows[g].dom}
    for (f, g), h in c.comp.items():
        if (f, g) not in composable:
            vs.append(Violation("composition table",
                                f"entry for non-composable pair ({f}, {g})", structural=True))
        elif not (0 <= h < m):
            vs.append(Violation("composition table",
                                f"entry for ({f}, {g}) out of range", structural=True))
    for pair in sorted(composable - set(c.comp)):
        vs.append(Violation("composition table",
                            f"missing entry for composable pair "
                            f"({c.arrow_name(pair[0])}, {c.arrow_name(pair[1])})",
                            structural=True))
    if vs:
        return ValidationReport("category", tuple(vs))

    for x in range(n):
        i = c.identity[x]
        if c.dom(i) != x or c.cod(i) != x:
            vs.append(Violation("identity endpoints",
                                f"id of {c.objects[x]} is {c.arrow_name(i)}: "
                                f"{c.objects[c.dom(i)]} -> {c.objects[c.cod(i)]}"))
    for f in range(m):
        lf = c.comp[(c.identity[c.dom(f)], f)]
        if lf != f:
            vs.append(Violation("left identity", f"at {c.arrow_name(f)}",
                                lhs=c.arrow_name(lf), rhs=c.arrow_name(f)))
        rf = c.comp[(f, c.identity[c.cod(f)])]
        if rf != f:
            vs.append(Violation("right identity", f"at {c.arrow_name(f)}",
                                lhs=c.arrow_name(rf), rhs=c.arrow_name(f)))
    for (f, g), h in sorted(c.comp.items()):
        if c.dom(h) != c.dom(f) or c.cod(h) != c.cod(g):
            vs.append(Violation("composite endpoints",
                                f"comp({c.arrow_name(f)}, {c.arrow_name(g)}) = {c.arrow_name(h)}"))
    for f, g, h in itertools.product(range(m), repeat=3):
        if c.cod(f) != c.dom(g) or c.cod(g) != c.dom(h):
            continue
        lhs = c.comp[(c.comp[(f, g)], h)]
        rhs = c.comp[(f, c.comp[(g, h)])]
        if lhs != rhs:
            vs.append(Violation(
                "associativity",
                f"({c.arrow_name(f)}, {c.arrow_name(g)}, {c.arrow_name(h)})",
                lhs=c.arrow_name(lhs), rhs=c.arrow_name(rhs)))
    return ValidationReport("category", tuple(vs))


# ---------------------------------------------------------------------------
# functors

@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    ob_map: tuple[ObjId, ...]
    arr_map: tuple[ArrId, ...]


def validate_functor(fu: Functor) -> ValidationReport:
    vs = []
    c, d = fu.source, fu.target
    if len(fu.ob_map) != c.n_objects or len(fu.arr_map) != c.n_arrows:
        return ValidationReport("functor", (Violation(
            "table arity", f"ob_map {len(fu.ob_map)}/{c.n_objects}, "
            f"arr_map {len(fu.arr_map)}/{c.n_arrows}", structural=True),))
    if any(not 0 <= y < d.n_objects for y in fu.ob_map) or \
       any(not 0 <= g < d.n_arrows for g in fu.arr_map):
        return ValidationReport("functor", (Violation(
            "table range", "ob_map or arr_map entry out of range", structural=True),))
    for f in range(c.n_arrows):
        img = fu.arr_map[f]
        if d.dom(img) != fu.ob_map[c.dom(f)] or d.cod(img) != fu.ob_map[c.cod(f)]:
            vs.append(Violation("dom/cod", f"image of {c.arrow_name(f)} is {d.arrow_name(img)}"))
    if vs:
        return ValidationReport("functor", tuple(vs))
    for x in range(c.n_objects):
        lhs = fu.arr_map[c.identity[x]]
        rhs = d.identity[fu.ob_map[x]]
        if lhs != rhs:
            vs.append(Violation("preserves identity", f"at object {c.objects[x]}",
                                lhs=d.arrow_name(lhs), rhs=d.arrow_name(rhs)))
    for (f, g), h in sorted(c.comp.items()):
        lhs = fu.arr_map[h]
        rhs = d.comp[(fu.arr_map[f], fu.arr_map[g])]
        if lhs != rhs:
            vs.append(Violation("preserves composition",
                                f"at ({c.arrow_name(f)}, {c.arrow_name(g)})",
                                lhs=d.arrow_name(lhs), rhs=d.arrow_name(rhs)))
    return ValidationReport("functor", tuple(vs))


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, tuple(range(c.n_objects)), tuple(range(c.n_arrows)))


def compose_functors(f: Functor, g: Functor) -> Functor:
    """f then g: requires target of f to be the source of g."""
    if f.target is not g.source and f.target != g.source:
        raise MismatchError("functor composition: target of first != source of second")
    return Functor(f.source, g.target,
                   tuple(g.ob_map[x] for x in f.ob_map),
                   tuple(g.arr_map[a] for a in f.arr_map))


def enumerate_functors(c: FinCategory, d: FinCategory, cap: int = 1_000_000) -> list[Functor]:
    """All functors c -> d, lexicographic on (ob_map, arr_map).

    The budget counts raw (ob_map, arr_map) candidates generate-and-test
    style, like the kernel enumerations.
    """
    if cap <= 0:
        raise ValueError("enumeration cap must be positive")
    out = []
    examined = 0
    for ob_map in itertools.product(range(d.n_objects), repeat=c.n_objects):
        cands = []
        for f in range(c.n_arrows):
            if c.is_identity(f):
                cands.append((d.identity[ob_map[c.dom(f)]],))
            else:
                cands.append(d.hom(ob_map[c.dom(f)], ob_map[c.cod(f)]))
        space = 1
        for cl in cands:
            space *= len(cl)
        if examined + space > cap:
            # fall back to counting one candidate at a time up to the cap
            for arr_map in itertools.product(*cands):
                examined += 1
                if examined > cap:
                    raise BudgetExceededError("functors", cap, len(out))
                if _functor_laws_hold(c, d, arr_map):
                    out.append(Functor(c, d, ob_map, arr_map))
            continue
        examined += space
        for arr_map in itertools.product(*cands):
            if _functor_laws_hold(c, d, arr_map):
                out.append(Functor(c, d, ob_map, arr_map))
    return out


def _functor_laws_hold(c, d, arr_map) -> bool:
    for (f, g), h in c.comp.items():
        pair = (arr_map[f], arr_map[g])
        if pair not in d.comp or d.comp[pair] != arr_map[h]:
            return False
    return True


def is_full_and_faithful(fu: Functor):
    """(overall, rows): rows are (x, y, injective, surjective) per object pair."""
    c, d = fu.source, fu.target
    rows = []
    ok = True
    for x in range(c.n_objects):
        for y in range(c.n_objects):
            images = [fu.arr_map[f] for f in c.hom(x, y)]
            inj = len(set(images)) == len(images)
            sur = set(images) >= set(d.hom(fu.ob_map[x], fu.ob_map[y]))
            rows.append((x, y, inj, sur))
            ok = ok and inj and sur
    return ok, rows


# ---------------------------------------------------------------------------
# natural transformations

@dataclass(frozen=True)
class NatTrans:
    f: Functor
    g: Functor
    components: tuple[ArrId, ...]


def validate_nat_trans(t: NatTrans) -> ValidationReport:
    vs = []
    c, d = t.f.source, t.f.target
    if t.f.source != t.g.source or t.f.target != t.g.target:
        return ValidationReport("nat-trans", (Violation(
            "functor endpoints", "functors do not share source/target", structural=True),))
    if len(t.components) != c.n_objects:
        return ValidationReport("nat-trans", (Violation(
            "component arity", f"{len(t.components)}/{c.n_objects}", structural=True),))
    for x, comp_x in enumerate(t.components):
        if not 0 <= comp_x < d.n_arrows:
            vs.append(Violation("component range", f"at {c.objects[x]}", structural=True))
        elif d.dom(comp_x) != t.f.ob_map[x] or d.cod(comp_x) != t.g.ob_map[x]:
            vs.append(Violation("component endpoints",
                                f"at {c.objects[x]}: {d.arrow_name(comp_x)}", structural=True))
    if vs:
        return ValidationReport("nat-trans", tuple(vs))
    for g in range(c.n_arrows):
        a, b = c.dom(g), c.cod(g)
        lhs = d.comp[(t.components[a], t.g.arr_map[g])]
        rhs = d.comp[(t.f.arr_map[g], t.components[b])]
        if lhs != rhs:
            vs.append(Violation("naturality", f"at arrow {c.arrow_name(g)}",
                                lhs=d.arrow_name(lhs), rhs=d.arrow_name(rhs)))
    return ValidationReport("nat-trans", tuple(vs))


def identity_trans(f: Functor) -> NatTrans:
    d = f.target
    return NatTrans(f, f, tuple(d.identity[f.ob_map[x]] for x in range(f.source.n_objects)))


def trans_comp(t1: NatTrans, t2: NatTrans) -> NatTrans:
    """t1 then t2, componentwise: t1: F => G, t2: G => H gives F => H."""
    if t1.g != t2.f:
        raise MismatchError("nat-trans composition: middle functors differ")
    d = t1.f.target
    return NatTrans(t1.f, t2.g,
                    tuple(d.comp[(a, b)] for a, b in zip(t1.components, t2.components)))


def enumerate_nat_trans(f: Functor, g: Functor, cap: int = 1_000_000) -> list[NatTrans]:
    """All natural transformations f => g in lexicographic component order."""
    if f.source != g.source or f.target != g.target:
        raise MismatchError("nat-trans enumeration: functors do not share source/target")
    c, d = f.source, f.target
    cands = [d.hom(f.ob_map[x], g.ob_map[x]) for x in range(c.n_objects)]
    constraints = []
    for e in range(c.n_arrows):
        a, b = c.dom(e), c.cod(e)
        ta = tuple(d.comp[(k, g.arr_map[e])] for k in cands[a])
        tb = tuple(d.comp[(f.arr_map[e], k)] for k in cands[b])
        constraints.append((a, ta, b, tb))
    sols = kernel.enumerate_assignments([len(cl) for cl in cands], constraints, cap,
                                        what="natural transformations")
    return [NatTrans(f, g, tuple(cands[x][s[x]] for x in range(c.n_objects))) for s in sols]


def functor_category(c: FinCategory, d: FinCategory, cap: int = 1_000_000) -> FinCategory:
    """Category with the functors c -> d as objects and natural
    transformations as arrows."""
    functors = enumerate_functors(c, d, cap)
    arrows = []
    arrow_index = {}
    for i, fi in enumerate(functors):
        for j, fj in enumerate(functors):
            for t in enumerate_nat_trans(fi, fj, cap):
                arrow_index[(i, j, t.components)] = len(arrows)
                arrows.append((i, j, t.components))
    identity = tuple(
        arrow_index[(i, i, identity_trans(fi).components)] for i, fi in enumerate(functors))
    comp = {}
    for a1, (i1, j1, comps1) in enumerate(arrows):
        for a2, (i2, j2, comps2) in enumerate(arrows):
            if j1 != i2:
                continue
            t = trans_comp(NatTrans(functors[i1], functors[j1], comps1),
                           NatTrans(functors[i2], functors[j2], comps2))
            comp[(a1, a2)] = arrow_index[(i1, j2, t.components)]
    return FinCategory(
        tuple(f"F{i}" for i in range(len(functors))),
        tuple(Arrow(f"t{k}", i, j) for k, (i, j, _) in enumerate(arrows)),
        identity,
        comp,
    )


# ---------------------------------------------------------------------------
# exhaustive generation of base categories

@lru_cache(maxsize=None)
def enumerate_categories(max_objects: int, max_arrows: int) -> tuple[FinCategory, ...]:
    """All categories with at most the given object/arrow counts.

    Arrow lists are canonical: identities first, then non-identity arrows in
    non-decreasing (dom, cod) order.  Composition tables are enumerated
    lexicographically; identity compositions are forced, so the only filter
    is associativity.
    """
    out = []
    for n in range(max_objects + 1):
        if n > max_arrows:
            break
        for m in range(max_arrows - n + 1):
            pairs = [(d, c) for d in range(n) for c in range(n)]
            for shape in itertools.combinations_with_replacement(pairs, m):
                extra = [(f"a{k}", d, c) for k, (d, c) in enumerate(shape)]
                out.extend(_fill_comp_tables(n, extra))
    return tuple(out)


def _fill_comp_tables(n, extra):
    """Backtrack over composition entries for the non-identity pairs,
    pruning with partial associativity checks."""
    labels = [f"x{i}" for i in range(n)]
    base = _with_identities(labels, extra, {})
    m = base.n_arrows
    slots = sorted((f, g) for f in range(n, m) for g in range(n, m)
                   if base.cod(f) == base.dom(g))
    cands = [tuple(h for h in range(m)
                   if base.dom(h) == base.dom(f) and base.cod(h) == base.cod(g))
             for (f, g) in slots]
    triples = [(f, g, h) for f in range(n, m) for g in range(n, m) for h in range(n, m)
               if base.cod(f) == base.dom(g) and base.cod(g) == base.dom(h)]
    slot_of = {pair: k for k, pair in enumerate(slots)}
    results = []

    def lookup(table, f, g):
        # identity-involving compositions are forced
        if f < n:
            return g
        if g < n:
            return f
        return table.get((f, g))

    def assoc_ok(table):
        for (f, g, h) in triples:
            fg = lookup(table, f, g)
            gh = lookup(table, g, h)
            if fg is None or gh is None:
                continue
            lhs = lookup(table, fg, h)
            rhs = lookup(table, f, gh)
            if lhs is None or rhs is None:
                continue
            if lhs != rhs:
                return False
        return True

    def rec(k, table):
        if not assoc_ok(table):
            return
        if k == len(slots):
            results.append(dict(table))
            return
        f, g = slots[k]
        for h in cands[k]:
            table[(f, g)] = h
            rec(k + 1, table)
            del table[(f, g)]

    rec(0, {})
    cats = []
    for table in results:
        cats.append(_with_identities(labels, extra, table))
    return cats
