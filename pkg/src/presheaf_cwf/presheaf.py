"""Presheaves over a finite category: tabulated sets and restriction maps.

A presheaf assigns a finite set to every object and, to every arrow
f: J -> I, a restriction table from set(I) to set(J).  Maps between
presheaves are per-object tables subject to naturality.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import catcore, kernel
from .catcore import FinCategory, ObjId, ArrId
from .errors import MismatchError
from .report import ValidationReport, Violation


@dataclass(frozen=True)
class FinSet:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("set size must be non-negative")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError("label count does not match size")
            if len(set(self.labels)) != self.size:
                raise ValueError("labels must be distinct")

    def label(self, k: int) -> str:
        return self.labels[k] if self.labels is not None else str(k)


@dataclass(frozen=True)
class Presheaf:
    base: FinCategory
    sets: tuple[FinSet, ...]
    restrict: tuple[tuple[int, ...], ...]

    def set_at(self, x: ObjId) -> FinSet:
        return self.sets[x]

    def act(self, f: ArrId, rho: int) -> int:
        """Restriction of element rho in set(cod f) along f."""
        return self.restrict[f][rho]


@dataclass(frozen=True)
class PshMap:
    source: Presheaf
    target: Presheaf
    components: tuple[tuple[int, ...], ...]

    def apply(self, x: ObjId, rho: int) -> int:
        return self.components[x][rho]


def same_presheaf(h: Presheaf, g: Presheaf) -> bool:
    """Structural equality ignoring element labels."""
    return (
        catcore.same_category(h.base, g.base)
        and tuple(s.size for s in h.sets) == tuple(s.size for s in g.sets)
        and h.restrict == g.restrict
    )


def same_pshmap(s1: PshMap, s2: PshMap) -> bool:
    return (
        same_presheaf(s1.source, s2.source)
        and same_presheaf(s1.target, s2.target)
        and s1.components == s2.components
    )


# ---------------------------------------------------------------------------
# validation

def validate_presheaf(h: Presheaf) -> ValidationReport:
    vs = []
    c = h.base
    if len(h.sets) != c.n_objects or len(h.restrict) != c.n_arrows:
        return ValidationReport("presheaf", (Violation(
            "table arity", f"{len(h.sets)} sets / {c.n_objects} objects, "
            f"{len(h.restrict)} tables / {c.n_arrows} arrows", structural=True),))
    for f in range(c.n_arrows):
        src_size = h.sets[c.cod(f)].size
        dst_size = h.sets[c.dom(f)].size
        if len(h.restrict[f]) != src_size:
            vs.append(Violation("restriction arity",
                                f"table for {c.arrow_name(f)} has {len(h.restrict[f])} "
                                f"entries, expected {src_size}", structural=True))
        elif any(not 0 <= v < dst_size for v in h.restrict[f]):
            vs.append(Violation("restriction range",
                                f"table for {c.arrow_name(f)} hits outside its target set",
                                structural=True))
    if vs:
        return ValidationReport("presheaf", tuple(vs))
    for x in range(c.n_objects):
        i = c.identity[x]
        for rho in range(h.sets[x].size):
            if h.restrict[i][rho] != rho:
                vs.append(Violation("identity restriction",
                                    f"at object {c.objects[x]}, element {rho}",
                                    lhs=str(h.restrict[i][rho]), rhs=str(rho)))
    # for f: J -> I and g: K -> J the composite (g then f): K -> I must
    # restrict as f followed by g
    for (g, f), gf in sorted(c.comp.items()):
        for rho in range(h.sets[c.cod(f)].size):
            lhs = h.restrict[gf][rho]
            rhs = h.restrict[g][h.restrict[f][rho]]
            if lhs != rhs:
                vs.append(Violation(
                    "composed restriction",
                    f"arrows ({c.arrow_name(g)}, {c.arrow_name(f)}), element {rho}",
                    lhs=str(lhs), rhs=str(rhs)))
    return ValidationReport("presheaf", tuple(vs))


def validate_pshmap(s: PshMap) -> ValidationReport:
    vs = []
    if not catcore.same_category(s.source.base, s.target.base):
        return ValidationReport("presheaf-map", (Violation(
            "base category", "source and target live over different categories",
            structural=True),))
    c = s.source.base
    if len(s.components) != c.n_objects:
        return ValidationReport("presheaf-map", (Violation(
            "component arity", f"{len(s.components)}/{c.n_objects}", structural=True),))
    for x in range(c.n_objects):
        if len(s.components[x]) != s.source.sets[x].size:
            vs.append(Violation("component arity",
                                f"at object {c.objects[x]}", structural=True))
        elif any(not 0 <= v < s.target.sets[x].size for v in s.components[x]):
            vs.append(Violation("component range",
                                f"at object {c.objects[x]}", structural=True))
    if vs:
        return ValidationReport("presheaf-map", tuple(vs))
    for f in range(c.n_arrows):
        i, j = c.cod(f), c.dom(f)
        for rho in range(s.source.sets[i].size):
            lhs = s.components[j][s.source.restrict[f][rho]]
            rhs = s.target.restrict[f][s.components[i][rho]]
            if lhs != rhs:
                vs.append(Violation("naturality",
                                    f"at arrow {c.arrow_name(f)}, element {rho}",
                                    lhs=str(lhs), rhs=str(rhs)))
    return ValidationReport("presheaf-map", tuple(vs))


# ---------------------------------------------------------------------------
# constructions

def constant_presheaf(c: FinCategory, size: int) -> Presheaf:
    sets = tuple(FinSet(size) for _ in range(c.n_objects))
    restrict = tuple(tuple(range(size)) for _ in range(c.n_arrows))
    return Presheaf(c, sets, restrict)


def identity_pshmap(h: Presheaf) -> PshMap:
    return PshMap(h, h, tuple(tuple(range(s.size)) for s in h.sets))


def compose_pshmaps(outer: PshMap, inner: PshMap) -> PshMap:
    """outer after inner: inner: H -> G, outer: G -> F gives H -> F."""
    if not same_presheaf(outer.source, inner.target):
        raise MismatchError("presheaf-map composition: middle presheaves differ")
    comps = tuple(
        tuple(outer.components[x][v] for v in inner.components[x])
        for x in range(len(inner.components)))
    return PshMap(inner.source, outer.target, comps)


def yoneda(c: FinCategory, x: ObjId) -> Presheaf:
    """The representable presheaf: set(I) = hom(I, x), restriction along
    f: J -> I sends a: I -> x to f-then-a."""
    homs = [c.hom(i, x) for i in range(c.n_objects)]
    pos = [{a: k for k, a in enumerate(hs)} for hs in homs]
    sets = tuple(FinSet(len(hs), tuple(c.arrow_name(a) for a in hs)) for hs in homs)
    restrict = []
    for f in range(c.n_arrows):
        i, j = c.cod(f), c.dom(f)
        restrict.append(tuple(pos[j][c.comp[(f, a)]] for a in homs[i]))
    return Presheaf(c, sets, tuple(restrict))


def yoneda_map(c: FinCategory, f: ArrId) -> PshMap:
    """The embedding's action on f: x -> y, a map yoneda(x) -> yoneda(y)
    given at each object by post-composition with f."""
    x, y = c.dom(f), c.cod(f)
    src, tgt = yoneda(c, x), yoneda(c, y)
    homs_x = [c.hom(i, x) for i in range(c.n_objects)]
    homs_y = [c.hom(i, y) for i in range(c.n_objects)]
    pos_y = [{a: k for k, a in enumerate(hs)} for hs in homs_y]
    comps = tuple(
        tuple(pos_y[i][c.comp[(g, f)]] for g in homs_x[i]) for i in range(c.n_objects))
    return PshMap(src, tgt, comps)


def enumerate_pshmaps(h: Presheaf, g: Presheaf, cap: int = 1_000_000) -> list[PshMap]:
    """All presheaf maps h -> g in lexicographic order on flattened components."""
    if not catcore.same_category(h.base, g.base):
        raise MismatchError("presheaf-map enumeration: bases differ")
    c = h.base
    offsets = []
    total = 0
    for x in range(c.n_objects):
        offsets.append(total)
        total += h.sets[x].size
    domains = []
    for x in range(c.n_objects):
        domains += [g.sets[x].size] * h.sets[x].size
    constraints = []
    for f in range(c.n_arrows):
        i, j = c.cod(f), c.dom(f)
        for rho in range(h.sets[i].size):
            constraints.append((offsets[i] + rho, g.restrict[f],
                                offsets[j] + h.restrict[f][rho], None))
    sols = kernel.enumerate_assignments(domains, constraints, cap, what="presheaf maps")
    out = []
    for s in sols:
        comps = tuple(
            tuple(s[offsets[x] + rho] for rho in range(h.sets[x].size))
            for x in range(c.n_objects))
        out.append(PshMap(h, g, comps))
    return out


def check_yoneda_lemma(c: FinCategory, cap: int = 1_000_000):
    """For every object pair (x, y): the embedding must be a bijection from
    hom(x, y) onto the presheaf maps yoneda(x) -> yoneda(y).

    Returns (overall_ok, rows); each row is a dict with the pair, both
    counts, and injectivity/surjectivity flags.
    """
    rows = []
    ok = True
    for x in range(c.n_objects):
        yx = yoneda(c, x)
        for y in range(c.n_objects):
            yy = yoneda(c, y)
            maps = enumerate_pshmaps(yx, yy, cap)
            images = [yoneda_map(c, f).components for f in c.hom(x, y)]
            inj = len(set(images)) == len(images)
            sur = {m.components for m in maps} <= set(images)
            row_ok = inj and sur and len(images) == len(maps)
            rows.append({
                "x": c.objects[x], "y": c.objects[y],
                "hom": len(images), "maps": len(maps),
                "injective": inj, "surjective": sur, "ok": row_ok,
            })
            ok = ok and row_ok
    return ok, rows


def category_of_elements(h: Presheaf) -> FinCategory:
    """Objects are pairs (I, rho); every base arrow f: J -> I induces an
    arrow (I, rho) -> (J, f(rho)) following the contravariant action."""
    c = h.base
    objs = [(i, rho) for i in range(c.n_objects) for rho in range(h.sets[i].size)]
    obj_pos = {o: k for k, o in enumerate(objs)}
    labels = tuple(f"({c.objects[i]},{h.sets[i].label(r)})" for (i, r) in objs)
    arrows = []
    arr_pos = {}
    for f in range(c.n_arrows):
        i = c.cod(f)
        for rho in range(h.sets[i].size):
            src = obj_pos[(i, rho)]
            dst = obj_pos[(c.dom(f), h.restrict[f][rho])]
            arr_pos[(f, i, rho)] = len(arrows)
            arrows.append(catcore.Arrow(
                f"{c.arrow_name(f)}@{c.objects[i]}:{rho}", src, dst))
    identity = tuple(arr_pos[(c.identity[i], i, rho)] for (i, rho) in objs)
    comp = {}
    for (f, i, rho), a1 in arr_pos.items():
        # arrows out of (dom f, f(rho)): any g with cod g == dom f
        j, rho2 = c.dom(f), h.restrict[f][rho]
        for g in range(c.n_arrows):
            if c.cod(g) != j:
                continue
            a2 = arr_pos[(g, j, rho2)]
            comp[(a1, a2)] = arr_pos[(c.comp[(g, f)], i, rho)]
    return FinCategory(labels, tuple(arrows), identity, comp)
