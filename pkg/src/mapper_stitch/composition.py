"""Stitching two univariate mappers into a composed bivariate mapper.

The construction runs in three phases. STITCH walks the first mapper's
intervals: inside interval i it intersects the members of every first-mapper
vertex u whose filter values lie entirely in the interval with every
second-mapper vertex v touching the interval, splits each intersection into
graph components (the composed elements), and lifts the second mapper's
induced subcomplex by replacing each v with its derived components - every
combination of choices is kept only if the chosen components share a point.
FIX adds cross-interval simplices: each first-mapper simplex is replayed
with every vertex u replaced by each composed element contained in u, again
gated by the shared-point (nerve) condition. COMPLETE then adds higher
simplices dimension by dimension: a candidate vertex set enters when all its
facets are present and its members still intersect.

A composed element is identified by its (row interval, column interval) cell
together with its member set, which makes the output literally equal to the
directly-built bivariate mapper (verify_equivalence checks this at the level
of canonical member sets).

Containment of a composed element in a first-mapper vertex is NOT unique in
general: an element lying entirely inside a cover overlap is contained in
one vertex per overlapping interval. FIX therefore enumerates all containing
vertices instead of asserting uniqueness; at least one must exist, and a
missing parent aborts with a diagnostic since it signals an inconsistent
connectivity notion upstream.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import CompositionError
from .mapper import CoverElement, MapperComplex, NeighborhoodGraph, components


# ---------------------------------------------------------------------------
# trace
# ---------------------------------------------------------------------------

@dataclass
class IntervalRecord:
    """What one interval's STITCH phase contributed (final vertex indices)."""

    interval: int
    replaced: list[tuple[int, list[int]]]
    vertices_added: list[int]
    stitch_added: list[tuple[int, ...]]

    def to_dict(self):
        return {
            "interval": self.interval,
            "replaced": [
                {"g_vertex": gv, "components": comps} for gv, comps in self.replaced
            ],
            "vertices_added": list(self.vertices_added),
            "stitch_added": [list(s) for s in self.stitch_added],
        }


@dataclass
class CompositionTrace:
    """Per-phase accounting of the composition.

    checks_performed counts explicit member-intersection tests; for the
    1-skeleton, checks_avoided is the number of vertex pairs the phases never
    had to test explicitly, i.e. C(V,2) minus the distinct pairs tested, so
    checks_avoided + checks_performed always covers the naive direct nerve's
    dimension-1 candidate count.
    """

    interval_records: list[IntervalRecord] = field(default_factory=list)
    fix_added: list[tuple[int, ...]] = field(default_factory=list)
    complete_rounds: list[dict] = field(default_factory=list)
    checks_performed: int = 0
    checks_avoided: int = 0
    dimension_before_complete: int = -1

    def stitch_simplices(self) -> set[tuple[int, ...]]:
        out: set[tuple[int, ...]] = set()
        for rec in self.interval_records:
            out.update(rec.stitch_added)
            out.update((v,) for v in rec.vertices_added)
        return out

    def fix_simplices(self) -> set[tuple[int, ...]]:
        return set(self.fix_added)

    def complete_simplices(self) -> set[tuple[int, ...]]:
        out: set[tuple[int, ...]] = set()
        for rnd in self.complete_rounds:
            out.update(tuple(s) for s in rnd["added"])
        return out

    def to_dict(self):
        return {
            "intervals": [rec.to_dict() for rec in self.interval_records],
            "fix_added": [list(s) for s in self.fix_added],
            "complete_rounds": [
                {"dim": rnd["dim"], "added": [list(s) for s in rnd["added"]]}
                for rnd in self.complete_rounds
            ],
            "checks_performed": self.checks_performed,
            "checks_avoided": self.checks_avoided,
            "dimension_before_complete": self.dimension_before_complete,
        }


@dataclass
class EquivalenceReport:
    equal: bool
    missing: list  # canonical simplices present in direct, absent in composed
    extra: list    # present in composed, absent in direct

    def summary(self) -> str:
        if self.equal:
            return "equal"
        return (f"complexes differ: {len(self.missing)} simplices missing from "
                f"the composed mapper, {len(self.extra)} extra")


# ---------------------------------------------------------------------------
# phase cores (operate on element keys = (origin cell, member tuple))
# ---------------------------------------------------------------------------

def _vertex_value_ranges(cx: MapperComplex) -> list[tuple[float, float]]:
    vals = cx.filter_values[0]
    out = []
    for v in cx.vertices:
        mv = vals[np.fromiter(v.members, dtype=np.int64)]
        out.append((float(mv.min()), float(mv.max())))
    return out


def _stitch_core(interval_index, mf, mg, graph, max_dim, mg_member_values,
                 mf_ranges):
    """One interval's STITCH pass.

    Returns (created, comp_lists, lifted, checks, tested_pairs) where created
    maps element key -> CoverElement in creation order, comp_lists maps a
    second-mapper vertex index to its derived element keys, and lifted holds
    the kept lifted simplices as sorted key tuples.
    """
    iv = mf.covers[0].intervals[interval_index]
    lo, hi = iv.lo, iv.hi

    us = [ui for ui, (vmin, vmax) in enumerate(mf_ranges)
          if lo <= vmin and vmax <= hi]
    vs = [vi for vi in range(len(mg.vertices))
          if bool(np.any((mg_member_values[vi] >= lo)
                         & (mg_member_values[vi] <= hi)))]

    created: dict[tuple, CoverElement] = {}
    comp_lists: dict[int, list[tuple]] = {vi: [] for vi in vs}
    seen: dict[int, set] = {vi: set() for vi in vs}
    for ui in us:
        mu_u = mf.vertices[ui].member_set
        u_origin = mf.vertices[ui].origin[0]
        for vi in vs:
            inter = mu_u & mg.vertices[vi].member_set
            if not inter:
                continue
            cell = (u_origin, mg.vertices[vi].origin[0])
            for comp in components(graph, inter):
                key = (cell, tuple(comp))
                if key not in created:
                    created[key] = CoverElement(tuple(comp), cell)
                if key not in seen[vi]:
                    seen[vi].add(key)
                    comp_lists[vi].append(key)

    vset = set(vs)
    lifted: set[tuple] = set()
    checks = 0
    tested_pairs: set[tuple] = set()
    for simplex in mg.simplices:
        if len(simplex) < 2 or len(simplex) > max_dim + 1:
            continue
        if not vset.issuperset(simplex):
            continue
        pools = [comp_lists[vi] for vi in simplex]
        if any(not pool for pool in pools):
            continue
        for choice in itertools.product(*pools):
            keys = tuple(sorted(set(choice)))
            if len(keys) != len(simplex):
                continue
            checks += 1
            if len(keys) == 2:
                tested_pairs.add(keys)
            inter = created[keys[0]].member_set
            ok = True
            for key in keys[1:]:
                inter = inter & created[key].member_set
                if not inter:
                    ok = False
                    break
            if ok:
                lifted.add(keys)
    return created, comp_lists, lifted, checks, tested_pairs


def _containing_parents(element, mf, mf_fvals, pt2vert):
    """All first-mapper vertices whose member set contains the element."""
    mv = mf_fvals[np.fromiter(element.members, dtype=np.int64)]
    wmin = float(mv.min())
    wmax = float(mv.max())
    parents = []
    first = element.members[0]
    for iv in mf.covers[0].intervals:
        if iv.lo <= wmin and wmax <= iv.hi:
            ui = pt2vert.get((iv.index, first))
            if ui is not None and element.member_set <= mf.vertices[ui].member_set:
                parents.append(ui)
    return parents


def _fix_core(elements, mf, max_dim, simplex_keys):
    """Cross-interval FIX pass over final element indices.

    simplex_keys is the current simplex set (tuples of element indices);
    returns (fix_added, checks, tested_pairs).
    """
    mf_fvals = mf.filter_values[0]
    pt2vert: dict[tuple[int, int], int] = {}
    for ui, u in enumerate(mf.vertices):
        for p in u.members:
            pt2vert[(u.origin[0], p)] = ui

    children: dict[int, list[int]] = defaultdict(list)
    for eid, el in enumerate(elements):
        parents = _containing_parents(el, mf, mf_fvals, pt2vert)
        if not parents:
            raise CompositionError(
                f"composed element with origin {el.origin} and "
                f"{el.size} members has no containing vertex in the first "
                f"mapper; the connectivity notion is inconsistent"
            )
        for ui in parents:
            children[ui].append(eid)

    fix_added: list[tuple[int, ...]] = []
    checks = 0
    tested_pairs: set[tuple] = set()
    for simplex in sorted(mf.simplices):
        if len(simplex) < 2 or len(simplex) > max_dim + 1:
            continue
        pools = [children.get(ui, ()) for ui in simplex]
        if any(not pool for pool in pools):
            continue
        for choice in itertools.product(*pools):
            ids = tuple(sorted(set(choice)))
            if len(ids) != len(simplex):
                continue
            if ids in simplex_keys:
                continue
            checks += 1
            if len(ids) == 2:
                tested_pairs.add(ids)
            inter = elements[ids[0]].member_set
            ok = True
            for eid in ids[1:]:
                inter = inter & elements[eid].member_set
                if not inter:
                    ok = False
                    break
            if ok:
                simplex_keys.add(ids)
                fix_added.append(ids)
    return fix_added, checks, tested_pairs


def _complete_core(elements, simplex_keys, max_dim):
    """p-completion gated by the nerve condition, dimension by dimension.

    Returns (rounds, checks); a single pass per dimension already reaches the
    fixpoint (candidates depend only on the frozen lower layer), the loop
    just verifies it.
    """
    rounds: list[dict] = []
    checks = 0
    nbrs: dict[int, set[int]] = defaultdict(set)
    for s in simplex_keys:
        if len(s) == 2:
            nbrs[s[0]].add(s[1])
            nbrs[s[1]].add(s[0])
    for dim in range(2, max_dim + 1):
        added_this_dim: list[tuple[int, ...]] = []
        while True:
            base = sorted(s for s in simplex_keys if len(s) == dim)
            new: list[tuple[int, ...]] = []
            for s in base:
                common = nbrs[s[0]]
                for vid in s[1:]:
                    common = common & nbrs[vid]
                    if not common:
                        break
                for vid in sorted(common):
                    if vid <= s[-1]:
                        continue
                    cand = s + (vid,)
                    if cand in simplex_keys:
                        continue
                    if any(cand[:k] + cand[k + 1:] not in simplex_keys
                           for k in range(len(cand))):
                        continue
                    checks += 1
                    inter = elements[cand[0]].member_set
                    ok = True
                    for eid in cand[1:]:
                        inter = inter & elements[eid].member_set
                        if not inter:
                            ok = False
                            break
                    if ok:
                        new.append(cand)
            if not new:
                break
            simplex_keys.update(new)
            added_this_dim.extend(new)
        rounds.append({"dim": dim, "added": sorted(added_this_dim)})
    return rounds, checks


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _check_inputs(mf, mg, graph):
    for cx, name in ((mf, "first"), (mg, "second")):
        if len(cx.covers) != 1 or len(cx.filter_values) != 1:
            raise CompositionError(f"{name} mapper must be univariate")
        if cx.filter_values[0].shape[0] != graph.n:
            raise CompositionError("mappers and graph cover different clouds")
        if cx.graph is not None and (cx.graph.n != graph.n
                                     or cx.graph.epsilon != graph.epsilon):
            raise CompositionError("mapper was built over a different graph")


def stitch_interval(interval_index, mf, mg, graph, max_dim=None):
    """Run STITCH for one interval of the first mapper.

    Returns (partial complex, composed CoverElements for this interval); the
    partial complex holds the interval's composed vertices and the lifted
    within-interval simplices.
    """
    _check_inputs(mf, mg, graph)
    if not 0 <= interval_index < mf.covers[0].resolution:
        raise ValueError("interval index out of range")
    if max_dim is None:
        max_dim = mf.max_dim
    mg_member_values = _mg_member_values(mf, mg)
    mf_ranges = _vertex_value_ranges(mf)
    created, _, lifted, _, _ = _stitch_core(
        interval_index, mf, mg, graph, max_dim, mg_member_values, mf_ranges)
    order = sorted(created)
    index = {key: i for i, key in enumerate(order)}
    elements = [created[key] for key in order]
    simplices = {(i,) for i in range(len(elements))}
    simplices.update(tuple(sorted(index[k] for k in keys)) for keys in lifted)
    partial = MapperComplex(elements, simplices, max_dim,
                            covers=(mf.covers[0], mg.covers[0]),
                            filter_values=(mf.filter_values[0],
                                           mg.filter_values[0]),
                            graph=graph)
    return partial, elements


def fix(partial, composed_cover, mf, max_dim=None):
    """Add cross-interval simplices to a stitched partial complex, then run
    COMPLETE. composed_cover must list the partial complex's vertices."""
    if max_dim is None:
        max_dim = partial.max_dim
    elements = list(partial.vertices)
    if list(composed_cover) != elements:
        raise CompositionError("composed_cover does not match the partial complex")
    simplex_keys = set(partial.simplices)
    _fix_core(elements, mf, max_dim, simplex_keys)
    _complete_core(elements, simplex_keys, max_dim)
    return MapperComplex(elements, simplex_keys, max_dim,
                         covers=partial.covers,
                         filter_values=partial.filter_values,
                         graph=partial.graph)


def complete(cx: MapperComplex, max_dim=None) -> MapperComplex:
    """p-completion of a complex gated by the nerve condition (idempotent)."""
    if max_dim is None:
        max_dim = cx.max_dim
    simplex_keys = set(cx.simplices)
    _complete_core(list(cx.vertices), simplex_keys, max_dim)
    return MapperComplex(cx.vertices, simplex_keys, max_dim, covers=cx.covers,
                         filter_values=cx.filter_values, graph=cx.graph)


def _mg_member_values(mf, mg):
    fvals = mf.filter_values[0]
    return [fvals[np.fromiter(v.members, dtype=np.int64)] for v in mg.vertices]


def compose(mf: MapperComplex, mg: MapperComplex, graph: NeighborhoodGraph,
            max_dim=None):
    """Compose two univariate mappers into the bivariate mapper over the
    product cover; returns (complex, trace)."""
    _check_inputs(mf, mg, graph)
    if max_dim is None:
        max_dim = mf.max_dim

    mg_member_values = _mg_member_values(mf, mg)
    mf_ranges = _vertex_value_ranges(mf)

    element_index: dict[tuple, int] = {}
    elements: list[CoverElement] = []
    simplex_keys: set[tuple[int, ...]] = set()
    raw_records = []
    checks = 0
    tested_pairs: set[tuple] = set()

    for i in range(mf.covers[0].resolution):
        created, comp_lists, lifted, c, pairs = _stitch_core(
            i, mf, mg, graph, max_dim, mg_member_values, mf_ranges)
        checks += c
        new_vertices = []
        for key, el in created.items():
            if key not in element_index:
                element_index[key] = len(elements)
                elements.append(el)
                new_vertices.append(key)
        replaced = [(vi, list(keys)) for vi, keys in comp_lists.items() if keys]
        stitch_added = []
        for keys in lifted:
            ids = tuple(sorted(element_index[k] for k in keys))
            if ids not in simplex_keys:
                simplex_keys.add(ids)
                stitch_added.append(ids)
        for key in new_vertices:
            simplex_keys.add((element_index[key],))
        tested_pairs.update(
            tuple(sorted((element_index[a], element_index[b])))
            for a, b in pairs)
        raw_records.append((i, replaced, new_vertices, stitch_added))

    fix_added, c, pairs = _fix_core(elements, mf, max_dim, simplex_keys)
    checks += c
    tested_pairs.update(pairs)
    dim_before_complete = max((len(s) - 1 for s in simplex_keys), default=-1)
    rounds, c = _complete_core(elements, simplex_keys, max_dim)
    checks += c

    # canonical vertex order: by origin cell, then member set
    order = sorted(range(len(elements)), key=lambda e: elements[e].key())
    perm = {old: new for new, old in enumerate(order)}
    final_elements = [elements[old] for old in order]

    def remap(simplex):
        return tuple(sorted(perm[v] for v in simplex))

    final_simplices = {remap(s) for s in simplex_keys}
    trace = CompositionTrace(checks_performed=checks,
                             dimension_before_complete=dim_before_complete)
    for i, replaced, new_vertices, stitch_added in raw_records:
        trace.interval_records.append(IntervalRecord(
            interval=i,
            replaced=[(vi, sorted(perm[element_index[k]] for k in keys))
                      for vi, keys in replaced],
            vertices_added=sorted(perm[element_index[k]] for k in new_vertices),
            stitch_added=sorted(remap(s) for s in stitch_added),
        ))
    trace.fix_added = sorted(remap(s) for s in fix_added)
    trace.complete_rounds = [
        {"dim": rnd["dim"], "added": sorted(remap(s) for s in rnd["added"])}
        for rnd in rounds
    ]
    n = len(final_elements)
    trace.checks_avoided = max(0, n * (n - 1) // 2 - len(tested_pairs))

    composed = MapperComplex(final_elements, final_simplices, max_dim,
                             covers=(mf.covers[0], mg.covers[0]),
                             filter_values=(mf.filter_values[0],
                                            mg.filter_values[0]),
                             graph=graph)
    return composed, trace


def verify_equivalence(composed: MapperComplex,
                       direct: MapperComplex) -> EquivalenceReport:
    """Exact equality of canonical vertex and simplex sets (member-set level);
    on mismatch the report lists missing/extra simplices both ways."""
    cs = composed.canonical_simplices()
    ds = direct.canonical_simplices()
    if cs == ds:
        return EquivalenceReport(True, [], [])
    missing = sorted(tuple(sorted(s)) for s in ds - cs)
    extra = sorted(tuple(sorted(s)) for s in cs - ds)
    return EquivalenceReport(False, missing, extra)
