"""STITCH / FIX / COMPLETE and the equivalence oracle."""

import numpy as np
import pytest

import mapper_stitch as ms
from mapper_stitch.errors import CompositionError

from conftest import random_instance


def line_cloud(*xs):
    return ms.PointCloud(np.array([[float(x), 0.0] for x in xs]))


def ring_cloud():
    """12 points on a 2x3 rectangle ring, epsilon 1 connects neighbors.

    The left and right columns carry points at heights 0,1,1.5,2,3 (corners
    shared with top/bottom rows), giving middle-interval preimages that split
    into a left and a right piece.
    """
    pts = [(0, 0), (1, 0), (2, 0),
           (2, 1), (2, 1.5), (2, 2),
           (2, 3), (1, 3), (0, 3),
           (0, 2), (0, 1.5), (0, 1)]
    return ms.PointCloud(np.array(pts, dtype=float))


def ring_mappers():
    cloud = ring_cloud()
    graph = ms.build_neighborhood_graph(cloud, 1.0)
    fy = ms.FilterFunction.coordinate(1, "y")
    vy = ms.evaluate_filter(cloud, fy)
    mf_cov = ms.build_cover(vy, 3, 0.0)         # [0,1],[1,2],[2,3]
    mg_cov = ms.build_cover(vy, 2, 0.4)         # [0,1.875],[1.125,3]
    mf = ms.build_mapper(cloud, fy, mf_cov, graph)
    mg = ms.build_mapper(cloud, fy, mg_cov, graph)
    return cloud, graph, fy, mf_cov, mg_cov, mf, mg


# ---------------------------------------------------------------------------
# compose end-to-end
# ---------------------------------------------------------------------------

def test_compose_fig5_equals_direct(fig5_setup):
    s = fig5_setup
    composed, trace = ms.compose(s.mappers["x"], s.mappers["z"], s.graph)
    direct = ms.build_bivariate_mapper(
        s.cloud, s.filters["x"], s.filters["z"],
        ms.product(s.covers["x"], s.covers["z"]), s.graph)
    report = ms.verify_equivalence(composed, direct)
    assert report.equal, report.summary()
    assert composed.n_vertices == 9
    assert len(composed.simplices_of_dim(3)) == 4


def test_compose_trivial_second_mapper_is_isomorphic():
    cloud = ms.generate_shape("circle", 200, 0.0, seed=4)
    graph = ms.build_neighborhood_graph(cloud, 0.3)
    fy = ms.FilterFunction.coordinate(1, "y")
    fx = ms.FilterFunction.coordinate(0, "x")
    mf = ms.build_mapper(cloud, fy,
                         ms.build_cover(cloud.points[:, 1], 4, 0.2), graph)
    mg = ms.build_mapper(cloud, fx,
                         ms.build_cover(cloud.points[:, 0], 1, 0.0), graph)
    assert mg.n_vertices == 1  # connected cloud, single covering element
    composed, _ = ms.compose(mf, mg, graph)
    assert composed.canonical_simplices() == mf.canonical_simplices()


@pytest.mark.parametrize("seed", range(25))
def test_compose_oracle_random_clouds(seed):
    inst = random_instance(seed)
    composed, _ = ms.compose(inst.mapper_a, inst.mapper_b, inst.graph)
    direct = ms.build_bivariate_mapper(
        inst.cloud, inst.filter_a, inst.filter_b,
        ms.product(inst.cover_a, inst.cover_b), inst.graph)
    report = ms.verify_equivalence(composed, direct)
    assert report.equal, f"seed {seed}: {report.summary()}"


def test_compose_rejects_mismatched_clouds():
    a = random_instance(0)
    b = random_instance(1)
    with pytest.raises(CompositionError):
        ms.compose(a.mapper_a, b.mapper_b, a.graph)


def test_compose_non_unique_fix_parent_still_exact():
    """An element inside a cover overlap is contained in one vertex per
    overlapping interval; composition must handle it (not abort) and still
    match the direct construction."""
    cloud = line_cloud(0.0, 1.2, 1.5, 3.0)
    graph = ms.build_neighborhood_graph(cloud, 0.4)
    fx = ms.FilterFunction.coordinate(0, "x")
    fy = ms.FilterFunction.coordinate(1, "y")
    cov_f = ms.build_cover(cloud.points[:, 0], 2, 0.34)
    cov_g = ms.build_cover(cloud.points[:, 1], 1, 0.0)  # constant -> degenerate
    mf = ms.build_mapper(cloud, fx, cov_f, graph)
    # the {1.2, 1.5} component appears as a vertex of both intervals
    dupes = [v for v in mf.vertices if v.members == (1, 2)]
    assert len(dupes) == 2 and {v.first_factor for v in dupes} == {0, 1}
    mg = ms.build_mapper(cloud, fy, cov_g, graph)
    composed, _ = ms.compose(mf, mg, graph)
    direct = ms.build_bivariate_mapper(cloud, fx, fy,
                                       ms.product(cov_f, cov_g), graph)
    assert ms.verify_equivalence(composed, direct).equal
    # the duplicated member set also appears twice in the composition
    assert sum(1 for v in composed.vertices if v.members == (1, 2)) == 2


# ---------------------------------------------------------------------------
# stitch_interval
# ---------------------------------------------------------------------------

def test_stitch_interval_fig5_red_column(fig5_setup):
    s = fig5_setup
    partial, elements = ms.stitch_interval(0, s.mappers["x"], s.mappers["z"],
                                           s.graph)
    # U_0 holds the single connected (red) element; its three z-pieces
    # inherit the 2-edge path of the z-mapper
    assert len(elements) == 3
    assert len(partial.edges()) == 2
    assert ms.betti(partial, 0) == 1


def test_stitch_interval_split_vertex_lifts_only_shared_pairs():
    cloud, graph, fy, mf_cov, mg_cov, mf, mg = ring_mappers()
    # middle interval of mf: both mg vertices split into left/right pieces
    partial, elements = ms.stitch_interval(1, mf, mg, graph)
    assert len(elements) == 4
    edges = partial.edges()
    assert len(edges) == 2
    for a, b in edges:
        shared = partial.vertices[a].member_set & partial.vertices[b].member_set
        assert shared, "lifted edge without a shared point"
        # the two kept edges are same-side pairs; cross-side pairs dropped
        xs = {cloud.points[p][0] for p in
              partial.vertices[a].member_set | partial.vertices[b].member_set}
        assert len(xs) == 1


def test_stitch_interval_empty_v_set():
    cloud = line_cloud(0.0, 0.1, 2.9, 3.0)
    graph = ms.build_neighborhood_graph(cloud, 0.2)
    fx = ms.FilterFunction.coordinate(0, "x")
    fy = ms.FilterFunction.coordinate(1, "y")
    mf = ms.build_mapper(cloud, fx,
                         ms.build_cover(cloud.points[:, 0], 3, 0.0), graph)
    mg = ms.build_mapper(cloud, fy,
                         ms.build_cover(cloud.points[:, 1], 1, 0.0), graph)
    partial, elements = ms.stitch_interval(1, mf, mg, graph)  # empty middle
    assert elements == [] and partial.n_vertices == 0


# ---------------------------------------------------------------------------
# fix
# ---------------------------------------------------------------------------

def test_fix_fig5_adds_cross_edges_and_stays_one_dimensional(fig5_setup):
    s = fig5_setup
    composed, trace = ms.compose(s.mappers["x"], s.mappers["z"], s.graph)
    assert trace.dimension_before_complete == 1
    stitch_edges = {e for e in trace.stitch_simplices() if len(e) == 2}
    fix_edges = {e for e in trace.fix_added if len(e) == 2}
    assert len(stitch_edges) == 6       # three 2-edge columns
    assert len(fix_edges) == 14         # straight + diagonal cross edges
    assert fix_edges == set(trace.fix_added)  # FIX added edges only here


def test_fix_single_vertex_first_mapper():
    cloud = line_cloud(0, 1, 2)
    graph = ms.build_neighborhood_graph(cloud, 1.0)
    fx = ms.FilterFunction.coordinate(0, "x")
    fy = ms.FilterFunction.coordinate(1, "y")
    mf = ms.build_mapper(cloud, fx,
                         ms.build_cover(cloud.points[:, 0], 1, 0.0), graph)
    mg = ms.build_mapper(cloud, fy,
                         ms.build_cover(cloud.points[:, 1], 1, 0.0), graph)
    composed, trace = ms.compose(mf, mg, graph)
    assert trace.fix_added == []
    assert composed.n_vertices == 1


def test_fix_rejects_element_without_containing_vertex():
    cloud = line_cloud(0, 1, 2)
    graph = ms.build_neighborhood_graph(cloud, 1.0)
    fx = ms.FilterFunction.coordinate(0, "x")
    mf = ms.build_mapper(cloud, fx,
                         ms.build_cover(cloud.points[:, 0], 2, 0.2), graph)
    # a "composed" element spanning both intervals is contained in neither
    bogus = ms.CoverElement((0, 1, 2), (0, 0))
    partial = ms.MapperComplex([bogus], {(0,)}, 1,
                               covers=(mf.covers[0], mf.covers[0]),
                               filter_values=(mf.filter_values[0],) * 2,
                               graph=graph)
    with pytest.raises(CompositionError, match="no containing vertex"):
        ms.fix(partial, [bogus], mf)


def test_fix_omits_replacements_without_shared_points():
    cloud, graph, fy, mf_cov, mg_cov, mf, mg = ring_mappers()
    composed, trace = ms.compose(mf, mg, graph)
    direct = ms.build_bivariate_mapper(
        cloud, ms.FilterFunction.coordinate(1, "y"),
        ms.FilterFunction.coordinate(1, "y2"),
        ms.product(mf_cov, mg_cov), graph)
    assert ms.verify_equivalence(composed, direct).equal
    by_key = {v.key(): i for i, v in enumerate(composed.vertices)}
    # bottom piece (cell (0,0)) joins the lower-left piece (cell (1,0)) but
    # not the upper-left piece (cell (1,1)): the latter shares no point
    bottom = by_key[((0, 0), (0, 1, 2, 3, 11))]
    lower_left = by_key[((1, 0), (10, 11))]
    upper_left = by_key[((1, 1), (9, 10))]
    edges = set(composed.edges())
    assert tuple(sorted((bottom, lower_left))) in edges
    assert tuple(sorted((bottom, upper_left))) not in edges


# ---------------------------------------------------------------------------
# complete
# ---------------------------------------------------------------------------

def test_complete_hollow_triangle_unchanged():
    elements = [ms.CoverElement((0, 1), (0,)), ms.CoverElement((1, 2), (1,)),
                ms.CoverElement((2, 0), (2,))]
    cx = ms.nerve(elements, max_dim=2)
    assert cx.simplices_of_dim(2) == []
    done = ms.complete(cx)
    assert done.simplices == cx.simplices


def test_complete_fills_witnessed_triangle():
    # remove the 2-simplex from a nerve, COMPLETE must restore it
    elements = [ms.CoverElement((0, 1), (0,)), ms.CoverElement((1, 2), (1,)),
                ms.CoverElement((1, 3), (2,))]
    full = ms.nerve(elements, max_dim=2)
    stripped = ms.MapperComplex(full.vertices,
                                {s for s in full.simplices if len(s) <= 2},
                                max_dim=2)
    done = ms.complete(stripped)
    assert done.simplices == full.simplices


def test_complete_idempotent(fig5_setup):
    s = fig5_setup
    composed, _ = ms.compose(s.mappers["x"], s.mappers["z"], s.graph)
    once = ms.complete(composed)
    twice = ms.complete(once)
    assert once.simplices == composed.simplices == twice.simplices


# ---------------------------------------------------------------------------
# verify_equivalence
# ---------------------------------------------------------------------------

def test_verify_reports_single_edge_diff():
    inst = random_instance(3)
    direct = ms.build_bivariate_mapper(
        inst.cloud, inst.filter_a, inst.filter_b,
        ms.product(inst.cover_a, inst.cover_b), inst.graph)
    edges = direct.edges()
    assert edges
    # pick an edge whose endpoints have globally unique member sets so the
    # canonical simplex set actually changes
    members = [v.members for v in direct.vertices]
    edge = next(e for e in edges
                if members.count(members[e[0]]) == 1
                and members.count(members[e[1]]) == 1)
    tampered = ms.MapperComplex(direct.vertices,
                                set(direct.simplices) - {edge},
                                direct.max_dim, covers=direct.covers,
                                filter_values=direct.filter_values)
    report = ms.verify_equivalence(tampered, direct)
    assert not report.equal
    assert len(report.missing) == 1 and report.extra == []


def test_verify_empty_vs_empty():
    empty = ms.MapperComplex([], set(), 1)
    report = ms.verify_equivalence(empty, ms.MapperComplex([], set(), 1))
    assert report.equal


# ---------------------------------------------------------------------------
# phase partition and trace accounting
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("seed", [0, 4, 11, 17])
def test_phase_partition_and_trace_accounting(seed):
    inst = random_instance(seed)
    composed, trace = ms.compose(inst.mapper_a, inst.mapper_b, inst.graph)
    stitch = trace.stitch_simplices()
    fixed = trace.fix_simplices()
    completed = trace.complete_simplices()
    # the three phases partition the final simplex set
    assert stitch | fixed | completed == composed.simplices
    assert not (stitch & fixed) and not (stitch & completed)
    assert not (fixed & completed)
    # STITCH simplices live inside one first-factor interval of the row cover
    # only in the sense that they were lifted per interval; FIX spans >= 2
    for s in fixed:
        origins = {composed.vertices[v].first_factor for v in s}
        assert len(s) == 1 or len(origins) >= 2
    for s in completed:
        assert len(s) >= 3
    # accounting: performed + avoided covers the naive dim-1 enumeration
    n = composed.n_vertices
    assert trace.checks_performed + trace.checks_avoided >= n * (n - 1) // 2
    # every output simplex passes an explicit intersection recheck
    for s in composed.simplices:
        assert composed.intersection_of(s)
