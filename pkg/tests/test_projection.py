"""Projection construction, double-point extraction and classification."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from selflink.curves import RationalComponent, RationalLink
from selflink.errors import NonGenericCenter
from selflink.projection import (
    CROSSING,
    IMAGINARY_PAIR,
    SOLITARY,
    _phase_normalize,
    analyze_projection,
    build_projection,
    double_points_self,
    generic_analysis,
    projection_matrix,
)

SQRT3 = np.sqrt(3.0)


def gmat(*rows):
    width = max(len(r) for r in rows)
    out = np.zeros((len(rows), width))
    for i, r in enumerate(rows):
        out[i, : len(r)] = r
    return out


def twisted_cubic():
    return RationalLink((RationalComponent(np.eye(4)),))


def trefoil():
    c = np.zeros((4, 6))
    c[0, 0] = 1.0
    c[1, 3], c[1, 1] = 1.0, -3.0
    c[2, 4], c[2, 2] = 1.0, -4.0
    c[3, 5], c[3, 1] = 1.0, -10.0
    return RationalLink((RationalComponent(c),))


def skew_lines():
    a = gmat([1.0], [0.0, 1.0], [0.0], [0.0])
    b = gmat([1.0], [0.0], [0.0, 1.0], [1.0])
    return RationalLink((RationalComponent(a[:4]), RationalComponent(b[:4])))


def circle_component():
    return RationalComponent(gmat([1.0, 0.0, 1.0], [1.0, 0.0, -1.0],
                                  [0.0, 2.0], [0.0]))


def axis_line_and_circle():
    axis = RationalComponent(gmat([1.0], [0.0], [0.0], [0.0, 1.0]))
    return RationalLink((axis, circle_component()))


def far_line_and_circle():
    line = RationalComponent(gmat([1.0], [3.0], [0.0], [0.0, 1.0]))
    return RationalLink((line, circle_component()))


centers = st.lists(
    st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=4, max_size=4
).filter(lambda c: np.linalg.norm(c) > 1e-3)


# ---------------------------------------------------------------------------
# matrix construction


@given(centers)
def test_projection_matrix_right_inverse_exact(center):
    m, e = projection_matrix(center)
    assert np.array_equal(m @ e, np.eye(3))
    c = np.asarray(center) / np.linalg.norm(center)
    assert np.max(np.abs(m @ c)) <= 1e-14
    assert np.linalg.matrix_rank(m) == 3


@given(centers)
def test_projection_plane_misses_center(center):
    proj = build_projection(center)
    k = int(np.argmax(np.abs(proj.center)))
    assert np.array_equal(proj.embedding[k], np.zeros(3))
    assert abs(proj.center[k]) > 0.1


# ---------------------------------------------------------------------------
# hand-solved anchors on the twisted cubic


def test_cubic_solitary_anchor():
    analysis = analyze_projection(twisted_cubic(), (0.0, 1.0, 1.0, 0.0))
    assert len(analysis.points) == 1
    p = analysis.points[0]
    assert p.kind == SOLITARY and p.is_self
    tau = (1 + 1j * SQRT3) / 2
    assert abs(p.params[0] - tau) <= 1e-8
    assert p.params[1] == np.conj(p.params[0])
    w = p.image / np.linalg.norm(p.image)
    ref = np.array([1.0, -1.0, -1.0]) / SQRT3
    assert min(np.linalg.norm(w - ref), np.linalg.norm(w + ref)) <= 1e-8


def test_cubic_crossing_anchor():
    analysis = analyze_projection(twisted_cubic(), (0.0, 1.0, 0.0, 1.0))
    assert len(analysis.points) == 1
    p = analysis.points[0]
    assert p.kind == CROSSING and p.is_self
    assert np.allclose([p.params[0], p.params[1]], [-1.0, 1.0], atol=1e-8)
    assert p.params[0].imag == 0.0 and p.params[1].imag == 0.0
    w = p.image / np.linalg.norm(p.image)
    ref = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
    assert min(np.linalg.norm(w - ref), np.linalg.norm(w + ref)) <= 1e-8


def test_double_points_self_direct_matrices():
    # same two anchors without going through a center
    crossing_g = gmat([1.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0, 1.0])
    pts = double_points_self(crossing_g)
    assert [p.kind for p in pts] == [CROSSING]
    assert np.allclose([pts[0].params[0], pts[0].params[1]], [-1.0, 1.0], atol=1e-8)

    solitary_g = gmat([1.0], [0.0, -1.0, 1.0], [0.0, 0.0, 0.0, 1.0])
    pts = double_points_self(solitary_g)
    assert [p.kind for p in pts] == [SOLITARY]
    assert abs(pts[0].params[0] - (1 + 1j * SQRT3) / 2) <= 1e-8


def test_cubic_low_degree_components_have_no_self_points():
    assert double_points_self(gmat([1.0], [0.0, 1.0], [2.0])) == []
    assert double_points_self(gmat([1.0, 0.0, 1.0], [1.0, 0.0, -1.0], [0.0, 2.0])) == []


# ---------------------------------------------------------------------------
# random centers


def test_cubic_generic_centers_single_point_both_regimes():
    rng = np.random.default_rng(7)
    kinds = set()
    for _ in range(12):
        analysis = generic_analysis(rng, twisted_cubic())
        assert len(analysis.points) == 1
        kinds.add(analysis.points[0].kind)
    assert kinds == {CROSSING, SOLITARY}


def test_trefoil_six_points_conjugation_closed():
    rng = np.random.default_rng(19)
    analysis = generic_analysis(rng, trefoil())
    pts = analysis.points
    assert len(pts) == 6
    census = {k: sum(p.kind == k for p in pts) for k in
              (CROSSING, SOLITARY, IMAGINARY_PAIR)}
    assert sum(census.values()) == 6
    assert census[IMAGINARY_PAIR] % 2 == 0
    for p in pts:
        if p.kind == CROSSING:
            assert p.params[0].imag == 0.0 and p.params[1].imag == 0.0
            assert p.params[0].real < p.params[1].real
        elif p.kind == SOLITARY:
            assert p.params[0].imag > 0.0
            assert p.params[1] == np.conj(p.params[0])
            assert np.max(np.abs(np.asarray(p.image).imag)) == 0.0
        else:
            mates = [
                q for q in pts
                if q is not p and q.kind == IMAGINARY_PAIR
                and abs(q.params[0] - np.conj(p.params[0])) <= 1e-6
                and abs(q.params[1] - np.conj(p.params[1])) <= 1e-6
            ]
            assert len(mates) == 1


def test_trefoil_crossings_match_dense_scan():
    rng = np.random.default_rng(19)
    analysis = generic_analysis(rng, trefoil())
    dense = oracles.dense_real_crossings(analysis.projected[0])
    claimed = sorted(
        (p.params[0].real, p.params[1].real)
        for p in analysis.points
        if p.kind == CROSSING
    )
    assert len(dense) == len(claimed)
    for (a, b), (c, d) in zip(claimed, dense):
        assert abs(a - c) <= 1e-4 * (1 + abs(a))
        assert abs(b - d) <= 1e-4 * (1 + abs(b))


def test_solitary_image_isolated_crossing_image_on_branch():
    g_sol = gmat([1.0], [0.0, -1.0, 1.0], [0.0, 0.0, 0.0, 1.0])
    assert oracles.min_distance_to_real_branch(g_sol, (1.0, -1.0, -1.0)) > 0.05
    g_cross = gmat([1.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0, 1.0])
    assert oracles.min_distance_to_real_branch(g_cross, (1.0, 1.0, 0.0)) < 5e-3


# ---------------------------------------------------------------------------
# several components


def test_skew_lines_single_real_crossing():
    rng = np.random.default_rng(3)
    analysis = generic_analysis(rng, skew_lines())
    assert len(analysis.points) == 1
    p = analysis.points[0]
    assert p.kind == CROSSING
    assert (p.comp_a, p.comp_b) == (0, 1) and not p.is_self


def test_axis_and_circle_always_real_pair():
    # the line pierces the circle's disk, so its image passes through the
    # interior of the image conic: two real intersections for any center
    for seed in range(5):
        rng = np.random.default_rng(100 + seed)
        analysis = generic_analysis(rng, axis_line_and_circle())
        assert [p.kind for p in analysis.points] == [CROSSING, CROSSING]


def test_far_line_and_circle_shows_both_cross_kinds():
    configs = set()
    for seed in range(10):
        rng = np.random.default_rng(200 + seed)
        analysis = generic_analysis(rng, far_line_and_circle())
        kinds = tuple(sorted(p.kind for p in analysis.points))
        assert kinds in ((CROSSING, CROSSING), (IMAGINARY_PAIR, IMAGINARY_PAIR))
        configs.add(kinds)
    assert len(configs) == 2


def test_cross_points_respect_component_roles():
    rng = np.random.default_rng(11)
    analysis = generic_analysis(rng, far_line_and_circle())
    ga, gb = analysis.projected
    for p in analysis.points:
        pa = np.polynomial.polynomial.polyval(p.params[0], ga.T)
        pb = np.polynomial.polynomial.polyval(p.params[1], gb.T)
        gap = np.linalg.norm(np.cross(pa, pb)) / (
            np.linalg.norm(pa) * np.linalg.norm(pb)
        )
        assert gap <= 1e-6


def test_planar_conic_has_no_double_points():
    rng = np.random.default_rng(5)
    link = RationalLink((circle_component(),))
    analysis = generic_analysis(rng, link)
    assert analysis.points == []


# ---------------------------------------------------------------------------
# rejected centers


def test_center_on_curve_rejected():
    f03 = np.array([1.0, 0.3, 0.09, 0.027])
    with pytest.raises(NonGenericCenter):
        analyze_projection(twisted_cubic(), f03)


def test_center_on_tangent_line_rejected():
    # both points span the tangent line of the cubic at parameter 1
    with pytest.raises(NonGenericCenter):
        analyze_projection(twisted_cubic(), (0.0, 1.0, 2.0, 3.0))
    with pytest.raises(NonGenericCenter):
        analyze_projection(twisted_cubic(), (1.0, 2.0, 3.0, 4.0))


def test_center_at_parameter_infinity_rejected():
    with pytest.raises(NonGenericCenter):
        analyze_projection(twisted_cubic(), (0.0, 0.0, 0.0, 1.0))
    with pytest.raises(NonGenericCenter):
        analyze_projection(trefoil(), (0.0, 0.0, 0.0, 1.0))


# ---------------------------------------------------------------------------
# determinism and phase normalization


def test_generic_analysis_deterministic():
    runs = []
    for _ in range(2):
        rng = np.random.default_rng(123)
        analysis = generic_analysis(rng, trefoil())
        runs.append(analysis)
    assert np.array_equal(runs[0].projection.center, runs[1].projection.center)
    pa = [(p.kind, p.params) for p in runs[0].points]
    pb = [(p.kind, p.params) for p in runs[1].points]
    assert pa == pb


@settings(max_examples=60)
@given(
    st.lists(st.floats(min_value=-5, max_value=5), min_size=3, max_size=3).filter(
        lambda v: np.linalg.norm(v) > 0.1
    ),
    st.floats(min_value=-3.1, max_value=3.1),
)
def test_phase_normalize_recovers_rotated_real_vector(v, phi):
    v = np.asarray(v)
    w, defect = _phase_normalize(np.exp(1j * phi) * v)
    assert defect <= 1e-10
    assert min(np.linalg.norm(w - v), np.linalg.norm(w + v)) <= 1e-8 * np.linalg.norm(v)
