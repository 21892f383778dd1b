import numpy as np
import pytest
from hypothesis import given, assume, settings, strategies as st

from selflink.curves import (
    ProjectiveTransform,
    RationalComponent,
    RationalLink,
    mobius_parameter_map,
    reparametrize,
    rotation_mobius,
    stereographic_from_sphere,
    transform,
    validate,
)
from selflink.errors import (
    NotOnQuadric,
    PoleOnCurve,
    SingularMobius,
    SingularTransform,
    ValidationError,
)


def twisted_cubic():
    return RationalComponent(np.array([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]))


def trefoil():
    # degree-5 knot (1 : t^3 - 3t : t^4 - 4t^2 : t^5 - 10t)
    c = np.zeros((4, 6))
    c[0, 0] = 1.0
    c[1, 3], c[1, 1] = 1.0, -3.0
    c[2, 4], c[2, 2] = 1.0, -4.0
    c[3, 5], c[3, 1] = 1.0, -10.0
    return RationalComponent(c)


def test_component_basics():
    c = twisted_cubic()
    assert c.degree == 3
    assert np.allclose(c.point(2.0), [1.0, 2.0, 4.0, 8.0])
    assert np.allclose(c.velocity(2.0), [0.0, 1.0, 4.0, 12.0])
    z = c.point(1 + 1j)
    assert np.allclose(z, [1, 1 + 1j, 2j, -2 + 2j])


def test_component_trims_and_rejects_zero():
    c = RationalComponent(np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]))
    assert c.degree == 0
    with pytest.raises(ValueError):
        RationalComponent(np.zeros((4, 3)))


def test_mirror_is_involution_and_negates_last_row():
    c = twisted_cubic()
    m = c.mirror()
    assert np.allclose(m.coeff_matrix[3], [0.0, 0.0, 0.0, -1.0])
    assert np.allclose(m.mirror().coeff_matrix, c.coeff_matrix)


def test_transform_group_action():
    rng = np.random.default_rng(19)
    link = RationalLink((twisted_cubic(),))
    t1 = ProjectiveTransform(rng.standard_normal((4, 4)))
    t2 = ProjectiveTransform(rng.standard_normal((4, 4)))
    lhs = transform(transform(link, t1), t2)
    rhs = link.transformed(t2.matrix @ t1.matrix)
    assert np.allclose(lhs.components[0].coeff_matrix, rhs.components[0].coeff_matrix)


def test_singular_transform_rejected():
    m = np.zeros((4, 4))
    m[0, 0] = 1.0
    with pytest.raises(SingularTransform):
        ProjectiveTransform(m)


def test_reparametrize_identity_and_shift():
    c = twisted_cubic()
    same = reparametrize(c, np.eye(2))
    assert np.allclose(same.coeff_matrix, c.coeff_matrix)
    shifted = reparametrize(c, np.array([[1.0, 1.0], [0.0, 1.0]]))
    # rows become (1, t+1, (t+1)^2, (t+1)^3)
    assert np.allclose(shifted.coeff_matrix[2], [1.0, 2.0, 1.0, 0.0])
    assert np.allclose(shifted.coeff_matrix[3], [1.0, 3.0, 3.0, 1.0])


def test_reparametrize_singular_rejected():
    with pytest.raises(SingularMobius):
        reparametrize(twisted_cubic(), np.array([[1.0, 2.0], [2.0, 4.0]]))


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.1, max_value=3.0), st.floats(min_value=-2.0, max_value=2.0))
def test_reparametrize_preserves_image_points(a, b):
    c = trefoil()
    m = np.array([[a, b], [0.3, 1.0]])
    assume(abs(a * 1.0 - b * 0.3) > 1e-3)
    rc = reparametrize(c, m)
    fwd = mobius_parameter_map(m)
    for tau in (0.0, 0.5, -1.2):
        p = rc.point(tau)
        q = c.point(fwd(tau))
        # same projective point: cross-product like proportionality
        outer = np.outer(p, q)
        assert np.max(np.abs(outer - outer.T)) < 1e-8 * np.max(np.abs(outer))


def test_rotation_mobius_is_orthogonal():
    m = rotation_mobius(0.73)
    assert np.allclose(m @ m.T, np.eye(2), atol=1e-12)


# --- validation ------------------------------------------------------------


def test_twisted_cubic_validates():
    report = validate(RationalLink((twisted_cubic(),)))
    assert report.ok, report.failures


def test_trefoil_validates():
    report = validate(RationalLink((trefoil(),)))
    assert report.ok, report.failures


def test_line_and_conic_validate():
    line = RationalComponent(np.array([[1.0, 0], [0, 1.0], [0, 0], [0, 0]]))
    conic = RationalComponent(np.array([
        [1.0, 0.0, 1.0],
        [1.0, 0.0, -1.0],
        [0.0, 2.0, 0.0],
        [0.0, 0.0, 0.0],
    ]))
    assert validate(RationalLink((line,))).ok
    assert validate(RationalLink((conic,))).ok


def test_line_with_proportional_coordinates_validates():
    # two proportional coordinate rows leave several constant survivors
    # in the incidence system; constants mean no incidences, not failure
    line = RationalComponent(np.array([[1.0, 0], [3.0, 0], [0, 0], [0, 1.0]]))
    report = validate(RationalLink((line,)))
    assert report.ok, report.failures


def test_cusp_fails_immersion():
    cusp = RationalComponent(np.array([
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ]))
    report = validate(RationalLink((cusp,)))
    assert not report.ok
    assert any(abs(p) < 1e-6 for _, p in report.non_immersion)


def test_base_point_detected():
    # common factor t in all four rows
    c = RationalComponent(np.array([
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 1.0, 0.0],
    ]))
    report = validate(RationalLink((c,)))
    assert not report.ok
    assert any(abs(p) < 1e-7 for _, p in report.base_points)


def test_duplicate_lines_fail_embeddedness():
    line = RationalComponent(np.array([[1.0, 0], [0, 1.0], [0, 0], [0, 0]]))
    report = validate(RationalLink((line, line)))
    assert not report.ok


def test_multiple_cover_fails():
    # double cover of a line: t and -t give the same point
    c = RationalComponent(np.array([
        [1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
    ]))
    report = validate(RationalLink((c,)))
    assert not report.ok


def test_nodal_cubic_fails_embeddedness():
    # planar cubic (1 : t^2 - 1 : t(t^2-1) : 0) passes through one point twice
    c = RationalComponent(np.array([
        [1.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 0.0],
    ]))
    report = validate(RationalLink((c,)))
    assert not report.ok
    assert any(
        abs(abs(s.real) - 1.0) < 1e-6 and abs(abs(t.real) - 1.0) < 1e-6
        for _, _, s, t in report.double_points
    )


def test_disjoint_lines_validate():
    a = RationalComponent(np.array([[1.0, 0], [0, 1.0], [0, 0], [0, 0]]))
    b = RationalComponent(np.array([[0.0, 0], [0, 0], [1.0, 0], [0, 1.0]]))
    assert validate(RationalLink((a, b))).ok


def test_crossing_lines_fail():
    # both lines pass through (1:0:0:0)
    a = RationalComponent(np.array([[1.0, 0], [0, 1.0], [0, 0], [0, 0]]))
    b = RationalComponent(np.array([[1.0, 0], [0, 0], [0, 1.0], [0, 0]]))
    report = validate(RationalLink((a, b)))
    assert not report.ok


def test_validate_handles_intersection_at_infinity():
    # both components reach (0:0:0:1) at parameter infinity
    a = RationalComponent(np.array([
        [1.0, 0.0],
        [0.0, 0.0],
        [0.0, 0.0],
        [0.0, 1.0],
    ]))
    b = RationalComponent(np.array([
        [1.0, 0.0],
        [0.0, 0.0],
        [1.0, 0.0],
        [0.0, 1.0],
    ]))
    report = validate(RationalLink((a, b)))
    assert not report.ok


# --- sphere transfer -------------------------------------------------------


def great_circle_data():
    nums = [np.array([1.0, 0.0, -1.0]), np.array([0.0, 2.0, 0.0]),
            np.array([0.0]), np.array([0.0])]
    den = np.array([1.0, 0.0, 1.0])
    return nums, den


def test_great_circle_transfers_to_planar_conic():
    nums, den = great_circle_data()
    link = stereographic_from_sphere(nums, den, np.array([0.0, 0.0, 0.0, 1.0]))
    comp = link.components[0]
    assert comp.degree == 2
    # planar: one output row vanishes identically
    assert np.min(np.max(np.abs(comp.coeff_matrix), axis=1)) < 1e-12 or \
        np.linalg.matrix_rank(comp.coeff_matrix, tol=1e-9) <= 3


def test_transfer_respects_quadric_check():
    nums, den = great_circle_data()
    nums[0] = nums[0] * 1.001
    with pytest.raises(NotOnQuadric):
        stereographic_from_sphere(nums, den, np.array([0.0, 0.0, 0.0, 1.0]))


def test_pole_on_curve_rejected():
    nums, den = great_circle_data()
    # the pole (1,0,0,0) is the curve's point at t = 0 scaled: p(0) = (1,0,0,0), q(0)=1
    with pytest.raises(PoleOnCurve):
        stereographic_from_sphere(nums, den, np.array([1.0, 0.0, 0.0, 0.0]))


def test_pole_at_infinity_detected():
    nums, den = great_circle_data()
    # at t -> infinity the curve tends to (-1, 0, 0, 0)/1: pole (-1,0,0,0)
    with pytest.raises(PoleOnCurve):
        stereographic_from_sphere(nums, den, np.array([-1.0, 0.0, 0.0, 0.0]))


def test_transfer_from_two_poles_validates():
    nums, den = great_circle_data()
    for pole in (np.array([0.0, 0.0, 0.0, 1.0]), np.array([0.0, 0.0, 1.0, 0.0])):
        link = stereographic_from_sphere(nums, den, pole)
        assert validate(link).ok
