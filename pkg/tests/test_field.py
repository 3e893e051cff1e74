import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isobenefit import (
    Amenity,
    GridSpec,
    Kernel,
    NegativeDistanceError,
    Profile,
    Scene,
    evaluate_field,
    evaluate_field_parts,
    kernel_benefit,
    point_benefit,
)

families = st.sampled_from(("rational", "gaussian", "exponential"))
efficiencies = st.floats(0.05, 20)
distances = st.floats(0, 50)


# -- kernel_benefit


@pytest.mark.parametrize("family", ["rational", "gaussian", "exponential"])
@pytest.mark.parametrize("efficiency", [0.25, 1.0, 3.0])
def test_zero_distance_returns_attractiveness(family, efficiency):
    assert kernel_benefit(3.0, 0.0, Kernel(family, efficiency)) == 3.0


def test_rational_halves_at_distance_e():
    # d = E makes the denominator 2 regardless of E
    assert kernel_benefit(3.0, 2.0, Kernel("rational", 2.0)) == 1.5


def test_gaussian_spot_value():
    got = kernel_benefit(3.0, 1.0, Kernel("gaussian", 0.5))
    assert got == pytest.approx(1.8195919791379003, rel=1e-12)


def test_exponential_spot_value_negative_a():
    got = kernel_benefit(-2.0, 1.0, Kernel("exponential", 1.0))
    assert got == pytest.approx(-0.7357588823428847, rel=1e-12)


def test_negative_distance_rejected():
    kernel = Kernel("rational", 1.0)
    with pytest.raises(NegativeDistanceError):
        kernel_benefit(3.0, -0.1, kernel)
    with pytest.raises(NegativeDistanceError):
        kernel_benefit(3.0, np.array([0.0, 1.0, -2.0]), kernel)


def test_array_input_matches_scalar_loop():
    kernel = Kernel("exponential", 0.7)
    d = np.array([0.0, 0.5, 1.0, 4.0, 25.0])
    got = kernel_benefit(2.0, d, kernel)
    assert isinstance(got, np.ndarray)
    for k, dk in enumerate(d):
        assert got[k] == kernel_benefit(2.0, float(dk), kernel)


@given(families, efficiencies, st.floats(0.01, 10))
def test_literal_kernel_forms(family, efficiency, d):
    """Each family matches its closed form computed with math.exp directly."""
    a = 2.5
    got = kernel_benefit(a, d, Kernel(family, efficiency))
    if family == "rational":
        want = a / (1.0 + d / efficiency)
    elif family == "gaussian":
        want = a * math.exp(-efficiency * d * d)
    else:
        want = a * math.exp(-efficiency * d)
    assert got == pytest.approx(want, rel=1e-12)


@given(families, efficiencies,
       st.integers(min_value=0, max_value=4900),
       st.integers(min_value=1, max_value=99))
def test_monotone_decay_in_distance(family, efficiency, steps, extra):
    # distances on a 0.01 grid so consecutive draws differ by a representable
    # amount; adjacent floats can legitimately tie after rounding
    lo = steps * 0.01
    hi = (steps + extra) * 0.01
    kernel = Kernel(family, efficiency)
    b_lo = kernel_benefit(3.0, lo, kernel)
    b_hi = kernel_benefit(3.0, hi, kernel)
    assert b_lo >= b_hi
    if b_hi >= 1e-300:  # strict until the tail underflows
        assert b_lo > b_hi


@given(families, efficiencies, distances)
def test_positive_a_stays_in_zero_a_interval(family, efficiency, d):
    b = kernel_benefit(3.0, d, Kernel(family, efficiency))
    assert 0.0 <= b <= 3.0
    if family == "rational":
        assert b > 0.0  # rational never underflows to 0 on this range


# -- point_benefit


def test_empty_amenity_list_gives_zero():
    pb = point_benefit((), Kernel("rational", 1.0), 5.0, -3.0)
    assert pb.total == 0.0
    assert pb.positive_part == 0.0
    assert pb.negative_part == 0.0


def test_single_amenity_at_zero_distance():
    pb = point_benefit((Amenity("p", 1.0, 2.0, 3.0),), Kernel("gaussian", 1.0), 1.0, 2.0)
    assert pb.total == 3.0


def test_mixed_signs_partition():
    # both amenities at d = E so each contributes half its attractiveness
    amenities = (Amenity("park", 0.0, 0.0, 3.0), Amenity("dump", 2.0, 0.0, -1.0))
    pb = point_benefit(amenities, Kernel("rational", 1.0), 1.0, 0.0)
    assert pb.positive_part == 1.5
    assert pb.negative_part == -0.5
    assert pb.total == 1.0


@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5), st.floats(-4, 4)),
                max_size=8),
       families, st.floats(0.2, 5))
@settings(max_examples=60)
def test_parts_sum_to_total(entries, family, efficiency):
    amenities = tuple(Amenity(f"a{k}", x, y, a) for k, (x, y, a) in enumerate(entries))
    pb = point_benefit(amenities, Kernel(family, efficiency), 0.3, -0.7)
    assert pb.total == pytest.approx(pb.positive_part + pb.negative_part, rel=1e-12, abs=1e-12)


def test_zero_attractiveness_is_inert():
    amenities = (Amenity("p", 0.0, 0.0, 3.0), Amenity("z", 1.0, 1.0, 0.0))
    with_z = point_benefit(amenities, Kernel("rational", 1.0), 0.5, 0.5)
    without = point_benefit(amenities[:1], Kernel("rational", 1.0), 0.5, 0.5)
    assert with_z.total == without.total
    assert with_z.positive_part == without.positive_part
    assert with_z.negative_part == 0.0


# -- evaluate_field


def one_amenity_scene(a=3.0):
    return Scene(amenities=(Amenity("p", 0.0, 0.0, a),))


def test_three_by_three_oracle():
    """Hand-computed per-cell values: amenity at the center cell of a unit grid."""
    grid = GridSpec(-1.0, -1.0, 1.0, 3, 3)
    raster = evaluate_field(one_amenity_scene(), Kernel("rational", 1.0), grid)
    corner = 3.0 / (1.0 + math.sqrt(2.0))
    edge = 1.5
    want = np.array([
        [corner, edge, corner],
        [edge, 3.0, edge],
        [corner, edge, corner],
    ])
    assert np.array_equal(raster.as_grid(), want)


def test_peak_cell_holds_a_and_rings_decay():
    grid = GridSpec(-2.0, -2.0, 1.0, 5, 5)
    raster = evaluate_field(one_amenity_scene(), Kernel("rational", 1.0), grid)
    g = raster.as_grid()
    assert g[2, 2] == 3.0
    assert g.max() == 3.0
    # values fall with chebyshev ring distance from the center
    ring1 = [g[j, i] for j in range(1, 4) for i in range(1, 4) if (i, j) != (2, 2)]
    ring2 = [g[j, i] for j in range(5) for i in range(5)
             if max(abs(i - 2), abs(j - 2)) == 2]
    assert max(ring1) < 3.0
    assert max(ring2) < min(ring1)


def test_field_matches_point_benefit_bitwise():
    scene = Scene(amenities=(
        Amenity("a", -1.3, 0.4, 2.0),
        Amenity("b", 2.0, 1.0, -0.7),
        Amenity("c", 0.1, -2.2, 1.1),
    ))
    kernel = Kernel("exponential", 0.8)
    grid = GridSpec(-2.0, -2.0, 0.61, 7, 6)
    raster = evaluate_field(scene, kernel, grid)
    for j in range(grid.nrows):
        for i in range(grid.ncols):
            x, y = grid.cell_center(i, j)
            assert raster.value_at(i, j) == point_benefit(scene.amenities, kernel, x, y).total


def test_negated_scene_negates_field():
    scene = Scene(amenities=(Amenity("a", 0.2, 0.3, 2.0), Amenity("b", 1.0, -1.0, -0.5)))
    negated = Scene(amenities=tuple(
        Amenity(am.id, am.x, am.y, -am.attractiveness) for am in scene.amenities))
    grid = GridSpec(-1.0, -1.0, 0.5, 6, 6)
    kernel = Kernel("gaussian", 0.6)
    a = evaluate_field(scene, kernel, grid)
    b = evaluate_field(negated, kernel, grid)
    assert np.array_equal(a.values, -b.values)


def test_repeat_evaluation_is_bit_identical():
    scene = Scene(amenities=(Amenity("a", 0.0, 0.0, 3.0), Amenity("b", 2.0, 2.0, -1.0)))
    grid = GridSpec(-1.0, -1.0, 0.25, 17, 17)
    kernel = Kernel("rational", 1.4)
    first = evaluate_field(scene, kernel, grid)
    second = evaluate_field(scene, kernel, grid)
    assert first.values.tobytes() == second.values.tobytes()


def test_field_under_profile():
    scene = Scene(
        amenities=(Amenity("p", 0.0, 0.0, 3.0),),
        profiles={"alice": Profile("alice", efficiency=2.0, overrides={"p": 5.0})},
    )
    grid = GridSpec(0.0, 0.0, 1.0, 2, 1)
    raster = evaluate_field(scene, Kernel("rational", 1.0), grid, profile="alice")
    assert raster.value_at(0, 0) == 5.0
    assert raster.value_at(1, 0) == 5.0 / (1.0 + 1.0 / 2.0)


def test_parts_fields_decompose_total():
    scene = Scene(amenities=(
        Amenity("a", 0.0, 0.0, 3.0),
        Amenity("b", 1.0, 1.0, -1.0),
        Amenity("z", 2.0, 0.0, 0.0),
    ))
    grid = GridSpec(-1.0, -1.0, 0.5, 7, 7)
    parts = evaluate_field_parts(scene, Kernel("rational", 1.0), grid)
    assert np.allclose(parts.total.values,
                       parts.positive.values + parts.negative.values,
                       rtol=1e-12, atol=0)
    assert (parts.positive.values > 0).all()
    assert (parts.negative.values < 0).all()
