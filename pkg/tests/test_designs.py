import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uniradar.designs import (Design, DomainError, FormatError, gen_halton,
                              gen_linear_oa49, gen_uniform, load_csv, save_csv)


def write(tmp_path, text, name="design.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadCsv:
    def test_single_origin_point(self, tmp_path):
        d = load_csv(write(tmp_path, "0,0\n"))
        assert (d.n, d.dim) == (1, 2)
        assert np.array_equal(d.points, [[0.0, 0.0]])

    def test_rescale_maps_column_extremes_to_unit_bounds(self, tmp_path):
        d = load_csv(write(tmp_path, "0,0\n0.25,0.5\n1,1\n"), rescale=True)
        assert d.points.min(axis=0) == pytest.approx([-1.0, -1.0])
        assert d.points.max(axis=0) == pytest.approx([1.0, 1.0])
        assert d.points[1] == pytest.approx([-0.5, 0.0])

    def test_out_of_bounds_without_rescale(self, tmp_path):
        with pytest.raises(DomainError):
            load_csv(write(tmp_path, "1,2\n"))

    def test_empty_file(self, tmp_path):
        with pytest.raises(FormatError):
            load_csv(write(tmp_path, ""))

    def test_ragged_rows(self, tmp_path):
        with pytest.raises(FormatError):
            load_csv(write(tmp_path, "0,0\n0.5,0.5,0.5\n"))

    def test_header_row_is_skipped(self, tmp_path):
        d = load_csv(write(tmp_path, "x,y\n0.25,-0.5\n"))
        assert d.n == 1
        assert d.points[0] == pytest.approx([0.25, -0.5])

    def test_header_only_file(self, tmp_path):
        with pytest.raises(FormatError):
            load_csv(write(tmp_path, "x,y\n"))

    def test_non_numeric_body(self, tmp_path):
        with pytest.raises(FormatError):
            load_csv(write(tmp_path, "0,0\n0.1,oops\n"))

    def test_constant_column_rescales_to_zero(self, tmp_path):
        d = load_csv(write(tmp_path, "3,0\n3,1\n"), rescale=True)
        assert np.array_equal(d.points[:, 0], [0.0, 0.0])

    def test_round_trip_is_bit_exact(self, tmp_path):
        rng = np.random.default_rng(31)
        for trial in range(30):
            n, dim = int(rng.integers(1, 13)), int(rng.integers(1, 6))
            original = gen_uniform(n, dim, seed=int(rng.integers(0, 10 ** 6)))
            save_csv(original, tmp_path / f"d{trial}.csv")
            reloaded = load_csv(tmp_path / f"d{trial}.csv")
            assert np.array_equal(original.points, reloaded.points)


class TestGenUniform:
    def test_deterministic(self):
        a = gen_uniform(50, 3, seed=9)
        b = gen_uniform(50, 3, seed=9)
        assert np.array_equal(a.points, b.points)

    def test_shape_and_bounds(self):
        d = gen_uniform(5, 15, seed=1)
        assert d.points.shape == (5, 15)
        assert np.abs(d.points).max() <= 1.0

    def test_sample_mean_within_three_sigma(self):
        d = gen_uniform(1000, 2, seed=7)
        assert np.abs(d.points.mean(axis=0)).max() < 0.06

    def test_rejects_degenerate_sizes(self):
        with pytest.raises(ValueError):
            gen_uniform(0, 2, seed=0)
        with pytest.raises(ValueError):
            gen_uniform(2, 0, seed=0)


class TestGenHalton:
    def test_base_two_radical_inverse(self):
        d = gen_halton(3, [1])
        # raw values 1/2, 1/4, 3/4 before the affine map onto [-1, 1]
        assert np.array_equal((d.points[:, 0] + 1.0) / 2.0, [0.5, 0.25, 0.75])

    def test_second_coordinate_uses_base_three(self):
        d = gen_halton(3, [1, 2])
        assert (d.points[:, 1] + 1.0) / 2.0 == pytest.approx([1 / 3, 2 / 3, 1 / 9], abs=1e-15)

    def test_dimension_index_selects_kth_prime(self):
        # index 14 -> 43, index 15 -> 47: sequence steps by 1/base
        d = gen_halton(2, [14, 15])
        raw = (d.points + 1.0) / 2.0
        assert raw[0] == pytest.approx([1 / 43, 1 / 47], abs=1e-15)
        assert raw[1] == pytest.approx([2 / 43, 2 / 47], abs=1e-15)

    def test_skip_shifts_the_sequence(self):
        tail = gen_halton(4, [1], skip=2)
        full = gen_halton(6, [1])
        assert np.array_equal(tail.points, full.points[2:])

    @settings(deadline=None, max_examples=20)
    @given(n=st.integers(1, 40), m=st.integers(1, 40))
    def test_prefix_consistency(self, n, m):
        assert np.array_equal(gen_halton(n, [2, 5]).points,
                              gen_halton(n + m, [2, 5]).points[:n])

    def test_rejects_empty_dims(self):
        with pytest.raises(ValueError):
            gen_halton(5, [])


class TestLinearOa49:
    def test_has_49_distinct_points(self):
        d = gen_linear_oa49()
        assert d.points.shape == (49, 3)
        assert len({tuple(p) for p in d.points}) == 49

    def test_every_planar_projection_is_the_full_grid(self):
        d = gen_linear_oa49()
        levels = np.rint((7.0 * (d.points + 1.0) - 1.0) / 2.0).astype(int)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            cells = {(a, b) for a, b in levels[:, [i, j]]}
            assert len(cells) == 49

    def test_axis_projections_are_seven_stacks_of_seven(self):
        d = gen_linear_oa49()
        for col in range(3):
            values, counts = np.unique(d.points[:, col], return_counts=True)
            assert len(values) == 7
            assert (counts == 7).all()

    def test_levels_satisfy_the_modular_relation(self):
        d = gen_linear_oa49()
        levels = np.rint((7.0 * (d.points + 1.0) - 1.0) / 2.0).astype(int)
        assert ((levels[:, 0] + 3 * levels[:, 1] + levels[:, 2]) % 7 == 0).all()

    def test_levels_map_to_cell_midpoints(self):
        d = gen_linear_oa49()
        expected = -1.0 + (2.0 * np.arange(7) + 1.0) / 7.0
        assert set(np.round(d.points[:, 0], 12)) == set(np.round(expected, 12))


class TestDesign:
    def test_rejects_out_of_bounds(self):
        with pytest.raises(DomainError):
            Design(np.array([[0.0, 1.5]]))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Design(np.array([[0.0, np.nan]]))

    def test_points_are_immutable(self):
        d = gen_uniform(3, 2, seed=0)
        with pytest.raises(ValueError):
            d.points[0, 0] = 0.0

    def test_restrict_uses_one_based_indices(self):
        d = gen_uniform(4, 5, seed=2)
        sub = d.restrict((2, 5))
        assert np.array_equal(sub.points, d.points[:, [1, 4]])
        with pytest.raises(ValueError):
            d.restrict((0, 1))
