import unittest
from unittest import mock

import numpy as np
from hypothesis import given, settings, strategies as st

from rootsets import digitset
from rootsets.digitset import DigitSet
from rootsets.exceptions import InvalidDigitSetError, PreconditionError


class TestDigitSet(unittest.TestCase):
    def test_from_spec(self):
        h = DigitSet.from_spec('uniform:4')
        np.testing.assert_allclose(h.angles, np.pi / 2 * np.arange(4))
        np.testing.assert_allclose(np.abs(h.digits), 1.)
        littlewood = DigitSet.from_spec('littlewood')
        np.testing.assert_array_equal(littlewood.digits, np.array([1., -1.], dtype=np.complex128))
        assert littlewood == digitset.uniform(2)
        h = DigitSet.from_spec('angles:0,1.5')
        np.testing.assert_array_equal(h.angles, [0., 1.5])

    def test_invalid_spec(self):
        for spec in ['', 'uniform:x', 'uniform:0', 'angles:', 'angles:a,b', 'hexagonal:6']:
            with self.assertRaises(InvalidDigitSetError):
                DigitSet.from_spec(spec)
        with self.assertRaises(InvalidDigitSetError):
            digitset.normalize_angles([])
        with self.assertRaises(InvalidDigitSetError):
            digitset.normalize_angles([0., np.nan])

    def test_normalize_angles(self):
        h = digitset.normalize_angles([2 * np.pi, -np.pi / 2, 0., 1e-14])
        np.testing.assert_allclose(h.angles, [0., 1.5 * np.pi])
        assert len(h) == 2

    def test_angular_distance(self):
        self.assertAlmostEqual(digitset.angular_distance(0.1, 2 * np.pi - 0.1), 0.2, places=12)
        self.assertAlmostEqual(digitset.angular_distance(0., np.pi), np.pi, places=12)
        np.testing.assert_allclose(digitset.angular_distance(np.array([0., 1.]), 0.5), [0.5, 0.5])

    def test_max_gap(self):
        self.assertAlmostEqual(digitset.max_gap(digitset.uniform(4)), np.pi / 2, places=12)
        self.assertAlmostEqual(digitset.max_gap(digitset.uniform(1)), 2 * np.pi, places=12)
        self.assertAlmostEqual(digitset.max_gap(DigitSet.from_spec('angles:0,1')), 2 * np.pi - 1, places=12)

    def test_density_threshold(self):
        self.assertAlmostEqual(digitset.density_threshold(np.sqrt(3) / 2), 2 * np.pi / 3, places=12)
        for r in [0.5, 1., 0.3, 1.2]:
            with self.assertRaises(PreconditionError):
                digitset.density_threshold(r)

    def test_min_covered_radius(self):
        r = digitset.min_covered_radius(digitset.uniform(12))
        self.assertAlmostEqual(r, np.sqrt(1.25 - np.cos(np.pi / 12)), places=12)
        self.assertAlmostEqual(r, 0.5331, places=3)
        assert digitset.min_covered_radius(DigitSet.from_spec('littlewood')) is None
        assert digitset.min_covered_radius(digitset.uniform(1)) is None
        assert digitset.uniform(12).covers_radius(0.54)
        assert not digitset.uniform(12).covers_radius(0.53)

    def test_min_covered_radius_of_tiny_gap(self):
        # sqrt(5/4 - cos(gap / 2)) rounds to exactly 1/2 for gaps this small
        with mock.patch.object(digitset, 'max_gap', return_value=1e-9):
            r = digitset.min_covered_radius(digitset.uniform(12))
        assert r == np.nextafter(0.5, 1.)
        assert digitset.density_threshold(r) >= 0.

    def test_threshold_round_trip(self):
        for r in np.linspace(0.51, 0.99, 100):
            gap = digitset.density_threshold(r)
            k = int(np.ceil(2 * np.pi / gap))
            h = DigitSet(gap * np.arange(k))
            self.assertAlmostEqual(digitset.max_gap(h), gap, places=13)
            assert abs(digitset.min_covered_radius(h) - r) <= 1e-12

    def test_rotation(self):
        assert digitset.uniform(4).rotation_order() == 4
        assert DigitSet.from_spec('littlewood').rotation_order() == 2
        assert DigitSet.from_spec('angles:0,1').rotation_order() == 1
        np.testing.assert_array_equal(digitset.uniform(4).rotation_permutation(4), [1, 2, 3, 0])
        np.testing.assert_array_equal(digitset.uniform(6).rotation_permutation(3), [2, 3, 4, 5, 0, 1])
        assert digitset.uniform(6).rotation_permutation(4) is None

    def test_index_of(self):
        h = digitset.uniform(8)
        assert h.index_of(np.pi / 4) == 1
        assert h.index_of(2 * np.pi - 1e-13) == 0
        assert h.index_of(0.1) is None

    @given(st.integers(min_value=1, max_value=40),
           st.floats(min_value=0., max_value=2., allow_nan=False),
           st.floats(min_value=-10., max_value=10., allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_nearest_digit_distance(self, k, modulus, argument):
        h = digitset.normalize_angles(np.linspace(0.3, 5.9, k) ** 1.3)
        w = modulus * np.exp(1j * argument)
        brute_force = np.min(np.abs(w - h.digits))
        self.assertAlmostEqual(float(h.nearest_digit_distance(np.array([w]))[0]), brute_force, places=12)


if __name__ == '__main__':
    unittest.main()
