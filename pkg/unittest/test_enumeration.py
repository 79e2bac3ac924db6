import os
import tempfile
import unittest

import numpy as np
import pandas as pd

from rootsets import digitset
from rootsets.digitset import DigitSet
from rootsets.enumeration import all_roots, iterate_polynomials, polynomial_count, multiple_roots, \
    multiple_root_scan, reciprocal_defect, RootCloud, write_cloud_csv, read_cloud_csv, CLOUD_COLUMNS
from rootsets.enumeration.stream import plan_ranges, decode_range, orbit_permutations
from rootsets.exceptions import PreconditionError, ResourceCapError, EnumerationOverflowError
from rootsets.logx import EpochLogger
from rootsets.np.functional import nearest_distances
from rootsets.rootsolver import UnimodularPolynomial, residual

LITTLEWOOD = DigitSet.from_spec('littlewood')


class TestStream(unittest.TestCase):
    def test_polynomial_count(self):
        assert polynomial_count(LITTLEWOOD, 2) == 12
        assert polynomial_count(LITTLEWOOD, 2, symmetry='phase-orbit') == 6
        assert polynomial_count(digitset.uniform(4), 1, symmetry='phase-orbit') == 4
        assert polynomial_count(DigitSet.from_spec('angles:0,1'), 3, symmetry='phase-orbit') == 4 + 8 + 16
        with self.assertRaises(PreconditionError):
            polynomial_count(LITTLEWOOD, 2, symmetry='mirror')

    def test_iterate_counts(self):
        assert len(list(iterate_polynomials(LITTLEWOOD, 2))) == 8
        assert len(list(iterate_polynomials(LITTLEWOOD, 2, symmetry='phase-orbit'))) == 4
        assert len(list(iterate_polynomials(digitset.uniform(4), 1, symmetry='phase-orbit'))) == 4
        with self.assertRaises(PreconditionError):
            list(iterate_polynomials(LITTLEWOOD, 0))

    def test_lexicographic(self):
        h = digitset.uniform(3)
        polynomials = list(iterate_polynomials(h, 2))
        assert [p.index for p in polynomials] == list(range(27))
        assert polynomials[0].digit_indices.tolist() == [0, 0, 0]
        assert polynomials[5].digit_indices.tolist() == [0, 1, 2]
        assert polynomials[-1].digit_indices.tolist() == [2, 2, 2]

    def test_representatives(self):
        h = digitset.uniform(4)
        representatives = list(iterate_polynomials(h, 2, symmetry='phase-orbit'))
        assert len(representatives) == 16
        assert all(p.digit_indices[0] == 0 for p in representatives)
        # every vector is a rotation of exactly one representative
        seen = set()
        permutations = orbit_permutations(h)
        for p in representatives:
            orbit = {tuple(p.digit_indices)} | {tuple(perm[p.digit_indices]) for perm in permutations}
            assert len(orbit) == 4
            assert not (orbit & seen)
            seen |= orbit
        assert len(seen) == 64

    def test_plan_ranges(self):
        for base, degree, workers in [(2, 12, 1), (4, 6, 3), (3, 2, 8), (12, 4, 2)]:
            tasks = plan_ranges(base, degree, workers, chunk_size=100)
            assert tasks[0][0] == 0
            assert tasks[-1][1] == base ** (degree + 1)
            for (_, stop), (start, _) in zip(tasks[:-1], tasks[1:]):
                assert stop == start
            assert all(0 < stop - start <= 100 for start, stop in tasks)

    def test_decode_range(self):
        indices = decode_range(5, 3, 0, 625)
        weights = 5 ** np.arange(3, -1, -1)
        np.testing.assert_array_equal(indices @ weights, np.arange(625))

    def test_overflow(self):
        with self.assertRaises(EnumerationOverflowError):
            polynomial_count(LITTLEWOOD, 63)
        assert polynomial_count(LITTLEWOOD, 62) > 0


class TestAllRoots(unittest.TestCase):
    def test_degree_one(self):
        cloud = all_roots(LITTLEWOOD, 1)
        assert len(cloud) == 4
        np.testing.assert_allclose(np.sort(cloud.z.real), [-1., -1., 1., 1.], atol=1e-14)
        np.testing.assert_allclose(cloud.z.imag, 0., atol=1e-14)

    def test_degree_two(self):
        cloud = all_roots(LITTLEWOOD, 2)
        assert len(cloud) == 20
        assert np.sum(cloud.multiplicity) == 4 * 1 + 8 * 2
        assert np.min(np.abs(cloud.z - (np.sqrt(5) - 1) / 2)) <= 1e-12
        assert cloud.num_unconverged == 0
        # canonical order
        keys = list(zip(cloud.degree, cloud.z.real, cloud.z.imag, cloud.source_index))
        assert keys == sorted(keys)

    def test_provenance(self):
        cloud = all_roots(digitset.uniform(3), 3)
        for record in cloud.records():
            assert record.source.degree in (1, 2, 3)
            assert residual(record.source, record.z) <= 1e-10
            assert record.residual <= 1e-10

    def test_symmetry_modes_agree(self):
        h = digitset.uniform(4)
        full = all_roots(h, 4)
        reduced = all_roots(h, 4, symmetry='phase-orbit')
        assert len(reduced) * 4 == len(full)
        for degree in range(1, 5):
            a = full.subcloud(degree=degree).z
            b = reduced.subcloud(degree=degree).z
            assert np.max(nearest_distances(a, b)) <= 1e-10
            assert np.max(nearest_distances(b, a)) <= 1e-10

    def test_annulus_containment(self):
        for h, max_degree in [(LITTLEWOOD, 12), (digitset.uniform(4), 8)]:
            cloud = all_roots(h, max_degree, symmetry='phase-orbit')
            moduli = np.abs(cloud.z)
            assert np.all(moduli >= 0.5 + 1e-12)
            assert np.all(moduli <= 2. - 1e-12)
            assert cloud.num_unconverged == 0

    def test_reciprocal_closure(self):
        cloud = all_roots(LITTLEWOOD, 10, symmetry='phase-orbit')
        for degree in range(1, 11):
            assert reciprocal_defect(cloud, degree) <= 1e-9

    def test_cap(self):
        with self.assertRaises(ResourceCapError) as context:
            all_roots(LITTLEWOOD, 10, cap=1000)
        assert context.exception.count == polynomial_count(LITTLEWOOD, 10)
        # the cap counts coefficient vectors before symmetry reduction
        with self.assertRaises(ResourceCapError):
            all_roots(LITTLEWOOD, 10, symmetry='phase-orbit', cap=2000)
        cloud = all_roots(LITTLEWOOD, 3, cap=10, allow_large=True)
        assert len(cloud) > 0

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            all_roots(LITTLEWOOD, 0)

    def test_worker_determinism(self):
        h = digitset.uniform(3)
        serial = all_roots(h, 5, num_workers=1)
        parallel = all_roots(h, 5, num_workers=2)
        np.testing.assert_array_equal(serial.z, parallel.z)
        np.testing.assert_array_equal(serial.source_index, parallel.source_index)
        np.testing.assert_array_equal(serial.multiplicity, parallel.multiplicity)

    def test_progress_log(self):
        with tempfile.TemporaryDirectory() as output_dir:
            logger = EpochLogger(output_dir=output_dir, verbose=False)
            all_roots(LITTLEWOOD, 3, logger=logger)
            logger.output_file.close()
            df = pd.read_csv(os.path.join(output_dir, 'progress.csv'))
            assert df['Degree'].tolist() == [1, 2, 3]
            assert df['Polynomials'].tolist() == [4, 8, 16]
            assert 'MaxResidual' in df.columns
            assert np.all(df['Unconverged'] == 0)


class TestScans(unittest.TestCase):
    def test_double_root_at_minus_one(self):
        found = multiple_root_scan(LITTLEWOOD, 3, 2)
        minus_one = [r for r in found if abs(r.z + 1.) <= 1e-9]
        assert len(minus_one) == 1
        assert minus_one[0].multiplicity == 2
        for record in found:
            assert record.multiplicity >= 2

    def test_triple_roots(self):
        found = multiple_root_scan(LITTLEWOOD, 7, 3)
        for z in [-1., 1.]:
            match = [r for r in found if abs(r.z - z) <= 1e-9]
            assert len(match) == 1, f'{z} not reported once'
            assert match[0].multiplicity >= 3
            assert residual(match[0].source, match[0].z) <= 1e-10
        for record in found:
            assert record.multiplicity >= 3

    def test_split_cluster_is_recovered(self):
        # a triple root at -1 left as three separate approximations
        p = UnimodularPolynomial(LITTLEWOOD, [0, 0, 1, 1, 1, 1, 0, 0])
        z = -1. + np.array([2e-6, -1.5e-6 + 1e-6j, -0.7e-6 - 1.2e-6j])
        cloud = RootCloud(LITTLEWOOD, 7, z=z, residual=np.zeros(3), multiplicity=np.ones(3),
                          degree=np.full(3, 7), source_index=np.full(3, p.index), converged=np.ones(3))
        found = multiple_roots(cloud, 3)
        assert len(found) == 1
        assert abs(found[0].z + 1.) <= 1e-12
        assert found[0].multiplicity == 3
        assert multiple_roots(cloud, 4) == []

    def test_no_multiple_roots(self):
        assert multiple_root_scan(LITTLEWOOD, 1, 2) == []
        assert multiple_root_scan(digitset.uniform(3), 2, 3) == []

    def test_order(self):
        with self.assertRaises(PreconditionError):
            multiple_root_scan(LITTLEWOOD, 3, 1)


class TestCloudFile(unittest.TestCase):
    def test_round_trip(self):
        cloud = all_roots(digitset.uniform(3), 3)
        with tempfile.TemporaryDirectory() as output_dir:
            path = os.path.join(output_dir, 'cloud.csv')
            write_cloud_csv(cloud, path)
            with open(path) as f:
                assert f.readline().strip() == ','.join(CLOUD_COLUMNS)
            loaded = read_cloud_csv(path, digit_set=digitset.uniform(3))
        assert isinstance(loaded, RootCloud)
        np.testing.assert_array_equal(loaded.z, cloud.z)
        np.testing.assert_array_equal(loaded.degree, cloud.degree)
        np.testing.assert_array_equal(loaded.source_index, cloud.source_index)
        assert loaded.max_degree == 3
        assert np.all(np.isnan(loaded.residual))

    def test_not_a_cloud(self):
        with tempfile.TemporaryDirectory() as output_dir:
            path = os.path.join(output_dir, 'other.csv')
            pd.DataFrame({'a': [1., 2.]}).to_csv(path, index=False)
            with self.assertRaises(ValueError):
                read_cloud_csv(path)

    def test_dedup_and_subcloud(self):
        cloud = all_roots(LITTLEWOOD, 2)
        assert len(cloud.subcloud(degree=1)) == 4
        assert len(cloud.subcloud(degree=1).dedup()) == 2
        assert len(cloud.subcloud(max_degree=2)) == 20


if __name__ == '__main__':
    unittest.main()
