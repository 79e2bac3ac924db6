import contextlib
import io
import json
import os
import tempfile
import unittest

import numpy as np
import pandas as pd

from rootsets import cli
from rootsets.render import read_pgm
from rootsets.utils import load_record


def run_captured(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        status = cli.run(argv)
    return status, out.getvalue()


def read_bytes(path):
    with open(path, 'rb') as f:
        return f.read()


class TestCommandLine(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp, name)

    def test_threshold(self):
        status, out = run_captured(['threshold', '--r', '0.8660254037844386'])
        assert status == cli.EXIT_OK
        self.assertAlmostEqual(float(out), 2 * np.pi / 3, places=9)
        status, out = run_captured(['threshold', '--set', 'uniform:12'])
        assert status == cli.EXIT_OK
        lines = dict(line.split() for line in out.strip().splitlines())
        self.assertAlmostEqual(float(lines['max_gap']), np.pi / 6, places=12)
        self.assertAlmostEqual(float(lines['min_covered_radius']), 0.5331, places=3)
        status, out = run_captured(['threshold', '--set', 'littlewood'])
        assert 'min_covered_radius none' in out

    def test_usage_errors(self):
        assert run_captured(['threshold', '--r', '0.4'])[0] == cli.EXIT_USAGE
        assert run_captured(['threshold'])[0] == cli.EXIT_USAGE
        assert run_captured(['threshold', '--set', 'hexagonal:6'])[0] == cli.EXIT_USAGE
        assert run_captured(['expand', '--set', 'uniform:12', '--z', 'a,b', '--steps', '10'])[0] == cli.EXIT_USAGE
        assert run_captured(['enumerate', '--set', 'littlewood'])[0] == cli.EXIT_USAGE
        assert run_captured(['no-such-command'])[0] == cli.EXIT_USAGE

    def test_expand(self):
        out_path = self.path('cert.json')
        status, _ = run_captured(['expand', '--set', 'uniform:12', '--z', '0.7,0', '--steps', '64',
                                  '--out', out_path])
        assert status == cli.EXIT_OK
        record = load_record(out_path)
        assert record['passed'] is True
        assert record['steps'] == 64
        assert len(record['digit_angles']) == 65

    def test_expand_failure(self):
        status, out = run_captured(['expand', '--set', 'littlewood', '--z', '0,0.6', '--steps', '64'])
        assert status == cli.EXIT_FAILURE
        record = json.loads(out)
        assert record['passed'] is False
        assert record['failed_step'] == 1

    def test_enumerate(self):
        out_path = self.path('cloud.csv')
        status, _ = run_captured(['enumerate', '--set', 'littlewood', '--max-degree', '2', '--out', out_path])
        assert status == cli.EXIT_OK
        df = pd.read_csv(out_path)
        assert list(df.columns) == ['re', 'im', 'modulus', 'multiplicity', 'degree', 'source_index']
        assert len(df) == 20
        assert np.min(np.abs(df['re'] - (np.sqrt(5) - 1) / 2) + np.abs(df['im'])) <= 1e-12

    def test_enumerate_with_logger(self):
        log_dir = self.path('log')
        status, _ = run_captured(['enumerate', '--set', 'uniform:3', '--max-degree', '3', '--out',
                                  self.path('cloud.csv'), '--logger-path', log_dir])
        assert status == cli.EXIT_OK
        df = pd.read_csv(os.path.join(log_dir, 'progress.csv'))
        assert df['Degree'].tolist() == [1, 2, 3]
        assert 'Time (second)' in df.columns
        assert os.path.exists(os.path.join(log_dir, 'config.json'))

    def test_cap(self):
        status, _ = run_captured(['enumerate', '--set', 'littlewood', '--max-degree', '10', '--out',
                                  self.path('cloud.csv'), '--cap', '100'])
        assert status == cli.EXIT_CAP
        assert not os.path.exists(self.path('cloud.csv'))

    def test_determinism(self):
        outputs = []
        for name, workers in [('a.csv', '1'), ('b.csv', '1'), ('c.csv', '2')]:
            status, _ = run_captured(['enumerate', '--set', 'uniform:3', '--max-degree', '4', '--symmetry',
                                      'phase-orbit', '--workers', workers, '--out', self.path(name)])
            assert status == cli.EXIT_OK
            outputs.append(read_bytes(self.path(name)))
        assert outputs[0] == outputs[1] == outputs[2]

    def test_render(self):
        cloud_path, image_path = self.path('cloud.csv'), self.path('cloud.pgm')
        run_captured(['enumerate', '--set', 'littlewood', '--max-degree', '6', '--out', cloud_path])
        status, _ = run_captured(['render', '--in', cloud_path, '--out', image_path, '--width', '64', '--height',
                                  '48'])
        assert status == cli.EXIT_OK
        assert read_bytes(image_path).startswith(b'P5\n64 48\n255\n')
        image = read_pgm(image_path)
        assert image.shape == (48, 64)
        assert image.max() == 255
        assert 0 < np.count_nonzero(image) < image.size
        assert run_captured(['render', '--in', self.path('missing.csv'), '--out', image_path])[0] == cli.EXIT_USAGE

    def test_exclude(self):
        out_path = self.path('hole.json')
        status, _ = run_captured(['exclude', '--set', 'littlewood', '--modulus', '0.5', '--samples', '72',
                                  '--out', out_path])
        assert status == cli.EXIT_OK
        record = load_record(out_path)
        assert record['found'] is True
        assert record['margin'] > 0. and record['delta'] > 0. and record['scan_min_margin'] > 0.
        status, out = run_captured(['exclude', '--set', 'uniform:12', '--modulus', '0.8'])
        assert status == cli.EXIT_OK
        record = json.loads(out)
        assert record['found'] is False
        assert record['margin'] <= 0.

    def test_coverage(self):
        status, out = run_captured(['coverage', '--set', 'littlewood', '--max-degree', '8', '--rin', '0.85',
                                    '--rout', '1.15', '--eps', '0.05', '--raster-path', self.path('c.pgm')])
        assert status == cli.EXIT_OK
        record = json.loads(out)
        assert record['hit_cells'] <= record['total_cells']
        self.assertAlmostEqual(record['hit_fraction'], record['hit_cells'] / record['total_cells'], places=15)
        assert len(record['hit_flags']) == record['total_cells']
        assert os.path.exists(self.path('c.pgm'))

    def test_certify(self):
        out_path = self.path('certify.csv')
        status, _ = run_captured(['certify', '--set', 'uniform:12', '--rin', '0.6', '--rout', '0.9', '--samples',
                                  '20', '--steps', '60', '--out', out_path])
        assert status == cli.EXIT_OK
        df = pd.read_csv(out_path)
        assert len(df) == 20
        assert np.all(df['passed'] == 1)
        status, _ = run_captured(['certify', '--set', 'littlewood', '--rin', '0.51', '--rout', '0.6', '--samples',
                                  '40', '--steps', '60', '--out', out_path])
        assert status == cli.EXIT_FAILURE

    def test_certify_determinism(self):
        outputs = []
        for name, workers in [('a.csv', '1'), ('b.csv', '1'), ('c.csv', '2')]:
            status, _ = run_captured(['certify', '--set', 'uniform:12', '--rin', '0.54', '--rout', '0.95',
                                      '--samples', '50', '--steps', '200', '--seed', '3', '--workers', workers,
                                      '--out', self.path(name)])
            assert status == cli.EXIT_OK
            outputs.append(read_bytes(self.path(name)))
        assert outputs[0] == outputs[1] == outputs[2]

    def test_expand_and_exclude_determinism(self):
        commands = [
            ['expand', '--set', 'uniform:12', '--z', '0.6,0.5', '--steps', '200'],
            ['exclude', '--set', 'littlewood', '--modulus', '0.5'],
        ]
        for i, command in enumerate(commands):
            outputs = []
            for run in range(2):
                path = self.path(f'{i}_{run}.json')
                status, _ = run_captured(command + ['--out', path])
                assert status == cli.EXIT_OK
                outputs.append(read_bytes(path))
            assert outputs[0] == outputs[1]

    def test_sweep(self):
        log_dir = self.path('sweep')
        status, _ = run_captured(['sweep', '--set', 'littlewood', '--degrees', '4,6,8', '--rin', '0.85', '--rout',
                                  '1.15', '--eps', '0.05', '--logger-path', log_dir])
        assert status == cli.EXIT_OK
        df = pd.read_csv(os.path.join(log_dir, 'progress.csv'))
        assert df['MaxDegree'].tolist() == [4, 6, 8]
        assert np.all(np.diff(df['HitFraction'].to_numpy()) >= 0.)
        assert run_captured(['sweep', '--set', 'littlewood', '--degrees', '0,4', '--rin', '0.85', '--rout', '1.15',
                             '--eps', '0.05', '--logger-path', log_dir])[0] == cli.EXIT_USAGE


if __name__ == '__main__':
    unittest.main()
