import os
import tempfile
import unittest

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt

from rootsets import plot
from rootsets.coverage import AnnulusGrid, coverage_sweep
from rootsets.digitset import DigitSet
from rootsets.enumeration import all_roots, write_cloud_csv
from rootsets.logx import EpochLogger


class TestPlot(unittest.TestCase):
    def test_plot_cloud(self):
        with tempfile.TemporaryDirectory() as output_dir:
            path = os.path.join(output_dir, 'cloud.csv')
            write_cloud_csv(all_roots(DigitSet.from_spec('uniform:12'), 2, symmetry='phase-orbit'), path)
            fig = plot.plot_cloud(path, digit_set='uniform:12')
        # scatter plus five circles
        assert len(fig.axes[0].lines) == 5
        plt.close(fig)

    def test_plot_progress(self):
        with tempfile.TemporaryDirectory() as output_dir:
            logdir = os.path.join(output_dir, 'littlewood')
            logger = EpochLogger(output_dir=logdir, exp_name='littlewood', verbose=False)
            logger.save_config(dict(digit_set='littlewood'))
            coverage_sweep(DigitSet.from_spec('littlewood'), [2, 4], AnnulusGrid(0.85, 1.15, 0.1), logger=logger)
            logger.output_file.close()
            datasets = plot.get_datasets(output_dir)
            assert len(datasets) == 1
            assert datasets[0]['Condition1'].tolist() == ['littlewood', 'littlewood']
            plot.plot_progress([output_dir], values=['HitFraction', 'Roots'])
        assert len(plt.get_fignums()) == 2
        plt.close('all')


if __name__ == '__main__':
    unittest.main()
