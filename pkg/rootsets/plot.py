import json
import os
import os.path as osp

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns

from rootsets.digitset import DigitSet, min_covered_radius
from rootsets.enumeration import read_cloud_csv

DIV_LINE_WIDTH = 50


def get_datasets(logdir, condition=None):
    """
    Recursively look through logdir for output files produced by rootsets.logx.Logger.

    Assumes that any file "progress.csv" is a valid hit.
    """
    datasets = []
    for exp_idx, (root, _, files) in enumerate(sorted(os.walk(logdir))):
        if 'progress.csv' not in files:
            continue
        exp_name = None
        try:
            with open(osp.join(root, 'config.json')) as f:
                exp_name = json.load(f).get('exp_name')
        except (OSError, ValueError):
            print('No file named config.json')
        condition1 = condition or exp_name or 'exp'
        try:
            exp_data = pd.read_csv(osp.join(root, 'progress.csv'), sep=',')
        except (OSError, ValueError):
            print('Could not read from %s' % osp.join(root, 'progress.csv'))
            continue
        exp_data.insert(len(exp_data.columns), 'Condition1', condition1)
        exp_data.insert(len(exp_data.columns), 'Condition2', condition1 + '-' + str(exp_idx))
        datasets.append(exp_data)
    return datasets


def plot_progress(all_logdirs, legend=None, xaxis='MaxDegree', values='HitFraction', count=False):
    """ One figure per value: curves of progress.csv columns over all log directories. """
    print('Plotting from...\n' + '=' * DIV_LINE_WIDTH + '\n')
    for logdir in all_logdirs:
        print(logdir)
    print('\n' + '=' * DIV_LINE_WIDTH)
    assert not legend or len(legend) == len(all_logdirs), 'Must give a legend title for each log directory.'

    data = []
    for i, logdir in enumerate(all_logdirs):
        data += get_datasets(logdir, legend[i] if legend else None)
    assert len(data) > 0, f'No progress.csv found under {all_logdirs}'
    data = pd.concat(data, ignore_index=True)
    condition = 'Condition2' if count else 'Condition1'
    values = values if isinstance(values, list) else [values]
    sns.set(style='whitegrid', font_scale=1.5)
    for value in values:
        plt.figure()
        sns.lineplot(data=data, x=xaxis, y=value, hue=condition, marker='o')
        plt.legend(loc='best')
        plt.tight_layout(pad=0.5)


def plot_cloud(path, digit_set=None, size=0.5):
    """
    Scatter a root cloud CSV, colored by degree, with the circles |z| = 1/2, 1 and 2. When the digit
    set is known, the circles r and 1/r of its covered annulus are drawn too.
    """
    cloud = read_cloud_csv(path)
    sns.set(style='white', font_scale=1.2)
    fig, ax = plt.subplots(figsize=(8, 8))
    points = ax.scatter(cloud.z.real, cloud.z.imag, c=cloud.degree, s=size, cmap='viridis', linewidths=0)
    fig.colorbar(points, ax=ax, label='degree')
    theta = np.linspace(0., 2 * np.pi, 721)
    radii = [(0.5, 'gray'), (1., 'black'), (2., 'gray')]
    if digit_set is not None:
        r = min_covered_radius(DigitSet.from_spec(digit_set))
        if r is not None:
            radii += [(r, 'red'), (1. / r, 'red')]
    for radius, color in radii:
        ax.plot(radius * np.cos(theta), radius * np.sin(theta), color=color, linewidth=0.8, linestyle='--')
    ax.set_aspect('equal')
    ax.set_xlim(-2.2, 2.2)
    ax.set_ylim(-2.2, 2.2)
    ax.set_xlabel('Re z')
    ax.set_ylabel('Im z')
    plt.tight_layout(pad=0.5)
    return fig


def main():
    import argparse
    parser = argparse.ArgumentParser(prog='rsplot')
    subparsers = parser.add_subparsers(dest='mode')
    subparsers.required = True

    cloud_parser = subparsers.add_parser('cloud', help='scatter a root cloud CSV')
    cloud_parser.add_argument('path')
    cloud_parser.add_argument('--set', dest='digit_set', default=None)
    cloud_parser.add_argument('--size', type=float, default=0.5)
    cloud_parser.add_argument('--out', default=None)

    progress_parser = subparsers.add_parser('progress', help='plot progress.csv curves of sweeps')
    progress_parser.add_argument('logdir', nargs='*')
    progress_parser.add_argument('--legend', '-l', nargs='*')
    progress_parser.add_argument('--xaxis', '-x', default='MaxDegree')
    progress_parser.add_argument('--value', '-y', default='HitFraction', nargs='*')
    progress_parser.add_argument('--count', action='store_true')
    progress_parser.add_argument('--out', default=None)
    args = parser.parse_args()
    """

    Args:
        path (string): root cloud CSV written by ``rootsets enumerate``.

        digit_set (string): optional digit set of the cloud; draws the circles r and 1/r of the
            annulus its density guarantees.

        logdir (strings): log directories holding progress.csv files of ``rootsets sweep`` or
            ``rootsets enumerate --logger-path``.

        legend (strings): optional legend per log directory; defaults to ``exp_name`` of config.json.

        xaxis (string): column for the x-axis. Defaults to ``MaxDegree``.

        value (strings): columns for the y-axis, one figure each. Defaults to ``HitFraction``.

        count: show every log directory as its own curve.

    """
    if args.mode == 'cloud':
        plot_cloud(args.path, digit_set=args.digit_set, size=args.size)
    else:
        plot_progress(args.logdir, args.legend, args.xaxis, args.value, args.count)
    if args.out is not None:
        plt.savefig(args.out, dpi=200)
    else:
        plt.show()


if __name__ == "__main__":
    main()
