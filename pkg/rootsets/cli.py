"""
The ``rootsets`` command line.

Every subcommand is a plain function; its signature and docstring build the subparser. Angles are
always radians. Complex numbers are written RE,IM (use ``--z=-0.5,0.3`` for a negative real part).

Exit status: 0 on success, 2 on invalid arguments, 3 when an enumeration exceeds the resource cap,
4 on a certified failure (the failure is still written out).
"""

import argparse
import sys

import numpy as np
import pandas as pd

import rootsets
from rootsets import logx
from rootsets.coverage import AnnulusGrid, coverage_report, coverage_sweep, hole_profile, hole_search, \
    scan_ball
from rootsets.digitset import DigitSet, density_threshold, max_gap, min_covered_radius
from rootsets.enumeration import DEFAULT_CAP, all_roots, read_cloud_csv, write_cloud_csv
from rootsets.exceptions import RootSetsError, ResourceCapError
from rootsets.expansion import certify_region, expand, validate_certificate
from rootsets.infra import StopWatch, resolve_num_workers
from rootsets.infra.runner import add_subcommand
from rootsets.render import rasterize, write_pgm
from rootsets.utils import dump_record, format_record

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_FAILURE = 4

RENAME = dict(digit_set='set', r_inner='rin', r_outer='rout', cell_size='eps', input_path='in',
              output_path='out', num_workers='workers')


class UsageError(RootSetsError, ValueError):
    pass


def parse_complex(text) -> complex:
    try:
        parts = [float(x) for x in str(text).split(',')]
    except ValueError:
        raise UsageError(f'Expected a complex number RE,IM. Got {text!r}')
    if len(parts) == 1:
        return complex(parts[0], 0.)
    if len(parts) != 2:
        raise UsageError(f'Expected a complex number RE,IM. Got {text!r}')
    return complex(parts[0], parts[1])


def parse_degrees(text):
    try:
        degrees = [int(x) for x in str(text).split(',') if x.strip() != '']
    except ValueError:
        raise UsageError(f'Expected comma-separated degrees. Got {text!r}')
    if len(degrees) == 0 or min(degrees) < 1:
        raise UsageError(f'Degrees must be positive. Got {text!r}')
    return degrees


class JobConfig(object):
    """ A parsed invocation: the subcommand, its parameters and the resolved pool width. """

    def __init__(self, command, params):
        self.command = command
        self.params = dict(params)
        if self.params.get('digit_set') is not None:
            # fail early on a bad specification
            self.digit_set = DigitSet.from_spec(self.params['digit_set'])
        else:
            self.digit_set = None
        if 'num_workers' in self.params:
            try:
                self.params['num_workers'] = resolve_num_workers(self.params['num_workers'])
            except ValueError as e:
                raise UsageError(str(e))

    def __repr__(self):
        return f'JobConfig({self.command}, {self.params})'


def _emit(record, output_path):
    if output_path is None:
        sys.stdout.write(format_record(record))
    else:
        dump_record(output_path, record)


def _make_logger(logger_path, command, config):
    if logger_path is None:
        return None
    logger = logx.EpochLogger(output_dir=logger_path, exp_name=command, verbose=False)
    logger.save_config(config)
    timer = StopWatch()
    timer.set_logger(logger)
    timer.start()
    return logger


def threshold(r: float = None, digit_set: str = None):
    """
    Print the density threshold of a modulus, or the gap data of a digit set.

    Args:
        r: modulus in (1/2, 1); prints 2 arccos((5 - 4 r^2) / 4)
        digit_set: digit set (uniform:k, angles:t1,t2,... in radians, or littlewood); prints max_gap and
            min_covered_radius
    """
    if (r is None) == (digit_set is None):
        raise UsageError('threshold needs exactly one of --r and --set')
    if r is not None:
        print('%.17g' % density_threshold(r))
    else:
        h = DigitSet.from_spec(digit_set)
        radius = min_covered_radius(h)
        print('max_gap %.17g' % max_gap(h))
        print('min_covered_radius %s' % ('none' if radius is None else '%.17g' % radius))
    return EXIT_OK


def expand_point(digit_set: str, z: str, steps: int, target: str = '0,0', output_path: str = None):
    """
    Greedy digit expansion of a target at a point of the annulus 1/2 < |z| < 1.

    Args:
        digit_set: digit set (uniform:k, angles:t1,t2,... in radians, or littlewood)
        z: the point RE,IM
        steps: index N of the last digit
        target: the value to represent RE,IM
        output_path: certificate document (stdout when omitted)
    """
    h = DigitSet.from_spec(digit_set)
    result = expand(parse_complex(z), parse_complex(target), h, steps)
    if not result.passed:
        logx.log(f'No admissible digit at step {result.step_index}', color='red')
        _emit(result.to_record(), output_path)
        return EXIT_FAILURE
    report = validate_certificate(result)
    _emit(result.to_record(report), output_path)
    if not report.passed:
        logx.log(f'Certificate failed validation: {report}', color='red')
        return EXIT_FAILURE
    logx.log(f'Certified: {report}')
    return EXIT_OK


def enumerate_roots(digit_set: str, max_degree: int, output_path: str, symmetry: str = 'none',
                    num_workers: int = None, cap: int = DEFAULT_CAP, allow_large: bool = False,
                    logger_path: str = None, verbose: bool = False):
    """
    Write the roots of all polynomials with coefficients in a digit set up to a degree.

    Args:
        digit_set: digit set (uniform:k, angles:t1,t2,... in radians, or littlewood)
        max_degree: largest degree enumerated
        output_path: root cloud CSV
        symmetry: none or phase-orbit
        num_workers: pool width (0 for one worker per physical core)
        cap: largest number of coefficient vectors enumerated without --allow-large
        allow_large: lift the cap
        logger_path: directory for config.json and per-degree progress.csv
        verbose: show progress bars
    """
    logger = _make_logger(logger_path, 'enumerate', locals())
    cloud = all_roots(DigitSet.from_spec(digit_set), max_degree, symmetry=symmetry, num_workers=num_workers,
                      cap=cap, allow_large=allow_large, logger=logger, verbose=verbose)
    write_cloud_csv(cloud, output_path)
    logx.log(f'Wrote {len(cloud)} roots to {output_path}')
    if cloud.num_unconverged > 0:
        logx.log(f'{cloud.num_unconverged} roots did not reach the residual tolerance', color='yellow')
    return EXIT_OK


def coverage(digit_set: str, max_degree: int, r_inner: float, r_outer: float, cell_size: float,
             output_path: str = None, raster_path: str = None, width: int = 512, height: int = 512,
             symmetry: str = 'phase-orbit', num_workers: int = None, cap: int = DEFAULT_CAP,
             allow_large: bool = False):
    """
    Report which cells of an annulus grid contain a root.

    Args:
        digit_set: digit set (uniform:k, angles:t1,t2,... in radians, or littlewood)
        max_degree: largest degree enumerated
        r_inner: inner radius of the annulus
        r_outer: outer radius of the annulus
        cell_size: side of the square cells
        output_path: report document (stdout when omitted)
        raster_path: optional PGM raster of the cloud
        width: raster width
        height: raster height
        symmetry: none or phase-orbit
        num_workers: pool width (0 for one worker per physical core)
        cap: largest number of coefficient vectors enumerated without --allow-large
        allow_large: lift the cap
    """
    grid = AnnulusGrid(r_inner, r_outer, cell_size)
    cloud = all_roots(DigitSet.from_spec(digit_set), max_degree, symmetry=symmetry, num_workers=num_workers,
                      cap=cap, allow_large=allow_large)
    report = coverage_report(cloud, grid)
    _emit(report.to_record(), output_path)
    if raster_path is not None:
        write_pgm(raster_path, rasterize(cloud.z, width, height))
    logx.log(f'{report}')
    return EXIT_OK


def exclude(digit_set: str, modulus: float, samples: int = 360, output_path: str = None):
    """
    Search a circle inside the unit disk for a certified hole of the root sets.

    Args:
        digit_set: digit set (uniform:k, angles:t1,t2,... in radians, or littlewood)
        modulus: radius of the circle, in (0, 1)
        samples: number of equally spaced arguments in the coarse sweep (at least 8)
        output_path: certificate document (stdout when omitted)
    """
    h = DigitSet.from_spec(digit_set)
    cert = hole_search(h, modulus, samples)
    record = dict(digit_set=h.spec, modulus=modulus, samples=samples, found=cert is not None)
    if cert is None:
        arguments, margins = hole_profile(h, modulus, samples)
        best = int(np.argmax(margins))
        record.update(z_re=modulus * np.cos(arguments[best]), z_im=modulus * np.sin(arguments[best]),
                      margin=float(margins[best]), delta=0., scan_min_margin=float(margins[best]))
        logx.log(f'No positive margin on |z| = {modulus}', color='yellow')
    else:
        record.update(z_re=cert.z.real, z_im=cert.z.imag, margin=cert.margin, delta=cert.delta,
                      scan_min_margin=scan_ball(cert))
        logx.log(f'{cert}')
    _emit(record, output_path)
    return EXIT_OK


def render(input_path: str, output_path: str, width: int = 512, height: int = 512):
    """
    Rasterize a root cloud CSV into a binary PGM.

    Args:
        input_path: root cloud CSV written by enumerate
        output_path: PGM file
        width: raster width
        height: raster height
    """
    if width < 1 or height < 1:
        raise UsageError(f'Raster size must be positive. Got {width}x{height}')
    cloud = read_cloud_csv(input_path)
    write_pgm(output_path, rasterize(cloud.z, width, height))
    return EXIT_OK


def certify(digit_set: str, r_inner: float, r_outer: float, output_path: str, samples: int = 500,
            steps: int = 200, seed: int = 0, num_workers: int = None, verbose: bool = False):
    """
    Expand 0 at sample points of an annulus inside the unit disk and validate every certificate.

    Args:
        digit_set: digit set (uniform:k, angles:t1,t2,... in radians, or littlewood)
        r_inner: inner radius, above 1/2
        r_outer: outer radius, below 1
        output_path: CSV with one row per sample point
        samples: number of sample points
        steps: index N of the last digit
        seed: seed of the pseudorandom half of the samples
        num_workers: pool width (0 for one worker per physical core)
        verbose: show progress bars
    """
    h = DigitSet.from_spec(digit_set)
    report = certify_region(h, r_inner, r_outer, samples, steps, seed=seed, num_workers=num_workers,
                            verbose=verbose)
    pd.DataFrame(list(report.rows())).to_csv(output_path, index=False, float_format='%.17g')
    color = 'green' if report.num_failed == 0 else 'red'
    logx.log(f'{report.num_passed} of {samples} points certified, max remainder {report.max_remainder:.6g}', color)
    return EXIT_OK if report.num_failed == 0 else EXIT_FAILURE


def sweep(digit_set: str, degrees: str, r_inner: float, r_outer: float, cell_size: float, logger_path: str,
          symmetry: str = 'phase-orbit', num_workers: int = None, cap: int = DEFAULT_CAP,
          allow_large: bool = False, verbose: bool = False):
    """
    Coverage of an annulus grid for a list of degree bounds, logged to progress.csv.

    Args:
        digit_set: digit set (uniform:k, angles:t1,t2,... in radians, or littlewood)
        degrees: comma-separated degree bounds
        r_inner: inner radius of the annulus
        r_outer: outer radius of the annulus
        cell_size: side of the square cells
        logger_path: directory for config.json and progress.csv
        symmetry: none or phase-orbit
        num_workers: pool width (0 for one worker per physical core)
        cap: largest number of coefficient vectors enumerated without --allow-large
        allow_large: lift the cap
        verbose: show progress bars
    """
    logger = _make_logger(logger_path, 'sweep', locals())
    degree_list = parse_degrees(degrees)
    grid = AnnulusGrid(r_inner, r_outer, cell_size)
    coverage_sweep(DigitSet.from_spec(digit_set), degree_list, grid, symmetry=symmetry, num_workers=num_workers,
                   cap=cap, allow_large=allow_large, logger=logger, verbose=verbose)
    return EXIT_OK


COMMANDS = dict(
    threshold=threshold,
    expand=expand_point,
    enumerate=enumerate_roots,
    coverage=coverage,
    exclude=exclude,
    render=render,
    certify=certify,
    sweep=sweep,
)


def build_parser():
    parser = argparse.ArgumentParser(prog='rootsets', description='Root sets of unimodular-coefficient '
                                                                  'polynomials and power series.')
    parser.add_argument('--version', action='version', version=rootsets.__version__)
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True
    for name, func in COMMANDS.items():
        add_subcommand(subparsers, name, func, rename=RENAME)
    return parser


def run(argv=None):
    """ Run one subcommand and return its exit status. """
    parser = build_parser()
    try:
        args = vars(parser.parse_args(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    command = args.pop('command')
    func = args.pop('_func')
    try:
        config = JobConfig(command, args)
        return func(**config.params)
    except ResourceCapError as e:
        logx.log(str(e), color='red')
        return EXIT_CAP
    except (RootSetsError, ValueError, OSError) as e:
        logx.log(f'{command}: {e}', color='red')
        return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
