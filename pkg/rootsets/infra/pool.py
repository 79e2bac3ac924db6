"""
Ordered data-parallel map. Tasks are independent and results come back in submission order, so any
associative merge of the results is identical for every pool width.
"""

import multiprocessing as mp
import os
from typing import Callable, Iterable

import psutil
from tqdm.auto import tqdm

NUM_WORKERS_ENV = 'ROOTSETS_NUM_WORKERS'


def resolve_num_workers(num_workers=None):
    """
    Resolve the pool width. An explicit value wins over the ``ROOTSETS_NUM_WORKERS`` environment
    variable, which wins over the default of 1. A width of 0 means one worker per physical core.
    """
    if num_workers is None:
        num_workers = int(os.environ.get(NUM_WORKERS_ENV, 1))
    num_workers = int(num_workers)
    if num_workers < 0:
        raise ValueError(f'num_workers must be non-negative. Got {num_workers}')
    if num_workers == 0:
        num_workers = psutil.cpu_count(logical=False) or 1
    return num_workers


class WorkerPool(object):
    def __init__(self, num_workers=None, context=None):
        self.num_workers = resolve_num_workers(num_workers)
        self.context = context
        self._pool = None

    def __enter__(self):
        if self.num_workers > 1:
            ctx = mp.get_context(self.context)
            self._pool = ctx.Pool(processes=self.num_workers)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._pool is not None:
            if exc_type is None:
                self._pool.close()
            else:
                self._pool.terminate()
            self._pool.join()
            self._pool = None

    def imap(self, fn: Callable, tasks: Iterable, total=None, desc=None, verbose=False):
        """ Apply ``fn`` to every task, yielding results in task order. """
        if self._pool is None:
            results = map(fn, tasks)
        else:
            results = self._pool.imap(fn, tasks, chunksize=1)
        if verbose:
            results = tqdm(results, total=total, desc=desc)
        for result in results:
            yield result

    def map(self, fn: Callable, tasks: Iterable, total=None, desc=None, verbose=False):
        return list(self.imap(fn, tasks, total=total, desc=desc, verbose=verbose))
