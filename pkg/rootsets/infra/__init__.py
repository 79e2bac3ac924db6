"""
Infrastructure shared by the pipelines:
- Seeder. Reproducible generators for pseudorandom sampling
- StopWatch. Wall-clock diagnostics reported into a Logger
- WorkerPool. Ordered data-parallel map over a process pool
- Runner. Build command line parsers from function signatures
"""

from . import runner
from .pool import WorkerPool, resolve_num_workers
from .seeder import Seeder
from .timer import StopWatch
