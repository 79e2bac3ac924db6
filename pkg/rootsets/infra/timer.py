import time

from rootsets.interface.logging import LogUser

_UNITS = dict(second=1., minute=60., hour=3600.)


class StopWatch(LogUser):
    """
    Wall-clock diagnostics of a job. Each progress row gets the total time since ``start`` and the
    time spent on the row itself (one degree of an enumeration, one step of a sweep).
    """

    def __init__(self, display='second'):
        super(StopWatch, self).__init__()
        assert display in _UNITS, f'display must be one of {list(_UNITS)}. Got {display}'
        self.display = display
        self.start_time = None
        self.lap_time = None

    def start(self):
        self.start_time = time.perf_counter()
        self.lap_time = self.start_time

    def elapsed(self):
        assert self.start_time is not None, 'StopWatch.start() was not called'
        return time.perf_counter() - self.start_time

    def lap(self):
        """ Seconds since the previous lap (or since ``start``), starting a new lap. """
        now = time.perf_counter()
        seconds = now - self.lap_time
        self.lap_time = now
        return seconds

    def log_tabular(self):
        scale = _UNITS[self.display]
        self.logger.log_tabular(f'Time ({self.display})', self.elapsed() / scale)
        self.logger.log_tabular(f'RowTime ({self.display})', self.lap() / scale)
