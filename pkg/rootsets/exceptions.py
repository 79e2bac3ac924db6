"""
Errors raised by rootsets. Mathematical failures (a greedy step with no admissible digit, a point
without an exclusion certificate) are returned as values, never raised.
"""


class RootSetsError(Exception):
    pass


class InvalidDigitSetError(RootSetsError, ValueError):
    pass


class PreconditionError(RootSetsError, ValueError):
    pass


class MalformedCertificateError(RootSetsError, ValueError):
    pass


class ResourceCapError(RootSetsError):
    def __init__(self, count, cap):
        super(ResourceCapError, self).__init__(
            f'Job enumerates {count} polynomials, above the cap of {cap}. Pass allow_large to override.')
        self.count = count
        self.cap = cap


class EnumerationOverflowError(RootSetsError, OverflowError):
    pass
