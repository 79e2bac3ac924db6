import numpy as np


class Seeder(object):
    """
    A seeder generates random numbers in [0, max_seed). A root generator is seeded once and derives
    the seeds of every other generator, so one integer reproduces a whole job.
    """

    def __init__(self, seed):
        self.max_seed = 2 ** 31 - 1
        self.seed = seed
        self.reset()

    def reset(self):
        self.np_random = np.random.default_rng(self.seed)  # won't be interfered by the global numpy random

    def generate_seed(self):
        return int(self.np_random.integers(self.max_seed))

    def generator(self):
        """ A fresh, independent generator derived from the root seed. """
        return np.random.default_rng(self.generate_seed())
