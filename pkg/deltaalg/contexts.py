import cProfile
import pstats
import time


class ProfileContext:
    """Profile context manager."""

    def __init__(self, filename: str = "alg.prof"):
        self._filename = filename
        self._profile = None

    def __enter__(self):
        self._profile = cProfile.Profile()
        self._profile.enable()

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._profile:
            self._profile.disable()
            results = pstats.Stats(self._profile)
            results.dump_stats(self._filename)


class Stopwatch:
    """Measures the wall time spent inside the context."""

    def __init__(self):
        self.seconds = 0.0
        self._start = None

    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.seconds = time.perf_counter() - self._start
