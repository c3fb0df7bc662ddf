"""Per-phase wall-clock timing for reports."""

import time
from contextlib import contextmanager
from typing import Dict, Iterator


class PhaseTimer:
    """Accumulates elapsed seconds per named phase."""

    def __init__(self):
        self.phases: Dict[str, float] = {}

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.phases[name] = self.phases.get(name, 0.0) + time.perf_counter() - start

    def summary(self) -> Dict[str, float]:
        """Elapsed time per phase in milliseconds, plus the total."""
        result = {f"{name}_ms": round(seconds * 1000, 3) for name, seconds in self.phases.items()}
        result["total_ms"] = round(sum(self.phases.values()) * 1000, 3)
        return result
