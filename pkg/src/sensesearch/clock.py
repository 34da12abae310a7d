"""Clock indirection.

Timestamps and elapsed-time measurements go through a clock object so that a
whole search response can be made byte-reproducible (fixed clock) for tests
and for the determinism check in the CLI.
"""

import time


class SystemClock:
    def now_ms(self) -> int:
        return int(time.time() * 1000)

    def monotonic_ms(self) -> float:
        return time.monotonic() * 1000.0


class FixedClock:
    """Deterministic clock that moves only when told to.

    Both time sources stay constant between advance() calls, so elapsed
    times measured across an undisturbed stretch are exactly zero.
    """

    def __init__(self, now_ms: int = 0):
        self._now_ms = now_ms

    def now_ms(self) -> int:
        return self._now_ms

    def monotonic_ms(self) -> float:
        return float(self._now_ms)

    def advance(self, delta_ms: int) -> None:
        self._now_ms += delta_ms


SYSTEM_CLOCK = SystemClock()
