"""Min-time event queue with deterministic FIFO tie-breaking."""

from __future__ import annotations

import heapq
import itertools
from typing import Any, Iterator, List, Tuple


class EventQueue:
    """Events keyed by integer picosecond time.

    Equal times pop in insertion order. Scheduling before the time of the
    last popped event is rejected.
    """

    def __init__(self) -> None:
        self._heap: List[Tuple[int, int, Any]] = []
        self._seq = itertools.count()
        self.now = 0

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)

    def schedule(self, time: int, event: Any) -> None:
        if time < self.now:
            raise ValueError(f"cannot schedule at {time} ps, clock is at {self.now} ps")
        heapq.heappush(self._heap, (time, next(self._seq), event))

    def pending(self) -> Iterator[Any]:
        """Scheduled events in no particular order."""
        return (ev for _, _, ev in self._heap)

    def peek_time(self) -> int:
        return self._heap[0][0]

    def pop_next(self) -> Tuple[int, Any]:
        if not self._heap:
            raise IndexError("pop from empty event queue")
        time, _, event = heapq.heappop(self._heap)
        self.now = time
        return time, event
