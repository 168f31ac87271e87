"""Per-run event logs with replay-on-subscribe semantics.

A subscriber first receives the snapshot (started event, latest generation
event, terminal event when present) and then the live tail; the generation
event carries the full front and cumulative metric histories, so one
snapshot suffices to redraw any chart. Appends and subscriptions share one
lock, which keeps per-run ordering intact for every subscriber.
"""

from __future__ import annotations

import threading
from queue import Empty, SimpleQueue

from ..orchestrator import ProgressEvent


class RunEventLog:
    def __init__(self, run_id: str):
        self.run_id = run_id
        self._lock = threading.Lock()
        self._started: ProgressEvent | None = None
        self._last_generation: ProgressEvent | None = None
        self._terminal: ProgressEvent | None = None
        self._subscribers: list[SimpleQueue] = []

    def append(self, event: ProgressEvent) -> None:
        with self._lock:
            if event.kind == "started":
                self._started = event
            elif event.kind == "generation":
                self._last_generation = event
            if event.terminal:
                self._terminal = event
            subscribers = list(self._subscribers)
            for q in subscribers:
                q.put(event)
            if event.terminal:
                self._subscribers.clear()

    def subscribe(self) -> SimpleQueue:
        """Queue primed with the replay snapshot; live events follow."""
        q: SimpleQueue = SimpleQueue()
        with self._lock:
            for event in (self._started, self._last_generation, self._terminal):
                if event is not None:
                    q.put(event)
            if self._terminal is None:
                self._subscribers.append(q)
        return q

    def unsubscribe(self, q: SimpleQueue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    @property
    def finished(self) -> bool:
        with self._lock:
            return self._terminal is not None


def drain(q: SimpleQueue, timeout: float):
    """Next event or None on timeout."""
    try:
        return q.get(timeout=timeout)
    except Empty:
        return None
