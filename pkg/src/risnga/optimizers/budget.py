"""Shared stopping rule: evaluation budget plus stall detection."""

from __future__ import annotations

import math

import numpy as np


class EvaluationBudget:
    """Counts fitness evaluations and detects stalls of a tracked value.

    The tracked value is whatever the optimizer passes to :meth:`record`
    once per iteration. The run is over once
    ``evaluations >= max_evaluations`` or the tracked value changed by less than ``stall_tolerance`` for ``stall_window``
    consecutive iterations. ``stall_window=None`` disables stall detection.
    """

    def __init__(self, max_evaluations: int, stall_tolerance: float = 1e-6,
                 stall_window: int | None = 5):
        self.max_evaluations = int(max_evaluations)
        self.stall_tolerance = float(stall_tolerance)
        self.stall_window = stall_window
        self.evaluations = 0
        self._last_value: float | None = None
        self._stalled_iterations = 0

    @property
    def remaining(self) -> int:
        return max(self.max_evaluations - self.evaluations, 0)

    @property
    def exhausted(self) -> bool:
        return self.evaluations >= self.max_evaluations

    @property
    def stalled(self) -> bool:
        return self.stall_window is not None and self._stalled_iterations >= self.stall_window

    @property
    def done(self) -> bool:
        return self.exhausted or self.stalled

    @property
    def stop_reason(self) -> str | None:
        if self.exhausted:
            return "budget"
        if self.stalled:
            return "stall"
        return None

    def evaluate(self, fitness, taus) -> np.ndarray:
        values = fitness.batch(taus)
        self.evaluations += len(values)
        return values

    def record(self, value: float) -> None:
        """Register the tracked value at the end of an iteration."""
        if self._last_value is not None:
            if value == self._last_value or (math.isinf(value) and math.isinf(self._last_value)):
                change = 0.0
            else:
                change = abs(value - self._last_value)
            if change < self.stall_tolerance:
                self._stalled_iterations += 1
            else:
                self._stalled_iterations = 0
        self._last_value = value
