# Copyright (C) 2021 Canonical Ltd
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License version 3 as
# published by the Free Software Foundation.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""Trajectory snapshots."""
from typing import Final, Generic, Iterator, Sequence, Tuple, TypeVar

import numpy as np

from kgnr.errors import ParameterError, SchedulingError, ShapeError

StateT = TypeVar("StateT")


class Trajectory(Generic[StateT]):
    """Immutable time-ordered snapshots produced by an integrator.

    :param times: Snapshot times, increasing.
    :param states: One state per time.
    :param step: Effective step of the integrator that produced them.
    """

    def __init__(
        self, *, times: Sequence[float], states: Sequence[StateT], step: float
    ) -> None:
        if len(times) != len(states) or not times:
            raise ShapeError(
                reason=f"Got {len(times)} times for {len(states)} states"
            )

        self.times: Final[Tuple[float, ...]] = tuple(float(t) for t in times)
        self.states: Final[Tuple[StateT, ...]] = tuple(states)
        self.step: Final[float] = float(step)
        self._times = np.array(self.times)

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[Tuple[float, StateT]]:
        return iter(zip(self.times, self.states))

    @property
    def initial(self) -> StateT:
        """First snapshot."""
        return self.states[0]

    @property
    def final(self) -> StateT:
        """Last snapshot."""
        return self.states[-1]

    def index_of(self, t: float, *, tolerance: float = 1e-9) -> int:
        """Index of the snapshot taken at time t.

        :raises SchedulingError: If no snapshot lies within tolerance of t.
        """
        index = int(np.argmin(np.abs(self._times - t)))
        if abs(self._times[index] - t) > tolerance * max(1.0, abs(t)):
            raise SchedulingError(
                reason=(
                    f"No snapshot at t={t!r}; nearest is t={self._times[index]!r}"
                )
            )
        return index

    def at(self, t: float, *, tolerance: float = 1e-9) -> StateT:
        """Snapshot taken at time t.

        :raises SchedulingError: If no snapshot lies within tolerance of t.
        """
        return self.states[self.index_of(t, tolerance=tolerance)]

    def __repr__(self) -> str:
        """Return representation."""
        return (
            f"Trajectory(snapshots={len(self)}, t0={self.times[0]}, "
            f"t1={self.times[-1]}, step={self.step})"
        )


def step_count(duration: float, tau: float) -> Tuple[int, float]:
    """Number of steps covering [0, duration] and the effective step.

    The count is rounded to the nearest integer so that the final time is hit
    exactly.
    """
    if not duration > 0 or not tau > 0:
        raise ParameterError(
            reason=f"Need positive duration and step, got {duration}, {tau}"
        )
    steps = max(1, int(round(duration / tau)))
    return steps, duration / steps
