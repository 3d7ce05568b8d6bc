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

"""Log-log slope fitting."""
from typing import Sequence, Tuple

import numpy as np

from kgnr.errors import ParameterError


def fit_slope(points: Sequence[Tuple[float, float]]) -> float:
    """Least-squares slope of log y against log x.

    :param points: At least three (x, y) pairs with x, y > 0.

    :returns: The fitted slope.

    :raises ParameterError: On fewer than three points or nonpositive values.
    """
    if len(points) < 3:
        raise ParameterError(reason=f"Need at least 3 points to fit a slope, got {len(points)}")

    x, y = np.array(points, dtype=float).T
    if np.any(x <= 0) or np.any(y <= 0) or not np.all(np.isfinite(x * y)):
        raise ParameterError(reason="Slope fitting needs finite positive values")

    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)
