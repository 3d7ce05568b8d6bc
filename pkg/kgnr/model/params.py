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

"""Model parameters."""
from typing import Final

from kgnr.errors import ParameterError


class KGParams:
    """Parameters of the Klein-Gordon model.

    The nonlinearity is f(z) = lam |z|^(2p) z, so p=0 is the linear model
    and p=1 the cubic one.

    :param c: Speed of light, positive.
    :param lam: Nonlinearity strength.
    :param p: Nonlinearity degree, a nonnegative integer.
    """

    def __init__(self, *, c: float, lam: float, p: int) -> None:
        if not c > 0:
            raise ParameterError(reason=f"Speed of light must be positive, got {c}")
        if isinstance(p, bool) or int(p) != p or p < 0:
            raise ParameterError(
                reason=f"Nonlinearity degree must be a nonnegative integer, got {p}"
            )

        self.c: Final[float] = float(c)
        self.lam: Final[float] = float(lam)
        self.p: Final[int] = int(p)

    def with_c(self, c: float) -> "KGParams":
        """Copy with another speed of light."""
        return KGParams(c=c, lam=self.lam, p=self.p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KGParams):
            return NotImplemented
        return (self.c, self.lam, self.p) == (other.c, other.lam, other.p)

    def __hash__(self) -> int:
        return hash((self.c, self.lam, self.p))

    def __repr__(self) -> str:
        """Return representation."""
        return f"KGParams(c={self.c}, lam={self.lam}, p={self.p})"
