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

"""Errors raised by kgnr."""


class KGNRError(Exception):
    """Base class for kgnr errors.

    :param reason: Human-readable description of the failure.
    """

    def __init__(self, reason: str) -> None:
        super().__init__()
        self.reason = reason

    def __repr__(self) -> str:
        """Return representation."""
        return f"{self.__class__.__name__}(reason={self.reason})"

    def __str__(self) -> str:
        """Return string representation."""
        return self.reason


class ConfigurationError(KGNRError):
    """Invalid grid, solver or experiment configuration."""


class ShapeError(KGNRError):
    """Array length or grid mismatch between operands."""


class ParameterError(KGNRError):
    """Model parameters outside the supported range."""


class GuardViolationError(KGNRError):
    """Reference integrator step restriction violated."""


class SchedulingError(KGNRError):
    """A trajectory lacks a sample at a requested time."""


class UnsupportedRegimeError(KGNRError):
    """Requested combination of model and method is not implemented."""


class QuantityError(KGNRError):
    """A diagnostic quantity is not real to tolerance."""


class AcceptanceError(KGNRError):
    """One or more acceptance checks failed."""
