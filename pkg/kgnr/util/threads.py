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

"""Sweep parallelism limit."""
import os
from typing import Mapping, Optional

from kgnr.errors import ConfigurationError

THREADS_ENV = "KGNR_THREADS"


def thread_limit(environ: Optional[Mapping[str, str]] = None) -> int:
    """Number of worker threads for sweeps.

    :param environ: Environment to read, defaults to os.environ.

    :returns: KGNR_THREADS if set, else the number of cores.

    :raises ConfigurationError: If KGNR_THREADS is not a positive integer.
    """
    if environ is None:
        environ = os.environ

    value = environ.get(THREADS_ENV)
    if value is None or value.strip() == "":
        return os.cpu_count() or 1

    try:
        threads = int(value)
    except ValueError as error:
        raise ConfigurationError(
            reason=f"{THREADS_ENV} must be a positive integer, got {value!r}"
        ) from error

    if threads < 1:
        raise ConfigurationError(reason=f"{THREADS_ENV} must be a positive integer, got {value!r}")
    return threads
