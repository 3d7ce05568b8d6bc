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

"""The Klein-Gordon model and its first-order reformulation."""

from .expansion import TaylorKind  # noqa: F401
from .expansion import dispersion_remainder  # noqa: F401
from .expansion import remainder_constant  # noqa: F401
from .expansion import taylor_coefficients  # noqa: F401
from .first_order import FirstOrderState  # noqa: F401
from .first_order import f_vector  # noqa: F401
from .first_order import from_first_order  # noqa: F401
from .first_order import initial_state  # noqa: F401
from .first_order import nonlinear_values  # noqa: F401
from .first_order import nonlinearity_f  # noqa: F401
from .first_order import psi_expansion_term  # noqa: F401
from .first_order import to_first_order  # noqa: F401
from .first_order import velocity_from_first_order  # noqa: F401
from .initial_data import InitialData  # noqa: F401
from .initial_data import InitialDataPreset  # noqa: F401
from .initial_data import initial_data_from_table  # noqa: F401
from .initial_data import preset_initial_data  # noqa: F401
from .linear import exact_linear_solution  # noqa: F401
from .linear import exact_linear_velocity  # noqa: F401
from .params import KGParams  # noqa: F401
from .reference import MAX_PHASE_STEP  # noqa: F401
from .reference import LawsonReference  # noqa: F401
from .reference import check_reference_guard  # noqa: F401
from .reference import reference_integrate  # noqa: F401
from .trajectory import Trajectory  # noqa: F401
from .trajectory import step_count  # noqa: F401
