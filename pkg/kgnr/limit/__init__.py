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

"""c-independent limit and correction systems."""

from .correction import CorrectionState  # noqa: F401
from .correction import G0Variant  # noqa: F401
from .correction import exp_trapezoidal_potential_step  # noqa: F401
from .correction import solve_xi1_cubic  # noqa: F401
from .correction import xi1_forcing_g0  # noqa: F401
from .correction import xi1_initial_value  # noqa: F401
from .linear import linear_correction_exact  # noqa: F401
from .linear import linear_u0_exact  # noqa: F401
from .linear import linear_xi1_exact  # noqa: F401
from .nls import NLSPair  # noqa: F401
from .nls import SplittingConfig  # noqa: F401
from .nls import SplittingScheme  # noqa: F401
from .nls import averaged_nonlinearity  # noqa: F401
from .nls import check_quadrature_nodes  # noqa: F401
from .nls import initial_nls_pair  # noqa: F401
from .nls import kinetic_flow  # noqa: F401
from .nls import potential_flow  # noqa: F401
from .nls import solve_nls  # noqa: F401
from .nls import strang_step_nls  # noqa: F401
from .potential import potential_matrix  # noqa: F401
from .potential import traceless_expm  # noqa: F401
