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

"""One-dimensional Fourier pseudo-spectral foundation."""

from .field import Field  # noqa: F401
from .field import gradient_energy  # noqa: F401
from .field import l2_norm  # noqa: F401
from .field import sobolev_norm  # noqa: F401
from .grid import DOMAIN_LENGTH  # noqa: F401
from .grid import SpectralGrid  # noqa: F401
from .grid import forward  # noqa: F401
from .grid import inverse  # noqa: F401
from .grid import make_grid  # noqa: F401
from .grid import torus_integral  # noqa: F401
from .symbols import MultiplierSymbol  # noqa: F401
from .symbols import apply_symbol  # noqa: F401
from .symbols import bilaplacian_symbol  # noqa: F401
from .symbols import bracket_symbol  # noqa: F401
from .symbols import kg_flow_symbol  # noqa: F401
from .symbols import kg_phase_symbol  # noqa: F401
from .symbols import laplacian_symbol  # noqa: F401
from .symbols import scaled_inverse_bracket_symbol  # noqa: F401
from .symbols import schroedinger_flow_symbol  # noqa: F401
