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

"""Experiment configuration."""
import enum
import logging
import pathlib
from typing import Any, Dict, Final, Mapping, Optional, Sequence, Tuple, Union

import yaml

from kgnr.errors import ConfigurationError
from kgnr.limit import G0Variant
from kgnr.model import (
    InitialData,
    InitialDataPreset,
    KGParams,
    check_reference_guard,
    initial_data_from_table,
    preset_initial_data,
)
from kgnr.spectral import make_grid

logger = logging.getLogger(__name__)


class ExperimentKind(enum.Enum):
    """Supported experiments."""

    LINEAR_CONVERGENCE_IN_C = "linear_convergence_in_c"
    CUBIC_FIRST_ORDER_IN_C = "cubic_first_order_in_c"
    CUBIC_SECOND_ORDER_IN_C = "cubic_second_order_in_c"
    TAU_CONVERGENCE = "tau_convergence"
    CONSERVATION_STUDY = "conservation_study"


InitialDataSpec = Union[InitialDataPreset, Mapping[str, Mapping[Any, Any]]]


class ExperimentConfig:
    """Declarative description of a sweep.

    :param experiment: Experiment kind.
    :param K: Number of modes, a power of two.
    :param T: Final time.
    :param tau: Limit-system step.
    :param tau_list: Steps swept by the tau convergence experiment.
    :param tau_ref: Reference integrator step.
    :param c_list: Strictly increasing speeds of light.
    :param lam: Nonlinearity strength.
    :param p: Nonlinearity degree.
    :param initial_data: Preset or Fourier coefficient table.
    :param normalize_h1: Scale phi and gamma to unit H^1 norm.
    :param dealias: Use the 2/3 rule for nonlinear products.
    :param quadrature_nodes: theta nodes of the averaged nonlinearity.
    :param g0_variant: Correction forcing coefficient.
    :param reference_conservation: Also measure reference Q and E drift.
    :param record_runtime: Write wall-clock runtimes; off by default so repeated runs
        give identical files.
    :param output_dir: Directory receiving the result files.
    """

    def __init__(
        self,
        *,
        experiment: ExperimentKind,
        K: int = 32,
        T: Optional[float] = None,
        tau: float = 1e-2,
        tau_list: Sequence[float] = (4e-3, 2e-3, 1e-3, 5e-4),
        tau_ref: float = 1e-5,
        c_list: Sequence[float] = (4.0, 8.0, 16.0, 32.0),
        lam: float = -1.0,
        p: Optional[int] = None,
        initial_data: InitialDataSpec = InitialDataPreset.COMPLEX_MIXED,
        normalize_h1: bool = False,
        dealias: bool = False,
        quadrature_nodes: Optional[int] = None,
        g0_variant: G0Variant = G0Variant.DERIVED_3_16,
        reference_conservation: bool = True,
        record_runtime: bool = False,
        output_dir: Union[str, pathlib.Path] = "kgnr-results",
    ) -> None:
        linear = experiment == ExperimentKind.LINEAR_CONVERGENCE_IN_C

        self.experiment: Final[ExperimentKind] = experiment
        self.K: Final[int] = K
        self.T: Final[float] = float(T if T is not None else (1.0 if linear else 0.1))
        self.tau: Final[float] = float(tau)
        self.tau_list: Final[Tuple[float, ...]] = tuple(float(t) for t in tau_list)
        self.tau_ref: Final[float] = float(tau_ref)
        self.c_list: Final[Tuple[float, ...]] = tuple(float(c) for c in c_list)
        self.lam: Final[float] = float(lam)
        self.p: Final[int] = int(p if p is not None else (0 if linear else 1))
        self.initial_data: Final[InitialDataSpec] = initial_data
        self.normalize_h1: Final[bool] = normalize_h1
        self.dealias: Final[bool] = dealias
        self.quadrature_nodes: Final[Optional[int]] = quadrature_nodes
        self.g0_variant: Final[G0Variant] = g0_variant
        self.reference_conservation: Final[bool] = reference_conservation
        self.record_runtime: Final[bool] = record_runtime
        self.output_dir: Final[pathlib.Path] = pathlib.Path(output_dir)

        self._validate()

    def _validate(self) -> None:
        make_grid(self.K)
        if not self.c_list:
            raise ConfigurationError(reason="c_list must not be empty")
        if any(c <= 0 for c in self.c_list):
            raise ConfigurationError(reason="c_list values must be positive")
        if any(b <= a for a, b in zip(self.c_list, self.c_list[1:])):
            raise ConfigurationError(
                reason=f"c_list must be strictly increasing, got {list(self.c_list)}"
            )
        for name, value in (("T", self.T), ("tau", self.tau), ("tau_ref", self.tau_ref)):
            if not value > 0:
                raise ConfigurationError(reason=f"{name} must be positive, got {value}")
        if not self.tau_list or any(t <= 0 for t in self.tau_list):
            raise ConfigurationError(reason="tau_list must hold positive steps")
        if self.p < 0:
            raise ConfigurationError(reason=f"p must be nonnegative, got {self.p}")
        if not isinstance(self.initial_data, InitialDataPreset):
            self.build_initial_data()

    @property
    def needs_reference(self) -> bool:
        """Whether the experiment integrates the full system for every c."""
        return self.experiment in (
            ExperimentKind.CUBIC_FIRST_ORDER_IN_C,
            ExperimentKind.CUBIC_SECOND_ORDER_IN_C,
        ) or (
            self.experiment == ExperimentKind.CONSERVATION_STUDY and self.reference_conservation
        )

    def check_guard(self) -> None:
        """Enforce tau_ref c^2 <= 0.1 for the largest c when a reference is needed.

        :raises GuardViolationError: On violation.
        """
        if self.needs_reference:
            check_reference_guard(max(self.c_list), self.tau_ref)

    def params(self, c: float) -> KGParams:
        """Model parameters for one sweep point."""
        return KGParams(c=c, lam=self.lam, p=self.p)

    def build_initial_data(self) -> InitialData:
        """Sample the configured initial data on the configured grid."""
        grid = make_grid(self.K, dealias=self.dealias)
        if isinstance(self.initial_data, InitialDataPreset):
            data = preset_initial_data(self.initial_data, grid=grid)
        else:
            data = initial_data_from_table(self.initial_data, grid=grid)
        return data.normalized(s=1.0) if self.normalize_h1 else data

    def to_dict(self) -> Dict[str, Any]:
        """Plain mapping suitable for JSON output."""
        initial_data: Any = (
            self.initial_data.value
            if isinstance(self.initial_data, InitialDataPreset)
            else self.initial_data
        )
        return {
            "experiment": self.experiment.value,
            "K": self.K,
            "T": self.T,
            "tau": self.tau,
            "tau_list": list(self.tau_list),
            "tau_ref": self.tau_ref,
            "c_list": list(self.c_list),
            "lambda": self.lam,
            "p": self.p,
            "initial_data": initial_data,
            "normalize_h1": self.normalize_h1,
            "dealias": self.dealias,
            "quadrature_nodes": self.quadrature_nodes,
            "g0_variant": self.g0_variant.value,
            "reference_conservation": self.reference_conservation,
            "record_runtime": self.record_runtime,
            "output_dir": str(self.output_dir),
        }

    def __repr__(self) -> str:
        """Return representation."""
        return f"ExperimentConfig({self.to_dict()!r})"


class _ConfigLoader(yaml.SafeLoader):  # pylint: disable=too-many-ancestors
    """Safe loader for experiment documents; JSON documents are valid input."""


_ENUM_KEYS = {
    "experiment": ExperimentKind,
    "g0_variant": G0Variant,
}

_SIMPLE_KEYS = {
    "K": int,
    "T": float,
    "tau": float,
    "tau_ref": float,
    "p": int,
    "normalize_h1": bool,
    "dealias": bool,
    "reference_conservation": bool,
    "record_runtime": bool,
    "output_dir": str,
}


def _convert(key: str, value: Any, kind: Any) -> Any:
    if kind is bool and not isinstance(value, bool):
        raise ConfigurationError(reason=f"{key!r} must be a boolean, got {value!r}")
    try:
        converted = kind(value)
    except (TypeError, ValueError, OverflowError) as error:
        raise ConfigurationError(reason=f"Invalid value {value!r} for {key!r}") from error
    if kind is int and (isinstance(value, (bool, str)) or converted != value):
        raise ConfigurationError(reason=f"{key!r} must be an integer, got {value!r}")
    return converted


def parse_config(document: Mapping[str, Any]) -> ExperimentConfig:
    """Validate a loaded document into an ExperimentConfig.

    :raises ConfigurationError: On unknown keys, missing experiment or bad values.
    """
    if not isinstance(document, Mapping):
        raise ConfigurationError(reason="Configuration must be a mapping")

    known = set(_ENUM_KEYS) | set(_SIMPLE_KEYS) | {
        "c_list",
        "tau_list",
        "lambda",
        "initial_data",
        "quadrature_nodes",
    }
    unknown = sorted(set(document) - known)
    if unknown:
        raise ConfigurationError(reason=f"Unknown configuration keys: {', '.join(unknown)}")
    if "experiment" not in document:
        raise ConfigurationError(reason="Configuration is missing 'experiment'")

    kwargs: Dict[str, Any] = {}
    for key, kind in _ENUM_KEYS.items():
        if key in document:
            try:
                kwargs[key] = kind(document[key])
            except ValueError as error:
                choices = ", ".join(member.value for member in kind)
                raise ConfigurationError(
                    reason=f"Invalid {key} {document[key]!r}, expected one of: {choices}"
                ) from error

    for key, kind in _SIMPLE_KEYS.items():
        if key in document:
            kwargs[key] = _convert(key, document[key], kind)

    for key in ("c_list", "tau_list"):
        if key in document:
            if not isinstance(document[key], list):
                raise ConfigurationError(reason=f"{key!r} must be a list")
            kwargs[key] = [_convert(key, value, float) for value in document[key]]

    if "lambda" in document:
        kwargs["lam"] = _convert("lambda", document["lambda"], float)
    if document.get("quadrature_nodes") is not None:
        kwargs["quadrature_nodes"] = _convert(
            "quadrature_nodes", document["quadrature_nodes"], int
        )

    if "initial_data" in document:
        spec = document["initial_data"]
        if isinstance(spec, str):
            try:
                kwargs["initial_data"] = InitialDataPreset(spec)
            except ValueError as error:
                choices = ", ".join(member.value for member in InitialDataPreset)
                raise ConfigurationError(
                    reason=f"Unknown initial data preset {spec!r}, expected one of: {choices}"
                ) from error
        elif isinstance(spec, Mapping):
            kwargs["initial_data"] = spec
        else:
            raise ConfigurationError(reason="initial_data must be a preset name or a table")

    return ExperimentConfig(**kwargs)


def load_config(path: pathlib.Path) -> ExperimentConfig:
    """Load and validate a JSON (or YAML) experiment document.

    :raises ConfigurationError: If the file cannot be read or parsed.
    """
    try:
        content = path.read_text()
    except OSError as error:
        raise ConfigurationError(reason=f"Cannot read {str(path)!r}: {error}") from error

    try:
        document = yaml.load(content, Loader=_ConfigLoader)
    except yaml.YAMLError as error:
        raise ConfigurationError(reason=f"Cannot parse {str(path)!r}: {error}") from error

    logger.debug("Loaded configuration from %s.", path)
    return parse_config(document)
