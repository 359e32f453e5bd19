"""
Configuration management for the cutoff laboratory.

This module loads the experiment configuration from a config file (JSON or
YAML), environment variables and command-line arguments, and validates it.
"""

import os
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from dotenv import load_dotenv

from .exceptions import ConfigurationError
from .grid import check_half_length

SUITE_NAMES = ("certify", "lemma", "h2", "sawtooth", "derivative")
FAMILY_KINDS = ("smooth-random", "rough-random", "sawtooth", "exponential-growth", "small-ball")
ENV_PREFIX = "CUTOFF_LAB_"

# Smallest ratio max/min of epsilon_list accepted for the scaling fits (2^-2 .. 2^-7).
MIN_EPSILON_SPAN = 32.0
MIN_EPSILON_COUNT = 5


def parse_number(value: Any) -> float:
    """Parse 0.25, "0.25", "1/4" or "2^-2" into a float."""
    if isinstance(value, bool):
        raise ConfigurationError(f"Expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value).strip()
    try:
        if "^" in text:
            base, exponent = text.split("^", 1)
            return float(base) ** float(exponent)
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigurationError(f"Cannot parse number {value!r}: {e}") from e


def parse_number_list(value: Any) -> List[float]:
    """Parse a list or a comma-separated string of numbers."""
    if isinstance(value, str):
        value = [part for part in value.split(",") if part.strip()]
    return [parse_number(item) for item in value]


def parse_name_list(value: Any) -> List[str]:
    """Parse a list or a comma-separated string of names."""
    if isinstance(value, str):
        value = value.split(",")
    return [str(item).strip() for item in value if str(item).strip()]


@dataclass
class FamilyConfig:
    """A sample family as written in the config file."""

    kind: str
    amplitude: float = 1.0
    roughness: float = 1.0
    count: int = 10
    amplitude_decades: float = 0.0


@dataclass
class SawtoothSettings:
    """Counterexample parameters."""

    eps_saw_list: List[float] = field(default_factory=lambda: [1 / 16, 1 / 64, 1 / 256])
    delta: float = 0.1
    delta_prime: float = 0.02
    points_per_half_tooth: int = 32
    L: int = 2


@dataclass
class SuiteSettings:
    """Sample counts and targets of the individual checks."""

    small_ball_samples: int = 50
    scale_list: List[float] = field(default_factory=lambda: [1.0, 1 / 4, 1 / 16])
    equivariance_samples: int = 20
    shifts: List[int] = field(default_factory=lambda: [1, 17, 256])
    uniform_bound_samples: int = 100
    lipschitz_pairs: int = 10
    product_pairs: int = 100
    scaling_shapes: int = 8
    roughness_levels: List[float] = field(default_factory=lambda: [10.0, 1000.0])
    rough_amplitude: float = 5.0
    rho_bound_samples: int = 10
    growth_amplitude: float = 0.1
    null_samples: int = 10
    gateaux_pairs: int = 20
    taus: List[float] = field(default_factory=lambda: [1e-1, 1e-2, 1e-3])
    chi_one_samples: int = 8
    chi_one_directions: int = 6
    chi_one_ceiling: float = 10.0
    holder_steps: List[float] = field(default_factory=lambda: [1e-1, 1e-2, 1e-3, 1e-4])


def default_families() -> List[FamilyConfig]:
    """Families drawn by the Lipschitz checks; the scaling suite takes their normalised shapes."""
    return [
        FamilyConfig("smooth-random", amplitude=0.1, roughness=0.2, count=100, amplitude_decades=2.0),
        FamilyConfig("rough-random", amplitude=0.1, roughness=2.0, count=100, amplitude_decades=2.0),
    ]


@dataclass
class LabConfig:
    """Main configuration of an experiment run."""

    L: int = 16
    h: float = 1 / 256
    eta: float = 0.5
    zeta: float = 0.2
    eta_max: float = 1.0
    epsilon_list: List[float] = field(default_factory=lambda: [2.0**-k for k in range(2, 8)])
    seed: int = 42
    suites: List[str] = field(default_factory=lambda: list(SUITE_NAMES))
    out_dir: str = "reports"
    families: List[FamilyConfig] = field(default_factory=default_families)
    sawtooth: SawtoothSettings = field(default_factory=SawtoothSettings)
    settings: SuiteSettings = field(default_factory=SuiteSettings)

    # Debug settings
    debug: bool = False
    verbose: bool = False


class ConfigManager:
    """Manages configuration loading and validation."""

    def __init__(self, config_file: Optional[str] = None, load_env: bool = True):
        """
        Initialize configuration manager.

        Args:
            config_file: Path to a JSON or YAML config file
            load_env: Whether to load .env and CUTOFF_LAB_* variables
        """
        self.config_file = config_file
        self.load_env = load_env

        if load_env:
            env_file = self._find_env_file()
            if env_file:
                load_dotenv(env_file)

        self.config = self._load_config()

    def get_config(self) -> LabConfig:
        """Get the loaded configuration."""
        return self.config

    def validate_config(self) -> List[str]:
        """
        Validate the configuration and return any errors.

        Returns:
            List of validation error messages
        """
        errors = []
        config = self.config

        if isinstance(config.L, bool) or not float(config.L).is_integer() or config.L < 1:
            errors.append(f"L must be a positive integer, got {config.L}")
        if config.h <= 0 or abs(1.0 / config.h - round(1.0 / config.h)) > 1e-9 / config.h:
            errors.append(f"1/h must be a positive integer, got h={config.h}")

        if not 0.0 <= config.zeta < config.eta < config.eta_max:
            errors.append(
                f"Need 0 <= zeta < eta < eta_max, got zeta={config.zeta}, eta={config.eta}, eta_max={config.eta_max}"
            )

        for suite in config.suites:
            if suite not in SUITE_NAMES:
                errors.append(f"Unknown suite '{suite}', expected one of {', '.join(SUITE_NAMES)}")

        if "h2" in config.suites:
            eps = sorted(config.epsilon_list)
            if len(eps) < MIN_EPSILON_COUNT:
                errors.append(f"epsilon_list needs at least {MIN_EPSILON_COUNT} values for the scaling fit")
            elif eps[0] <= 0 or eps[-1] / eps[0] < MIN_EPSILON_SPAN:
                errors.append(f"epsilon_list must be positive with max/min >= {MIN_EPSILON_SPAN:g}")

        for family in config.families:
            if family.kind not in FAMILY_KINDS:
                errors.append(f"Unknown family kind '{family.kind}'")
            if family.amplitude <= 0 or family.roughness <= 0 or family.count < 1:
                errors.append(f"Family '{family.kind}' needs positive amplitude, roughness and count")

        saw = config.sawtooth
        if not saw.delta_prime < saw.delta / 2:
            errors.append("sawtooth.delta_prime must be below sawtooth.delta / 2")
        if saw.points_per_half_tooth < 4:
            errors.append("sawtooth.points_per_half_tooth must be at least 4")
        if any(e <= 0 for e in saw.eps_saw_list):
            errors.append("sawtooth.eps_saw_list must be positive")

        if config.settings.scaling_shapes < 1 or config.settings.product_pairs < 1:
            errors.append("settings.scaling_shapes and settings.product_pairs must be positive")

        return errors

    def update_from_args(self, args: Dict[str, Any]) -> None:
        """
        Update configuration from command-line arguments.

        Args:
            args: Dictionary of command-line arguments
        """
        arg_mapping = {
            "debug": "debug",
            "verbose": "verbose",
            "seed": ("seed", int),
            "out": ("out_dir", str),
            "L": ("L", check_half_length),
            "h": ("h", parse_number),
            "eta": ("eta", parse_number),
            "zeta": ("zeta", parse_number),
            "eta_max": ("eta_max", parse_number),
            "suites": ("suites", parse_name_list),
            "epsilon_list": ("epsilon_list", parse_number_list),
            "eps_saw": ("sawtooth", "eps_saw_list", parse_number_list),
            "delta": ("sawtooth", "delta", parse_number),
            "delta_prime": ("sawtooth", "delta_prime", parse_number),
            "samples": ("settings", "uniform_bound_samples", int),
        }

        for arg_name, config_path in arg_mapping.items():
            if arg_name not in args or args[arg_name] is None or args[arg_name] is False:
                continue
            if not isinstance(config_path, tuple):
                setattr(self.config, config_path, args[arg_name])
                continue
            try:
                if len(config_path) == 3:
                    section, key, transform = config_path
                    setattr(getattr(self.config, section), key, transform(args[arg_name]))
                else:
                    key, transform = config_path
                    setattr(self.config, key, transform(args[arg_name]))
            except ValueError as e:
                raise ConfigurationError(f"Bad value for --{arg_name}: {args[arg_name]!r}") from e

    def _load_config(self) -> LabConfig:
        """Load configuration from the file, then apply environment overrides."""
        config = LabConfig()

        if self.config_file:
            if not Path(self.config_file).exists():
                raise ConfigurationError(f"Config file not found: {self.config_file}")
            config = self._load_from_file(self.config_file)

        if self.load_env:
            self._load_from_environment(config)

        return config

    def _load_from_file(self, config_file: str) -> LabConfig:
        """Load configuration from a JSON or YAML file."""
        try:
            with open(config_file, "r") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Failed to parse config file {config_file}: {e}") from e

        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigurationError(f"Config file {config_file} must contain a mapping")
        return self._dict_to_config(data)

    def _load_from_environment(self, config: LabConfig) -> None:
        """Load overrides from CUTOFF_LAB_* environment variables."""
        overrides: List[Tuple[str, str, Any]] = [
            ("SEED", "seed", int),
            ("OUT_DIR", "out_dir", str),
            ("L", "L", check_half_length),
            ("H", "h", parse_number),
            ("ETA", "eta", parse_number),
            ("ZETA", "zeta", parse_number),
        ]
        for suffix, key, transform in overrides:
            raw = os.getenv(ENV_PREFIX + suffix)
            if raw:
                try:
                    setattr(config, key, transform(raw))
                except ValueError as e:
                    raise ConfigurationError(f"Bad value for {ENV_PREFIX + suffix}: {raw!r}") from e

        if os.getenv(ENV_PREFIX + "DEBUG"):
            config.debug = os.getenv(ENV_PREFIX + "DEBUG").lower() == "true"
        if os.getenv(ENV_PREFIX + "VERBOSE"):
            config.verbose = os.getenv(ENV_PREFIX + "VERBOSE").lower() == "true"

    def _dict_to_config(self, data: Dict[str, Any]) -> LabConfig:
        """Convert a config mapping to LabConfig."""
        config = LabConfig()
        known = {f.name for f in fields(LabConfig)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"Unknown config keys: {', '.join(unknown)}")

        try:
            if "L" in data:
                config.L = check_half_length(data["L"])
            for key in ("h", "eta", "zeta", "eta_max"):
                if key in data:
                    setattr(config, key, parse_number(data[key]))
            if "epsilon_list" in data:
                config.epsilon_list = parse_number_list(data["epsilon_list"])
            if "seed" in data:
                config.seed = int(data["seed"])
            if "suites" in data:
                config.suites = list(data["suites"])
            if "out_dir" in data:
                config.out_dir = str(data["out_dir"])
            if "families" in data:
                config.families = [FamilyConfig(**family) for family in data["families"]]
            if "sawtooth" in data:
                saw = dict(data["sawtooth"])
                if "eps_saw_list" in saw:
                    saw["eps_saw_list"] = parse_number_list(saw["eps_saw_list"])
                config.sawtooth = SawtoothSettings(**saw)
            if "settings" in data:
                config.settings = SuiteSettings(**data["settings"])
            config.debug = bool(data.get("debug", False))
            config.verbose = bool(data.get("verbose", False))
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"Invalid configuration value: {e}") from e

        return config

    def _find_env_file(self) -> Optional[str]:
        """Find .env file in current directory or parent directories."""
        current = Path.cwd()

        while current != current.parent:
            env_file = current / ".env"
            if env_file.exists():
                return str(env_file)
            current = current.parent

        return None

    def save_config(self, output_file: str) -> None:
        """Save current configuration to a YAML file."""
        with open(output_file, "w") as f:
            yaml.safe_dump(self._config_to_dict(self.config), f, default_flow_style=False, indent=2)

    def _config_to_dict(self, config: LabConfig) -> Dict[str, Any]:
        """Convert LabConfig to a plain dictionary for serialization."""
        data = asdict(config)
        data.pop("debug")
        data.pop("verbose")
        return data
