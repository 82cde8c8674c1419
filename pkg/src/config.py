"""
Configuration management for ascentlab
"""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from colorama import Fore, Style

from .errors import InvalidParams, IoFailure
from .utils.paths import get_paths

# Default configuration constants
DEFAULT_CONFIG: Dict[str, Any] = {
    "exhaustive_limit": 24,
    "node_limit": 10**7,
    "pathwidth_limit": 22,
    "default_step_budget": 10**8,
    "workers": 1,
    "rule": "first",
    "seed": 0,
    "convention": "a-side",
    "log_level": "WARNING",
}

# Per-run keys, settable from flags or a config file
RUN_KEYS = (
    "target",
    "instance",
    "n",
    "m",
    "k",
    "variant",
    "P",
    "Q",
    "R",
    "S",
    "start",
    "max_steps",
    "audit",
    "expect_steps",
    "cert",
    "cert_file",
)

INT_BOUNDS: Dict[str, tuple] = {
    "exhaustive_limit": (1, 30),
    "node_limit": (1, 10**9),
    "pathwidth_limit": (1, 26),
    "default_step_budget": (0, 10**12),
    "workers": (1, 256),
    "seed": (0, 2**64 - 1),
    "n": (1, 48),
    "m": (1, 48),
    "k": (1, 48),
    "P": (0, 1),
    "Q": (0, 1),
    "R": (0, 1),
    "S": (0, 1),
    "max_steps": (0, 10**12),
    "expect_steps": (0, 10**12),
}

CHOICES: Dict[str, tuple] = {
    "rule": ("first", "steepest", "random"),
    "convention": ("a-side", "b-side"),
    "variant": ("p10", "p00"),
    "log_level": ("DEBUG", "INFO", "WARNING", "ERROR"),
}

FORMATS = ("json", "jsonl", "dot", "text-table")


def _check_keys(values: Dict[str, Any], origin: str) -> None:
    known = set(DEFAULT_CONFIG) | set(RUN_KEYS)
    unknown = sorted(set(values) - known)
    if unknown:
        raise InvalidParams(f"unknown configuration keys in {origin}: {', '.join(unknown)}")


def load_config(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    Load configuration from config.yaml

    Args:
        path: Explicit config file; defaults to config.yaml in the config hierarchy

    Returns:
        DEFAULT_CONFIG overlaid with the file's keys

    Raises:
        IoFailure: If an explicit path cannot be read or parsed
        InvalidParams: If the file has unknown keys

    Note:
        A missing or malformed default config.yaml falls back to the defaults
    """
    config = DEFAULT_CONFIG.copy()
    explicit = path is not None
    target = Path(path) if explicit else get_paths().get_config_file("config.yaml")
    try:
        with open(target, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise yaml.YAMLError("top level is not a mapping")
    except FileNotFoundError as e:
        if explicit:
            raise IoFailure(f"config file {target} not found") from e
        return config
    except (OSError, yaml.YAMLError) as e:
        if explicit:
            raise IoFailure(f"could not load {target}: {e}") from e
        print(
            f"{Fore.YELLOW}Warning: Could not load {target}: {e}{Style.RESET_ALL}",
            file=sys.stderr,
        )
        print(
            f"{Fore.YELLOW}Using default configuration.{Style.RESET_ALL}", file=sys.stderr
        )
        return config

    _check_keys(loaded, str(target))
    config.update(loaded)
    return config


@dataclass
class RunConfig:
    """Everything one command invocation needs"""

    command: str
    params: Dict[str, Any] = field(default_factory=lambda: DEFAULT_CONFIG.copy())
    output: str = "-"
    format: str = "json"

    def get(self, key: str, default: Any = None) -> Any:
        value = self.params.get(key)
        return default if value is None else value

    def validate(self) -> "RunConfig":
        """
        Reject unknown keys, out-of-range numbers and bad choices

        Raises:
            InvalidParams: On the first offending key
        """
        _check_keys(self.params, "run parameters")
        for key, (low, high) in INT_BOUNDS.items():
            value = self.params.get(key)
            if value is None:
                continue
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidParams(f"{key} must be an integer, got {value!r}")
            if not low <= value <= high:
                raise InvalidParams(f"{key} must be in [{low}, {high}], got {value}")
        for key, choices in CHOICES.items():
            value = self.params.get(key)
            if value is not None and value not in choices:
                raise InvalidParams(
                    f"{key} must be one of {', '.join(choices)}, got {value!r}"
                )
        if self.format not in FORMATS:
            raise InvalidParams(f"format must be one of {', '.join(FORMATS)}")
        return self

    @classmethod
    def from_mapping(
        cls,
        command: str,
        overrides: Dict[str, Any],
        base: Optional[Dict[str, Any]] = None,
        output: str = "-",
        format: str = "json",
    ) -> "RunConfig":
        """Layer flag values (None means unset) over the loaded configuration"""
        params = dict(base if base is not None else DEFAULT_CONFIG)
        params.update({k: v for k, v in overrides.items() if v is not None})
        return cls(command, params, output, format).validate()
