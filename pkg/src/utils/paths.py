"""
XDG Base Directory specification compliant path management for ascentlab

Directory hierarchy:
- .ascentlab/ (project-local config - highest priority)
- XDG_CONFIG_HOME (~/.config/ascentlab/): User configuration files
- /etc/ascentlab/ (system-wide config - lowest priority)

Relative output paths are resolved against $ASCENTLAB_OUTPUT_DIR when it is
set, otherwise against the current directory.
"""

import os
from pathlib import Path
from typing import Optional, Union

OUTPUT_DIR_ENV = "ASCENTLAB_OUTPUT_DIR"


class AscentLabPaths:
    """Manages the configuration and output paths of ascentlab"""

    def __init__(self):
        """Initialize path manager with XDG-compliant directories"""
        self.xdg_config_home = Path(
            os.environ.get("XDG_CONFIG_HOME", Path.home() / ".config")
        )
        self.config_dir = self.xdg_config_home / "ascentlab"
        self.local_config_dir = Path(".ascentlab")
        self.system_config_dir = Path("/etc/ascentlab")

    @property
    def output_dir(self) -> Path:
        """Directory for relative output paths, read from the environment each time"""
        return Path(os.environ.get(OUTPUT_DIR_ENV, "."))

    def get_config_file(self, filename: str) -> Path:
        """
        Get configuration file path following hierarchy

        Search order:
        1. .ascentlab/{filename} (project-local)
        2. ~/.config/ascentlab/{filename} (user)
        3. /etc/ascentlab/{filename} (system)

        Args:
            filename: Configuration file name

        Returns:
            Path to the configuration file (first found in hierarchy)
        """
        search_paths = [
            self.local_config_dir / filename,
            self.config_dir / filename,
            self.system_config_dir / filename,
        ]

        for path in search_paths:
            if path.exists():
                return path

        return self.config_dir / filename

    def resolve_output(self, path: Union[str, Path]) -> Path:
        """Absolute paths pass through; relative ones land in output_dir"""
        path = Path(path)
        return path if path.is_absolute() else self.output_dir / path


# Singleton instance
_paths_instance: Optional[AscentLabPaths] = None


def get_paths() -> AscentLabPaths:
    """
    Get singleton instance of AscentLabPaths

    Returns:
        AscentLabPaths instance
    """
    global _paths_instance
    if _paths_instance is None:
        _paths_instance = AscentLabPaths()
    return _paths_instance
