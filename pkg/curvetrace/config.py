"""Configuration management for curvetrace."""

import copy
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import InputError

logger = logging.getLogger(__name__)

CONFIG_FILENAME = 'curvetrace.conf'
CONFIG_ENV = 'CURVETRACE_CONFIG'
THREADS_ENV = 'CURVETRACE_THREADS'


class Config:
    """Manages curvetrace configuration."""

    DEFAULT_CONFIG = {
        "threads": 0,
        "seed": 1,
        "tolerances": {
            "unitary": 1e-12,
            "trace": 1e-10,
            "relation": 1e-10,
            "vanishing": 1e-8,
            "nonvanishing": 1e-6,
            "rank_rel_tol": 1e-8,
            "delta_boundary": 1e-12
        },
        "sampling": {
            "margin": 0.05,
            "max_draws": 1000000,
            "batch_size": 4096,
            "oversampling": 3
        },
        "independence": {
            "max_columns": 500
        },
        "suite": {
            "checks": [
                "polytope", "trace_relation", "support", "nonvanishing",
                "twist_phase", "intersection", "independence", "torus"
            ],
            "m_max": 3,
            "t_max": 1,
            "base_points": 5,
            "intersection_points": 3,
            "polytope_samples": 10000,
            "relation_pairs": 1000,
            "word_length": 6,
            "word_generators": 3,
            "twist_k_max": 3,
            "twist_l_max": 2,
            "independence_seeds": 3,
            "quick": {
                "m_max": 2,
                "base_points": 2,
                "intersection_points": 2,
                "polytope_samples": 500,
                "relation_pairs": 100,
                "twist_k_max": 2,
                "independence_seeds": 2
            }
        }
    }

    @staticmethod
    def get_config_path() -> Path:
        """Get path to configuration file.

        Returns:
            Path named by $CURVETRACE_CONFIG, else curvetrace.conf in the
            current directory
        """
        override = os.environ.get(CONFIG_ENV)
        if override:
            return Path(override)
        return Path.cwd() / CONFIG_FILENAME

    @staticmethod
    def load(path: Optional[Path] = None) -> Dict:
        """Load configuration from file.

        Args:
            path: Optional explicit config file

        Returns:
            Configuration dictionary, defaults merged with the file contents
        """
        config_path = path or Config.get_config_path()
        config = copy.deepcopy(Config.DEFAULT_CONFIG)

        if not config_path.exists():
            return config

        try:
            with open(config_path, 'r') as f:
                user_config = json.load(f)
            Config._deep_merge(config, user_config)
            logger.debug("loaded config from %s", config_path)
            return config
        except (OSError, ValueError) as e:
            logger.warning("failed to load config from %s: %s", config_path, e)
            return copy.deepcopy(Config.DEFAULT_CONFIG)

    @staticmethod
    def save(config: Dict, path: Optional[Path] = None) -> None:
        """Save configuration to file.

        Args:
            config: Configuration dictionary to save
            path: Optional path to save to (defaults to standard location)
        """
        if path is None:
            path = Config.get_config_path()

        try:
            with open(path, 'w') as f:
                json.dump(config, f, indent=2)
        except OSError as e:
            raise InputError(f"failed to save config to {path}: {e}")

    @staticmethod
    def create_default(path: Optional[Path] = None) -> None:
        """Create default configuration file."""
        Config.save(copy.deepcopy(Config.DEFAULT_CONFIG), path)

    @staticmethod
    def get_value(key: str, config: Optional[Dict] = None) -> Optional[Any]:
        """Get configuration value by dot-notation key.

        Args:
            key: Key in dot notation (e.g., 'tolerances.vanishing')
            config: Configuration dict (loads from file if not provided)

        Returns:
            Configuration value or None
        """
        if config is None:
            config = Config.load()

        value = config
        for k in key.split('.'):
            if isinstance(value, dict):
                value = value.get(k)
            else:
                return None
        return value

    @staticmethod
    def set_value(key: str, value: Any, config: Optional[Dict] = None) -> Dict:
        """Set configuration value by dot-notation key.

        String values that parse as JSON (numbers, booleans, lists) are
        stored decoded, so `config set sampling.margin 0.1` stores a float.

        Args:
            key: Key in dot notation (e.g., 'sampling.margin')
            value: Value to set
            config: Configuration dict (loads from file if not provided)

        Returns:
            Updated configuration dictionary
        """
        if config is None:
            config = Config.load()

        if isinstance(value, str):
            try:
                value = json.loads(value)
            except ValueError:
                pass

        keys = key.split('.')
        current = config
        for k in keys[:-1]:
            if not isinstance(current.get(k), dict):
                current[k] = {}
            current = current[k]
        current[keys[-1]] = value
        return config

    @staticmethod
    def thread_count(config: Optional[Dict] = None) -> int:
        """Number of worker threads.

        $CURVETRACE_THREADS wins over the `threads` key; 0 means one thread
        per CPU.
        """
        if config is None:
            config = Config.load()
        raw = os.environ.get(THREADS_ENV)
        threads = config.get('threads', 0)
        if raw:
            try:
                threads = int(raw)
            except ValueError:
                raise InputError(f"{THREADS_ENV} must be an integer, got {raw!r}")
        if threads <= 0:
            threads = os.cpu_count() or 1
        return threads

    @staticmethod
    def suite_settings(config: Dict, quick: bool = False) -> Dict:
        """Suite sweep sizes, with the `suite.quick` overrides applied."""
        settings = {k: v for k, v in config['suite'].items() if k != 'quick'}
        if quick:
            settings.update(config['suite'].get('quick', {}))
        return settings

    @staticmethod
    def _deep_merge(base: Dict, override: Dict) -> None:
        """Deep merge override dict into base dict."""
        for key, value in override.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                Config._deep_merge(base[key], value)
            else:
                base[key] = value
