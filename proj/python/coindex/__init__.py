"""Coincidence invariants of pairs of holomorphic self-maps.

Thin wrapper around the C++ core: run verifications from declarative JSON
configs, inspect the exact residue tables and the sign-calibration record.
"""

from __future__ import annotations

import json
from typing import Any, Dict, Union

try:
    from ._core import ComputationError, ConfigError, HypothesisError
    from ._core import builtin_configs as _builtin_configs
    from ._core import calibrate as _calibrate
    from ._core import verify_json as _verify_json
except ImportError:  # running against a bare build tree
    from _core import ComputationError, ConfigError, HypothesisError  # type: ignore
    from _core import builtin_configs as _builtin_configs  # type: ignore
    from _core import calibrate as _calibrate  # type: ignore
    from _core import verify_json as _verify_json  # type: ignore

__all__ = [
    "verify",
    "calibrate",
    "builtin_configs",
    "ConfigError",
    "HypothesisError",
    "ComputationError",
]

__version__ = "0.1.0"


def verify(config: Union[str, Dict[str, Any]], order: int = 0, mode: str = "",
           timing: bool = False) -> Dict[str, Any]:
    """Run a verification and return the report as a dict.

    `config` is either a JSON string or a dict following the schema in
    docs/config-schema.md. Exact rationals appear as "p/q" strings.
    """
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(_verify_json(text, order, mode, timing))


def calibrate(order: int = 10) -> Dict[str, Any]:
    """Sign-calibration record for the Baum-Bott and Lehmann-Suwa families."""
    return dict(_calibrate(order))


def builtin_configs() -> Dict[str, Dict[str, Any]]:
    """Built-in example configurations, parsed to dicts."""
    return {name: json.loads(text) for name, text in _builtin_configs().items()}
