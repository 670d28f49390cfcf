# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Command line interface, experiment configuration and artifacts."""

from .config import CONFIG_SCHEMA, REPORT_SCHEMA, ExperimentConfig, load_config
from .main import main, run

__all__ = [
    "CONFIG_SCHEMA",
    "REPORT_SCHEMA",
    "ExperimentConfig",
    "load_config",
    "main",
    "run",
]
