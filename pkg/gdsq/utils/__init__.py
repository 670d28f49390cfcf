# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Generic utils library."""

from .dual import Dual, jacobian_fwd
from .parallel import max_workers, parallel_map

__all__ = [
    "Dual",
    "jacobian_fwd",
    "max_workers",
    "parallel_map",
]
