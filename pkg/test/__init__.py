# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

from collections.abc import Iterable

from gdsq import __version__


def test_version():
    assert __version__ == "0.1.0"


################################################################################
## DEFINITIONS
################################################################################
TYPES = [
    INT := 0,
    FLOAT := 0.0,
    NAN := float("NaN"),
    INF := float("Inf"),
    MINF := float("-Inf"),
    COMPLEX := complex(0, 0),
    STR := "0",
    BOOL := True,
    NONE := None,
    LIST := [0],
    TUPLE := (0,),
    DICT := {0: 0},
]
NO_INTS = [t for t in TYPES if not isinstance(t, int)]
NO_NONE = [t for t in TYPES if t is not None]
NO_REAL = [t for t in NO_INTS if not isinstance(t, float)]
NO_NUM = [t for t in NO_REAL if not isinstance(t, complex)]
NON_FINITE = [NAN, INF, MINF]

################################################################################
## FIXTURES DATA
################################################################################
# Hand-picked so that the cusp has closed form coordinates; PLANAR_SEED draws a generic one
PLANAR_A = [[1.0, 1.0], [-1.0, 1.0]]
PLANAR_P = [[0.0, 0.0], [1.0, 2.0]]
PLANAR_WINDOW = [[-3.0, 4.0], [-3.0, 5.0]]
PLANAR_CUSP = (1.2937, 1.6300)
RANK_ONE_A = [[1.0, 2.0], [2.0, 4.0]]
PLANAR_SEED = 2024


################################################################################
## ALL
################################################################################
__all__ = [
    "TYPES",
    "NO_INTS",
    "NO_NONE",
    "NO_REAL",
    "NO_NUM",
    "NON_FINITE",
    "PLANAR_A",
    "PLANAR_P",
    "PLANAR_WINDOW",
    "PLANAR_CUSP",
    "RANK_ONE_A",
    "PLANAR_SEED",
]
