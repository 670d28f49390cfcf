# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

from test import NO_INTS, NO_REAL, NON_FINITE

from numpy import array, nan
from pytest import mark, raises

from gdsq.exceptions import DimensionError
from gdsq.utils.typing import as_point, as_real_array, isint, isreal, readonly


################################################################################
## TYPE CHECKING
################################################################################
@mark.parametrize("object", [0, 1, -1])
def test_isint_true(object):
    """Test isint true."""
    assert isint(object)


@mark.parametrize(
    "object",
    cases := [*NO_INTS, True],
    ids=[str(type(i).__name__) for i in cases],
)
def test_isint_false(object):
    """Test isint false."""
    assert not isint(object)


@mark.parametrize("object", [0, 1, -1, 1.2, -2.4])
def test_isreal_true(object):
    """Test isreal true."""
    assert isreal(object)


@mark.parametrize(
    "object",
    cases := [*NO_REAL, *NON_FINITE, True],
    ids=[str(type(i).__name__) for i in cases],
)
def test_isreal_false(object):
    """Test isreal false."""
    assert not isreal(object)


################################################################################
## COERCION
################################################################################
class TestAsRealArray:
    """Test coercion into finite float arrays."""

    def test_values(self):
        source = [[1, 2], [3, 4]]
        arr = as_real_array(source, ndim=2)
        assert arr.dtype == float
        assert arr.tolist() == [[1.0, 2.0], [3.0, 4.0]]

    def test_copy(self):
        source = array([1.0, 2.0])
        arr = as_real_array(source)
        arr[0] = 7.0
        assert source[0] == 1.0

    @mark.parametrize(
        "obj", cases := ["abc", [[1.0], [1.0, 2.0]], {"a": 1}], ids=[str(c) for c in cases]
    )
    def test_type_error(self, obj):
        with raises(TypeError):
            as_real_array(obj)

    def test_dimension_error(self):
        with raises(DimensionError, match="expected 2 dimensions"):
            as_real_array([1.0, 2.0], name="matrix", ndim=2)

    @mark.parametrize("value", NON_FINITE, ids=[str(c) for c in NON_FINITE])
    def test_not_finite(self, value):
        with raises(ValueError, match="finite"):
            as_real_array([1.0, value])


class TestAsPoint:
    """Test coercion into points of given dimension."""

    def test_scalar_one_dimensional(self):
        assert as_point(3.0, 1).tolist() == [3.0]

    def test_vector(self):
        assert as_point((1, 2), 2).tolist() == [1.0, 2.0]

    def test_batch(self):
        assert as_point([[0, 0]] * 5, 2).shape == (5, 2)

    @mark.parametrize(
        "obj, dim",
        cases := [(3.0, 2), ([1.0, 2.0], 3), ([[1.0, 2.0]], 1)],
        ids=[f"{obj}-{dim}" for obj, dim in cases],
    )
    def test_mismatch(self, obj, dim):
        with raises(DimensionError, match="expected dimension"):
            as_point(obj, dim)

    def test_nan(self):
        with raises(ValueError):
            as_point([nan, 0.0], 2)


def test_readonly():
    """Test read-only flag."""
    arr = readonly(array([1.0, 2.0]))
    assert not arr.flags.writeable
    with raises(ValueError):
        arr[0] = 0.0
