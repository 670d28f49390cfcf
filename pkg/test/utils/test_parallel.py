# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

import os
from threading import get_ident

from pytest import mark, raises

from gdsq.utils.parallel import THREADS_ENV_VAR, max_workers, parallel_map


class TestMaxWorkers:
    """Test worker count resolution."""

    @mark.parametrize("workers", [1, 2, 16])
    def test_explicit(self, workers, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "3")
        assert max_workers(workers) == workers

    def test_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, " 3 ")
        assert max_workers() == 3

    def test_cpu_count(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
        assert max_workers() == (os.cpu_count() or 1)

    def test_invalid_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "many")
        with raises(ValueError, match=THREADS_ENV_VAR):
            max_workers()

    @mark.parametrize("workers", [0, -1])
    def test_non_positive(self, workers):
        with raises(ValueError, match="positive"):
            max_workers(workers)

    def test_non_positive_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "0")
        with raises(ValueError):
            max_workers()


class TestParallelMap:
    """Test order preserving parallel map."""

    @mark.parametrize("workers", [1, 2, 8])
    def test_order(self, workers):
        assert parallel_map(lambda x: x * x, range(50), workers) == [x * x for x in range(50)]

    def test_empty(self):
        assert parallel_map(lambda x: x, [], 4) == []

    def test_sequential_in_caller_thread(self):
        threads = parallel_map(lambda _: get_ident(), range(4), 1)
        assert set(threads) == {get_ident()}

    def test_exception_propagates(self):
        def func(x):
            if x == 3:
                raise RuntimeError("boom")
            return x

        with raises(RuntimeError, match="boom"):
            parallel_map(func, range(6), 3)
