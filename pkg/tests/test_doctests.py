import doctest
import importlib
import pkgutil

import pytest

import hopfcoh

MODULES = sorted(m.name for m in pkgutil.iter_modules(hopfcoh.__path__, "hopfcoh."))


@pytest.mark.parametrize("name", MODULES)
def test_module_examples(name):
    res = doctest.testmod(importlib.import_module(name))
    assert res.failed == 0
