from __future__ import annotations

import pathlib

import pytest

from mlcheck.kernel import Ctxt
from mlcheck.signature import minimal_theory

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def min_theory():
    return minimal_theory()


@pytest.fixture(scope="session")
def min_ctxt(min_theory):
    return Ctxt(min_theory)


@pytest.fixture(scope="session")
def toy_theory():
    from corpus import toy_fixture_theory

    return toy_fixture_theory()


@pytest.fixture(scope="session")
def toy_ctxt(toy_theory):
    return Ctxt(toy_theory)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
