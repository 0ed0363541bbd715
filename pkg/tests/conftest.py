"""Shared fixtures: small groups, braces and solutions with known invariants."""

import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from skewlab.shared.constructions import (  # noqa: E402
    cyclic_group,
    optriv_brace,
    symmetric_group,
    trivial_brace,
)
from skewlab.shared.solutions import flip_solution, shift_solution  # noqa: E402

DATA_DIR = os.path.join(ROOT, 'data')


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def s3():
    """S3 with elements e, (23), (12), (123), (132), (13) at indices 0..5."""
    group, names = symmetric_group(3)
    return group, names


@pytest.fixture
def optriv_s3(s3):
    return optriv_brace(s3[0])


@pytest.fixture
def trivial_z4():
    return trivial_brace(cyclic_group(4))


@pytest.fixture
def flip5():
    return flip_solution(5)


@pytest.fixture
def shift3():
    return shift_solution(3)


@pytest.fixture
def small_limits(monkeypatch):
    """Keep exhaustive searches short."""
    monkeypatch.setenv('SKEWLAB_MAX_ORDER', '4')
    monkeypatch.setenv('SKEWLAB_AUT_LIMIT', '16')
