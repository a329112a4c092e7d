# =============================================================================
# tests/conftest.py - Shared Fixtures
# =============================================================================

import json

import numpy as np
import pytest

from rope_algebra.generators import FrequencySchedule, conjugate, mixed_2d, standard_2d, toral_basis
from rope_algebra.linalg.core import J, block_diag
from rope_algebra.main import main
from rope_algebra.ortho import build_orthogonal, random_ortho_param

ZERO2 = np.zeros((2, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def std_1d():
    return toral_basis(1, 1, FrequencySchedule.geometric(1, theta=1.0))


@pytest.fixture
def std_2d():
    return standard_2d(FrequencySchedule.geometric(1, theta=1.0))


@pytest.fixture
def eq_b1_b2():
    """The two generators of the standard 2D set with theta = 1."""
    return block_diag([J, ZERO2]), block_diag([ZERO2, J])


@pytest.fixture
def mixed():
    return mixed_2d(1.0, 2.0)


@pytest.fixture
def givens_d8(rng):
    """toral_basis(2, 2) conjugated by a random Givens product."""
    base = toral_basis(2, 2, FrequencySchedule.geometric(2))
    p = random_ortho_param("givens", base.d, rng)
    return conjugate(base, build_orthogonal(p))


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""

    def _run(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


@pytest.fixture
def read_json():
    def _read(path):
        with open(path, encoding="utf-8") as f:
            return json.load(f)

    return _read
