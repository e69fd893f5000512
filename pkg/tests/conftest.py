import numpy as np
import pytest

from bosonci import ProblemSpec, make_double_well, make_harmonic, make_triple_well, solve

A_PAPER = 0.025


@pytest.fixture(scope="session")
def harmonic():
    return make_harmonic()


@pytest.fixture(scope="session")
def double_well():
    return make_double_well(A_PAPER)


@pytest.fixture(scope="session")
def triple_well():
    return make_triple_well(A_PAPER)


@pytest.fixture(scope="session")
def named_traps(harmonic, double_well, triple_well):
    return {"harmonic": harmonic, "double_well": double_well, "triple_well": triple_well}


@pytest.fixture(scope="session")
def harmonic_g1_K40(harmonic):
    return solve(ProblemSpec(harmonic, 1.0, 40), n_states=3)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def _reference_ground_energy(potential, g):
    """Oracle E_0 with no oscillator basis involved.

    g = 0: twice the extrapolated lowest 1D grid level. Harmonic g > 0:
    closed-form relative level plus the centre-of-mass 1/2. Otherwise the
    extrapolated 2D finite-difference energy.
    """
    from bosonci import Grid
    from bosonci.oracles import (grid_single_particle, grid_two_particle,
                                 harmonic_relative_energy, richardson)

    half = 8.0 if potential.name == "harmonic" else 14.0
    if g == 0:
        coarse, fine = Grid(half, 2001), Grid(half, 4001)
        e = [grid_single_particle(potential, gr, 1).energies[0] for gr in (coarse, fine)]
        return 2.0 * float(richardson(*e))
    if potential.name == "harmonic":
        return 0.5 + harmonic_relative_energy(g)
    e = [grid_two_particle(potential, g, Grid(12.0, m)).energies[0] for m in (201, 401)]
    return float(richardson(*e))


_REFERENCE_CACHE = {}


@pytest.fixture(scope="session")
def reference_energy():
    def lookup(potential, g):
        key = (potential.coefficients, float(g))
        if key not in _REFERENCE_CACHE:
            _REFERENCE_CACHE[key] = _reference_ground_energy(potential, g)
        return _REFERENCE_CACHE[key]
    return lookup


_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_report():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
