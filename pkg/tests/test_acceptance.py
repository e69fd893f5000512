"""Acceptance gate: each test checks one criterion at its stated tolerance.

Every criterion reports a single PASS/FAIL line (collected in the terminal
summary) listing the measured quantities, then asserts. Criteria that the
method cannot reach at the stated basis size are left failing on purpose.
"""
import time

import numpy as np
import pytest

from bosonci import Grid, ProblemSpec, cli, solve
from bosonci.hamiltonian import assemble
from bosonci.oracles import (GridWavefunction2D, grid_two_particle, harmonic_exact_ground,
                             kernel_occupancies, tg_ground)
from bosonci.orbitals import (a_matrix, default_grid, one_body_density, pair_density,
                              same_well_fraction, schmidt, wavefunction_on_grid)
from bosonci.solver import diagonalize
from bosonci.sweep import crossover_from_sweep


class Criterion:
    def __init__(self, number, title, report):
        self.number, self.title, self.report = number, title, report
        self.checks = []
        self.start = time.perf_counter()

    def check(self, label, ok, detail):
        self.checks.append((label, bool(ok), detail))

    def within(self, label, value, target, tol):
        err = abs(value - target)
        self.check(label, err <= tol, f"{value:.10g} vs {target:.10g} (|diff|={err:.2e}, tol {tol:g})")

    def runtime(self, limit):
        elapsed = time.perf_counter() - self.start
        self.check("runtime", elapsed < limit, f"{elapsed:.1f}s < {limit:g}s")

    def finish(self):
        ok = all(c[1] for c in self.checks)
        failed = [c for c in self.checks if not c[1]]
        shown = failed or self.checks
        detail = "; ".join(f"{label}: {d}" for label, _, d in shown)
        self.report.append(f"criterion {self.number} [{'PASS' if ok else 'FAIL'}] {self.title}"
                           f" :: {'failed ' if failed else ''}{detail}")
        assert ok, "\n".join(f"{'ok ' if c[1] else 'BAD'} {c[0]}: {c[2]}" for c in self.checks)


@pytest.fixture
def criterion(acceptance_report):
    made = []

    def make(number, title):
        made.append(Criterion(number, title, acceptance_report))
        return made[-1]
    return make


def test_criterion_1_noninteracting_harmonic(criterion, harmonic):
    c = criterion(1, "noninteracting harmonic limit")
    res = solve(ProblemSpec(harmonic, 0.0, 20))
    c.within("E_0", res.energies[0], 1.0, 1e-12)
    c.within("lambda_0", schmidt(res.state(0)).occupancies[0], 1.0, 1e-12)
    c.runtime(1.0)
    c.finish()


def test_criterion_2_exact_harmonic(criterion, harmonic):
    c = criterion(2, "CI K=40 vs exact harmonic oracle")
    matched = Grid(6.0, 201)
    for g in (0.5, 1.0, 5.0):
        rel = harmonic_exact_ground(g, matched).raw[0, 0]
        two = grid_two_particle(harmonic, g, matched).energies[0]
        c.within(f"oracles agree g={g}", two, rel, 1e-3)
    for g in (0.5, 1.0, 5.0):
        ref = harmonic_exact_ground(g).energies[0]
        c.within(f"CI E_0 g={g}", solve(ProblemSpec(harmonic, g, 40)).energies[0], ref, 1e-5)
    c.runtime(30.0)
    c.finish()


def test_criterion_3_tonks_girardeau(criterion, harmonic):
    c = criterion(3, "TG occupancies, harmonic trap")
    lam = kernel_occupancies(tg_ground(harmonic, Grid(8.0, 801)), 2).occupancies
    c.within("lambda_0", lam[0], 0.7745, 5e-4)
    c.within("lambda_1", lam[1], 0.1765, 5e-4)
    c.runtime(10.0)
    c.finish()


def test_criterion_4_monotone_approach(criterion, harmonic):
    c = criterion(4, "monotone approach to TG, harmonic K=40")
    gs = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0)
    lam = np.array([schmidt(solve(ProblemSpec(harmonic, g, 40)).state(0)).occupancies[:2]
                    for g in gs])
    c.check("lambda_0 strictly decreasing", np.all(np.diff(lam[:, 0]) < 0),
            " > ".join(f"{v:.5f}" for v in lam[:, 0]))
    c.check("lambda_1 strictly increasing", np.all(np.diff(lam[:, 1]) > 0),
            " < ".join(f"{v:.5f}" for v in lam[:, 1]))
    c.check("lambda_0(20) in (0.7745, 1)", 0.7745 < lam[-1, 0] < 1, f"{lam[-1, 0]:.6f}")
    c.check("lambda_1(20) in (0, 0.1765)", 0 < lam[-1, 1] < 0.1765, f"{lam[-1, 1]:.6f}")
    c.finish()


def test_criterion_5_double_well(criterion, double_well):
    c = criterion(5, "double-well fragmentation, K=60")
    free = solve(ProblemSpec(double_well, 0.0, 60))
    c.within("lambda_0 at g=0", schmidt(free.state(0)).occupancies[0], 1.0, 1e-6)
    weak = solve(ProblemSpec(double_well, 1e-6, 60))
    lam = schmidt(weak.state(0)).occupancies
    gap = abs(lam[0] - lam[1])
    c.check("|lambda_0 - lambda_1| at g=1e-6 < 0.05", gap < 0.05, f"{gap:.5f}")
    dens = pair_density(weak.state(0), default_grid(double_well, weak.omega, K=60))
    frac = same_well_fraction(dens)
    c.check("same-well mass < 10%", frac < 0.1, f"{frac:.5f}")
    c.runtime(120.0)
    c.finish()


def test_criterion_6_triple_well(criterion, triple_well):
    c = criterion(6, "triple-well crossover, K=60")

    def gap(g):
        lam = schmidt(solve(ProblemSpec(triple_well, g, 60)).state(0)).occupancies
        return lam[0] - lam[1], lam[:2]

    g1, _ = gap(1.0)
    c.check("lambda_0 - lambda_1 > 0.5 at g=1", g1 > 0.5, f"{g1:.5f}")
    g205, lam_ci = gap(2.05)
    c.check("|lambda_0 - lambda_1| < 0.1 at g=2.05", abs(g205) < 0.1, f"{g205:.5f}")
    cross = crossover_from_sweep(triple_well, [1.0, 1.5, 2.0, 2.5, 3.0], 60, threshold=0.05)
    c.check("g_cr in [1.9, 2.1]", 1.9 <= cross.g_cr <= 2.1, f"{cross.g_cr:.5f}")
    psi = grid_two_particle(triple_well, 2.05, Grid(12.0, 401)).states[0]
    lam_grid = kernel_occupancies(psi, 2).occupancies
    diff = float(np.max(np.abs(lam_grid - lam_ci)))
    c.check("grid oracle occupancies within 0.02", diff <= 0.02,
            f"grid {lam_grid[0]:.4f}/{lam_grid[1]:.4f} vs CI {lam_ci[0]:.4f}/{lam_ci[1]:.4f}")
    c.runtime(300.0)
    c.finish()


def test_criterion_7_optimized_omega(criterion, named_traps, reference_energy):
    c = criterion(7, "optimized omega non-inferior at K=20")
    for name, pot in named_traps.items():
        for g in (0.0, 1.0):
            problem = ProblemSpec(pot, g, 20)
            ref = reference_energy(pot, g)
            best = solve(problem).energies[0] - ref
            unit = diagonalize(problem, 1.0).energies[0] - ref
            c.check(f"{name} g={g:g}", abs(best) <= abs(unit) + 1e-12,
                    f"err(omega*)={best:.3e} vs err(1)={unit:.3e}")
    c.finish()


def test_criterion_8_schmidt_routes(criterion, harmonic_g1_K40):
    c = criterion(8, "A-matrix route vs kernel route")
    state = harmonic_g1_K40.state(0)
    grid = Grid(12.0, 801)
    kernel = kernel_occupancies(GridWavefunction2D(wavefunction_on_grid(state, grid), grid), 5)
    basis = schmidt(state).occupancies[:5]
    diff = float(np.max(np.abs(kernel.occupancies - basis)))
    c.check("top-5 occupancies within 1e-6", diff <= 1e-6, f"max |diff| = {diff:.2e}")
    c.finish()


def test_criterion_9_structural_invariants(criterion, named_traps, tmp_path):
    c = criterion(9, "structural invariant suite")
    worst = dict(lam=0.0, ortho=0.0, frob=0.0, asym=0.0, rho=0.0, pair=0.0)
    for pot in named_traps.values():
        for g in (0.0, 1.0, 5.0):
            problem = ProblemSpec(pot, g, 24)
            res = solve(problem, n_states=3)
            h = assemble(problem, res.omega)
            worst["asym"] = max(worst["asym"], float(np.max(np.abs(h - h.T))))
            for s in range(3):
                state = res.state(s)
                d = schmidt(state)
                amat = a_matrix(state.coefficients)
                worst["lam"] = max(worst["lam"], abs(np.sum(d.occupancies) - 1))
                worst["ortho"] = max(worst["ortho"],
                                     float(np.max(np.abs(d.orbitals.T @ d.orbitals - np.eye(24)))))
                worst["frob"] = max(worst["frob"], abs(np.sum(amat ** 2) - 1))
            grid = default_grid(pot, res.omega, K=24)
            d0 = schmidt(res.state(0))
            worst["rho"] = max(worst["rho"], abs(one_body_density(d0, grid).norm - 1))
            worst["pair"] = max(worst["pair"], abs(pair_density(res.state(0), grid).norm - 1))
    c.check("sum lambda = 1", worst["lam"] <= 1e-10, f"{worst['lam']:.1e}")
    c.check("orbitals orthonormal", worst["ortho"] <= 1e-10, f"{worst['ortho']:.1e}")
    c.check("sum A^2 = 1", worst["frob"] <= 1e-12, f"{worst['frob']:.1e}")
    c.check("H symmetric", worst["asym"] == 0.0, f"{worst['asym']:.1e}")
    c.check("one-body density normalized", worst["rho"] <= 1e-6, f"{worst['rho']:.1e}")
    c.check("pair density normalized", worst["pair"] <= 1e-6, f"{worst['pair']:.1e}")
    argv = ["sweep", "--potential", "double_well", "--a", "0.025", "--g-values", "0,1e-6,0.5",
            "--K", "12"]
    blobs = []
    for run in ("a", "b"):
        assert cli.main(argv + ["--out", str(tmp_path / run)]) == 0
        blobs.append((tmp_path / run / "sweep.csv").read_bytes())
    c.check("byte-identical rerun", blobs[0] == blobs[1], f"{len(blobs[0])} bytes")
    c.finish()
