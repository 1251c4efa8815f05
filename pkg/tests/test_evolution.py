"""
Schrodinger evolution tests.

Validates:
- Agreement with the exact propagator for time-independent Hamiltonians
- Fourth-order convergence of the fixed-step integrator
- Interaction-picture bookkeeping, unitarity and failure reporting
- Ground and coherent states, and Ehrenfest agreement with the classical flow
"""

import math

import numpy as np
import pytest
import scipy.linalg

from lattice.config import CONST_WINDOW, GAUSS, LatticeConfig, Profile
from lattice.evolution import (INTERACTION, FreeBasis, coherent_state, evolve, expectation, field_expectations,
                               free_ground_state, low_lying_indices, unitarity_defect)
from lattice.flow import LEAPFROG, PhasePoint, classical_flow
from lattice.hamiltonian import LatticeHamiltonian, lattice_symbol
from lattice.matrices import OperatorMatrix, WaveState
from utils.errors import NumericFailure, ValidationError


def quartic_window(amp, t0=0.0, t1=1.0, **kwargs):
    return LatticeConfig(sites=1, cutoff=kwargs.pop("cutoff", 8), k=4, t0=t0, t1=t1,
                         g=Profile(CONST_WINDOW, amp, start=t0, end=t1), **kwargs)


class TestEvolve:
    def test_free_evolution_matches_the_exponential(self):
        cfg = LatticeConfig(sites=1, cutoff=8, t0=0.0, t1=1.0, dt=1e-3)
        lattice = LatticeHamiltonian(cfg)
        u = evolve(cfg, lattice=lattice)
        exact = scipy.linalg.expm(-1j * lattice.free * 1.0)
        assert u.distance(exact) < 1e-8
        assert u.meta["unitarity_defect"] < 1e-10

    def test_constant_coupling_matches_the_exponential(self):
        cfg = quartic_window(0.1, dt=1e-3)
        lattice = LatticeHamiltonian(cfg)
        u = evolve(cfg, lattice=lattice)
        assert u.distance(scipy.linalg.expm(-1j * lattice.total(0.5))) < 1e-8

    def test_fourth_order_convergence(self):
        results = [evolve(quartic_window(0.1, dt=dt)) for dt in (0.05, 0.025, 0.0125)]
        coarse = results[0].distance(results[1])
        fine = results[1].distance(results[2])
        assert 12 < coarse / fine < 20

    def test_state_evolution(self):
        cfg = LatticeConfig(sites=1, cutoff=6, t0=0.0, t1=2.0, dt=1e-3)
        ground = free_ground_state(cfg)
        evolved = evolve(cfg, initial=ground)
        assert isinstance(evolved, WaveState)
        phase = np.exp(-1j * 0.5 * 2.0)
        np.testing.assert_allclose(evolved.data, phase * ground.data, atol=1e-9)
        assert evolved.meta["norm"] == pytest.approx(1.0, abs=1e-9)

    def test_initial_operator(self):
        cfg = LatticeConfig(sites=1, cutoff=4, t0=0.0, t1=0.5, dt=1e-3)
        start = OperatorMatrix(np.diag([1.0, 1j, -1.0, -1j]))
        u = evolve(cfg)
        assert evolve(cfg, initial=start).distance(u.data @ start.data) < 1e-10

    def test_interaction_picture_without_coupling_is_identity(self):
        cfg = LatticeConfig(sites=2, cutoff=4, t0=0.0, t1=1.0, dt=1e-2)
        u = evolve(cfg, picture=INTERACTION)
        assert u.distance(np.eye(16)) < 1e-12

    def test_pictures_agree(self):
        cfg = LatticeConfig(sites=1, cutoff=6, t0=-4.0, t1=4.0, dt=2e-3, g=Profile(GAUSS, 0.05, width=1.0))
        lattice = LatticeHamiltonian(cfg)
        basis = FreeBasis(lattice)
        schrodinger = evolve(cfg, lattice=lattice)
        interaction = evolve(cfg, picture=INTERACTION, lattice=lattice)
        expected = basis.propagator(cfg.t1 - cfg.t0) @ interaction.data
        assert schrodinger.distance(expected) < 1e-6

    def test_unitarity_on_low_lying_block(self):
        cfg = LatticeConfig(sites=2, cutoff=5, t0=-6.0, t1=6.0, dt=2e-3, g=Profile(GAUSS, 0.01, width=1.0))
        u = evolve(cfg)
        assert u.meta["unitarity_defect"] <= 1e-6
        assert unitarity_defect(u, cfg) == u.meta["unitarity_defect"]
        assert len(low_lying_indices(cfg)) == 9

    def test_rejects_bad_arguments(self):
        cfg = LatticeConfig(sites=1, cutoff=4)
        with pytest.raises(ValidationError):
            evolve(cfg, picture="heisenberg")
        with pytest.raises(ValidationError):
            evolve(cfg, initial=WaveState(np.ones(3) / math.sqrt(3)))
        with pytest.raises(ValidationError):
            evolve(cfg, initial=np.eye(4))

    def test_unstable_step_is_reported(self):
        cfg = LatticeConfig(sites=1, cutoff=12, t0=0.0, t1=10.0, dt=1.0)
        with pytest.raises(NumericFailure) as info:
            evolve(cfg)
        assert info.value.diagnostics["step"] == 1
        assert info.value.exit_code == 4


class TestStates:
    def test_free_ground_state(self):
        cfg = LatticeConfig(sites=1, cutoff=8)
        ground = free_ground_state(cfg)
        assert ground.meta["energy"] == pytest.approx(0.5)
        assert ground.data[0] == pytest.approx(1.0)
        assert ground.meta["residual"] < 1e-8

    def test_two_site_ground_state(self):
        cfg = LatticeConfig(sites=2, cutoff=20)
        ground = free_ground_state(cfg)
        assert ground.meta["energy"] == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-6)
        assert np.linalg.norm(ground.data) == pytest.approx(1.0)

    def test_coherent_state_expectations(self):
        cfg = LatticeConfig(sites=2, cutoff=30)
        state = coherent_state(cfg, PhasePoint((1.0, -0.5), (0.0, 0.25)))
        point = field_expectations(cfg, state)
        np.testing.assert_allclose(point.phi, (1.0, -0.5), atol=1e-8)
        np.testing.assert_allclose(point.pi, (0.0, 0.25), atol=1e-8)

    def test_coherent_state_checks_sites(self):
        with pytest.raises(ValidationError):
            coherent_state(LatticeConfig(sites=2, cutoff=4), PhasePoint((1.0,), (0.0,)))

    def test_ehrenfest_for_quadratic_hamiltonian(self):
        cfg = LatticeConfig(sites=1, cutoff=30, t0=0.0, t1=1.0, dt=1e-3)
        lattice = LatticeHamiltonian(cfg)
        start = PhasePoint((1.0,), (0.0,))
        evolved = evolve(cfg, initial=coherent_state(cfg, start), lattice=lattice)
        quantum = field_expectations(cfg, evolved, lattice)
        classical = classical_flow(lattice_symbol(cfg, 0.0), start, 1.0, 1e-3, LEAPFROG).final
        np.testing.assert_allclose(quantum.phi, classical.phi, atol=1e-5)
        np.testing.assert_allclose(quantum.pi, classical.pi, atol=1e-5)
        np.testing.assert_allclose(quantum.phi, (math.cos(1.0),), atol=1e-6)

    def test_energy_expectation_is_conserved(self):
        cfg = LatticeConfig(sites=1, cutoff=20, t0=0.0, t1=1.0, dt=1e-3)
        lattice = LatticeHamiltonian(cfg)
        state = coherent_state(cfg, PhasePoint((0.5,), (0.5,)))
        before = expectation(state, lattice.free).real
        after = expectation(evolve(cfg, initial=state, lattice=lattice), lattice.free).real
        assert after == pytest.approx(before, abs=1e-9)
