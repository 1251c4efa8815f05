import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg

from lattice.config import CONST_WINDOW, GAUSS, LatticeConfig, Profile
from lattice.hamiltonian import (LatticeHamiltonian, annihilation, build_hamiltonian, embed, is_hermitian,
                                 lattice_symbol, site_operators)
from symbols.symbol import ModeSpace, Symbol
from utils.errors import ValidationError


def constant_coupling(amp, t0=0.0, t1=1.0):
    return Profile(CONST_WINDOW, amp, start=t0, end=t1)


class TestSiteOperators:
    def test_ladder(self):
        a = annihilation(4)
        assert a[0, 1] == 1.0
        assert a[2, 3] == pytest.approx(math.sqrt(3))

    def test_canonical_commutator_below_the_cutoff(self):
        ops = site_operators(10, 1.0, 4)
        commutator = ops["phi"] @ ops["p"] - ops["p"] @ ops["phi"]
        np.testing.assert_allclose(commutator[:9, :9], 1j * np.eye(9), atol=1e-12)

    def test_powers_are_exact_before_truncation(self):
        ops = site_operators(6, 1.0, 4)
        free = (ops["p2"] + ops["phi2"]) / 2
        np.testing.assert_allclose(free, np.diag(np.arange(6) + 0.5), atol=1e-12)
        assert ops["phik"][0, 0] == pytest.approx(0.75)

    def test_embed_places_site_factor(self):
        op = np.diag([1.0, 2.0])
        embedded = embed(op, 1, 2, 2)
        np.testing.assert_allclose(np.diag(embedded), [1.0, 2.0, 1.0, 2.0])


class TestLatticeHamiltonian:
    def test_single_site_spectrum_scales_with_hbar(self):
        cfg = LatticeConfig(sites=1, cutoff=8, hbar=2.0)
        energies = scipy.linalg.eigvalsh(LatticeHamiltonian(cfg).free)
        np.testing.assert_allclose(energies, 2.0 * (np.arange(8) + 0.5), atol=1e-10)

    def test_two_site_ground_energy(self):
        cfg = LatticeConfig(sites=2, cutoff=20)
        ground = scipy.linalg.eigvalsh(LatticeHamiltonian(cfg).free, subset_by_index=[0, 0])[0]
        assert ground == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-6)

    def test_three_site_ground_energy(self):
        cfg = LatticeConfig(sites=3, cutoff=10, dx=1.0, mass=1.0)
        ground = scipy.linalg.eigvalsh(LatticeHamiltonian(cfg).free, subset_by_index=[0, 0])[0]
        frequencies = [math.sqrt(1 + 2 * (1 - math.cos(2 * math.pi * q / 3))) for q in range(3)]
        assert ground == pytest.approx(sum(frequencies) / 2, abs=1e-4)

    def test_anharmonic_first_order_shift(self):
        g = 1e-3
        cfg = LatticeConfig(sites=1, cutoff=40, k=4, g=constant_coupling(g))
        lattice = LatticeHamiltonian(cfg)
        free = scipy.linalg.eigvalsh(lattice.free, subset_by_index=[0, 0])[0]
        coupled = scipy.linalg.eigvalsh(lattice.total(0.5), subset_by_index=[0, 0])[0]
        assert abs((coupled - free) / g - 1 / 32) <= 1e-4

    @pytest.mark.parametrize("j", [0.5, -0.3])
    def test_constant_source_shifts_the_ground_energy(self, j):
        cfg = LatticeConfig(sites=1, cutoff=30, j=constant_coupling(j))
        free, _, total = build_hamiltonian(cfg, 0.5)
        shift = (scipy.linalg.eigvalsh(total.data, subset_by_index=[0, 0])[0]
                 - scipy.linalg.eigvalsh(free.data, subset_by_index=[0, 0])[0])
        assert shift == pytest.approx(-j * j / 2, abs=1e-9)

    def test_site_weights_select_sites(self):
        cfg = LatticeConfig(sites=2, cutoff=4, j=Profile(CONST_WINDOW, 1.0, start=0.0, end=1.0,
                                                            site_weights=(0.0, 2.0)))
        lattice = LatticeHamiltonian(cfg)
        np.testing.assert_allclose(lattice.interaction(0.5), 2.0 * lattice.phi[1], atol=1e-14)

    def test_build_hamiltonian(self):
        cfg = LatticeConfig(sites=2, cutoff=5, g=Profile(GAUSS, 0.1, width=1.0), t0=-2.0, t1=2.0)
        free, interaction, total = build_hamiltonian(cfg, 0.3)
        assert free.is_hermitian() and interaction.is_hermitian()
        np.testing.assert_allclose(total.data, free.data + interaction.data)
        assert is_hermitian(total.data)

    def test_time_outside_window(self):
        cfg = LatticeConfig(t0=0.0, t1=1.0)
        with pytest.raises(ValidationError):
            build_hamiltonian(cfg, 2.0)


class TestLatticeSymbol:
    def test_single_site(self):
        cfg = LatticeConfig(sites=1, k=4, g=constant_coupling(0.5))
        space = ModeSpace(1)
        expected = (Symbol.pi(space, 1, 2).scale(Fraction(1, 2))
                    + Symbol.phi(space, 1, 2).scale(Fraction(1, 2))
                    + Symbol.phi(space, 1, 4).scale(Fraction(1, 48)))
        assert lattice_symbol(cfg, 0.5) == expected

    def test_ring_gradient(self):
        cfg = LatticeConfig(sites=3, mass=0.0)
        space = ModeSpace(3)
        symbol = lattice_symbol(cfg, 0.0)
        assert symbol.partial("phi", 1).partial("phi", 2) == Symbol.constant(space, -1)
        assert symbol.partial("phi", 1).partial("phi", 1) == Symbol.constant(space, 2)

    def test_time_outside_window(self):
        with pytest.raises(ValidationError):
            lattice_symbol(LatticeConfig(t0=0.0, t1=1.0), -1.0)
