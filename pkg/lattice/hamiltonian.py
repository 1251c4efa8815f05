"""
Truncated lattice Hamiltonian

    H(t) = sum_i [ p_i^2/(2dx) + (dx/2)(m^2 phi_i^2 + ((phi_{i+1} - phi_i)/dx)^2) ]
         + sum_i dx [ g_i(t) phi_i^k/k! + j_i(t) phi_i ]

on a periodic chain, in the per-site oscillator eigenbasis with unit reference
frequency: phi = sqrt(hbar/2)(a + a^dagger), p = i sqrt(hbar/2)(a^dagger - a).
Powers of site operators are formed before truncation so every retained matrix
element is exact.
"""

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from lattice.matrices import OperatorMatrix
from symbols.scalar import HPoly
from symbols.symbol import ModeSpace, Symbol
from utils.errors import ValidationError


def annihilation(levels):
    """Ladder matrix with a|n> = sqrt(n)|n-1>"""
    return np.diag(np.sqrt(np.arange(1, levels, dtype=float)), k=1)


def _hermitize(matrix):
    return (matrix + matrix.conj().T) / 2


@lru_cache(maxsize=32)
def site_operators(levels, hbar, k):
    """phi, p, phi^2, p^2 and phi^k on one site, truncated to `levels` after exact products"""
    extended = levels + k + 2
    a = annihilation(extended)
    scale = math.sqrt(hbar / 2)
    phi = scale * (a + a.T).astype(complex)
    p = 1j * scale * (a.T - a)
    cut = slice(0, levels)
    return {
        "phi": _hermitize(phi[cut, cut]),
        "p": _hermitize(p[cut, cut]),
        "phi2": _hermitize((phi @ phi)[cut, cut]),
        "p2": _hermitize((p @ p)[cut, cut]),
        "phik": _hermitize(np.linalg.matrix_power(phi, k)[cut, cut]),
    }


def embed(op, site, sites, levels):
    """I x .. x op x .. x I with op at 0-based `site`; site 0 is the most significant factor"""
    result = np.ones((1, 1), dtype=complex)
    identity = np.eye(levels, dtype=complex)
    for index in range(sites):
        result = np.kron(result, op if index == site else identity)
    return result


class LatticeHamiltonian:
    """Embedded site operators of one configuration, reused across times"""

    def __init__(self, cfg):
        self.cfg = cfg
        ops = site_operators(cfg.cutoff, cfg.hbar, cfg.k)
        n, m = cfg.sites, cfg.cutoff
        self.phi = [embed(ops["phi"], i, n, m) for i in range(n)]
        self.momentum = [embed(ops["p"], i, n, m) for i in range(n)]
        self.phik = [embed(ops["phik"], i, n, m) for i in range(n)]
        phi2 = [embed(ops["phi2"], i, n, m) for i in range(n)]
        p2 = [embed(ops["p2"], i, n, m) for i in range(n)]

        dx, mass = cfg.dx, cfg.mass
        free = np.zeros((cfg.dimension, cfg.dimension), dtype=complex)
        for i in range(n):
            free += p2[i] / (2 * dx) + (dx / 2) * mass ** 2 * phi2[i]
        if n > 1:
            for i in range(n):
                right = (i + 1) % n
                free += (phi2[right] + phi2[i] - 2 * (self.phi[right] @ self.phi[i])) / (2 * dx)
        self.free = _hermitize(free)
        self._k_factorial = math.factorial(cfg.k)
        self._terms = None

    def check_time(self, t):
        if not self.cfg.t0 <= t <= self.cfg.t1:
            raise ValidationError(f"Time {t} lies outside the window [{self.cfg.t0}, {self.cfg.t1}]")

    def interaction(self, t):
        result = np.zeros_like(self.free)
        for op, amplitude in self.coupling_terms():
            value = amplitude(t)
            if value:
                result += value * op
        return result

    def total(self, t):
        return self.free + self.interaction(t)

    def coupling_terms(self):
        """(operator, coefficient function of t) pairs whose sum is the interaction"""
        if self._terms is not None:
            return self._terms
        cfg = self.cfg
        terms = []
        for i in range(cfg.sites):
            weight_g = 1.0 if cfg.g.site_weights is None else cfg.g.site_weights[i]
            weight_j = 1.0 if cfg.j.site_weights is None else cfg.j.site_weights[i]
            if not cfg.g.is_zero() and weight_g:
                terms.append((cfg.dx * weight_g / self._k_factorial * self.phik[i], cfg.g.value))
            if not cfg.j.is_zero() and weight_j:
                terms.append((cfg.dx * weight_j * self.phi[i], cfg.j.value))
        self._terms = terms
        return terms


def build_hamiltonian(cfg, t):
    """(free, interaction, total) Hermitian matrices at time t"""
    lattice = LatticeHamiltonian(cfg)
    lattice.check_time(t)
    interaction = lattice.interaction(t)
    return (OperatorMatrix(lattice.free, hermitian=True),
            OperatorMatrix(interaction, hermitian=True),
            OperatorMatrix(lattice.free + interaction, hermitian=True))


def is_hermitian(matrix):
    return OperatorMatrix(matrix).is_hermitian()


def _exact(value):
    return Fraction(repr(float(value)))


def lattice_symbol(cfg, t):
    """Classical Symbol of H(t): phi_i and pi_i stand for the site field and its momentum p_i"""
    if not cfg.t0 <= t <= cfg.t1:
        raise ValidationError(f"Time {t} lies outside the window [{cfg.t0}, {cfg.t1}]")
    space = ModeSpace(cfg.sites)
    dx = _exact(cfg.dx)
    mass = _exact(cfg.mass)
    result = Symbol.zero(space)
    for mode in range(1, cfg.sites + 1):
        result = result + Symbol.pi(space, mode, 2).scale(Fraction(1, 2) / dx)
        result = result + Symbol.phi(space, mode, 2).scale(dx * mass ** 2 / 2)
    if cfg.sites > 1:
        for mode in range(1, cfg.sites + 1):
            right = mode % cfg.sites + 1
            diff = Symbol.phi(space, right) - Symbol.phi(space, mode)
            result = result + (diff * diff).scale(Fraction(1, 2) / dx)
    g = cfg.g.site_values(t, cfg.sites)
    j = cfg.j.site_values(t, cfg.sites)
    for mode in range(1, cfg.sites + 1):
        if g[mode - 1]:
            coeff = dx * _exact(g[mode - 1]) / math.factorial(cfg.k)
            result = result + Symbol.phi(space, mode, cfg.k).scale(HPoly.coerce(coeff))
        if j[mode - 1]:
            result = result + Symbol.phi(space, mode).scale(HPoly.coerce(dx * _exact(j[mode - 1])))
    return result
