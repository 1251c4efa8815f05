"""
Fixed-step fourth-order integration of i hbar dU/dt = H(t) U.

Two pictures are supported. In the Schrodinger picture the full H(t) drives
the evolution. In the interaction picture the generator is

    H_I(t) = exp(i H0 (t - t0)/hbar) V(t) exp(-i H0 (t - t0)/hbar)

and the integration runs in the eigenbasis of the free matrix H0, where the
conjugation is an entrywise phase.
"""

import math

import numpy as np
import scipy.linalg

from lattice.flow import PhasePoint
from lattice.hamiltonian import LatticeHamiltonian
from lattice.matrices import OperatorMatrix, WaveState
from utils.errors import NumericFailure, ValidationError
from utils.logger import logger

SCHRODINGER = "schrodinger"
INTERACTION = "interaction"
PICTURES = (SCHRODINGER, INTERACTION)

UNITARITY_TOLERANCE = 1e-6
GROWTH_TOLERANCE = 1e-3
RESIDUAL_TOLERANCE = 1e-8


def rk4_step(rhs, t, y, h):
    k1 = rhs(t, y)
    k2 = rhs(t + h / 2, y + (h / 2) * k1)
    k3 = rhs(t + h / 2, y + (h / 2) * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)


class FreeBasis:
    """Eigen-decomposition of the free matrix, used for interaction-picture work"""

    def __init__(self, lattice):
        self.lattice = lattice
        self.hbar = lattice.cfg.hbar
        try:
            self.energies, self.vectors = scipy.linalg.eigh(lattice.free)
        except np.linalg.LinAlgError as e:
            raise NumericFailure("Free Hamiltonian eigensolver failed", {"error": str(e)})
        self.gaps = self.energies[:, None] - self.energies[None, :]
        self.couplings = [(self.to_eigen(op), amplitude) for op, amplitude in lattice.coupling_terms()]

    def to_eigen(self, matrix):
        return self.vectors.conj().T @ matrix @ self.vectors

    def from_eigen(self, matrix):
        return self.vectors @ matrix @ self.vectors.conj().T

    def propagator(self, tau):
        """exp(-i H0 tau / hbar)"""
        phases = np.exp(-1j * self.energies * tau / self.hbar)
        return (self.vectors * phases) @ self.vectors.conj().T

    def interaction_generator(self, t):
        """H_I(t) in the free eigenbasis"""
        cfg = self.lattice.cfg
        potential = np.zeros_like(self.gaps, dtype=complex)
        for op, amplitude in self.couplings:
            value = amplitude(t)
            if value:
                potential += value * op
        return potential * np.exp(1j * self.gaps * (t - cfg.t0) / self.hbar)


def low_lying_indices(cfg, divisor=2):
    """Basis indices whose every site occupation is below ceil(M/divisor)"""
    bound = math.ceil(cfg.cutoff / divisor)
    occupations = np.indices((cfg.cutoff,) * cfg.sites).reshape(cfg.sites, -1)
    return np.flatnonzero(np.all(occupations < bound, axis=0))


def unitarity_defect(matrix, cfg):
    """Spectral norm of U^dagger U - I on the low-lying subspace"""
    data = matrix.data if isinstance(matrix, OperatorMatrix) else np.asarray(matrix)
    columns = data[:, low_lying_indices(cfg)]
    gram = columns.conj().T @ columns
    return float(np.linalg.norm(gram - np.eye(gram.shape[0]), 2))


def low_lying_distance(a, b, cfg, divisor=2):
    """Spectral norm of A - B restricted to the low-lying block"""
    index = low_lying_indices(cfg, divisor)
    a = a.data if isinstance(a, OperatorMatrix) else a
    b = b.data if isinstance(b, OperatorMatrix) else b
    return float(np.linalg.norm((a - b)[np.ix_(index, index)], 2))


def _integrate(rhs, y0, cfg, label):
    """March y over [t0, t1] with RK4, failing on norm growth beyond tolerance"""
    steps, h = cfg.steps, cfg.step
    reference = np.linalg.norm(y0)
    y = y0
    t = cfg.t0
    for index in range(steps):
        y = rk4_step(rhs, t, y, h)
        t = cfg.t0 + (index + 1) * h
        size = np.linalg.norm(y)
        if not np.isfinite(size) or size / reference - 1 > GROWTH_TOLERANCE:
            raise NumericFailure(
                f"{label} integration became unstable",
                {"step": index + 1, "t": t, "dt": h, "growth": float(size / reference - 1)},
            )
    return y


def evolve(cfg, initial=None, picture=SCHRODINGER, lattice=None):
    """
    Evolution over [t0, t1].

    With initial=None the evolution operator U(t1, t0) is returned as an
    OperatorMatrix; with a WaveState (or an OperatorMatrix U0) the evolved
    state (or U(t1, t0) U0) is returned. In the interaction picture the
    result is the interaction-picture operator or state.
    """
    if picture not in PICTURES:
        raise ValidationError(f"Unknown picture {picture!r}; expected one of {PICTURES}")
    lattice = lattice or LatticeHamiltonian(cfg)
    config_hash = cfg.config_hash()
    logger.log_run_start(f"evolve-{picture}", config_hash, cfg.dimension)

    if initial is None:
        y0 = np.eye(cfg.dimension, dtype=complex)
    elif isinstance(initial, (WaveState, OperatorMatrix)):
        y0 = initial.data.copy()
    else:
        raise ValidationError(f"Initial value must be a WaveState or OperatorMatrix, got {type(initial).__name__}")
    if y0.shape[0] != cfg.dimension:
        raise ValidationError(f"Initial value has dimension {y0.shape[0]}, expected {cfg.dimension}")

    factor = -1j / cfg.hbar
    if picture == SCHRODINGER:
        y = _integrate(lambda t, y: factor * (lattice.total(t) @ y), y0, cfg, "Schrodinger-picture")
    else:
        basis = FreeBasis(lattice)
        rotated = basis.vectors.conj().T @ y0
        if y0.ndim == 2:
            rotated = rotated @ basis.vectors
        y = _integrate(lambda t, y: factor * (basis.interaction_generator(t) @ y), rotated, cfg,
                       "Interaction-picture")
        y = basis.vectors @ y
        if y0.ndim == 2:
            y = y @ basis.vectors.conj().T

    meta = {"picture": picture, "steps": cfg.steps, "dt": cfg.step, "config_hash": config_hash}
    if y.ndim == 1:
        meta["norm"] = float(np.linalg.norm(y))
        logger.log_run_end(f"evolve-{picture}", config_hash, cfg.steps, abs(meta["norm"] - 1))
        return WaveState(y, meta=meta)

    defect = unitarity_defect(y, cfg) if initial is None else None
    meta["unitarity_defect"] = defect
    if defect is not None and defect > UNITARITY_TOLERANCE:
        logger.warning(f"Unitarity defect {defect:.3e} exceeds {UNITARITY_TOLERANCE:.0e} "
                       f"on the low-lying subspace; reduce dt or raise the cutoff")
    logger.log_run_end(f"evolve-{picture}", config_hash, cfg.steps, defect)
    return OperatorMatrix(y, meta=meta)


def free_ground_state(cfg, lattice=None):
    """Lowest eigenvector of the free matrix, phase fixed so its largest component is positive"""
    lattice = lattice or LatticeHamiltonian(cfg)
    try:
        energies, vectors = scipy.linalg.eigh(lattice.free, subset_by_index=[0, 0])
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericFailure("Free Hamiltonian eigensolver did not converge", {"error": str(e)})
    energy = float(energies[0])
    psi = vectors[:, 0].astype(complex)
    largest = psi[np.argmax(np.abs(psi))]
    psi = psi * (abs(largest) / largest)
    psi = psi / np.linalg.norm(psi)
    residual = float(np.linalg.norm(lattice.free @ psi - energy * psi))
    logger.log_residual("free ground state", residual)
    if residual > RESIDUAL_TOLERANCE:
        raise NumericFailure("Ground state residual too large", {"residual": residual, "energy": energy})
    return WaveState(psi, normalized=True, meta={"energy": energy, "residual": residual})


def coherent_state(cfg, point):
    """Product of truncated coherent states centred at the phase-space point (phi_i, p_i)"""
    if len(point.phi) != cfg.sites:
        raise ValidationError(f"Phase point has {len(point.phi)} sites, configuration has {cfg.sites}")
    levels = np.arange(cfg.cutoff)
    log_factorials = np.array([math.lgamma(n + 1) for n in levels])
    state = np.ones(1, dtype=complex)
    for phi, momentum in zip(point.phi, point.pi):
        alpha = (phi + 1j * momentum) / math.sqrt(2 * cfg.hbar)
        if alpha == 0:
            site = np.zeros(cfg.cutoff, dtype=complex)
            site[0] = 1.0
        else:
            site = np.exp(levels * np.log(alpha) - log_factorials / 2 - abs(alpha) ** 2 / 2)
        state = np.kron(state, site)
    return WaveState(state / np.linalg.norm(state), normalized=True)


def expectation(state, operator):
    """<psi|O|psi>"""
    op = operator.data if isinstance(operator, OperatorMatrix) else np.asarray(operator)
    return complex(np.vdot(state.data, op @ state.data))


def field_expectations(cfg, state, lattice=None):
    """(<phi_i>, <p_i>) per site as a PhasePoint"""
    lattice = lattice or LatticeHamiltonian(cfg)
    phi = tuple(expectation(state, op).real for op in lattice.phi)
    momentum = tuple(expectation(state, op).real for op in lattice.momentum)
    return PhasePoint(phi, momentum)
