"""
Interaction-picture Dyson terms and the finite-window S-matrix.

The terms U^(0..p) solve the graded system

    dU^(n)/dt = (-i/hbar) H_I(t) U^(n-1)(t),    U^(0) = I,

integrated with the same RK4 stepping as the full evolution, so the sum of the
terms is the order-p truncation (in the coupling amplitude) of the stepped
interaction-picture propagator. Series residuals are measured on the core block,
where every site occupation is below ceil(M/3).
"""

import math

import numpy as np

from lattice.evolution import (INTERACTION, FreeBasis, free_ground_state, evolve, low_lying_distance,
                               rk4_step)
from lattice.hamiltonian import LatticeHamiltonian
from lattice.matrices import OperatorMatrix
from utils.errors import NumericFailure, ValidationError
from utils.logger import logger

SERIES_BLOCK_DIVISOR = 3


def _check_order(cfg, order):
    if isinstance(order, bool) or not isinstance(order, int) or order < 0:
        raise ValidationError(f"Dyson order must be a nonnegative integer, got {order!r}")
    if order > cfg.max_order:
        raise ValidationError(f"Dyson order {order} exceeds the configured cap {cfg.max_order}")


def _graded_terms(cfg, order, basis):
    """Dyson terms in the free eigenbasis, shape (order+1, d, d)"""
    d = cfg.dimension
    stack = np.zeros((order + 1, d, d), dtype=complex)
    stack[0] = np.eye(d)
    if order == 0:
        return stack
    factor = -1j / cfg.hbar

    def rhs(t, y):
        generator = factor * basis.interaction_generator(t)
        derivative = np.zeros_like(y)
        derivative[1:] = generator @ y[:-1]
        return derivative

    h = cfg.step
    for index in range(cfg.steps):
        stack = rk4_step(rhs, cfg.t0 + index * h, stack, h)
        if not np.all(np.isfinite(stack)):
            raise NumericFailure("Dyson integration produced non-finite entries",
                                 {"step": index + 1, "t": cfg.t0 + (index + 1) * h, "order": order})
    return stack


def dyson(cfg, order, lattice=None):
    """[U^(0), ..., U^(order)] in the interaction picture, in the oscillator basis"""
    _check_order(cfg, order)
    lattice = lattice or LatticeHamiltonian(cfg)
    basis = FreeBasis(lattice)
    config_hash = cfg.config_hash()
    logger.log_run_start(f"dyson-{order}", config_hash, cfg.dimension)
    stack = _graded_terms(cfg, order, basis)
    terms = [OperatorMatrix(basis.from_eigen(term), meta={"order": n, "config_hash": config_hash})
             for n, term in enumerate(stack)]
    logger.log_run_end(f"dyson-{order}", config_hash, cfg.steps if order else 0, None)
    return terms


def dyson_sum(terms):
    total = np.zeros_like(terms[0].data)
    for term in terms:
        total = total + term.data
    return OperatorMatrix(total)


def conjugate_to_window(matrix, cfg, basis):
    """exp(i H0 t0/hbar) X exp(-i H0 t0/hbar)"""
    data = matrix.data if isinstance(matrix, OperatorMatrix) else matrix
    forward = basis.propagator(cfg.t0)
    return forward.conj().T @ data @ forward


def s_matrix(cfg, order, lattice=None):
    """
    Order-p S-series S = exp(i H0 t1/hbar) U(t1, t0) exp(-i H0 t0/hbar)
    = exp(i H0 t0/hbar) (sum of Dyson terms) exp(-i H0 t0/hbar).
    """
    _check_order(cfg, order)
    if not cfg.endpoints_negligible():
        raise ValidationError(
            f"Couplings do not vanish at the window ends t0={cfg.t0}, t1={cfg.t1}; "
            f"widen the window or narrow the profiles")
    lattice = lattice or LatticeHamiltonian(cfg)
    basis = FreeBasis(lattice)
    terms = dyson(cfg, order, lattice)
    series = conjugate_to_window(dyson_sum(terms), cfg, basis)
    gram = series.conj().T @ series
    defect = float(np.linalg.norm(gram - np.eye(cfg.dimension), 2))
    logger.log_residual(f"S-series unitarity (order {order})", defect)
    return OperatorMatrix(series, meta={"order": order, "config_hash": cfg.config_hash(),
                                        "unitarity_defect": defect})


def exact_s_matrix(cfg, lattice=None):
    """S from the full interaction-picture evolution"""
    if not cfg.endpoints_negligible():
        raise ValidationError("Couplings do not vanish at the window ends")
    lattice = lattice or LatticeHamiltonian(cfg)
    basis = FreeBasis(lattice)
    exact = evolve(cfg, picture=INTERACTION, lattice=lattice)
    return OperatorMatrix(conjugate_to_window(exact, cfg, basis), meta=dict(exact.meta))


def vacuum_persistence(cfg, order, lattice=None):
    """<0|S|0> for the free ground state"""
    lattice = lattice or LatticeHamiltonian(cfg)
    vacuum = free_ground_state(cfg, lattice)
    s = s_matrix(cfg, order, lattice)
    return complex(np.vdot(vacuum.data, s.data @ vacuum.data))


def series_distance(a, b, cfg):
    """Spectral norm of A - B on the core block"""
    return low_lying_distance(a, b, cfg, SERIES_BLOCK_DIVISOR)


def series_residual(cfg, order, lattice=None):
    """Core-block distance between the order-p Dyson sum and the full interaction-picture operator"""
    lattice = lattice or LatticeHamiltonian(cfg)
    terms = dyson(cfg, order, lattice)
    exact = evolve(cfg, picture=INTERACTION, lattice=lattice)
    return series_distance(dyson_sum(terms), exact, cfg)


def residual_scaling(cfg, order, factor=0.5):
    """
    Remainder exponent of the truncated series: residuals at the configured
    amplitude and at amplitude*factor, and log(ratio)/log(1/factor), which
    approaches order+1.
    """
    if not 0 < factor < 1:
        raise ValidationError(f"Amplitude factor must lie in (0, 1), got {factor}")
    if not cfg.has_interaction():
        raise ValidationError("Residual scaling needs a nonzero interaction")
    residual = series_residual(cfg, order)
    scaled = series_residual(cfg.with_amplitude(factor), order)
    if residual == 0 or scaled == 0:
        raise NumericFailure("Residual vanished; scaling exponent undefined",
                             {"residual": residual, "scaled": scaled})
    exponent = math.log(residual / scaled) / math.log(1 / factor)
    logger.log_residual(f"Dyson remainder exponent (order {order})", exponent)
    return {"order": order, "factor": factor, "residual": residual, "scaled_residual": scaled,
            "ratio": residual / scaled, "exponent": exponent}
