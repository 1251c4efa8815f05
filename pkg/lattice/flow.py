"""
Classical Hamiltonian flow of a Symbol

    dphi/dt = dH/dpi,    dpi/dt = -dH/dphi

Separable Hamiltonians H = T(pi) + V(phi) use the kick-drift-kick leapfrog
(or the fourth-order Ruth composition); anything else falls back to RK4.
"""

import math
from dataclasses import dataclass

import numpy as np

from utils.errors import NumericFailure, ValidationError
from utils.logger import logger

AUTO = "auto"
LEAPFROG = "leapfrog"
RUTH4 = "ruth4"
RK4 = "rk4"
METHODS = (AUTO, LEAPFROG, RUTH4, RK4)

BLOW_UP = 1e12

_CBRT2 = 2 ** (1 / 3)
# Ruth coefficients: drift weights c, kick weights d
_RUTH_C = (1 / (2 * (2 - _CBRT2)), (1 - _CBRT2) / (2 * (2 - _CBRT2)),
           (1 - _CBRT2) / (2 * (2 - _CBRT2)), 1 / (2 * (2 - _CBRT2)))
_RUTH_D = (1 / (2 - _CBRT2), -_CBRT2 / (2 - _CBRT2), 1 / (2 - _CBRT2), 0.0)


@dataclass(frozen=True)
class PhasePoint:
    phi: tuple
    pi: tuple

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(float(x) for x in self.phi))
        object.__setattr__(self, "pi", tuple(float(x) for x in self.pi))
        if len(self.phi) != len(self.pi):
            raise ValidationError("Phase point needs as many momenta as fields")
        if not all(math.isfinite(x) for x in self.phi + self.pi):
            raise ValidationError("Phase point entries must be finite")

    @property
    def modes(self):
        return len(self.phi)

    def to_json(self):
        return {"phi": list(self.phi), "pi": list(self.pi)}


@dataclass
class Trajectory:
    times: np.ndarray
    phi: np.ndarray
    pi: np.ndarray
    energies: np.ndarray
    method: str

    @property
    def final(self):
        return PhasePoint(self.phi[-1], self.pi[-1])

    @property
    def energy_drift(self):
        return float(np.max(np.abs(self.energies - self.energies[0])))

    def to_json(self):
        return {
            "method": self.method,
            "final": self.final.to_json(),
            "energy_drift": self.energy_drift,
            "times": self.times.tolist(),
            "phi": self.phi.tolist(),
            "pi": self.pi.tolist(),
        }


class CompiledPolynomial:
    """Numeric evaluator of a Symbol at fixed h"""

    def __init__(self, symbol, h=0.0):
        n = symbol.space.modes
        terms = list(symbol.terms.items())
        self.coeffs = np.array([coeff.evaluate(h).real for _, coeff in terms], dtype=float)
        self.phi_powers = np.array([phi.dense(n) for (phi, _), _ in terms], dtype=float).reshape(len(terms), n)
        self.pi_powers = np.array([pi.dense(n) for (_, pi), _ in terms], dtype=float).reshape(len(terms), n)

    def __call__(self, phi, pi):
        if not len(self.coeffs):
            return 0.0
        monomials = np.prod(phi ** self.phi_powers, axis=1) * np.prod(pi ** self.pi_powers, axis=1)
        return float(self.coeffs @ monomials)


def is_separable(symbol):
    return all(not phi or not pi for phi, pi in symbol.terms)


class HamiltonianFlow:
    """Gradient evaluators of one Hamiltonian"""

    def __init__(self, symbol, h=0.0):
        if not symbol.is_real():
            raise ValidationError("Classical flow needs a Hamiltonian with real coefficients")
        modes = range(1, symbol.space.modes + 1)
        self.modes = symbol.space.modes
        self.energy = CompiledPolynomial(symbol, h)
        self.d_phi = [CompiledPolynomial(symbol.partial("phi", m), h) for m in modes]
        self.d_pi = [CompiledPolynomial(symbol.partial("pi", m), h) for m in modes]
        self.separable = is_separable(symbol)

    def velocity(self, phi, pi):
        return np.array([f(phi, pi) for f in self.d_pi])

    def force(self, phi, pi):
        return -np.array([f(phi, pi) for f in self.d_phi])

    def leapfrog(self, phi, pi, dt):
        pi = pi + (dt / 2) * self.force(phi, pi)
        phi = phi + dt * self.velocity(phi, pi)
        pi = pi + (dt / 2) * self.force(phi, pi)
        return phi, pi

    def ruth4(self, phi, pi, dt):
        for c, d in zip(_RUTH_C, _RUTH_D):
            phi = phi + c * dt * self.velocity(phi, pi)
            if d:
                pi = pi + d * dt * self.force(phi, pi)
        return phi, pi

    def rk4(self, phi, pi, dt):
        def rhs(state):
            x, p = state[:self.modes], state[self.modes:]
            return np.concatenate([self.velocity(x, p), self.force(x, p)])

        state = np.concatenate([phi, pi])
        k1 = rhs(state)
        k2 = rhs(state + (dt / 2) * k1)
        k3 = rhs(state + (dt / 2) * k2)
        k4 = rhs(state + dt * k3)
        state = state + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        return state[:self.modes], state[self.modes:]


def classical_flow(hamiltonian, x0, T, dt, method=AUTO, h=0.0):
    """Integrate the flow of `hamiltonian` from x0 for time T with step at most dt"""
    if not (math.isfinite(T) and math.isfinite(dt)):
        raise ValidationError(f"Flow time and step must be finite, got T={T}, dt={dt}")
    if dt <= 0:
        raise ValidationError(f"dt must be positive, got {dt}")
    if T < 0:
        raise ValidationError(f"Flow time must be nonnegative, got {T}")
    if method not in METHODS:
        raise ValidationError(f"Unknown integrator {method!r}; expected one of {METHODS}")
    if x0.modes != hamiltonian.space.modes:
        raise ValidationError(f"Phase point has {x0.modes} modes, Hamiltonian has {hamiltonian.space.modes}")

    flow = HamiltonianFlow(hamiltonian, h)
    if method == AUTO:
        method = LEAPFROG if flow.separable else RK4
    if method in (LEAPFROG, RUTH4) and not flow.separable:
        raise ValidationError(f"{method} needs a separable Hamiltonian T(pi) + V(phi)")
    stepper = {LEAPFROG: flow.leapfrog, RUTH4: flow.ruth4, RK4: flow.rk4}[method]

    steps = max(1, math.ceil(T / dt - 1e-9)) if T > 0 else 0
    step = T / steps if steps else 0.0
    phi = np.array(x0.phi, dtype=float)
    pi = np.array(x0.pi, dtype=float)
    phis, pis, energies = [phi], [pi], [flow.energy(phi, pi)]
    for index in range(steps):
        phi, pi = stepper(phi, pi, step)
        if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(pi))) or \
                max(np.max(np.abs(phi)), np.max(np.abs(pi))) > BLOW_UP:
            raise NumericFailure("Classical flow blew up",
                                 {"step": index + 1, "t": (index + 1) * step, "method": method})
        phis.append(phi)
        pis.append(pi)
        energies.append(flow.energy(phi, pi))

    trajectory = Trajectory(np.linspace(0.0, T, steps + 1), np.array(phis), np.array(pis),
                            np.array(energies), method)
    logger.info(f"Classical flow ({method}) finished - {steps} steps, energy drift {trajectory.energy_drift:.3e}")
    return trajectory
