"""Dense operator and state containers with their verification flags."""

from dataclasses import dataclass, field

import numpy as np

from utils.errors import NumericFailure

HERMITIAN_TOLERANCE = 1e-12
NORMALIZATION_TOLERANCE = 1e-10


def hermiticity_defect(data):
    """Largest entry of |A - A^dagger|"""
    return float(np.max(np.abs(data - data.conj().T))) if data.size else 0.0


def complex_pairs(array):
    """Row-major [re, im] pairs, nested like the array"""
    return np.stack([array.real, array.imag], axis=-1).tolist()


@dataclass
class OperatorMatrix:
    """Dense complex matrix of dimension M^N"""

    data: np.ndarray
    hermitian: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=complex)
        if self.data.ndim != 2 or self.data.shape[0] != self.data.shape[1]:
            raise NumericFailure("Operator matrix must be square", {"shape": self.data.shape})
        if not np.all(np.isfinite(self.data)):
            raise NumericFailure("Operator matrix has non-finite entries")
        if self.hermitian:
            defect = hermiticity_defect(self.data)
            if defect >= HERMITIAN_TOLERANCE * max(1.0, float(np.max(np.abs(self.data)))):
                raise NumericFailure("Matrix claimed Hermitian is not", {"defect": defect})

    @property
    def dimension(self):
        return self.data.shape[0]

    def is_hermitian(self):
        return hermiticity_defect(self.data) < HERMITIAN_TOLERANCE * max(1.0, float(np.max(np.abs(self.data))))

    def norm(self):
        return float(np.linalg.norm(self.data, 2))

    def distance(self, other):
        return float(np.linalg.norm(self.data - _array(other), 2))

    def __add__(self, other):
        return OperatorMatrix(self.data + _array(other))

    def __sub__(self, other):
        return OperatorMatrix(self.data - _array(other))

    def __matmul__(self, other):
        if isinstance(other, WaveState):
            return WaveState(self.data @ other.data)
        return OperatorMatrix(self.data @ _array(other))

    def to_json(self):
        return {"dimension": self.dimension, "matrix": complex_pairs(self.data), "meta": dict(self.meta)}


@dataclass
class WaveState:
    """Complex vector in the per-site oscillator eigenbasis (unit reference frequency)"""

    data: np.ndarray
    normalized: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=complex)
        if self.data.ndim != 1:
            raise NumericFailure("Wave state must be a vector", {"shape": self.data.shape})
        if not np.all(np.isfinite(self.data)):
            raise NumericFailure("Wave state has non-finite entries")
        if self.normalized and abs(self.norm() - 1.0) >= NORMALIZATION_TOLERANCE:
            raise NumericFailure("State claimed normalized is not", {"norm": self.norm()})

    @property
    def dimension(self):
        return self.data.shape[0]

    def norm(self):
        return float(np.linalg.norm(self.data))

    def overlap(self, other):
        """<self|other>"""
        return complex(np.vdot(self.data, other.data))

    def to_json(self):
        return {"dimension": self.dimension, "state": complex_pairs(self.data), "meta": dict(self.meta)}


def _array(value):
    return value.data if isinstance(value, (OperatorMatrix, WaveState)) else np.asarray(value)
