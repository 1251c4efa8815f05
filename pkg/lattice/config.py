"""
Lattice run configuration.

A run is described by a JSON document such as

    {"sites": 2, "dx": 1.0, "mass": 1.0, "hbar": 1.0, "k": 4, "cutoff": 12,
     "t0": -5.0, "t1": 5.0, "dt": 1e-3,
     "g": {"shape": "gauss", "amp": 0.01, "width": 1.0, "site_weights": [1.0, 1.0]},
     "j": {"shape": "const_window", "amp": 0.0, "from": -1.0, "to": 1.0},
     "cap_dim": 20000}

which is parsed into an immutable LatticeConfig.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from utils.errors import ConfigurationError
from utils.settings import load_settings

CONST_WINDOW = "const_window"
GAUSS = "gauss"
SHAPES = (CONST_WINDOW, GAUSS)

ENDPOINT_TOLERANCE = 1e-12


def _number(document, key, name, default=None):
    value = document.get(key, default)
    if value is None:
        raise ConfigurationError(f"{name}: missing required field {key!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f"{name}: field {key!r} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigurationError(f"{name}: field {key!r} must be finite")
    return value


def _integer(document, key, default=None):
    value = document.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigurationError(f"Field {key!r} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class Profile:
    """Time profile of a coupling: amp * shape(t) * site_weights[i]"""

    shape: str = CONST_WINDOW
    amp: float = 0.0
    start: float = 0.0
    end: float = 0.0
    width: float = 1.0
    center: float = 0.0
    site_weights: tuple = None

    def __post_init__(self):
        for name in ("amp", "start", "end", "width", "center"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigurationError(f"Profile field {name!r} must be a finite number, got {value!r}")
        if self.shape not in SHAPES:
            raise ConfigurationError(f"Unknown profile shape {self.shape!r}; expected one of {SHAPES}")
        if self.shape == GAUSS and self.width <= 0:
            raise ConfigurationError(f"Gaussian profile width must be positive, got {self.width}")
        if self.shape == CONST_WINDOW and self.end < self.start:
            raise ConfigurationError(f"Window end {self.end} precedes start {self.start}")

    @classmethod
    def from_json(cls, document, name):
        if document is None:
            return cls()
        if not isinstance(document, dict):
            raise ConfigurationError(f"Profile {name!r} must be an object")
        shape = document.get("shape", CONST_WINDOW)
        weights = document.get("site_weights")
        if weights is not None:
            if not isinstance(weights, list) or not all(
                    isinstance(w, (int, float)) and not isinstance(w, bool) for w in weights):
                raise ConfigurationError(f"Profile {name!r}: site_weights must be a list of numbers")
            weights = tuple(float(w) for w in weights)
        if shape == GAUSS:
            return cls(shape, _number(document, "amp", name), width=_number(document, "width", name),
                       center=_number(document, "center", name, 0.0), site_weights=weights)
        return cls(shape, _number(document, "amp", name), start=_number(document, "from", name),
                   end=_number(document, "to", name), site_weights=weights)

    def to_json(self):
        document = {"shape": self.shape, "amp": self.amp}
        if self.shape == GAUSS:
            document.update(width=self.width, center=self.center)
        else:
            document.update({"from": self.start, "to": self.end})
        if self.site_weights is not None:
            document["site_weights"] = list(self.site_weights)
        return document

    def envelope(self, t):
        """Unit-amplitude time dependence"""
        if self.shape == GAUSS:
            return math.exp(-((t - self.center) / self.width) ** 2)
        return 1.0 if self.start <= t <= self.end else 0.0

    def value(self, t):
        return self.amp * self.envelope(t)

    def site_values(self, t, sites):
        weights = np.ones(sites) if self.site_weights is None else np.asarray(self.site_weights)
        return self.value(t) * weights

    def is_zero(self):
        return self.amp == 0.0 or (self.site_weights is not None and not any(self.site_weights))

    def negligible_at(self, t):
        return self.is_zero() or self.envelope(t) < ENDPOINT_TOLERANCE

    def scaled(self, factor):
        return replace(self, amp=self.amp * factor)


@dataclass(frozen=True)
class LatticeConfig:
    """Validated parameters of a 1-D periodic lattice run"""

    sites: int = 1
    dx: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0
    k: int = 4
    cutoff: int = 12
    t0: float = 0.0
    t1: float = 1.0
    dt: float = 1e-3
    g: Profile = field(default_factory=Profile)
    j: Profile = field(default_factory=Profile)
    cap_dim: int = None
    max_order: int = None
    boundary: str = "periodic"

    def __post_init__(self):
        settings = None
        if self.cap_dim is None or self.max_order is None:
            settings = load_settings()
        if self.cap_dim is None:
            object.__setattr__(self, "cap_dim", settings.cap_dim)
        if self.max_order is None:
            object.__setattr__(self, "max_order", settings.max_dyson_order)
        self._validate()

    def _validate(self):
        for name in ("dx", "mass", "hbar", "t0", "t1", "dt"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigurationError(f"{name} must be a finite number, got {value!r}")
        for name in ("sites", "k", "cutoff", "cap_dim", "max_order"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigurationError(f"{name} must be an integer, got {value!r}")
        if self.max_order < 0:
            raise ConfigurationError(f"max_order must be nonnegative, got {self.max_order}")
        if self.sites < 1:
            raise ConfigurationError(f"sites must be at least 1, got {self.sites}")
        if self.dx <= 0:
            raise ConfigurationError(f"dx must be positive, got {self.dx}")
        if self.mass < 0:
            raise ConfigurationError(f"mass must be nonnegative, got {self.mass}")
        if self.hbar <= 0:
            raise ConfigurationError(f"hbar must be positive, got {self.hbar}")
        if self.k < 2:
            raise ConfigurationError(f"interaction power k must be at least 2, got {self.k}")
        if self.cutoff < 2:
            raise ConfigurationError(f"cutoff must be at least 2, got {self.cutoff}")
        if self.t1 <= self.t0:
            raise ConfigurationError(f"Empty time window [{self.t0}, {self.t1}]")
        if self.dt <= 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")
        if self.boundary != "periodic":
            raise ConfigurationError(f"Only periodic boundaries are supported, got {self.boundary!r}")
        for name, profile in (("g", self.g), ("j", self.j)):
            if profile.site_weights is not None and len(profile.site_weights) != self.sites:
                raise ConfigurationError(
                    f"Profile {name!r} has {len(profile.site_weights)} site weights for {self.sites} sites")
        if self.dimension > self.cap_dim:
            raise ConfigurationError(
                f"Matrix dimension {self.cutoff}^{self.sites} = {self.dimension} exceeds cap {self.cap_dim}")

    @classmethod
    def from_json(cls, document):
        if not isinstance(document, dict):
            raise ConfigurationError("Lattice configuration must be a JSON object")
        known = {"sites", "dx", "mass", "hbar", "k", "cutoff", "t0", "t1", "dt", "g", "j",
                 "cap_dim", "max_order", "boundary"}
        unknown = sorted(set(document) - known)
        if unknown:
            raise ConfigurationError(f"Unknown configuration fields: {', '.join(unknown)}")
        return cls(
            sites=_integer(document, "sites", 1),
            dx=_number(document, "dx", "config", 1.0),
            mass=_number(document, "mass", "config", 1.0),
            hbar=_number(document, "hbar", "config", 1.0),
            k=_integer(document, "k", 4),
            cutoff=_integer(document, "cutoff", 12),
            t0=_number(document, "t0", "config"),
            t1=_number(document, "t1", "config"),
            dt=_number(document, "dt", "config"),
            g=Profile.from_json(document.get("g"), "g"),
            j=Profile.from_json(document.get("j"), "j"),
            cap_dim=document.get("cap_dim"),
            max_order=document.get("max_order"),
            boundary=document.get("boundary", "periodic"),
        )

    @classmethod
    def load(cls, path):
        try:
            with open(path, "r", encoding="utf-8") as handle:
                document = json.load(handle)
        except OSError as e:
            raise ConfigurationError(f"Cannot read configuration {path}: {e}")
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Configuration {path} is not valid JSON: {e}")
        return cls.from_json(document)

    def to_json(self):
        return {
            "sites": self.sites, "dx": self.dx, "mass": self.mass, "hbar": self.hbar,
            "k": self.k, "cutoff": self.cutoff, "t0": self.t0, "t1": self.t1, "dt": self.dt,
            "g": self.g.to_json(), "j": self.j.to_json(),
            "cap_dim": self.cap_dim, "max_order": self.max_order, "boundary": self.boundary,
        }

    def config_hash(self):
        canonical = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    @property
    def dimension(self):
        return self.cutoff ** self.sites

    @property
    def steps(self):
        """Number of fixed steps covering [t0, t1] with step at most dt"""
        return max(1, math.ceil((self.t1 - self.t0) / self.dt - 1e-9))

    @property
    def step(self):
        return (self.t1 - self.t0) / self.steps

    def has_interaction(self):
        return not (self.g.is_zero() and self.j.is_zero())

    def endpoints_negligible(self):
        return all(p.negligible_at(t) for p in (self.g, self.j) for t in (self.t0, self.t1))

    def with_amplitude(self, factor):
        """Same run with both couplings scaled by factor"""
        return replace(self, g=self.g.scaled(factor), j=self.j.scaled(factor))
