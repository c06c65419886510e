"""Operators, product states, and the Hamiltonian of the three-spin chain.

The chain couples neighbouring spins through sigma^z sigma^z terms with
strengths J1 (sites 1-2) and J2 (sites 2-3) and applies a transverse field
h_i along x at each site.  Sites 2 and 3 optionally carry an in-plane field
angle (alpha2, alpha3); rotating those fields in the xy-plane leaves every
sigma1^x expectation unchanged, which is what lets the canonical gauge fix
h2, h3 >= 0.  The probe observable is always sigma^x of site 1.

Basis convention: product states |s1 s2 s3> with up before down and site 1
most significant, i.e. index = 4*s1 + 2*s2 + s3 with s=0 for up.  With this
ordering the h1=0 Hamiltonian splits into two contiguous 4x4 blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)

N_SITES = 3
DIM = 8

_SITE_VECTORS = {
    "u": np.array([1.0, 0.0], dtype=complex),
    "d": np.array([0.0, 1.0], dtype=complex),
    "+": np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0),
}
_SITE_ALIASES = {
    "u": "u", "up": "u", "↑": "u",
    "d": "d", "down": "d", "↓": "d",
    "+": "+", "plus": "+",
}


def kron3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.kron(a, np.kron(b, c))


def site_operator(op: np.ndarray, site: int) -> np.ndarray:
    """Embed a 2x2 operator at `site` (1, 2 or 3) in the 8-dim product space."""
    if site not in (1, 2, 3):
        raise InvalidInputError(f"site must be 1, 2 or 3, got {site}")
    ops = [ID2, ID2, ID2]
    ops[site - 1] = np.asarray(op, dtype=complex)
    return kron3(*ops)


# probe observable and parity, used throughout
SX1 = site_operator(SIGMA_X, 1)
PARITY = kron3(SIGMA_X, SIGMA_X, SIGMA_X)


@dataclass(frozen=True)
class ChainParams:
    """The five chain parameters plus optional in-plane field angles.

    h1 is the controllable probe-site field; h2, h3 are the fixed unknown
    fields (non-negative in the canonical gauge); J1, J2 the couplings.
    alpha2/alpha3 tilt the site-2/3 fields in the xy-plane and exist only
    to exercise the gauge-invariance property; estimation always runs with
    alpha2 = alpha3 = 0.
    """

    h1: float
    h2: float
    h3: float
    J1: float
    J2: float
    alpha2: float = 0.0
    alpha3: float = 0.0

    def validate(self) -> None:
        vals = (self.h1, self.h2, self.h3, self.J1, self.J2,
                self.alpha2, self.alpha3)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidInputError(f"non-finite chain parameter in {vals}")

    def with_h1(self, h1: float) -> "ChainParams":
        return ChainParams(h1, self.h2, self.h3, self.J1, self.J2,
                           self.alpha2, self.alpha3)

    @property
    def couplings_scale(self) -> float:
        return max(abs(self.h1), abs(self.h2), abs(self.h3),
                   abs(self.J1), abs(self.J2))


def build_hamiltonian(p: ChainParams) -> np.ndarray:
    """Assemble the 8x8 Hamiltonian matrix.

    H = J1 sz1 sz2 + J2 sz2 sz3 - h1 sx1 - h2 x2(alpha2) - h3 x3(alpha3)
    where x_i(alpha) = cos(alpha) sx_i + sin(alpha) sy_i.  Hermitian and
    traceless by construction; real symmetric when both angles vanish.
    """
    p.validate()
    x2 = math.cos(p.alpha2) * SIGMA_X + math.sin(p.alpha2) * SIGMA_Y
    x3 = math.cos(p.alpha3) * SIGMA_X + math.sin(p.alpha3) * SIGMA_Y
    H = (p.J1 * kron3(SIGMA_Z, SIGMA_Z, ID2)
         + p.J2 * kron3(ID2, SIGMA_Z, SIGMA_Z)
         - p.h1 * kron3(SIGMA_X, ID2, ID2)
         - p.h2 * kron3(ID2, x2, ID2)
         - p.h3 * kron3(ID2, ID2, x3))
    return H


def basis_state(spec) -> np.ndarray:
    """Normalized product state from three per-site symbols.

    Accepts a compact string like "uuu" or "+uu", or an iterable of symbols
    from {up, down, plus} (aliases: u/d/+ and arrow characters).
    """
    symbols = list(spec)
    if len(symbols) != N_SITES:
        raise InvalidInputError(
            f"expected {N_SITES} site symbols, got {len(symbols)} from {spec!r}")
    vec = np.array([1.0], dtype=complex)
    for sym in symbols:
        key = _SITE_ALIASES.get(str(sym).lower())
        if key is None:
            raise InvalidInputError(f"unknown site symbol {sym!r}")
        vec = np.kron(vec, _SITE_VECTORS[key])
    return vec


def parity_operator() -> np.ndarray:
    """Simultaneous flip of all three spins: sx1 sx2 sx3 (anti-diagonal)."""
    return PARITY.copy()


def gauge_rotation(alpha2: float, alpha3: float) -> np.ndarray:
    """Diagonal unitary exp(-i (alpha2 sz2 + alpha3 sz3)).

    Rotates spins 2 and 3 about z; commutes with sx1, so the probe dynamics
    cannot depend on the in-plane direction of the site-2/3 fields.
    """
    z = np.array([1.0, -1.0])
    z2 = np.kron(np.ones(2), np.kron(z, np.ones(2)))
    z3 = np.kron(np.ones(2), np.kron(np.ones(2), z))
    return np.diag(np.exp(-1j * (alpha2 * z2 + alpha3 * z3)))
