"""SLOCC comparison of states through ratios of same-degree SLIPs.

Two states in one SLOCC class give proportional vectors of degree-k SLIP
values for every k. The converse holds for stable states (closed orbits) when
all degrees are taken into account; the verdicts below only run a finite
battery of degrees and never decide stability.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dimension import degree_gate
from .qstate import QuditState
from .schur_weyl import slip_basis

DEFAULT_TOL = 1e-6
MAX_DEFAULT_DEGREE = 6

CAVEATS = (
    "stable-state assumption: equal ratios imply SLOCC equivalence only for states with closed orbits",
    "finite degree battery: only the tested degrees were compared",
    "semi-stable states would need their stable part compared, which is not computed",
)


class Verdict(enum.Enum):
    EQUIVALENT_CANDIDATE = "EQUIVALENT_CANDIDATE"
    INEQUIVALENT = "INEQUIVALENT"
    NULL_CONE_INDISTINGUISHABLE = "NULL_CONE_INDISTINGUISHABLE"


@dataclass(frozen=True)
class RatioSignature:
    degree: int
    values: np.ndarray
    normalization: int | None

    @property
    def vanishes(self) -> bool:
        return self.normalization is None

    def projective(self) -> np.ndarray:
        """Unit vector with the reference entry made real positive."""
        if self.vanishes:
            return np.zeros_like(self.values)
        h = self.values[self.normalization]
        v = self.values * (abs(h) / h)
        return v / np.linalg.norm(v)


@dataclass
class Witness:
    degree: int
    indices: tuple[int, int]
    discrepancy: float
    one_sided_vanishing: bool = False

    def to_json(self):
        return {
            "degree": self.degree,
            "indices": list(self.indices),
            "discrepancy": self.discrepancy,
            "one_sided_vanishing": self.one_sided_vanishing,
        }


@dataclass
class Comparison:
    verdict: Verdict
    witness: Witness | None = None
    degrees: list[int] = field(default_factory=list)
    null_degrees: list[int] = field(default_factory=list)
    caveats: tuple[str, ...] = CAVEATS

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "degrees": self.degrees,
            "null_degrees": self.null_degrees,
            "stable_state_assumption": True,
            "caveats": list(self.caveats),
        }


def _scaled_values(psi: QuditState, k: int, seed: int) -> np.ndarray:
    basis = slip_basis(psi.dims, k, seed)
    if not basis:
        return np.zeros(0, dtype=np.complex128)
    nrm = psi.norm()
    if nrm == 0:
        return np.zeros(len(basis), dtype=np.complex128)
    amps = psi.amps[None, :]
    return np.array([v.evaluate_batch(amps)[0] / (v.norm() * nrm**k) for v in basis])


def signature(psi: QuditState, k: int, seed: int = 0, tol: float = DEFAULT_TOL) -> RatioSignature:
    """Degree-k SLIP values of psi over the seeded basis.

    Values are divided by |v| |psi|^k, so they are bounded by 1 and do not
    depend on the normalization of psi beyond a common phase.
    """
    if not degree_gate(k, psi.dims):
        raise ValueError(f"degree {k} fails the degree gate for dims {psi.dims}")
    values = _scaled_values(psi, k, seed)
    if values.size == 0 or np.max(np.abs(values)) <= tol:
        return RatioSignature(k, values, None)
    return RatioSignature(k, values, int(np.argmax(np.abs(values))))


def default_degrees(dims: Sequence[int], cap: int = MAX_DEFAULT_DEGREE) -> list[int]:
    return [k for k in range(1, cap + 1) if degree_gate(k, dims)]


def _compare_degree(a: RatioSignature, b: RatioSignature, tol: float) -> Witness | None:
    if a.vanishes and b.vanishes:
        return None
    if a.vanishes or b.vanishes:
        live = b if a.vanishes else a
        h = live.normalization
        return Witness(a.degree, (h, h), float(abs(live.values[h])), one_sided_vanishing=True)
    # all 2x2 minors of the 2 x d matrix [a; b] vanish iff the vectors are proportional
    u, v = a.values / np.linalg.norm(a.values), b.values / np.linalg.norm(b.values)
    minors = np.abs(np.outer(u, v) - np.outer(v, u))
    i, j = np.unravel_index(int(np.argmax(minors)), minors.shape)
    if minors[i, j] > tol:
        return Witness(a.degree, (int(min(i, j)), int(max(i, j))), float(minors[i, j]))
    return None


def compare(
    psi: QuditState,
    phi: QuditState,
    degrees: Sequence[int] | None = None,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
) -> Comparison:
    """Ratio test of psi against phi over the given degrees.

    INEQUIVALENT needs a concrete witness: a degree where the value vectors are
    not proportional, or where exactly one of the states has all values
    vanishing. If every tested value of both states vanishes the states are
    NULL_CONE_INDISTINGUISHABLE. Otherwise the result is only a candidate.
    """
    if psi.dims != phi.dims:
        raise ValueError("states have different dims")
    degrees = default_degrees(psi.dims) if degrees is None else list(degrees)
    for k in degrees:
        if not degree_gate(k, psi.dims):
            raise ValueError(f"degree {k} fails the degree gate for dims {psi.dims}")
    null = []
    for k in degrees:
        a, b = signature(psi, k, seed, tol), signature(phi, k, seed, tol)
        witness = _compare_degree(a, b, tol)
        if witness is not None:
            return Comparison(Verdict.INEQUIVALENT, witness, degrees, null)
        if a.vanishes and b.vanishes:
            null.append(k)
    if len(null) == len(degrees):
        return Comparison(Verdict.NULL_CONE_INDISTINGUISHABLE, None, degrees, null)
    return Comparison(Verdict.EQUIVALENT_CANDIDATE, None, degrees, null)
