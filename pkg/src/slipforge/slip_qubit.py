"""Trace invariants Tr[(U A V A^T)^l] of qubit states over bipartite cuts."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy import sparse

from .qstate import QuditState, j_power, random_state


@dataclass(frozen=True)
class BipartiteCut:
    """Qubits on side A (1-based); the remaining qubits form side B."""

    side_a: tuple[int, ...]
    n: int

    def __post_init__(self):
        side = tuple(sorted(set(int(q) for q in self.side_a)))
        if not side or len(side) >= self.n or side[0] < 1 or side[-1] > self.n:
            raise ValueError(f"invalid cut {self.side_a} of {self.n} qubits")
        object.__setattr__(self, "side_a", side)

    @property
    def side_b(self) -> tuple[int, ...]:
        return tuple(q for q in range(1, self.n + 1) if q not in self.side_a)

    def complement(self) -> "BipartiteCut":
        return BipartiteCut(self.side_b, self.n)

    def canonical(self) -> "BipartiteCut":
        """Representative with |A| <= n/2; equal halves keep the lexicographically smaller side."""
        a, b = self.side_a, self.side_b
        if len(a) < len(b) or (len(a) == len(b) and a < b):
            return self
        return self.complement()


def canonical_cuts(n: int) -> list[BipartiteCut]:
    cuts = []
    for q in range(1, n // 2 + 1):
        for side in combinations(range(1, n + 1), q):
            cut = BipartiteCut(side, n)
            if cut.canonical() == cut:
                cuts.append(cut)
    return cuts


def _check_qubits(psi: QuditState):
    if any(d != 2 for d in psi.dims):
        raise ValueError("qubit states only")


def matricize(psi: QuditState, cut: BipartiteCut) -> np.ndarray:
    _check_qubits(psi)
    if cut.n != psi.n:
        raise ValueError("cut does not match the number of qubits")
    order = [q - 1 for q in cut.side_a] + [q - 1 for q in cut.side_b]
    t = np.transpose(psi.tensor(), order)
    return t.reshape(2 ** len(cut.side_a), -1)


def gram_matrices(cut: BipartiteCut, n: int | None = None):
    """Bilinear-form Gram matrices of the computational bases of both sides."""
    if n is not None and n != cut.n:
        raise ValueError("cut does not match n")
    u = sparse.csr_matrix(j_power(len(cut.side_a)))
    v = sparse.csr_matrix(j_power(len(cut.side_b)))
    return u, v


def f_ell(psi: QuditState, cut: BipartiteCut, ell: int) -> complex:
    """Tr[(U A V A^T)^ell], an SLIP of degree 2 ell."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    a = matricize(psi, cut)
    u, v = gram_matrices(cut)
    m = u @ (a @ (v @ a.T))
    return complex(np.trace(np.linalg.matrix_power(m, ell)))


def numerical_rank(mat: np.ndarray, rel_tol: float = 1e-8) -> int:
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


def degree4_span_rank(n: int, samples: int | None = None, seed: int = 0) -> int:
    """Rank of the f_2 family over all canonical cuts, from evaluations at random states."""
    if n % 2 == 0 or not 3 <= n <= 7:
        raise ValueError("degree-4 span counting is for odd n in 3..7")
    need = 4 * 2 ** (n - 1)
    samples = need if samples is None else samples
    if samples < need:
        raise ValueError(f"need at least {need} samples")
    cuts = canonical_cuts(n)
    ss = np.random.SeedSequence(seed)
    rows = []
    for child in ss.spawn(samples):
        psi = random_state((2,) * n, child)
        rows.append([f_ell(psi, cut, 2) for cut in cuts])
    return numerical_rank(np.array(rows))


def empirical_vanishing(n: int, ell_max: int = 3, samples: int = 4, seed: int = 0, tol: float = 1e-12):
    """(cut, ell) pairs with |f_ell| <= tol at every sampled normalized state.

    This is a report, not a proof. For odd n every odd ell shows up, since
    transposing U A V A^T flips the sign of its odd traces there.
    """
    cuts = canonical_cuts(n)
    states = [random_state((2,) * n, child) for child in np.random.SeedSequence(seed).spawn(samples)]
    out = []
    for cut in cuts:
        for ell in range(1, ell_max + 1):
            if all(abs(f_ell(psi, cut, ell)) <= tol for psi in states):
                out.append((cut, ell))
    return out
