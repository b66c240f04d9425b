"""SLIPs of any degree from per-site SL(m)-invariant tensors.

The k-th tensor power of H_n = C^{m_1} (x) ... (x) C^{m_n} is reshuffled (the
transpose intertwiner) into (C^{m_1})^{(x)k} (x) ... (x) (C^{m_n})^{(x)k}, where
the G-invariants factor into per-site SL(m_s)-invariants. Pairing such a
tensor with psi^{(x)k} gives a homogeneous SLIP of degree k, and a linearly
independent family of those is extracted numerically.

Invariant tensors are kept in structured form:

* ``ProductTensor``: one dense invariant vector per site (any dimensions).
* ``MatchingTensor``: qubits only; per site a perfect matching of the k
  copies, each pair carrying an epsilon tensor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
import opt_einsum
import scipy.linalg

from .characters import rect_character, rect_dim
from .combinatorics import CycleType
from .dimension import degree_gate
from .qstate import QuditState, random_state

MAX_PERMUTATION_DEGREE = 8
MAX_FACTOR_SIZE = 2**16
MAX_CANDIDATES = 20000
RANK_TOL = 1e-8
# normalized evaluations are bounded by 1; identically vanishing ones sit at rounding level
ZERO_TOL = 1e-10
SCREEN_STATES = 16

EPSILON = np.array([[0.0, 1.0], [-1.0, 0.0]])


class InfeasibleSize(ValueError):
    """The requested construction exceeds the configured size caps."""


# transpose intertwiner


def copy_to_site(label: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """(i_1, ..., i_k) with i_j = (b_1j..b_nj)  ->  (i^1, ..., i^n) with i^s = (b_s1..b_sk)."""
    return tuple(zip(*label))


def site_to_copy(label: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*label))


def copy_major_axes(n: int, k: int) -> list[int]:
    """Axis order taking a site-major tensor (axis s*k + j) to copy-major (axis j*n + s)."""
    return [s * k + j for j in range(k) for s in range(n)]


def site_major_axes(n: int, k: int) -> list[int]:
    return [j * n + s for s in range(n) for j in range(k)]


def to_copy_major(t: np.ndarray, dims: Sequence[int], k: int) -> np.ndarray:
    """Dense site-major vector in (x)_s (C^{m_s})^{(x)k} -> vector in (x)^k H_n."""
    n = len(dims)
    shape = [d for d in dims for _ in range(k)]
    return np.transpose(np.reshape(t, shape), copy_major_axes(n, k)).reshape(-1)


def to_site_major(t: np.ndarray, dims: Sequence[int], k: int) -> np.ndarray:
    n = len(dims)
    shape = [d for _ in range(k) for d in dims]
    return np.transpose(np.reshape(t, shape), site_major_axes(n, k)).reshape(-1)


# per-site projector


@lru_cache(maxsize=None)
def _signed_permutations(m: int, k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    r = k // m
    chi_of = {}
    out = []
    for perm in itertools.permutations(range(k)):
        mu = CycleType.of_permutation(perm).partition
        if mu not in chi_of:
            chi_of[mu] = rect_character(m, r, mu)
        if chi_of[mu]:
            out.append((perm, chi_of[mu]))
    return tuple(out)


def _check_single(m: int, k: int):
    if k > MAX_PERMUTATION_DEGREE or m**k > MAX_FACTOR_SIZE:
        raise InfeasibleSize(f"(C^{m})^(x){k} is beyond the projector caps")


def project_single(m: int, k: int, w: np.ndarray) -> np.ndarray:
    """(d_lam / k!) sum_sigma chi_lam(sigma) sigma.w on (C^m)^{(x)k}.

    `w` is a vector of length m**k, or an array of shape (m**k, B) holding B
    vectors as columns. Returns zeros unless m divides k.
    """
    w = np.asarray(w)
    if w.shape[0] != m**k:
        raise ValueError(f"expected leading dimension {m**k}")
    if k % m:
        return np.zeros_like(w)
    _check_single(m, k)
    extra = w.shape[1:]
    t = w.reshape((m,) * k + extra)
    tail = tuple(range(k, k + len(extra)))
    out = np.zeros(t.shape, dtype=np.result_type(w, float))
    for perm, chi in _signed_permutations(m, k):
        out += chi * np.transpose(t, perm + tail)
    out *= rect_dim(m, k // m) / math.factorial(k)
    return out.reshape(w.shape)


@lru_cache(maxsize=None)
def _invariant_basis_single(m: int, k: int) -> np.ndarray:
    _check_single(m, k)
    size = m**k
    rng = np.random.default_rng(20120 + 97 * m + k)
    count = min(size, 2 * rect_dim(m, k // m) + 8)
    while True:
        probe = rng.standard_normal((size, count))
        image = project_single(m, k, probe)
        u, s, _ = np.linalg.svd(image, full_matrices=False)
        rank = int(np.sum(s > RANK_TOL * s[0])) if s.size and s[0] > 0 else 0
        if rank < count or count == size:
            break
        count = min(size, 2 * count)
    basis = u[:, :rank].copy()
    basis.setflags(write=False)
    return basis


def invariant_basis_single(m: int, k: int) -> list[np.ndarray]:
    """Orthonormal (real) basis of the SL(m)-invariants in (C^m)^{(x)k}."""
    if k % m:
        return []
    basis = _invariant_basis_single(m, k)
    return [basis[:, i] for i in range(basis.shape[1])]


# perfect matchings


Matching = tuple[tuple[int, int], ...]


@lru_cache(maxsize=None)
def perfect_matchings(k: int) -> tuple[Matching, ...]:
    """All perfect matchings of {0..k-1}, pairs (a, b) with a < b, sorted."""
    if k % 2:
        return ()
    out = []

    def rec(rest, pairs):
        if not rest:
            out.append(tuple(pairs))
            return
        a = rest[0]
        for i in range(1, len(rest)):
            rec(rest[1:i] + rest[i + 1 :], pairs + [(a, rest[i])])

    rec(tuple(range(k)), [])
    return tuple(sorted(out))


def is_noncrossing(matching: Matching) -> bool:
    for (a, b), (c, d) in itertools.combinations(matching, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def noncrossing_matchings(k: int) -> list[Matching]:
    return [mt for mt in perfect_matchings(k) if is_noncrossing(mt)]


def permute_matching(matching: Matching, perm: Sequence[int]) -> Matching:
    return tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in matching))


def matching_tensor_dense(matching: Matching, k: int) -> np.ndarray:
    """The k-index tensor prod_{(a,b)} eps_{i_a i_b}, flattened."""
    ops = []
    for a, b in matching:
        ops += [EPSILON, [a, b]]
    if not ops:
        return np.ones(1)
    return opt_einsum.contract(*ops, list(range(k))).reshape(-1)


def _standard_matching(k: int) -> Matching:
    return tuple((2 * i, 2 * i + 1) for i in range(k // 2))


@lru_cache(maxsize=None)
def _standard_stabilizer(k: int) -> tuple[tuple[int, ...], ...]:
    r = k // 2
    out = []
    for order in itertools.permutations(range(r)):
        for flips in itertools.product((0, 1), repeat=r):
            perm = [0] * k
            for i in range(r):
                a, b = 2 * order[i], 2 * order[i] + 1
                if flips[i]:
                    a, b = b, a
                perm[2 * i], perm[2 * i + 1] = a, b
            out.append(tuple(perm))
    return tuple(out)


@lru_cache(maxsize=None)
def matching_orbit_representatives(n: int, k: int) -> tuple[tuple[Matching, ...], ...]:
    """n-tuples of perfect matchings up to simultaneous relabelling of the k copies.

    Every orbit meets the tuples whose first matching is (0,1)(2,3)..., so the
    first entry is fixed and the rest is reduced under its stabilizer, one
    site at a time. A matching tuple and its relabelling give the same
    polynomial up to sign.
    """
    if k % 2 or n < 1:
        return ()
    mats = perfect_matchings(k)
    index = {mt: i for i, mt in enumerate(mats)}
    table = [[index[permute_matching(mt, g)] for mt in mats] for g in _standard_stabilizer(k)]
    reps = {()}
    for _ in range(n - 1):
        grown = set()
        for rep in reps:
            for mi in range(len(mats)):
                t = rep + (mi,)
                grown.add(min(tuple(row[x] for x in t) for row in table))
        reps = grown
        if len(reps) > MAX_CANDIDATES:
            raise InfeasibleSize(f"more than {MAX_CANDIDATES} matching candidates")
    first = _standard_matching(k)
    return tuple((first,) + tuple(mats[i] for i in rep) for rep in sorted(reps))


# invariant tensors


def _as_amp_matrix(states, dims) -> np.ndarray:
    if isinstance(states, QuditState):
        states = [states]
    rows = []
    for psi in states:
        if tuple(psi.dims) != tuple(dims):
            raise ValueError(f"state dims {psi.dims} do not match tensor dims {tuple(dims)}")
        rows.append(psi.amps)
    return np.array(rows, dtype=np.complex128)


class InvariantTensor:
    """A G-invariant vector v in (x)^k H_n; f_v(psi) = <v | psi^{(x)k}>."""

    dims: tuple[int, ...]
    k: int

    def evaluate_batch(self, amps: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def factor_vectors(self) -> list[np.ndarray]:
        raise NotImplementedError

    def norm(self) -> float:
        return float(math.prod(np.linalg.norm(w) for w in self.factor_vectors()))

    def dense(self) -> np.ndarray:
        """The full vector in copy-major order; only for small sizes."""
        site_major = np.ones(1)
        for w in self.factor_vectors():
            site_major = np.multiply.outer(site_major, w).reshape(-1)
        return to_copy_major(site_major, self.dims, self.k)

    def __call__(self, psi: QuditState) -> complex:
        return complex(self.evaluate_batch(_as_amp_matrix(psi, self.dims))[0])


@dataclass(frozen=True, eq=False)
class ProductTensor(InvariantTensor):
    dims: tuple[int, ...]
    k: int
    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        factors = tuple(np.asarray(w).reshape(-1) for w in self.factors)
        if len(factors) != len(dims):
            raise ValueError("one factor per site")
        for d, w in zip(dims, factors):
            if w.size != d**self.k:
                raise ValueError(f"factor of size {w.size} does not fit (C^{d})^(x){self.k}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "factors", factors)

    def factor_vectors(self):
        return list(self.factors)

    def is_invariant(self, tol: float = 1e-10) -> bool:
        return all(
            np.linalg.norm(project_single(d, self.k, w) - w) <= tol * max(1.0, np.linalg.norm(w))
            for d, w in zip(self.dims, self.factors)
        )

    def evaluate_batch(self, amps):
        n, k = len(self.dims), self.k
        ops = []
        for s, (d, w) in enumerate(zip(self.dims, self.factors)):
            ops += [np.conj(w).reshape((d,) * k), [1 + s * k + j for j in range(k)]]
        t = np.asarray(amps).reshape((-1,) + self.dims)
        for j in range(k):
            ops += [t, [0] + [1 + s * k + j for s in range(n)]]
        return opt_einsum.contract(*ops, [0], optimize="greedy")

    def to_json(self):
        return {"form": "product", "factors": [[float(x) for x in np.real(w)] for w in self.factors]}


def _apply_j_axes(t: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    for ax in axes:
        # (J v)_0 = v_1, (J v)_1 = -v_0 on the given axis
        t = np.flip(t, axis=ax).copy()
        idx = [slice(None)] * t.ndim
        idx[ax] = 1
        t[tuple(idx)] *= -1
    return t


@dataclass(frozen=True, eq=False)
class MatchingTensor(InvariantTensor):
    dims: tuple[int, ...]
    k: int
    matchings: tuple[Matching, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d != 2 for d in dims):
            raise ValueError("matching tensors are for qubits only")
        mats = tuple(tuple(sorted(tuple(sorted(p)) for p in mt)) for mt in self.matchings)
        if len(mats) != len(dims):
            raise ValueError("one matching per site")
        for mt in mats:
            if sorted(x for p in mt for x in p) != list(range(self.k)):
                raise ValueError(f"{mt} is not a perfect matching of {self.k} copies")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matchings", mats)

    def factor_vectors(self):
        return [matching_tensor_dense(mt, self.k) for mt in self.matchings]

    def norm(self):
        return math.sqrt(2.0) ** (len(self.dims) * self.k // 2)

    def _network(self):
        n = len(self.dims)
        legs = [[0] * n for _ in range(self.k)]
        j_sites = [[] for _ in range(self.k)]
        label = 1
        for s, mt in enumerate(self.matchings):
            for a, b in mt:
                legs[a][s] = legs[b][s] = label
                # eps_{xy} psi_x psi'_y = psi^T (J psi'), so J goes on the later copy
                j_sites[b].append(s)
                label += 1
        return legs, j_sites

    def evaluate_batch(self, amps):
        legs, j_sites = self._network()
        t = np.asarray(amps, dtype=np.complex128).reshape((-1,) + self.dims)
        variants = {}
        ops = []
        for j in range(self.k):
            key = tuple(j_sites[j])
            if key not in variants:
                variants[key] = _apply_j_axes(t, [1 + s for s in key])
            ops += [variants[key], [0] + legs[j]]
        return opt_einsum.contract(*ops, [0], optimize="greedy")

    def to_json(self):
        return {"form": "matching", "matchings": [[list(p) for p in mt] for mt in self.matchings]}


@dataclass(frozen=True, eq=False)
class InvariantCombination(InvariantTensor):
    """Linear combination sum_i c_i v_i of invariant tensors of the same shape."""

    terms: tuple[tuple[complex, InvariantTensor], ...]
    dims: tuple[int, ...] = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        if not self.terms:
            raise ValueError("empty combination")
        first = self.terms[0][1]
        for _, v in self.terms:
            if v.dims != first.dims or v.k != first.k:
                raise ValueError("terms must share dims and degree")
        object.__setattr__(self, "dims", first.dims)
        object.__setattr__(self, "k", first.k)

    def evaluate_batch(self, amps):
        # f_v is antilinear in v
        return sum(np.conj(c) * v.evaluate_batch(amps) for c, v in self.terms)

    def dense(self):
        return sum(c * v.dense() for c, v in self.terms)

    def norm(self):
        return float(np.linalg.norm(self.dense()))

    def to_json(self):
        return {
            "form": "combination",
            "terms": [{"coef": [float(np.real(c)), float(np.imag(c))], "tensor": v.to_json()} for c, v in self.terms],
        }


def tensor_from_json(data: dict, dims: Sequence[int], k: int) -> InvariantTensor:
    form = data["form"]
    dims = tuple(dims)
    if form == "matching":
        return MatchingTensor(dims, k, tuple(tuple(tuple(p) for p in mt) for mt in data["matchings"]))
    if form == "product":
        return ProductTensor(dims, k, tuple(np.array(w, dtype=float) for w in data["factors"]))
    if form == "combination":
        return InvariantCombination(
            tuple((complex(*t["coef"]), tensor_from_json(t["tensor"], dims, k)) for t in data["terms"])
        )
    raise ValueError(f"unknown tensor form {form!r}")


def eval_slip(v: InvariantTensor, psi: QuditState) -> complex:
    """f_v(psi) = <v | psi^{(x)k}>, contracted without forming psi^{(x)k}."""
    if tuple(psi.dims) != tuple(v.dims):
        raise ValueError(f"state dims {psi.dims} do not match tensor dims {v.dims}")
    return v(psi)


def eval_slip_dense(v: InvariantTensor, psi: QuditState) -> complex:
    """Brute-force <v | psi^{(x)k}> with both vectors materialized."""
    power = np.ones(1, dtype=np.complex128)
    for _ in range(v.k):
        power = np.kron(power, psi.amps)
    return complex(np.vdot(v.dense(), power))


# basis extraction


@dataclass
class BasisReport:
    dims: tuple[int, ...]
    k: int
    seed: int
    form: str
    tensors: list[InvariantTensor]
    candidates: int = 0
    screened: int = 0
    samples: int = 0
    singular_values: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "k": self.k,
            "seed": self.seed,
            "form": self.form,
            "candidates": self.candidates,
            "screened": self.screened,
            "samples": self.samples,
            "tensors": [v.to_json() for v in self.tensors],
        }


def load_basis(data: dict) -> list[InvariantTensor]:
    return [tensor_from_json(t, data["dims"], data["k"]) for t in data["tensors"]]


def _resolve_form(dims: tuple[int, ...], form: str) -> str:
    qubits = all(d == 2 for d in dims)
    if form == "auto":
        return "matching" if qubits else "product"
    if form == "matching" and not qubits:
        raise ValueError("matching form needs all dims equal to 2")
    if form not in ("matching", "product"):
        raise ValueError(f"unknown form {form!r}")
    return form


def candidate_tensors(dims: Sequence[int], k: int, form: str = "auto") -> list[InvariantTensor]:
    dims = tuple(dims)
    if not degree_gate(k, dims):
        return []
    form = _resolve_form(dims, form)
    if form == "matching":
        if k > 2 * MAX_PERMUTATION_DEGREE:
            raise InfeasibleSize(f"degree {k} is beyond the matching cap")
        return [MatchingTensor(dims, k, reps) for reps in matching_orbit_representatives(len(dims), k)]
    per_site = [invariant_basis_single(d, k) for d in dims]
    count = math.prod(len(b) for b in per_site)
    if count > MAX_CANDIDATES:
        raise InfeasibleSize(f"{count} product candidates exceed the cap")
    return [ProductTensor(dims, k, combo) for combo in itertools.product(*per_site)]


def evaluation_matrix(tensors: Sequence[InvariantTensor], states: Sequence[QuditState]) -> np.ndarray:
    """Rows: states; columns: f_v(psi) / (|v| |psi|^k), so every entry has modulus <= 1."""
    if not tensors:
        return np.zeros((len(states), 0), dtype=np.complex128)
    amps = _as_amp_matrix(states, tensors[0].dims)
    scale = np.linalg.norm(amps, axis=1) ** tensors[0].k
    cols = [v.evaluate_batch(amps) / (v.norm() * scale) for v in tensors]
    return np.array(cols).T


def _seeded_states(dims, count: int, seed, stream: int) -> list[QuditState]:
    ss = np.random.SeedSequence([int(seed), stream])
    return [random_state(dims, child) for child in ss.spawn(count)]


def _screen(columns: np.ndarray) -> list[int]:
    """Indices of columns that are nonzero and pairwise non-proportional (first of each class kept)."""
    kept: list[int] = []
    units: list[np.ndarray] = []
    for i in range(columns.shape[1]):
        col = columns[:, i]
        nrm = np.linalg.norm(col)
        if np.max(np.abs(col)) <= ZERO_TOL:
            continue
        u = col / nrm
        if any(abs(np.vdot(w, u)) > 1 - 1e-9 for w in units):
            continue
        kept.append(i)
        units.append(u)
    return kept


def select_independent(mat: np.ndarray, rel_tol: float = RANK_TOL) -> tuple[list[int], np.ndarray]:
    """Column indices of a maximal independent subset, chosen by pivoted QR.

    The rank comes from the singular values: those below rel_tol times the
    largest count as zero. An all-zero matrix has rank 0.
    """
    if mat.shape[1] == 0:
        return [], np.zeros(0)
    s = np.linalg.svd(mat, compute_uv=False)
    if s[0] <= ZERO_TOL:
        return [], s
    rank = int(np.sum(s > rel_tol * s[0]))
    _, _, piv = scipy.linalg.qr(mat, mode="economic", pivoting=True)
    return sorted(int(i) for i in piv[:rank]), s


def build_basis(dims: Sequence[int], k: int, seed: int = 0, form: str = "auto") -> BasisReport:
    """Linearly independent SLIPs spanning all degree-k SLIPs on `dims`.

    Candidates are per-site invariant tensors (product form), or for qubits
    matching tuples reduced modulo relabelling of copies. A screening pass at
    a few random states drops candidates that vanish identically and keeps
    one of each proportional family; the survivors are evaluated at three
    times as many seeded random states as there are survivors and an
    independent subset is read off a rank-revealing decomposition.
    """
    dims = tuple(int(d) for d in dims)
    if not degree_gate(k, dims):
        return BasisReport(dims, k, seed, form, [])
    form = _resolve_form(dims, form)
    cands = candidate_tensors(dims, k, form)
    screen_mat = evaluation_matrix(cands, _seeded_states(dims, SCREEN_STATES, seed, 0))
    survivors = [cands[i] for i in _screen(screen_mat)]
    samples = 3 * len(survivors)
    mat = evaluation_matrix(survivors, _seeded_states(dims, samples, seed, 1))
    chosen, s = select_independent(mat)
    return BasisReport(
        dims, k, seed, form, [survivors[i] for i in chosen],
        candidates=len(cands), screened=len(survivors), samples=samples, singular_values=s,
    )


@lru_cache(maxsize=64)
def _cached_basis(dims: tuple[int, ...], k: int, seed: int, form: str) -> tuple[InvariantTensor, ...]:
    return tuple(build_basis(dims, k, seed, form).tensors)


def slip_basis(dims: Sequence[int], k: int, seed: int = 0, form: str = "auto") -> list[InvariantTensor]:
    """Seed-dependent basis of the degree-k SLIPs; empty when the degree gate fails."""
    return list(_cached_basis(tuple(int(d) for d in dims), k, int(seed), form))
