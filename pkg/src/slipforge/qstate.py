"""Multi-qudit states, local operators and the qubit bilinear form.

Amplitudes are stored flat with the first qudit most significant: the basis
label (b_1, ..., b_n) sits at index sum_s b_s * prod_{t>s} m_t. States are not
assumed to be normalized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

J = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class QuditState:
    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"invalid local dimensions {dims}")
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.size != int(np.prod(dims)):
            raise ValueError(f"{amps.size} amplitudes do not match dims {dims}")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def n(self) -> int:
        return len(self.dims)

    def tensor(self) -> np.ndarray:
        return self.amps.reshape(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "QuditState":
        return QuditState(self.dims, self.amps / self.norm())

    def __mul__(self, c) -> "QuditState":
        return QuditState(self.dims, self.amps * c)

    __rmul__ = __mul__

    def __add__(self, other: "QuditState") -> "QuditState":
        if other.dims != self.dims:
            raise ValueError("dims mismatch")
        return QuditState(self.dims, self.amps + other.amps)

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "amps": [[float(a.real), float(a.imag)] for a in self.amps]}

    @classmethod
    def from_json(cls, data: dict) -> "QuditState":
        amps = [complex(re, im) for re, im in data["amps"]]
        return cls(tuple(data["dims"]), np.array(amps))

    @classmethod
    def load(cls, path) -> "QuditState":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class LocalOperator:
    """A_1 (x) ... (x) A_n stored block by block."""

    blocks: tuple[np.ndarray, ...]
    special_linear: bool = False

    def __post_init__(self):
        blocks = tuple(np.asarray(b, dtype=np.complex128) for b in self.blocks)
        for b in blocks:
            if b.ndim != 2 or b.shape[0] != b.shape[1]:
                raise ValueError("blocks must be square matrices")
            if self.special_linear and abs(np.linalg.det(b) - 1) > 1e-12 * max(1.0, np.abs(b).max() ** len(b)):
                raise ValueError("block is not special linear")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.shape[0] for b in self.blocks)


def apply_local(g: LocalOperator | Sequence[np.ndarray], psi: QuditState) -> QuditState:
    """Apply a Kronecker product of blocks axis by axis, without forming it."""
    if not isinstance(g, LocalOperator):
        g = LocalOperator(tuple(g))
    if g.dims != psi.dims:
        raise ValueError(f"operator dims {g.dims} do not match state dims {psi.dims}")
    t = psi.tensor()
    for axis, block in enumerate(g.blocks):
        t = np.moveaxis(np.tensordot(block, t, axes=([1], [axis])), 0, axis)
    return QuditState(psi.dims, t.reshape(-1))


def apply_on(block: np.ndarray, site: int, psi: QuditState) -> QuditState:
    """Apply a single block on one (0-based) site."""
    blocks = [np.eye(d) for d in psi.dims]
    blocks[site] = block
    return apply_local(blocks, psi)


def random_sl(m: int, seed) -> np.ndarray:
    """Seeded random element of SL(m, C): complex Gaussian divided by a root of its determinant."""
    if m < 2:
        raise ValueError("m must be >= 2")
    rng = np.random.default_rng(seed)
    while True:
        a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        det = np.linalg.det(a)
        if abs(det) > 1e-8:
            break
    a = a / det ** (1.0 / m)
    return a


def random_local_sl(dims: Sequence[int], seed) -> LocalOperator:
    ss = np.random.SeedSequence(seed)
    return LocalOperator(tuple(random_sl(d, s) for d, s in zip(dims, ss.spawn(len(dims)))), special_linear=True)


def random_unitary_sl(m: int, seed) -> np.ndarray:
    """Random unitary with unit determinant (QR of a Gaussian, phases fixed)."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    q, r = np.linalg.qr(a)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return q / np.linalg.det(q) ** (1.0 / m)


def random_state(dims: Sequence[int], seed) -> QuditState:
    """Complex Gaussian amplitudes, normalized."""
    dims = tuple(dims)
    rng = np.random.default_rng(seed)
    size = int(np.prod(dims))
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return QuditState(dims, amps / np.linalg.norm(amps))


def basis_state(dims: Sequence[int], label: Sequence[int]) -> QuditState:
    dims = tuple(dims)
    amps = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    amps[np.ravel_multi_index(tuple(label), dims)] = 1.0
    return QuditState(dims, amps)


def zero_state(n: int, m: int = 2) -> QuditState:
    return basis_state((m,) * n, (0,) * n)


def ghz(n: int, m: int = 2) -> QuditState:
    dims = (m,) * n
    amps = np.zeros(m**n, dtype=np.complex128)
    for j in range(m):
        amps[np.ravel_multi_index((j,) * n, dims)] = 1.0
    return QuditState(dims, amps / np.sqrt(m))


def w_state(n: int) -> QuditState:
    amps = np.zeros(2**n, dtype=np.complex128)
    for s in range(n):
        amps[1 << (n - 1 - s)] = 1.0
    return QuditState((2,) * n, amps / np.sqrt(n))


def bell() -> QuditState:
    return ghz(2)


def j_power(n: int) -> np.ndarray:
    """Matrix of J^{(x) n}; entries are 0 and +-1."""
    out = np.ones((1, 1))
    for _ in range(n):
        out = np.kron(out, J)
    return out


def bilinear_form(psi: QuditState, phi: QuditState) -> complex:
    """(psi, phi)_n = psi^T J^{(x) n} phi, with no complex conjugation."""
    if psi.dims != phi.dims:
        raise ValueError("dims mismatch")
    if any(d != 2 for d in psi.dims):
        raise ValueError("the J bilinear form is defined for qubits only")
    jphi = apply_local([J] * psi.n, phi)
    return complex(np.dot(psi.amps, jphi.amps))
