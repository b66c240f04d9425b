"""Exact sl2 ladder construction of qubit invariants.

A state of n + 1 qubits is split as |0>(x)x + |1>(x)y with x, y in H_n. The
first qubit's Lie algebra acts on polynomials in (x_0..x_N, y_0..y_N) through

    X = sum_j x_j d/dy_j,   Y = sum_j y_j d/dx_j,   H = sum_j x_j d/dx_j - y_j d/dy_j,

and on the weight-zero part prod_{j=1}^{k} (YX - j(j+1)) projects onto the
invariants (up to a nonzero scalar). Applied to a G_4-invariant of bidegree
(3, 3) this gives the degree-6 invariant of five qubits.
"""

from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .qstate import QuditState

Monomial = tuple[tuple[int, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_shift(mono: Monomial, var: int, delta: int) -> Monomial:
    exps = dict(mono)
    e = exps.get(var, 0) + delta
    if e:
        exps[var] = e
    else:
        exps.pop(var, None)
    return tuple(sorted(exps.items()))


class SparsePoly:
    """Polynomial in x_0..x_N, y_0..y_N with exact rational coefficients.

    Variable x_j has index j and y_j has index N + 1 + j. Monomials are sorted
    tuples of (variable, exponent) pairs; zero coefficients are never stored.
    """

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        self.terms: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(sorted(mono))] = c

    @property
    def nvars(self) -> int:
        return 2 * (self.N + 1)

    def x(self, j: int) -> int:
        return j

    def y(self, j: int) -> int:
        return self.N + 1 + j

    @classmethod
    def var(cls, N: int, index: int) -> "SparsePoly":
        return cls(N, {((index, 1),): 1})

    @classmethod
    def constant(cls, N: int, c) -> "SparsePoly":
        return cls(N, {(): c})

    def _like(self, terms) -> "SparsePoly":
        out = SparsePoly(self.N)
        out.terms = {m: c for m, c in terms.items() if c}
        return out

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(self.N, other)
        return isinstance(other, SparsePoly) and self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash((self.N, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"SparsePoly(N={self.N}, {len(self.terms)} terms)"

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.N != self.N:
                raise ValueError("polynomials live in different variable sets")
            return other
        return SparsePoly.constant(self.N, other)

    def diff(self, var: int) -> "SparsePoly":
        out: dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            e = dict(mono).get(var, 0)
            if e:
                m = _mono_shift(mono, var, -1)
                out[m] = out.get(m, 0) + c * e
        return self._like(out)

    def bidegrees(self) -> set[tuple[int, int]]:
        out = set()
        for mono in self.terms:
            dx = sum(e for v, e in mono if v <= self.N)
            dy = sum(e for v, e in mono if v > self.N)
            out.add((dx, dy))
        return out

    def bidegree(self) -> tuple[int, int]:
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError(f"not bihomogeneous: {sorted(degs)}")
        return degs.pop()

    def swap_xy(self) -> "SparsePoly":
        """p(y, x)."""
        n1 = self.N + 1
        return self._like({
            tuple(sorted((v + n1 if v < n1 else v - n1, e) for v, e in mono)): c
            for mono, c in self.terms.items()
        })

    def evaluate(self, values) -> complex:
        values = list(values)
        total = 0
        for mono, c in self.terms.items():
            term = complex(c)
            for v, e in mono:
                term *= values[v] ** e
            total += term
        return total

    def evaluate_exact(self, values) -> complex:
        """Exact value at complex floating-point arguments, rounded once at the end.

        Each float is a dyadic rational, so after scaling by a common power of
        two the arguments are Gaussian integers and the whole sum runs in
        Python integers.
        """
        degrees = {sum(e for _, e in mono) for mono in self.terms}
        if len(degrees) > 1:
            raise ValueError("evaluate_exact needs a homogeneous polynomial")
        degree = degrees.pop() if degrees else 0
        values = [complex(v) for v in values]
        reals = [x for z in values for x in (z.real, z.imag) if x]
        if not all(math.isfinite(x) for x in reals):
            raise ValueError("non-finite argument")
        shift = max((53 - math.frexp(x)[1] for x in reals), default=0)
        shift = max(shift, 0)
        scaled = [(int(Fraction(z.real) * 2**shift), int(Fraction(z.imag) * 2**shift)) for z in values]
        den = 1
        for c in self.terms.values():
            den = math.lcm(den, c.denominator)
        powers: dict[tuple[int, int], tuple[int, int]] = {}
        total_re = total_im = 0
        for mono, c in self.terms.items():
            re, im = int(c * den), 0
            for v, e in mono:
                if (v, e) not in powers:
                    a, b = 1, 0
                    for _ in range(e):
                        a, b = a * scaled[v][0] - b * scaled[v][1], a * scaled[v][1] + b * scaled[v][0]
                    powers[v, e] = (a, b)
                a, b = powers[v, e]
                re, im = re * a - im * b, re * b + im * a
            total_re += re
            total_im += im
        scale = den * 2 ** (shift * degree)
        return complex(float(Fraction(total_re, scale)), float(Fraction(total_im, scale)))

    def to_json(self) -> dict:
        """Canonical form: terms sorted by dense exponent vector, coefficients as integer pairs."""
        rows = []
        for mono, c in self.terms.items():
            dense = [0] * self.nvars
            for v, e in mono:
                dense[v] = e
            rows.append((dense, c))
        rows.sort(key=lambda r: r[0])
        return {
            "N": self.N,
            "terms": [{"exponents": d, "coef": [str(c.numerator), str(c.denominator)]} for d, c in rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SparsePoly":
        terms = {}
        for t in data["terms"]:
            mono = tuple((v, e) for v, e in enumerate(t["exponents"]) if e)
            terms[mono] = Fraction(int(t["coef"][0]), int(t["coef"][1]))
        return cls(data["N"], terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def op_X(p: SparsePoly) -> SparsePoly:
    """sum_j x_j d/dy_j"""
    out: dict[Monomial, Fraction] = {}
    n1 = p.N + 1
    for mono, c in p.terms.items():
        for v, e in mono:
            if v >= n1:
                m = _mono_shift(_mono_shift(mono, v, -1), v - n1, 1)
                out[m] = out.get(m, 0) + c * e
    return p._like(out)


def op_Y(p: SparsePoly) -> SparsePoly:
    """sum_j y_j d/dx_j"""
    out: dict[Monomial, Fraction] = {}
    n1 = p.N + 1
    for mono, c in p.terms.items():
        for v, e in mono:
            if v < n1:
                m = _mono_shift(_mono_shift(mono, v, -1), v + n1, 1)
                out[m] = out.get(m, 0) + c * e
    return p._like(out)


def op_H(p: SparsePoly) -> SparsePoly:
    """Multiplies each monomial by deg_x - deg_y."""
    n1 = p.N + 1
    out = {}
    for mono, c in p.terms.items():
        w = sum(e if v < n1 else -e for v, e in mono)
        out[mono] = c * w
    return p._like(out)


def extract_invariant(p: SparsePoly, kmax: int) -> SparsePoly:
    """prod_{j=1}^{kmax} (YX - j(j+1)) p for a weight-zero p."""
    if op_H(p):
        raise ValueError("extraction needs a weight-zero polynomial (H p = 0)")
    out = p
    for j in range(1, kmax + 1):
        out = op_Y(op_X(out)) - out * (j * (j + 1))
    return out


def restrict(p: SparsePoly, keep: int) -> SparsePoly:
    """Set x_j = y_j = 0 for j >= keep, landing in the ring with N' = keep - 1."""
    if not 1 <= keep <= p.N + 1:
        raise ValueError("keep must be in 1..N+1")
    n1 = p.N + 1
    out = {}
    for mono, c in p.terms.items():
        if all((v % n1) < keep for v, _ in mono):
            out[tuple((v if v < n1 else v - n1 + keep, e) for v, e in mono)] = c
    return SparsePoly(keep - 1, out)


# five-qubit degree-6 invariant

_S2 = np.sqrt(0.5)
# Bell basis of two qubits, orthonormal for both the inner product and the J (x) J form
BELL_BASIS = np.array([
    [_S2, 0, 0, _S2],
    [1j * _S2, 0, 0, -1j * _S2],
    [0, 1j * _S2, 1j * _S2, 0],
    [0, _S2, -_S2, 0],
]).T


@lru_cache(maxsize=None)
def bell_product_order() -> tuple[tuple[int, int], ...]:
    """(r, s) pairs in coordinate order: the diagonal u_j (x) u_j first, then r != s lexicographically."""
    diag = [(j, j) for j in range(4)]
    off = [(r, s) for r in range(4) for s in range(4) if r != s]
    return tuple(diag + off)


def bell_product_index(r: int, s: int) -> int:
    return bell_product_order().index((r, s))


@lru_cache(maxsize=None)
def bell_product_matrix() -> np.ndarray:
    """Columns are u_r (x) u_s in coordinate order, in the 4-qubit computational basis."""
    cols = [np.kron(BELL_BASIS[:, r], BELL_BASIS[:, s]) for r, s in bell_product_order()]
    return np.array(cols).T


def _z_polys(N: int, offset: int) -> list[list[SparsePoly]]:
    return [[SparsePoly.var(N, offset + bell_product_index(r, s)) for s in range(4)] for r in range(4)]


def det_z(N: int = 15, offset: int = 0) -> SparsePoly:
    z = _z_polys(N, offset)
    out = SparsePoly(N)
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = SparsePoly.constant(N, -1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term = term * z[i][j]
        out = out + term
    return out


def trace_zzt_squared(N: int = 15, offset: int = 0) -> SparsePoly:
    z = _z_polys(N, offset)
    zzt = [[sum((z[a][b] * z[c][b] for b in range(4)), SparsePoly(N)) for c in range(4)] for a in range(4)]
    return sum((zzt[a][c] * zzt[c][a] for a in range(4) for c in range(4)), SparsePoly(N))


@lru_cache(maxsize=None)
def build_w() -> SparsePoly:
    """w = sum_j df(x)/dx_j * dg(y)/dy_j with f = det Z and g = tr((Z Z^T)^2), N = 15."""
    N = 15
    f = det_z(N, offset=0)
    g = trace_zzt_squared(N, offset=N + 1)
    out = SparsePoly(N)
    for j in range(N + 1):
        out = out + f.diff(j) * g.diff(N + 1 + j)
    return out


def phi_poly() -> SparsePoly:
    """x0 x1 x2 y3^3 + x0 x1 y2^3 x3 + x0 y1^3 x2 x3 + y0^3 x1 x2 x3, with N = 3."""
    N = 3
    out = SparsePoly(N)
    for j in range(4):
        mono = [(i, 1) for i in range(4) if i != j] + [(N + 1 + j, 3)]
        out = out + SparsePoly(N, {tuple(mono): 1})
    return out


def mu_poly() -> SparsePoly:
    """sum_j x_j y_j^2 * (sum over i != j of y_i times the two remaining x's), with N = 3."""
    N = 3
    out = SparsePoly(N)
    for j in range(4):
        others = [i for i in range(4) if i != j]
        for i in others:
            mono = [(j, 1), (N + 1 + j, 2), (N + 1 + i, 1)] + [(t, 1) for t in others if t != i]
            out = out + SparsePoly(N, {tuple(sorted(mono)): 1})
    return out


@lru_cache(maxsize=None)
def degree6_polynomial() -> SparsePoly:
    """The degree-6 five-qubit invariant as an exact polynomial in (x, y)."""
    return extract_invariant(build_w(), 3)


def five_qubit_coordinates(psi: QuditState) -> np.ndarray:
    """(x, y) in the Bell-product basis: x from the first-qubit-|0> block, y from the |1> block."""
    if tuple(psi.dims) != (2,) * 5:
        raise ValueError("expected a five-qubit state")
    blocks = psi.amps.reshape(2, 16).T
    coords = np.linalg.solve(bell_product_matrix(), blocks)
    return np.concatenate([coords[:, 0], coords[:, 1]])


def degree6_five_qubit(psi: QuditState) -> complex:
    """Value of the degree-6 invariant at a five-qubit state."""
    # far out on an orbit the 4800 terms cancel to ~1e-13 of their size,
    # beyond double or extended precision, so the sum is done exactly
    return degree6_polynomial().evaluate_exact(five_qubit_coordinates(psi))
