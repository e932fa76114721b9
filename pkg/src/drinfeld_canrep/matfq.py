"""Dense exact linear algebra over GF(q).

A :class:`Matrix` wraps a 2-D numpy array of field encodings. Products run
as float matmuls on the F_p coefficient digits (exact: every partial sum
stays far below 2^53) followed by reduction modulo the field polynomial,
which is what makes the exhaustive group checks affordable.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gfq import FieldElement, FieldSpec, SpecMismatch


class MatrixError(ValueError):
    pass


class Singular(MatrixError):
    pass


class DimensionMismatch(MatrixError):
    pass


def matmul_arrays(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of encoding arrays; leading axes broadcast like np.matmul."""
    p, r = spec.p, spec.r
    da = spec.digits_arr(a).astype(np.float64)
    db = spec.digits_arr(b).astype(np.float64)
    if r == 1:
        return np.rint(da[..., 0] @ db[..., 0]).astype(np.int64) % p
    shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
    prod = np.zeros(shape + (2 * r - 1,), dtype=np.int64)
    for u in range(r):
        for v in range(r):
            prod[..., u + v] += np.rint(da[..., u] @ db[..., v]).astype(np.int64)
    prod %= p
    return spec.encode_arr(prod @ spec.reduction_matrix)


class Matrix:
    __slots__ = ("spec", "data")

    def __init__(self, spec: FieldSpec, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise MatrixError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= spec.q):
            raise MatrixError(f"entries out of range for {spec}")
        self.spec = spec
        self.data = arr

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence]) -> "Matrix":
        """Rows of encodings or FieldElements."""
        conv = [[x.value if isinstance(x, FieldElement) else int(x) for x in row] for row in rows]
        if not conv:
            return cls(spec, np.zeros((0, 0), dtype=np.int64))
        return cls(spec, conv)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Matrix":
        return cls(spec, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def column(cls, spec: FieldSpec, values: Iterable) -> "Matrix":
        return cls(spec, np.array([int(v) for v in values], dtype=np.int64).reshape(-1, 1))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def entries(self) -> list[FieldElement]:
        return [FieldElement(self.spec, int(v)) for v in self.data.ravel()]

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.spec, int(self.data[i, j]))

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def key(self) -> bytes:
        return self.data.tobytes() + bytes(self.shape)

    def __repr__(self):
        return f"Matrix({self.spec!r}, {self.tolist()})"

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.spec == other.spec
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.spec, self.key()))

    def _same(self, other: "Matrix"):
        if other.spec != self.spec:
            raise SpecMismatch(f"{other.spec} vs {self.spec}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.spec, self.spec.add_arr(self.data, other.data))

    def __neg__(self) -> "Matrix":
        return Matrix(self.spec, self.spec.neg_arr(self.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.spec, self.rows, other.cols)
        return Matrix(self.spec, matmul_arrays(self.spec, self.data, other.data))

    def scale(self, c) -> "Matrix":
        c = c.value if isinstance(c, FieldElement) else int(c)
        return Matrix(self.spec, self.spec.mul_arr(c, self.data))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.spec, self.data.T.copy())

    def is_zero(self) -> bool:
        return not self.data.any()

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(np.array_equal(self.data, np.eye(self.rows, dtype=np.int64)))

    def rank(self) -> int:
        return rref(self)[1]

    def flatten(self) -> np.ndarray:
        """Row-major entry vector."""
        return self.data.ravel().copy()

    # -- dump format: "rows cols" then one row of encodings per line

    def dump(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(v) for v in row) for row in self.tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, spec: FieldSpec, text: str) -> "Matrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        rows, cols = (int(t) for t in lines[0].split())
        data = [[int(t) for t in ln.split()] for ln in lines[1 : 1 + rows]]
        m = cls(spec, np.array(data, dtype=np.int64).reshape(rows, cols))
        return m


def block_diag(spec: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = np.zeros((n, m), dtype=np.int64)
    i = j = 0
    for b in blocks:
        out[i : i + b.rows, j : j + b.cols] = b.data
        i += b.rows
        j += b.cols
    return Matrix(spec, out)


def _rref_array(spec: FieldSpec, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = a.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        lead = int(a[row, col])
        if lead != 1:
            a[row] = spec.mul_arr(spec.inv(lead), a[row])
        factors = a[:, col].copy()
        factors[row] = 0
        if factors.any():
            a = spec.sub_arr(a, spec.mul_arr(factors[:, None], a[row][None, :]))
        pivots.append(col)
        row += 1
    return a, pivots


def rref(M: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form, rank and pivot columns.

    Pivots are taken as the first nonzero entry in column order.
    """
    a, pivots = _rref_array(M.spec, M.data)
    return Matrix(M.spec, a), len(pivots), tuple(pivots)


def kernel_basis(M: Matrix) -> list[Matrix]:
    """Basis of {v : M v = 0} as column matrices, one per free column."""
    spec = M.spec
    R, rank, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(M.cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = spec.neg(int(R.data[i, f]))
        basis.append(Matrix(spec, v.reshape(-1, 1)))
    return basis


def inverse(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise DimensionMismatch(f"inverse of non-square {M.shape}")
    n = M.rows
    aug = np.hstack([M.data, np.eye(n, dtype=np.int64)])
    a, pivots = _rref_array(M.spec, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise Singular(f"rank {sum(1 for c in pivots if c < n)} < {n}")
    return Matrix(M.spec, a[:, n:])


def is_nilpotent(M: Matrix) -> bool:
    """True iff M^n = 0, by repeated squaring to an exponent >= n."""
    if M.rows != M.cols:
        raise DimensionMismatch("nilpotency of a non-square matrix")
    n = M.rows
    P, e = M, 1
    while e < n:
        P = P @ P
        e *= 2
    return P.is_zero()


def kron(A: Matrix, B: Matrix) -> Matrix:
    spec = A.spec
    A._same(B)
    prod = spec.mul_arr(A.data[:, None, :, None], B.data[None, :, None, :])
    return Matrix(spec, prod.reshape(A.rows * B.rows, A.cols * B.cols))


def hom_space(A_gens: Sequence[Matrix], B_gens: Sequence[Matrix]) -> list[Matrix]:
    """Basis of {T (m x n) : T A_i = B_i T for all i}.

    T is flattened column-major; the equations for generator i are
    (A_i^T (x) I_m - I_n (x) B_i) vec(T) = 0, stacked generator-major.
    """
    if len(A_gens) != len(B_gens):
        raise DimensionMismatch("generator lists differ in length")
    if not A_gens:
        raise DimensionMismatch("at least one generator is required")
    spec = A_gens[0].spec
    n, m = A_gens[0].rows, B_gens[0].rows
    blocks = []
    for A, B in zip(A_gens, B_gens):
        if A.shape != (n, n) or B.shape != (m, m):
            raise DimensionMismatch(f"generator shapes {A.shape}, {B.shape}")
        blocks.append((kron(A.T, Matrix.identity(spec, m)) - kron(Matrix.identity(spec, n), B)).data)
    system = Matrix(spec, np.vstack(blocks))
    out = []
    for v in kernel_basis(system):
        out.append(Matrix(spec, v.data.reshape(n, m).T.copy()))
    return out


def span_basis(spec: FieldSpec, mats: Sequence[Matrix], shape: tuple[int, int] | None = None) -> list[Matrix]:
    """Echelon basis of the span of ``mats`` (all of one shape)."""
    if not mats:
        return []
    shape = shape or mats[0].shape
    stacked = np.vstack([m.data.reshape(1, -1) for m in mats])
    a, pivots = _rref_array(spec, stacked)
    return [Matrix(spec, a[i].reshape(shape)) for i in range(len(pivots))]


def in_span(spec: FieldSpec, basis: Sequence[Matrix], M: Matrix) -> bool:
    if not basis:
        return M.is_zero()
    stacked = np.vstack([b.data.reshape(1, -1) for b in basis])
    r0 = len(_rref_array(spec, stacked)[1])
    r1 = len(_rref_array(spec, np.vstack([stacked, M.data.reshape(1, -1)]))[1])
    return r0 == r1


def coordinates(spec: FieldSpec, basis: Sequence[Matrix], M: Matrix) -> list[int] | None:
    """Coefficients c with sum c_i basis_i = M, or None if M is outside the span."""
    cols = np.vstack([b.data.reshape(-1) for b in basis]).T
    aug = np.hstack([cols, M.data.reshape(-1, 1)])
    a, pivots = _rref_array(spec, aug)
    k = len(basis)
    if k in pivots:
        return None
    c = [0] * k
    for i, pc in enumerate(pivots):
        c[pc] = int(a[i, k])
    return c
