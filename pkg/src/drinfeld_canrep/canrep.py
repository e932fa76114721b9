"""The representation of SL_2(F_q) on holomorphic differentials of the curve.

The basis is omega_{i,j} = x^i y^j / x^q dx with i + j <= q - 2. An element
g = [[a, b], [c, d]] acts through pullback along g^{-1}, which sends
omega_{i,j} to (d x - b y)^i (-c x + a y)^j / x^q dx. So the action is
plain expansion of products of linear forms, and it preserves the degree
i + j. Within a degree k the basis is ordered omega_{k,0}, omega_{k-1,1},
..., omega_{0,k}.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .gfq import FieldSpec
from .matfq import Matrix, block_diag, matmul_arrays
from .sl2 import GroupElement, Policy, enumerate_group, group_index, mul_keys, sample_pairs


class HomomorphismViolation(AssertionError):
    def __init__(self, g, h, message="rho(g) rho(h) != rho(g h)"):
        super().__init__(f"{message}: g={g}, h={h}")
        self.g, self.h = g, h


class DiffIndex(NamedTuple):
    i: int
    j: int

    @property
    def degree(self) -> int:
        return self.i + self.j


def genus(q: int) -> int:
    return q * (q - 1) // 2


def basis_indices(spec: FieldSpec) -> list[DiffIndex]:
    q = spec.q
    return [DiffIndex(i, k - i) for k in range(q - 1) for i in range(k, -1, -1)]


@functools.cache
def binomial_row(n: int, p: int) -> tuple[int, ...]:
    """Binomial coefficients C(n, 0..n) mod p via Pascal's rule."""
    row = [1]
    for _ in range(n):
        row = [1] + [(row[t] + row[t + 1]) % p for t in range(len(row) - 1)] + [1]
    return tuple(row)


def linear_form_power(spec: FieldSpec, u: int, v: int, n: int) -> list[int]:
    """(u x + v y)^n as coefficients indexed by the x-exponent."""
    binom = binomial_row(n, spec.p)
    return [spec.mul(binom[a] % spec.p, spec.mul(spec.pow(u, a), spec.pow(v, n - a))) for a in range(n + 1)]


def _poly_mul(spec: FieldSpec, f: Sequence[int], g: Sequence[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for s, a in enumerate(f):
        if a:
            for t, b in enumerate(g):
                if b:
                    out[s + t] = spec.add(out[s + t], spec.mul(a, b))
    return out


def form_product_block(spec: FieldSpec, k: int, first: tuple[int, int], second: tuple[int, int]) -> np.ndarray:
    """(k+1) x (k+1) block whose column k - e expands first^e * second^(k-e).

    Rows are indexed by k minus the x-exponent, so row 0 is x^k.
    """
    out = np.zeros((k + 1, k + 1), dtype=np.int64)
    pw1 = [linear_form_power(spec, first[0], first[1], e) for e in range(k + 1)]
    pw2 = [linear_form_power(spec, second[0], second[1], e) for e in range(k + 1)]
    for e in range(k + 1):
        col = _poly_mul(spec, pw1[e], pw2[k - e])
        for a, c in enumerate(col):
            out[k - a, k - e] = c
    return out


def action_block(k: int, g: GroupElement) -> Matrix:
    """Matrix of g on W^k = span{omega_{i,k-i}}; column for omega_{i,j} holds
    (d x - b y)^i (-c x + a y)^j."""
    spec = g.spec
    if not 0 <= k <= spec.q - 2:
        raise ValueError(f"degree {k} out of range for q={spec.q}")
    a, b, c, d = g.key
    return Matrix(spec, form_product_block(spec, k, (d, spec.neg(b)), (spec.neg(c), a)))


@dataclass
class GradedBlockMatrix:
    spec: FieldSpec
    blocks: list[Matrix]

    def assemble(self) -> Matrix:
        return block_diag(self.spec, self.blocks)

    @property
    def dimension(self) -> int:
        return sum(b.rows for b in self.blocks)


def action_full(g: GroupElement) -> GradedBlockMatrix:
    return GradedBlockMatrix(g.spec, [action_block(k, g) for k in range(g.spec.q - 1)])


def block_offsets(q: int) -> list[int]:
    return [k * (k + 1) // 2 for k in range(q)]


def is_block_diagonal(M: Matrix, q: int) -> bool:
    """True iff every entry outside the degree blocks is zero."""
    mask = np.ones(M.shape, dtype=bool)
    off = block_offsets(q)
    for k in range(q - 1):
        mask[off[k] : off[k + 1], off[k] : off[k + 1]] = False
    return not M.data[mask].any()


def action_arrays(spec: FieldSpec, elements: Sequence[GroupElement]) -> np.ndarray:
    """Stacked assembled action matrices, shape (len(elements), g, g)."""
    n = genus(spec.q)
    out = np.zeros((len(elements), n, n), dtype=np.int64)
    off = block_offsets(spec.q)
    for t, g in enumerate(elements):
        a, b, c, d = g.key
        first, second = (d, spec.neg(b)), (spec.neg(c), a)
        for k in range(spec.q - 1):
            out[t, off[k] : off[k + 1], off[k] : off[k + 1]] = form_product_block(spec, k, first, second)
    return out


@functools.cache
def all_action_arrays(spec: FieldSpec) -> np.ndarray:
    arr = action_arrays(spec, enumerate_group(spec))
    arr.setflags(write=False)
    return arr


@dataclass
class HomomorphismReport:
    q: int
    mode: str
    seed: int | None
    pairs_checked: int
    inverses_checked: int
    passed: bool = True

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "seed": self.seed,
            "pairs": self.pairs_checked,
            "inverses": self.inverses_checked,
            "status": "pass" if self.passed else "fail",
        }


def verify_homomorphism(spec: FieldSpec, policy: Policy | str = "auto", batch: int = 512) -> HomomorphismReport:
    """Check rho(g) rho(h) = rho(g h) and rho(g^-1) rho(g) = I.

    Raises HomomorphismViolation with the first offending pair.
    """
    if isinstance(policy, str):
        policy = Policy(policy)
    group = enumerate_group(spec)
    index = group_index(spec)
    policy = policy.resolve(len(group))
    rho = all_action_arrays(spec)
    N = len(group)
    n = rho.shape[1]
    keys = [g.key for g in group]

    if policy.kind == "exhaustive":
        pairs = np.array([(i, j) for i in range(N) for j in range(N)], dtype=np.int64).reshape(-1, 2)
        inv_idx = np.arange(N)
    else:
        pairs = sample_pairs(N, policy.n, policy.seed)
        inv_idx = np.unique(pairs.ravel())

    prod_idx = np.array([index[mul_keys(spec, keys[i], keys[j])] for i, j in pairs], dtype=np.int64)
    for start in range(0, len(pairs), batch):
        chunk = pairs[start : start + batch]
        got = matmul_arrays(spec, rho[chunk[:, 0]], rho[chunk[:, 1]])
        bad = np.flatnonzero((got != rho[prod_idx[start : start + batch]]).reshape(len(chunk), -1).any(axis=1))
        if bad.size:
            i, j = chunk[bad[0]]
            raise HomomorphismViolation(group[i], group[j])

    ident = np.eye(n, dtype=np.int64)
    inv_of = np.array([index[group[i].inverse().key] for i in inv_idx], dtype=np.int64)
    for start in range(0, len(inv_idx), batch):
        idx = inv_idx[start : start + batch]
        got = matmul_arrays(spec, rho[inv_of[start : start + batch]], rho[idx])
        bad = np.flatnonzero((got != ident).reshape(len(idx), -1).any(axis=1))
        if bad.size:
            g = group[idx[bad[0]]]
            raise HomomorphismViolation(g, g.inverse(), "rho(g^-1) != rho(g)^-1")

    return HomomorphismReport(
        q=spec.q,
        mode=policy.kind,
        seed=None if policy.kind == "exhaustive" else policy.seed,
        pairs_checked=len(pairs),
        inverses_checked=len(inv_idx),
    )
