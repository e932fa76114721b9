"""The group SL_2(F_q): elements, enumeration, transvection generators and
the lower unitriangular subgroup L, plus the seeded sampling policy used by
every pair check above the exhaustive threshold."""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gfq import FieldElement, FieldSpec, SpecMismatch, TooLarge
from .matfq import Matrix

GROUP_ENUM_CAP = 10**6
EXHAUSTIVE_GROUP_ORDER = 120
DEFAULT_SAMPLES = 10_000


class NotInSL2(ValueError):
    pass


def group_order(q: int) -> int:
    return q * (q - 1) * (q + 1)


@dataclass(frozen=True)
class GroupElement:
    """[[a, b], [c, d]] with ad - bc = 1; a, b, c, d are alpha, beta, gamma, delta."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    def __post_init__(self):
        spec = self.a.spec
        if any(x.spec != spec for x in (self.b, self.c, self.d)):
            raise SpecMismatch("entries live in different fields")
        if self.a * self.d - self.b * self.c != spec.one:
            raise NotInSL2(f"determinant of {self.key} is not 1")

    @classmethod
    def from_ints(cls, spec: FieldSpec, a: int, b: int, c: int, d: int) -> "GroupElement":
        return cls(spec.element(a), spec.element(b), spec.element(c), spec.element(d))

    @classmethod
    def identity(cls, spec: FieldSpec) -> "GroupElement":
        return cls.from_ints(spec, 1, 0, 0, 1)

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.a.value, self.b.value, self.c.value, self.d.value)

    def is_identity(self) -> bool:
        return self.key == (1, 0, 0, 1)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_mul(self, other)

    def inverse(self) -> "GroupElement":
        return group_inv(self)

    def matrix(self) -> Matrix:
        return Matrix(self.spec, [[self.a.value, self.b.value], [self.c.value, self.d.value]])

    def serialize(self) -> str:
        return " ".join(str(v) for v in self.key)

    @classmethod
    def parse(cls, spec: FieldSpec, text: str) -> "GroupElement":
        return cls.from_ints(spec, *(int(t) for t in text.split()))

    def __repr__(self):
        return f"SL2[{self.a.value} {self.b.value}; {self.c.value} {self.d.value}]"


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.spec != h.spec:
        raise SpecMismatch(f"{g.spec} vs {h.spec}")
    return GroupElement(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d)


def group_inv(g: GroupElement) -> GroupElement:
    """Adjugate: [[d, -b], [-c, a]]."""
    return GroupElement(g.d, -g.b, -g.c, g.a)


def mul_keys(spec: FieldSpec, g: tuple, h: tuple) -> tuple[int, int, int, int]:
    """group_mul on encoding 4-tuples, without the determinant check."""
    add, mul = spec.add, spec.mul
    a, b, c, d = g
    e, f, x, y = h
    return (
        add(mul(a, e), mul(b, x)),
        add(mul(a, f), mul(b, y)),
        add(mul(c, e), mul(d, x)),
        add(mul(c, f), mul(d, y)),
    )


@functools.cache
def enumerate_group(spec: FieldSpec) -> tuple[GroupElement, ...]:
    """All of SL_2(F_q), sorted by the encoding tuple (a, b, c, d)."""
    q = spec.q
    if group_order(q) > GROUP_ENUM_CAP:
        raise TooLarge(f"|SL_2(F_{q})| = {group_order(q)} exceeds {GROUP_ENUM_CAP}")
    keys = []
    for a in range(q):
        for b in range(q):
            for c in range(q):
                if a:
                    d = spec.mul(spec.add(1, spec.mul(b, c)), spec.inv(a))
                    keys.append((a, b, c, d))
                elif b and spec.mul(b, c) == spec.neg(1):
                    keys.extend((a, b, c, d) for d in range(q))
    keys.sort()
    return tuple(GroupElement.from_ints(spec, *k) for k in keys)


@functools.cache
def group_index(spec: FieldSpec) -> dict[tuple, int]:
    return {g.key: i for i, g in enumerate(enumerate_group(spec))}


@dataclass(frozen=True)
class GeneratorSet:
    elements: tuple[GroupElement, ...]
    kind: str  # "full-group" | "subgroup-L"

    def __post_init__(self):
        if not self.elements:
            raise ValueError("empty generator set")
        for g in self.elements:
            a, b, c, d = g.key
            if not (a == d == 1 and (b == 0 or c == 0)):
                raise ValueError(f"{g} is not an elementary transvection")

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def closure(gens: Sequence[GroupElement]) -> set[tuple]:
    """Keys of the subgroup generated by ``gens`` (breadth-first)."""
    spec = gens[0].spec
    ident = (1, 0, 0, 1)
    seen = {ident}
    todo = deque([ident])
    gkeys = [g.key for g in gens]
    while todo:
        x = todo.popleft()
        for g in gkeys:
            y = mul_keys(spec, x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def transvection_upper(spec: FieldSpec, a: int) -> GroupElement:
    return GroupElement.from_ints(spec, 1, a, 0, 1)


def transvection_lower(spec: FieldSpec, a: int) -> GroupElement:
    return GroupElement.from_ints(spec, 1, 0, a, 1)


@functools.cache
def generators(spec: FieldSpec) -> GeneratorSet:
    """E_12(a), then E_21(a), for a in the F_p-basis 1, Y, ..., Y^(r-1).

    For q <= 9 the generated subgroup is checked to be all of SL_2.
    """
    basis = spec.basis()
    elems = tuple(transvection_upper(spec, a) for a in basis) + tuple(transvection_lower(spec, a) for a in basis)
    gs = GeneratorSet(elems, "full-group")
    if spec.q <= 9 and len(closure(gs.elements)) != group_order(spec.q):
        raise AssertionError(f"transvections do not generate SL_2(F_{spec.q})")
    return gs


@dataclass(frozen=True)
class SubgroupL:
    """Lower unitriangular matrices [[1, 0], [a, 1]], labelled by a in F_q."""

    spec: FieldSpec
    generators: GeneratorSet
    elements: tuple[GroupElement, ...]

    def element_for(self, a) -> GroupElement:
        return self.elements[int(a)]

    @property
    def labels(self) -> list[int]:
        return list(range(self.spec.q))

    @property
    def generator_labels(self) -> list[int]:
        return [g.c.value for g in self.generators]


@functools.cache
def subgroup_L(spec: FieldSpec) -> SubgroupL:
    q = spec.q
    elems = tuple(transvection_lower(spec, a) for a in range(q))
    for a in range(q):
        for b in range(q):
            if (elems[a] * elems[b]).key != elems[spec.add(a, b)].key:
                raise AssertionError(f"a -> L(a) is not additive at ({a}, {b})")
    gens = GeneratorSet(tuple(elems[a] for a in spec.basis()), "subgroup-L")
    return SubgroupL(spec, gens, elems)


@dataclass(frozen=True)
class Policy:
    """How pair checks are run: every pair, or ``n`` pairs drawn with ``seed``.

    ``kind="auto"`` resolves to exhaustive when |G| <= 120.
    """

    kind: str = "auto"
    seed: int = 0
    n: int = DEFAULT_SAMPLES

    def __post_init__(self):
        if self.kind not in ("auto", "exhaustive", "sampled"):
            raise ValueError(f"unknown policy {self.kind!r}")
        if self.n < 1:
            raise ValueError("sample count must be >= 1")

    def resolve(self, order: int) -> "Policy":
        if self.kind != "auto":
            return self
        kind = "exhaustive" if order <= EXHAUSTIVE_GROUP_ORDER else "sampled"
        return Policy(kind, self.seed, self.n)


def sample_pairs(n_elements: int, n: int, seed: int) -> np.ndarray:
    """``n`` index pairs into a list of ``n_elements``; PCG64 stream from ``seed``."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, n_elements, size=(n, 2))


def sample_indices(n_elements: int, n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(0, n_elements, size=n)
