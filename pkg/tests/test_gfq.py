import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_canrep.gfq import (
    DivisionByZero,
    FieldSpec,
    NonPrime,
    NotRational,
    Poly,
    PowerSeries,
    PrimePower,
    TooLarge,
    build_extension,
    build_field,
    enumerate_elements,
    field_of_order,
    series_solve_artin_schreier,
)


def has_root_mod_p(coeffs, p):
    return any(sum(c * x**e for e, c in enumerate(coeffs)) % p == 0 for x in range(p))


def first_irreducible_by_scan(p, r):
    # only valid for r <= 3: irreducible iff no root
    for tail in itertools.product(range(p), repeat=r):
        coeffs = list(reversed(tail))
        enc = sum(c * p**e for e, c in enumerate(coeffs))
        yield enc, coeffs + [1]


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (2, 3), (5, 2), (7, 2)])
def test_modulus_is_first_rootless_monic(p, r):
    # candidates in encoding order of the lower coefficients
    cands = sorted(first_irreducible_by_scan(p, r))
    expected = next(c for _, c in cands if not has_root_mod_p(c, p))
    assert list(build_field(p, r).modulus) == expected


def test_known_moduli():
    assert build_field(3, 1).modulus == (0, 1)
    assert build_field(2, 2).modulus == (1, 1, 1)
    assert build_field(3, 2).modulus == (1, 0, 1)


def test_f4_omega_squared():
    F = build_field(2, 2)
    w = F.element(2)
    assert w * w == w + 1


def test_f9_double_frobenius_is_identity():
    F = build_field(3, 2)
    for a in F.elements():
        assert a.frobenius().frobenius() == a
    assert any(a.frobenius() != a for a in F.elements())


def test_enumerate():
    assert [a.value for a in enumerate_elements(build_field(2, 1))] == [0, 1]
    F4 = enumerate_elements(build_field(2, 2))
    assert len(set(a.value for a in F4)) == 4
    F9 = build_field(3, 2)
    total = F9.zero
    for a in F9.elements():
        total = total + a
    assert total == F9.zero


def test_multiplication_against_polynomial_product(field):
    # oracle: schoolbook product of digit vectors, reduced by the modulus
    p, r, f = field.p, field.r, field.modulus
    def ref(a, b):
        da, db = field.digits(a), field.digits(b)
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(len(prod) - 1, r - 1, -1):
            c = prod[deg]
            if c:
                for t in range(r + 1):
                    prod[deg - r + t] = (prod[deg - r + t] - c * f[t]) % p
        return field.encode(prod[:r])
    for a in range(field.q):
        for b in range(field.q):
            assert field.mul(a, b) == ref(a, b)


def test_array_ops_match_scalar(field):
    a, b = np.meshgrid(np.arange(field.q), np.arange(field.q), indexing="ij")
    a, b = a.ravel(), b.ravel()
    assert list(field.mul_arr(a, b)) == [field.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert list(field.add_arr(a, b)) == [field.add(int(x), int(y)) for x, y in zip(a, b)]
    assert list(field.sub_arr(a, b)) == [field.sub(int(x), int(y)) for x, y in zip(a, b)]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (5, 1), (2, 4)]), st.data())
def test_field_axioms(pr, data):
    F = build_field(*pr)
    elem = st.integers(0, F.q - 1).map(F.element)
    a, b, c = data.draw(elem), data.draw(elem), data.draw(elem)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == F.zero
    if a:
        assert a * a.inv() == F.one
        assert a ** (F.q - 1) == F.one


def test_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        build_field(3, 1).one / build_field(3, 1).zero


def test_bad_parameters():
    with pytest.raises(NonPrime):
        build_field(6, 1)
    with pytest.raises(TooLarge):
        build_field(2, 17)
    with pytest.raises(ValueError, match="not a prime power"):
        PrimePower.from_q(6)
    assert field_of_order(9) is build_field(3, 2)


def test_serialize_roundtrip(field):
    assert FieldSpec.parse(field.serialize()) == field


@pytest.mark.parametrize("p,r,m", [(3, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 3), (3, 2, 2)])
def test_extension_image_is_fixed_field(p, r, m):
    F = build_field(p, r)
    ext, emb = build_extension(F, m)
    assert ext.q == F.q**m
    fixed = {v for v in range(ext.q) if ext.pow(v, F.q) == v}
    assert emb.image_set() == fixed
    assert emb.map_int(0) == 0 and emb.map_int(1) == 1
    if m == 1:
        assert emb.image == tuple(range(F.q))


def test_poly_divmod_and_shift():
    F = build_field(5, 1)
    f = Poly(F, [1, 2, 3, 4])
    g = Poly(F, [2, 1])
    quo, rem = f.divmod(g)
    assert quo * g + rem == f
    assert rem.degree < g.degree
    for a in range(5):
        for x in range(5):
            assert f.shift(a)(x) == f(F.add(x, a))


def test_series_examples():
    s = series_solve_artin_schreier(build_field(3, 1), 0, 13)
    expected = [0] * 13
    expected[4] = expected[12] = 2
    assert list(s.coeffs) == expected
    for q_pr in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        F = build_field(*q_pr)
        assert series_solve_artin_schreier(F, 0, F.q + 1).is_zero()
    s = series_solve_artin_schreier(build_field(2, 1), 1, 4)
    assert list(s.coeffs) == [1, 0, 0, 1]


def test_series_rejects_nonrational_constant():
    F = build_field(3, 2)
    with pytest.raises(NotRational):
        series_solve_artin_schreier(F, 3, 10, q=3)  # Y is not in F_3


@pytest.mark.parametrize("sign", [1, -1])
def test_series_satisfies_equation(field, sign):
    # substitute back: s^q - s - sign t^(q+1) = 0 mod t^N
    q, N = field.q, 3 * field.q + 2
    for s0 in range(q):
        s = series_solve_artin_schreier(field, s0, N, sign=sign)
        rhs = PowerSeries.monomial(field, q + 1, N, 1 if sign > 0 else field.neg(1))
        assert (s**q - s - rhs).is_zero()
        assert s.coeffs[0] == s0
