import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_canrep.canrep import action_block
from drinfeld_canrep.gfq import build_field
from drinfeld_canrep.matfq import Matrix, hom_space, in_span, is_nilpotent
from drinfeld_canrep.sl2 import GroupElement, Policy, generators
from drinfeld_canrep.vkdecomp import (
    augmentation_nilpotency_check,
    digit_set_bruteforce,
    digit_set_I,
    duality_intertwiner,
    embed_vk_into_group_algebra,
    embedding_closed_form,
    endomorphism_algebra_over_L,
    group_algebra_L,
    is_simple,
    locality_certificate,
    restrict_to_L,
    semisimplicity_check,
    verify_intertwining,
    verify_theorem,
    vk_matrix,
)

F3 = build_field(3, 1)


def test_vk_examples():
    g = GroupElement.from_ints(F3, 1, 1, 0, 1)
    assert vk_matrix(0, g).tolist() == [[1]]
    # x -> x, y -> x + y
    assert vk_matrix(1, g).tolist() == [[1, 1], [0, 1]]
    h = GroupElement.from_ints(F3, 1, 0, 1, 1)
    assert vk_matrix(1, h).tolist() == [[1, 0], [1, 1]]


def test_duality_example():
    g = GroupElement.from_ints(F3, 1, 0, 1, 1)
    T = duality_intertwiner(F3, 1)
    assert duality_intertwiner(F3, 0).tolist() == [[1]]
    assert T @ vk_matrix(1, g) == action_block(1, g) @ T
    # T(x + y) = omega_{0,1} - omega_{1,0}
    v = T @ Matrix.column(F3, [1, 1])
    assert v.tolist() == [[2], [1]]


def test_hom_space_contains_duality():
    gens = list(generators(F3))
    H = hom_space([vk_matrix(1, g) for g in gens], [action_block(1, g) for g in gens])
    assert len(H) >= 1
    assert in_span(F3, H, duality_intertwiner(F3, 1))


def test_intertwining_all_degrees(field):
    for k in range(field.q - 1):
        assert verify_intertwining(field, k, n_samples=100, seed=k).passed


def test_restriction_example():
    assert restrict_to_L(F3, 1)[0].tolist() == [[1, 1], [0, 1]]
    for M in restrict_to_L(F3, 0):
        assert M.tolist() == [[1]]


@pytest.mark.parametrize("p,k,dim", [(3, 0, 1), (3, 1, 2), (5, 2, 3), (5, 3, 4)])
def test_endomorphism_dims_prime_field(p, k, dim):
    # for k < p the generator of L acts by one Jordan block of size k + 1,
    # whose commutant has dimension k + 1
    assert len(endomorphism_algebra_over_L(build_field(p, 1), k)) == dim


def test_locality_examples():
    c0 = locality_certificate(F3, 0)
    assert c0.certified and c0.nil_ideal == [] and c0.scalar_map == [1]
    c1 = locality_certificate(F3, 1)
    assert c1.certified and len(c1.nil_ideal) == 1 and c1.nil_exponent == 2
    x = c1.nil_ideal[0]
    assert (x @ x).is_zero()


def test_locality_all(field):
    for k in range(field.q - 1):
        assert locality_certificate(field, k).certified


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(2, 2), (5, 1), (2, 3), (3, 2)]), st.data())
def test_locality_soundness(pr, data):
    # every E element is lambda(e) I plus a nilpotent: a unit iff lambda(e) != 0
    F = build_field(*pr)
    k = data.draw(st.integers(0, F.q - 2))
    cert = locality_certificate(F, k)
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    n = k + 1
    for _ in range(1000 // 15 + 1):
        coeffs = [int(c) for c in rng.integers(0, F.q, len(cert.endo_basis))]
        e = Matrix.zeros(F, n, n)
        for c, b in zip(coeffs, cert.endo_basis):
            e = e + b.scale(c)
        lam = cert.scalar_of(coeffs, F)
        assert is_nilpotent(e - Matrix.identity(F, n).scale(lam))
        assert (e.rank() == n) == (lam != 0)


@pytest.mark.parametrize("p,r,expected", [(2, 1, 2), (3, 1, 3), (2, 2, 3), (5, 1, 5), (2, 3, 4), (3, 2, 5)])
def test_augmentation_exponent(p, r, expected):
    rep = augmentation_nilpotency_check(group_algebra_L(build_field(p, r)))
    assert rep.exponent == expected == r * (p - 1) + 1


def test_embedding_examples():
    rep0 = embed_vk_into_group_algebra(F3, 0)
    assert rep0.matrix.tolist() == [[2], [2], [2]]
    phi = embedding_closed_form(F3, 1)
    assert [row[1] for row in phi.tolist()] == [0, 2, 1]
    for F in (F3, build_field(2, 2), build_field(5, 1)):
        rep = embed_vk_into_group_algebra(F, F.q - 2)
        assert rep.rank == F.q - 1 and rep.passed


def test_embedding_all(field):
    for k in range(field.q - 1):
        assert embed_vk_into_group_algebra(field, k).passed


def test_digit_sets():
    assert digit_set_I(3, 3) == {0, 3}
    assert not is_simple(3, 3)
    assert 1 not in digit_set_I(2, 2) and not is_simple(2, 2)
    for p in (2, 3, 5, 7):
        for k in range(p):
            assert is_simple(k, p)
        for n in range(60):
            assert digit_set_I(n, p) == digit_set_bruteforce(n, p)


def test_simplicity_against_binomials():
    # independent oracle: I(k) = {m : C(k, m) != 0 mod p} (Lucas)
    from math import comb

    for p in (2, 3, 5):
        for k in range(40):
            assert digit_set_I(k, p) == {m for m in range(k + 1) if comb(k, m) % p}


@pytest.mark.parametrize("p,r,ss,witness", [(2, 1, True, None), (3, 1, True, None), (5, 1, True, None),
                                             (7, 1, True, None), (2, 2, False, 2), (2, 3, False, 2),
                                             (3, 2, False, 3)])
def test_semisimplicity(p, r, ss, witness):
    assert semisimplicity_check(build_field(p, r)) == (ss, witness)


def test_theorem_small():
    rep = verify_theorem(build_field(2, 1))
    assert [s.dim for s in rep.summands] == [1] and rep.semisimple and rep.certified
    rep = verify_theorem(F3)
    assert [s.dim for s in rep.summands] == [1, 2]
    assert all(s.simple for s in rep.summands) and rep.semisimple and rep.certified
    rep = verify_theorem(build_field(2, 2))
    assert [s.dim for s in rep.summands] == [1, 2, 3]
    assert not rep.summands[2].simple and not rep.semisimple and rep.certified


def test_report_json_is_stable():
    F = build_field(2, 2)
    a = verify_theorem(F, Policy("sampled", 3, 500)).to_json()
    b = verify_theorem(F, Policy("sampled", 3, 500), threads=4).to_json()
    assert a == b
    assert '"timings"' not in a
