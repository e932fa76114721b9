"""Acceptance criteria 1-8. Each test prints one PASS/FAIL line with the
measured wall time against its limit. Caches are cleared first so timings
are cold-start.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python scripts/run_acceptance.py``.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from drinfeld_canrep import canrep, drinfeld, gfq, sl2, vkdecomp
from drinfeld_canrep.canrep import action_full, basis_indices, genus, is_block_diagonal, verify_homomorphism
from drinfeld_canrep.gfq import build_field
from drinfeld_canrep.sl2 import Policy, enumerate_group, generators, sample_indices
from drinfeld_canrep.vkdecomp import (
    action_matrix_direct,
    augmentation_nilpotency_check,
    digit_set_bruteforce,
    embed_vk_into_group_algebra,
    group_algebra_L,
    locality_certificate,
    semisimplicity_check,
    verify_intertwining,
)

QS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
SEED = 0


def cold():
    for fn in (gfq.build_field, sl2.enumerate_group, sl2.group_index, sl2.generators, sl2.subgroup_L,
               canrep.all_action_arrays, canrep.binomial_row, drinfeld._expansion_powers):
        fn.cache_clear()


@pytest.fixture
def announce(capsys):
    def emit(n, ok, detail, elapsed, limit=None):
        ok = ok and (limit is None or elapsed < limit)
        bound = f"{elapsed:.2f}s" if limit is None else f"{elapsed:.2f}s < {limit}s"
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}  [{bound}]")
        return ok
    return emit


def test_criterion_1_genus(announce):
    cold()
    worst, ok, dims = 0.0, True, []
    for p, r in QS:
        t0 = time.perf_counter()
        F = build_field(p, r)
        q = F.q
        g = genus(q)
        M = action_full(sl2.GroupElement.identity(F)).assemble()
        ok &= g == q * (q - 1) // 2 == len(basis_indices(F)) == M.rows == sum(k + 1 for k in range(q - 1))
        worst = max(worst, time.perf_counter() - t0)
        dims.append(g)
    ok &= dims == [1, 3, 6, 10, 21, 28, 36]
    assert announce(1, ok, f"dim M = {dims}", worst, 1)


def test_criterion_2_homomorphism(announce):
    cold()
    t0 = time.perf_counter()
    ok, done = True, []
    for p, r in QS:
        F = build_field(p, r)
        exhaustive = F.q <= 5
        policy = Policy("exhaustive") if exhaustive else Policy("sampled", SEED, 10_000)
        try:
            rep = verify_homomorphism(F, policy)
        except canrep.HomomorphismViolation as exc:
            done.append(f"q={F.q}:{exc}")
            ok = False
            continue
        expected = len(enumerate_group(F)) ** 2 if exhaustive else 10_000
        ok &= rep.passed and rep.pairs_checked == expected
        done.append(f"q={F.q}:{rep.mode}/{rep.pairs_checked}")
    assert announce(2, ok, " ".join(done), time.perf_counter() - t0, 60)


def test_criterion_3_blocks_and_intertwiners(announce):
    cold()
    t0 = time.perf_counter()
    ok = True
    for p, r in QS:
        F = build_field(p, r)
        G = enumerate_group(F)
        idx = sample_indices(len(G), 1000, SEED)
        elems = list(generators(F)) + [G[t] for t in idx]
        rho = canrep.action_arrays(F, elems)
        for g, M in zip(elems, rho):
            # the ungraded expansion must agree and vanish off the blocks
            direct = action_matrix_direct(g)
            ok &= np.array_equal(direct.data, M) and is_block_diagonal(direct, F.q)
        for k in range(F.q - 1):
            rep = verify_intertwining(F, k, n_samples=1000, seed=SEED + k)
            ok &= rep.passed and rep.samples_checked == 1000
    assert announce(3, ok, "block diagonal; T rho_V = rho_W T on gens + 1000 samples", time.perf_counter() - t0, 60)
    assert ok


def test_criterion_4_indecomposability(announce):
    cold()
    t0 = time.perf_counter()
    ok, exps = True, []
    for p, r in QS:
        F = build_field(p, r)
        for k in range(F.q - 1):
            ok &= locality_certificate(F, k).certified
            rep = embed_vk_into_group_algebra(F, k)
            ok &= rep.passed and rep.rank == k + 1
        aug = augmentation_nilpotency_check(group_algebra_L(F))
        ok &= aug.exponent == r * (p - 1) + 1
        exps.append(f"q={F.q}:{aug.exponent}")
    detail = "all certified; augmentation exponents " + " ".join(exps)
    assert announce(4, ok, detail, time.perf_counter() - t0, 120)
    assert ok


def test_criterion_5_vanishing_orders(announce):
    cold()
    t0 = time.perf_counter()
    ok, n = True, 0
    for p, r in QS:
        F = build_field(p, r)
        for row in drinfeld.order_table(F):
            ok &= row.series_ok and row.total == F.q**2 - F.q - 2
            n += 1
    assert announce(5, ok, f"{n} differentials: series = closed form, totals = q^2-q-2", time.perf_counter() - t0, 30)
    assert ok


def test_criterion_6_geometry(announce):
    cold()
    t0 = time.perf_counter()
    ok, notes = True, []
    for p, r in QS:
        F = build_field(p, r)
        tr = drinfeld.verify_transitivity_at_infinity(F)
        ok &= tr.orbit_size == F.q + 1 and tr.stabilizer_order == F.q * (F.q - 1) and tr.stabilizer_upper_triangular
        m = 2 if F.q <= 5 else 1
        fa = drinfeld.verify_free_action(F, m)
        ok &= fa.passed
        ok &= fa.vacuous == (fa.n_points == 0)
        notes.append(f"q={F.q},m={m}:{fa.status}")
    assert announce(6, ok, " ".join(notes), time.perf_counter() - t0, 60)
    assert ok


def test_criterion_7_semisimplicity(announce):
    cold()
    t0 = time.perf_counter()
    ok, notes = True, []
    for p, r in QS:
        F = build_field(p, r)
        ss, witness = semisimplicity_check(F)
        ok &= (ss, witness) == ((True, None) if r == 1 else (False, p))
        for k in range(F.q - 1):
            ok &= vkdecomp.is_simple(k, p) == (digit_set_bruteforce(k, p) == set(range(k + 1)))
        notes.append(f"q={F.q}:{'ss' if ss else f'w={witness}'}")
    assert announce(7, ok, " ".join(notes), time.perf_counter() - t0, 1)
    assert ok


def test_criterion_8_determinism(announce, tmp_path):
    t0 = time.perf_counter()
    outs = []
    for n in range(2):
        path = tmp_path / f"run{n}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "drinfeld_canrep", "verify", "--q", "9", "--seed", "7", "--out", str(path)],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(path.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    assert announce(8, ok, f"two reports, {len(outs[0])} bytes each, identical={outs[0] == outs[1]}",
                    time.perf_counter() - t0)
    assert ok
