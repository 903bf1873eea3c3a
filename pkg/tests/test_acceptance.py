"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -m acceptance``.  Every
comparison is exact; the lift oracle and the kernel-based quasi-isomorphism
check are the independent sides.
"""

import random
import time
from itertools import combinations
from pathlib import Path

import pytest

from obstruct import model
from obstruct.chain import (HomologyGroup, cone, equal_up_to_boundary, homology, is_acyclic,
                            null_homotopy)
from obstruct.cli import main
from obstruct.generate import (random_cofibration, random_degreewise_lift, random_fibration,
                               random_matrix, random_square)
from obstruct.linalg import GF, QQ, ZZ, Matrix, snf
from obstruct.obstruction import (fibre_map, obstruction, obstruction_vanishes, postcompose,
                                  pushforward, rigid_obstruction, rigid_theory, shift_square)
from obstruct.oracle import brute_lift
from obstruct.problem import parse, serialize
from obstruct.simplicial import boundary_chain, rlp_equivalence_check

from helpers import (disk_sphere_square, induces_homology_isos, random_cobase_instance,
                     random_fibration_map, random_map_mix, random_retract_instance,
                     random_we_instance)

pytestmark = pytest.mark.acceptance

FIXTURES = Path(__file__).parent / "fixtures"
RINGS = [ZZ, QQ, GF(2)]


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail
    return emit


def test_criterion_1_obstruction_matches_oracle(report):
    start = time.perf_counter()
    counts, bad = [], 0
    for ring in RINGS:
        rng = random.Random(f"c1-{ring}")
        obstructed = 0
        for _ in range(200):
            sq = random_square(rng, ring)
            vanishes = obstruction_vanishes(obstruction(sq))
            lifts = brute_lift(sq) is not None
            bad += vanishes != lifts
            obstructed += not lifts
        counts.append(f"{ring}: 200 squares, {obstructed} obstructed")
    elapsed = time.perf_counter() - start
    report(1, bad == 0 and elapsed < 60,
           f"{'; '.join(counts)}; {bad} disagreements; {elapsed:.1f}s")


def test_criterion_2_functoriality(report):
    rng = random.Random("c2")
    failures = nonzero = 0
    for k in range(120):
        sq = random_square(rng, RINGS[k % 3])
        p2, gx, gy = random_fibration_map(rng, sq.p)
        direct = obstruction(postcompose(sq, p2, gx, gy))
        pushed = pushforward(obstruction(sq), fibre_map(sq.p, p2, gx))
        failures += not equal_up_to_boundary(pushed.theta, direct.theta)
        nonzero += not obstruction_vanishes(direct)
    report(2, failures == 0, f"120 composites, {nonzero} with nonzero class, {failures} failures")


def test_criterion_3_sigma_independence(report):
    rng = random.Random("c3")
    failures = pairs = 0
    for k in range(60):
        sq = random_square(rng, RINGS[k % 3])
        reps = [obstruction(sq, random_degreewise_lift(rng, sq)).theta for _ in range(10)]
        for a, b in combinations(reps, 2):
            pairs += 1
            failures += not equal_up_to_boundary(a, b)
    report(3, failures == 0, f"60 squares x 10 lifts, {pairs} pairs, {failures} failures")


@pytest.mark.parametrize("name,build", [("cobase change", random_cobase_instance),
                                        ("retract", random_retract_instance),
                                        ("weak equivalence", random_we_instance)])
def test_criterion_4_transports(report, name, build):
    rng = random.Random(f"c4-{name}")
    failures = obstructed = 0
    for k in range(60):
        t, sq = build(rng, RINGS[k % 3])
        lifts = brute_lift(sq) is not None
        failures += t.vanishes(sq) != lifts
        obstructed += not lifts
    report(4, failures == 0,
           f"{name}: 60 instances, {obstructed} obstructed, {failures} failures")


def test_criterion_5_rlp_and_fibre_homology(report):
    rng = random.Random("c5")
    failures, nonzero, total = 0, 0, 0
    for n in range(1, 5):
        for k in range(24):
            ring = (ZZ, GF(2))[k % 2]
            kind = ("disk", "simplex")[(k // 2) % 2]
            p = random_fibration(rng, ring, [n - 2, n - 1, n])
            v = rlp_equivalence_check(p, n, kind)
            total += 1
            ok = v.rlp == v.homology.is_zero()
            if not v.homology.is_zero():
                nonzero += 1
                ok = ok and v.witness is not None and brute_lift(v.witness) is None
            failures += not ok
    report(5, failures == 0,
           f"n = 1..4, {total} fibrations, {nonzero} with nonzero H_(n-1)(F), {failures} failures")


def test_criterion_6_rigid_theory(report):
    rng = random.Random("c6")
    bad_a = 0
    for k in range(60):
        th = rigid_theory(random_cofibration(rng, RINGS[k % 3]))
        bad_a += not is_acyclic(cone(th.a))
    bad_sq = obstructed = 0
    for k in range(60):
        sq = random_square(rng, RINGS[k % 3])
        composite_zero = null_homotopy(rigid_obstruction(sq)) is not None
        vanishes = obstruction_vanishes(obstruction(sq))
        bad_sq += composite_zero != vanishes or vanishes != (brute_lift(sq) is not None)
        obstructed += not vanishes
    report(6, bad_a == 0 and bad_sq == 0,
           f"60 cofibrations, {bad_a} non-quasi-iso; 60 squares, {obstructed} obstructed, "
           f"{bad_sq} mismatches")


def test_criterion_7_suspension(report):
    rng = random.Random("c7")
    failures = obstructed = 0
    for k in range(60):
        sq = random_square(rng, RINGS[k % 3])
        v = obstruction_vanishes(obstruction(sq))
        obstructed += not v
        for s in (1, -1):
            moved = shift_square(sq, s)
            failures += obstruction_vanishes(obstruction(moved)) != v
            failures += (brute_lift(moved) is not None) != v
    report(7, failures == 0, f"60 squares shifted by +1 and -1, {obstructed} obstructed, "
                             f"{failures} failures")


def test_criterion_8_homological_substrate(report):
    rng = random.Random("c8")
    cone_bad = quasi = 0
    for k in range(120):
        f = random_map_mix(rng, RINGS[k % 3])
        q = induces_homology_isos(f)
        quasi += q
        cone_bad += model.is_weak_equivalence(f) != q
    snf_bad = 0
    for k in range(240):
        ring = [ZZ, QQ, GF(2), GF(3)][k % 4]
        a = random_matrix(rng, ring, rng.randint(0, 5), rng.randint(0, 5), bound=9)
        dec = snf(a, inverses=True)
        ok = dec.u @ a @ dec.v == dec.s
        ok = ok and dec.u @ dec.u_inv == Matrix.identity(ring, a.rows)
        ok = ok and dec.v @ dec.v_inv == Matrix.identity(ring, a.cols)
        ok = ok and all(dec.s[i, j] == 0 for i in range(a.rows) for j in range(a.cols) if i != j)
        snf_bad += not ok
    sphere_bad = 0
    for n in (2, 3, 4):
        bd, _ = boundary_chain(n)
        for k in range(-1, n + 1):
            expected = HomologyGroup((), 1) if k in (0, n - 1) else HomologyGroup()
            sphere_bad += homology(bd, k) != expected
    report(8, cone_bad == sphere_bad == snf_bad == 0,
           f"120 maps ({quasi} quasi-isos), {cone_bad} cone mismatches; 240 SNFs, "
           f"{snf_bad} failures; boundary spheres n = 2..4, {sphere_bad} failures")


EXPECTED_EXIT = {"s0": 0, "disk_sphere_lifts": 0, "disk_sphere_obstructed": 1,
                 "boundary_triangle": 0, "torsion_q": 0, "rlp_disk2": 1, "suspend": 0}


def test_criterion_9_cli_fixtures(report, capsys):
    failures = []
    for name, code in EXPECTED_EXIT.items():
        path = FIXTURES / f"{name}.txt"
        text = path.read_text()
        if serialize(parse(text)) != text:
            failures.append(f"{name} round trip")
        got = main(["run", str(path)])
        out = capsys.readouterr().out
        if got != code or out != (FIXTURES / "expected" / f"{name}.out").read_text():
            failures.append(f"{name} report")
    for name in ("bad_d2", "bad_reference", "bad_syntax", "bad_square"):
        if main(["check", str(FIXTURES / f"{name}.txt")]) != 2:
            failures.append(f"{name} exit code")
        capsys.readouterr()
    # the worked squares decide as documented
    lifts = parse((FIXTURES / "disk_sphere_lifts.txt").read_text()).square("sq")
    stuck = parse((FIXTURES / "disk_sphere_obstructed.txt").read_text()).square("sq")
    if lifts != disk_sphere_square(1, 1) or stuck != disk_sphere_square(0, 1):
        failures.append("worked squares")
    if brute_lift(lifts) is None or brute_lift(stuck) is not None:
        failures.append("worked verdicts")
    report(9, not failures, f"{len(EXPECTED_EXIT)} fixtures + 4 error files; "
                            f"failures: {', '.join(failures) or 'none'}")
