import random

from hypothesis import given, strategies as st

from obstruct import model
from obstruct.chain import compose, is_chain_map, validate
from obstruct.generate import (obstruction_group_is_zero, random_cofibration, random_complex,
                               random_fibration, random_square, random_unimodular)
from obstruct.linalg import GF, QQ, ZZ, Matrix
from obstruct.obstruction import obstruction, obstruction_vanishes

RINGS = [ZZ, QQ, GF(2), GF(3)]
randoms = st.randoms(use_true_random=False)


@given(randoms, st.sampled_from(RINGS), st.integers(0, 4))
def test_unimodular(r, ring, n):
    g, gi = random_unimodular(r, ring, n)
    assert g @ gi == Matrix.identity(ring, n)


@given(randoms, st.sampled_from(RINGS))
def test_generated_objects_satisfy_predicates(r, ring):
    c = random_complex(r, ring)
    assert validate(c)
    assert all(-3 <= n <= 3 for n in c.degrees) and all(k <= 4 for k in c.ranks.values())
    i = random_cofibration(r, ring)
    assert model.is_cofibration(i) and validate(i.target)
    p = random_fibration(r, ring)
    assert model.is_fibration(p) and validate(p.source)


def _entries(sq):
    for f in (sq.i, sq.p, sq.top, sq.bottom):
        for m in f.components.values():
            yield from (x for row in m.data for x in row)
        for c in (f.source, f.target):
            for m in c.differentials.values():
                yield from (x for row in m.data for x in row)


def test_square_corpus_bounds_and_mix():
    r = random.Random(0)
    verdicts = []
    for _ in range(60):
        sq = random_square(r, ZZ)
        for f in (sq.i, sq.p, sq.top, sq.bottom):
            assert is_chain_map(f)
            for c in (f.source, f.target):
                assert all(-3 <= n <= 3 for n in c.degrees)
                assert all(k <= 4 for k in c.ranks.values())
        assert compose(sq.bottom, sq.i) == compose(sq.p, sq.top)
        assert all(-3 <= x <= 3 for x in _entries(sq))
        verdicts.append(obstruction_vanishes(obstruction(sq)))
    assert any(verdicts) and not all(verdicts)


def test_obstruction_group_zero_means_vanishing():
    r = random.Random(2)
    for _ in range(30):
        sq = random_square(r, GF(2), keep_trivial=1.0)
        if obstruction_group_is_zero(sq.i, sq.p):
            assert obstruction_vanishes(obstruction(sq))


def test_seeded_reproducibility():
    a = [random_square(random.Random(7), QQ) for _ in range(1)]
    b = [random_square(random.Random(7), QQ) for _ in range(1)]
    assert a == b
