import pytest
from hypothesis import given, strategies as st

from obstruct import model
from obstruct.chain import ChainComplex, HomologyGroup, homology, identity_map, is_acyclic, zero_map
from obstruct.generate import random_fibration
from obstruct.linalg import GF, ZZ
from obstruct.obstruction import obstruction
from obstruct.simplicial import (boundary_chain, disk, disk_projection, generating_cofibration,
                                 rlp_equivalence_check, simplex_chain, sphere)

from helpers import disk_sphere_square


def test_simplex_ranks():
    assert simplex_chain(1).ranks == {0: 2, 1: 1}
    bd, inc = boundary_chain(1)
    assert bd.ranks == {0: 2}
    assert model.cofibre(inc)[0] == sphere(1)
    assert simplex_chain(2).ranks == {0: 3, 1: 3, 2: 1}
    assert boundary_chain(2)[0].ranks == {0: 3, 1: 3}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_boundary_homology(n):
    bd, _ = boundary_chain(n)
    for k in range(-1, n + 1):
        expected = HomologyGroup((), 1) if k in (0, n - 1) else HomologyGroup()
        assert homology(bd, k) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_boundary_inclusion_cofibre(n):
    _, inc = boundary_chain(n)
    assert model.is_cofibration(inc)
    c = model.cofibre(inc)[0]
    assert c.ranks == {n: 1}


def test_boundary_rejects_n0():
    with pytest.raises(ValueError):
        boundary_chain(0)


@pytest.mark.parametrize("k", [-2, 0, 1, 3])
def test_spheres_and_disks(k):
    assert is_acyclic(disk(k))
    i = generating_cofibration(k)
    assert model.is_cofibration(i)
    assert model.cofibre(i)[0] == sphere(k)


def test_rlp_examples():
    for n in (1, 2, 3):
        v = rlp_equivalence_check(identity_map(disk(n)), n)
        assert v.homology.is_zero() and v.rlp and v.consistent
    v = rlp_equivalence_check(disk_projection(1), 1)
    assert v.homology == HomologyGroup((), 1)
    assert not v.rlp and v.witness_rejected
    # the witness is the (a, c) = (1, 0) square; it differs from the (0, 1)
    # square by the liftable (1, 1) square, so the classes are negatives
    w = v.witness
    assert w == disk_sphere_square(1, 0)
    assert obstruction(w).theta == -obstruction(disk_sphere_square(0, 1)).theta
    for n in (1, 2, 3):
        v = rlp_equivalence_check(zero_map(disk(n), ChainComplex(ZZ, {})), n)
        assert v.rlp and v.consistent and all(l.ell is not None for l in v.lifts)
    with pytest.raises(model.NotAFibration):
        rlp_equivalence_check(generating_cofibration(1), 1)


@given(st.randoms(use_true_random=False), st.sampled_from([ZZ, GF(2)]), st.integers(1, 4),
       st.sampled_from(["disk", "simplex"]))
def test_rlp_random(r, ring, n, kind):
    p = random_fibration(r, ring, [n - 2, n - 1, n])
    v = rlp_equivalence_check(p, n, kind)
    assert v.consistent
