"""Tests for canonical keys under projective equivalence."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from comatroid.canonical import (
    apply_linear_map,
    canonical_key,
    fingerprint,
    is_isomorphic,
    point_permutation,
)
from comatroid.errors import ResourceLimitError
from comatroid.linalg import random_invertible
from comatroid.matroid import EmbeddedMatroid, MatrixPresentation, embed
from comatroid.projective import point_space


def circuit_presentation(k, q=2, shuffle_seed=None):
    cols = [tuple(1 if j == i else 0 for j in range(k - 1)) for i in range(k - 1)]
    cols.append(tuple(q - 1 for _ in range(k - 1)))
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(cols)
    return MatrixPresentation(q, tuple(cols))


def test_column_order_invariance():
    keys = {canonical_key(embed(circuit_presentation(5, shuffle_seed=s))) for s in range(6)}
    assert len(keys) == 1


@settings(max_examples=50, deadline=None)
@given(mask=st.integers(1, (1 << 7) - 1), seed=st.integers(0, 10_000))
def test_invariance_under_linear_maps_gf2(mask, seed):
    space = point_space(3, 2)
    m = EmbeddedMatroid(space, mask)
    mat = random_invertible(3, 2, random.Random(seed))
    assert canonical_key(apply_linear_map(m, mat)) == canonical_key(m)


@settings(max_examples=50, deadline=None)
@given(mask=st.integers(1, (1 << 13) - 1), seed=st.integers(0, 10_000))
def test_invariance_under_linear_maps_gf3(mask, seed):
    space = point_space(3, 3)
    m = EmbeddedMatroid(space, mask)
    mat = random_invertible(3, 3, random.Random(seed))
    assert canonical_key(apply_linear_map(m, mat)) == canonical_key(m)


def test_distinguishes_u33_from_line_plus_point():
    space = point_space(3, 2)
    u33 = EmbeddedMatroid(space, space.mask_of([space.index[p] for p in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]))
    line = space.flats_of_rank(2)[0]
    off = next(i for i in range(space.n) if not (line >> i) & 1)
    lpp = EmbeddedMatroid(space, line | (1 << off))
    assert canonical_key(u33) != canonical_key(lpp)
    assert not is_isomorphic(u33, lpp)
    assert fingerprint(u33) != fingerprint(lpp)


def test_key_flattens_embedding():
    big = point_space(3, 2)
    line = big.flats_of_rank(2)[0]
    inside = EmbeddedMatroid(big, line)
    small = point_space(2, 2)
    flat = EmbeddedMatroid(small, small.full_mask)
    assert canonical_key(inside) == canonical_key(flat)


def test_canonical_key_is_reachable_image():
    """The key's mask is itself in the orbit: some map realizes it."""
    space = point_space(3, 2)
    m = EmbeddedMatroid(space, 0b1010101)
    _, _, img = canonical_key(m)
    realized = EmbeddedMatroid(space, img)
    assert canonical_key(realized) == canonical_key(m)
    assert is_isomorphic(realized, m)


def test_rank_cap():
    space = point_space(7, 2)
    units = [space.index[tuple(1 if j == i else 0 for j in range(7))] for i in range(7)]
    m = EmbeddedMatroid(space, space.mask_of(units))
    assert m.rank == 7
    with pytest.raises(ResourceLimitError):
        canonical_key(m)


def test_point_permutation_is_permutation():
    space = point_space(3, 3)
    mat = random_invertible(3, 3, random.Random(3))
    perm = point_permutation(space, mat)
    assert sorted(perm) == list(range(space.n))


def test_isomorphic_circuits_of_different_presentations():
    a = embed(circuit_presentation(6))
    b = embed(circuit_presentation(6, shuffle_seed=11))
    assert is_isomorphic(a, b)
    c = embed(circuit_presentation(5))
    assert not is_isomorphic(a, c)
