"""Tests for the three membership deciders and their certificates."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from comatroid.catalog import catalog_names, circuit, circuit_with_u24, named
from comatroid.decide import (
    decide_flat_criterion,
    decide_forbidden_flats,
    decide_recursive,
    forbidden_catalog,
    has_forbidden_induced_minor,
    verify_certificate,
)
from comatroid.errors import ResourceLimitError
from comatroid.matroid import EmbeddedMatroid, embed
from comatroid.projective import iter_bits, point_space

DECIDERS = (decide_recursive, decide_flat_criterion, decide_forbidden_flats)


def threeway(m):
    verdicts = [d(m) for d in DECIDERS]
    assert len({v.is_comatroid for v in verdicts}) == 1, (
        [(v.method, v.is_comatroid) for v in verdicts])
    return verdicts[0].is_comatroid


def test_empty_matroid_is_comatroid():
    m = EmbeddedMatroid(point_space(3, 2), 0)
    for decide in DECIDERS:
        v = decide(m)
        assert v.is_comatroid
        assert verify_certificate(m, v)


def test_full_projective_spaces_are_comatroids():
    for r, q in ((2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3)):
        space = point_space(r, q)
        assert threeway(EmbeddedMatroid(space, space.full_mask))


@given(st.integers(min_value=3, max_value=7), st.sampled_from([2, 3]))
@settings(max_examples=25, deadline=None)
def test_circuit_law(k, q):
    # a k-circuit over GF(q) is a comatroid exactly when q + k <= 6
    m = embed(circuit(k, q))
    if m.rank > 6:
        assert decide_recursive(m).is_comatroid == (q + k <= 6)
    else:
        assert threeway(m) == (q + k <= 6)


def test_eight_circuit_by_recursion():
    m = embed(circuit(8, 2))
    assert m.rank == 7
    assert not decide_recursive(m).is_comatroid
    with pytest.raises(ResourceLimitError):
        decide_flat_criterion(m)
    with pytest.raises(ResourceLimitError):
        decide_forbidden_flats(m)


def test_rank_cap_on_recursion():
    m = embed(circuit(9, 2))
    with pytest.raises(ResourceLimitError):
        decide_recursive(m)


def test_exhaustive_rank3_binary_with_replay():
    space = point_space(3, 2)
    comatroids = 0
    for green in range(1 << space.n):
        m = EmbeddedMatroid(space, green)
        verdicts = [d(m) for d in DECIDERS]
        assert len({v.is_comatroid for v in verdicts}) == 1
        comatroids += verdicts[0].is_comatroid
        for v in verdicts:
            assert verify_certificate(m, v)
    # every rank-<=3 binary matroid is a comatroid
    assert comatroids == 1 << space.n


def _random_masks(space, count, seed):
    rng = random.Random(seed)
    return [rng.randrange(1 << space.n) for _ in range(count)]


def test_random_agreement_rank4_binary():
    space = point_space(4, 2)
    for green in _random_masks(space, 300, 11):
        threeway(EmbeddedMatroid(space, green))


def test_random_agreement_rank3_ternary():
    space = point_space(3, 3)
    for green in _random_masks(space, 300, 12):
        threeway(EmbeddedMatroid(space, green))


def test_random_agreement_rank5_binary():
    space = point_space(5, 2)
    for green in _random_masks(space, 60, 13):
        threeway(EmbeddedMatroid(space, green))


def test_catalog_matroids_agree():
    for name in catalog_names():
        m = embed(named(name))
        if m.rank <= 6:
            threeway(m)


def test_known_non_comatroids():
    for name in ("P(U34,U34)", "M(K4)", "W3", "R6", "P(U24,U23)",
                 "P(U23,U23)", "U24+2U23"):
        m = embed(named(name))
        assert not threeway(m), name


def test_known_comatroids():
    # F7 is rank-3 binary; AG(2,3)\e is a ternary comatroid example
    assert threeway(embed(named("F7")))
    assert threeway(embed(named("PG(2,2)")))


def test_six_circuit_flat_certificate():
    m = embed(circuit(6, 2))
    v = decide_flat_criterion(m)
    assert not v.is_comatroid
    kind, flat = v.certificate
    assert kind == "violating-flat"
    span = m.to_span()
    assert set(flat) == set(iter_bits(span.space.full_mask))
    assert verify_certificate(m, v)


def test_blocked_recursion_certificate():
    m = embed(circuit(6, 2))
    v = decide_recursive(m)
    assert not v.is_comatroid
    assert verify_certificate(m, v)


def test_forbidden_witness_names():
    v = decide_forbidden_flats(embed(circuit(6, 2)))
    assert not v.is_comatroid
    assert v.certificate[3] == "circuit of size 6"

    v = decide_forbidden_flats(embed(named("M(K4)")))
    assert v.certificate[3] == "M(K4)"

    v = decide_forbidden_flats(embed(circuit_with_u24(3, (0,))))
    assert v.certificate[3] == "circuit with U(2,4) family (k=3, d=1)"

    v = decide_forbidden_flats(embed(named("P(U34,U34)")))
    assert v.certificate[3] == "P(U34,U34)"


def test_forbidden_witness_on_complement_side():
    # the complement of a 6-circuit has the circuit on its complement side
    m = embed(circuit(6, 2)).complement()
    v = decide_forbidden_flats(m)
    assert not v.is_comatroid
    assert v.certificate[1] == "M^c"
    assert verify_certificate(m, v)


def test_tampered_certificates_fail():
    m = embed(circuit(6, 2))
    v = decide_flat_criterion(m)
    bad = type(v)(v.is_comatroid, v.method, ("violating-flat", (0, 1)))
    assert not verify_certificate(m, bad)

    w = decide_forbidden_flats(m)
    kind, side, members, entry = w.certificate
    bad = type(w)(w.is_comatroid, w.method, (kind, side, members, "M(C5)"))
    assert not verify_certificate(m, bad)


def test_forbidden_catalog_shape():
    for q in (2, 3):
        cat = forbidden_catalog(q)
        assert len(cat.entries) == (7 if q == 2 else 5)
        for name, rank, size, key in cat.entries:
            assert rank >= 3
            assert size >= 5
            assert key[0] == q


def test_fixed_entries_fail_and_flats_pass():
    from comatroid.decide import _forbidden_dir_presentations

    for name, pres in _forbidden_dir_presentations():
        m = embed(pres).to_span()
        assert not decide_flat_criterion(m).is_comatroid, name
        for flat in m.flats_of():
            if flat.mask in (m.green_mask, 0):
                continue
            sub = m.restrict([i for i in m.elements if (flat.mask >> i) & 1])
            assert decide_flat_criterion(sub).is_comatroid, (name, flat.members)


def test_direct_sum_of_comatroids():
    c3 = embed(circuit(3, 2))
    c4 = embed(circuit(4, 2))
    m = c3.direct_sum(c4)
    assert threeway(m)
    v = decide_recursive(m)
    assert v.certificate[0] == "components"
    assert verify_certificate(m, v)


def test_disconnected_with_bad_component():
    point = EmbeddedMatroid(point_space(1, 2), 1)
    c6 = embed(circuit(6, 2))
    assert not threeway(point.direct_sum(c6))


def _random_comatroid(rng, q, max_rank=5, ops=6):
    m = EmbeddedMatroid(point_space(1, q), 0)
    for _ in range(ops):
        choice = rng.random()
        if choice < 0.5:
            t = rng.randint(max(m.rank, 1), min(max_rank, m.rank + 2))
            m = m.complement(t)
        else:
            k = rng.randint(3, 4)
            other = embed(circuit(k, q)) if q + k <= 6 else EmbeddedMatroid(
                point_space(1, q), 1)
            if m.rank + other.rank <= max_rank:
                m = m.direct_sum(other)
        if m.rank >= max_rank:
            break
    return m


def test_constructed_comatroids_are_sound():
    rng = random.Random(5)
    for q in (2, 3):
        for _ in range(25):
            m = _random_comatroid(rng, q)
            if m.rank <= 6:
                assert threeway(m)


def _comatroid_sample(space, count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        green = rng.randrange(1 << space.n)
        m = EmbeddedMatroid(space, green)
        if decide_flat_criterion(m).is_comatroid:
            out.append(m)
    return out


def test_closure_under_flats_and_minors():
    # flat-restrictions, simplified contractions, and components of comatroids
    # stay comatroids
    for space, count, seed in ((point_space(3, 3), 40, 3),
                               (point_space(4, 2), 40, 4)):
        for m in _comatroid_sample(space, count, seed):
            for flat in m.flats_of():
                sub = m.restrict([i for i in m.elements
                                  if (flat.mask >> i) & 1])
                assert decide_flat_criterion(sub).is_comatroid
            for e in m.elements:
                assert decide_flat_criterion(m.si_contract(e)).is_comatroid
            for comp in space.components_mask(m.green_mask):
                assert decide_flat_criterion(
                    EmbeddedMatroid(space, comp)).is_comatroid


def test_connected_comatroids_vertically_connected():
    # a connected comatroid of rank r <= 4 admits no vertical (r-2)-separation
    space = point_space(3, 2)
    checked = 0
    for green in range(1 << space.n):
        m = EmbeddedMatroid(space, green)
        if m.rank != 3 or not m.is_connected():
            continue
        if decide_flat_criterion(m).is_comatroid:
            assert space.vertical_connectivity_mask(green) >= 2
            checked += 1
    assert checked > 0
    big = point_space(4, 2)
    for m in _comatroid_sample(big, 40, 9):
        if m.rank == 4 and m.is_connected():
            assert big.vertical_connectivity_mask(m.green_mask) >= 3


def test_induced_minor_equivalence_sampled():
    for space, count, seed in ((point_space(3, 3), 80, 21),
                               (point_space(4, 2), 80, 22)):
        rng = random.Random(seed)
        for _ in range(count):
            m = EmbeddedMatroid(space, rng.randrange(1 << space.n))
            assert has_forbidden_induced_minor(m) != (
                decide_flat_criterion(m).is_comatroid)


def test_induced_minor_examples():
    assert has_forbidden_induced_minor(embed(circuit(6, 2)).complement())
    assert has_forbidden_induced_minor(embed(circuit(4, 3)))
    assert not has_forbidden_induced_minor(embed(named("F7")))
    space = point_space(3, 2)
    rng = random.Random(17)
    for _ in range(20):
        m = EmbeddedMatroid(space, rng.randrange(1 << space.n))
        assert not has_forbidden_induced_minor(m)


def test_p_u34_u34_minor_structure():
    # minimal as a flat obstruction: every proper flat-restriction is clean;
    # not induced-minor-minimal: contracting off the gluing point leaves a
    # triangle and a square sharing an edge, itself a forbidden member
    from comatroid.canonical import canonical_key
    from comatroid.catalog import graph_cycle_matroid

    m = embed(named("P(U34,U34)")).to_span()
    assert has_forbidden_induced_minor(m)
    for flat in m.flats_of():
        if flat.mask in (m.green_mask, 0):
            continue
        sub = m.restrict([i for i in m.elements if (flat.mask >> i) & 1])
        assert not has_forbidden_induced_minor(sub)
    house = canonical_key(embed(graph_cycle_matroid(
        ((1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)), 2)))
    hit = [e for e in m.elements
           if has_forbidden_induced_minor(m.si_contract(e))]
    assert hit
    for e in hit:
        assert canonical_key(m.si_contract(e).to_span()) == house


def test_binary_p_u23_u23_is_a_comatroid():
    # the same gluing pattern that is forbidden over GF(3) is fine over GF(2)
    from comatroid.catalog import parallel_connection

    u23 = circuit(3, 2)
    m = embed(parallel_connection(u23, 0, u23, 0))
    assert threeway(m)
    assert not has_forbidden_induced_minor(m)


def test_verdict_methods():
    m = embed(circuit(4, 2))
    assert decide_recursive(m).method == "recursive"
    assert decide_flat_criterion(m).method == "flat-criterion"
    assert decide_forbidden_flats(m).method == "forbidden-flat"


def test_bundled_forbidden_files_match_their_generator():
    import importlib.util
    import pathlib

    script = (pathlib.Path(__file__).resolve().parent.parent
              / "scripts" / "freeze_forbidden.py")
    spec = importlib.util.spec_from_file_location("freeze_forbidden", script)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    entries = mod.forbidden_presentations()
    assert len(entries) == 11
    from comatroid.formats import dumps

    bundled = sorted(p.name for p in mod.OUT_DIR.glob("*.mat"))
    assert bundled == sorted(f"{name}.mat" for name, _, _ in entries)
    for name, comment, m in entries:
        text = (mod.OUT_DIR / f"{name}.mat").read_text(encoding="utf-8")
        assert text == f"# {comment}\n" + dumps(m)
