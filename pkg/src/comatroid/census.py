"""Exhaustive and targeted searches over green colorings of small geometries.

The minimal census classifies induced-restriction-minimal non-comatroids; the
hyperplane scan runs the extension algorithm over a rank-5 binary seed; the
coloring enumerator underpins the exhaustive property checks.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .canonical import canonical_key
from .catalog import circuit_with_u24, named
from .decide import decide_flat_criterion
from .errors import ResourceLimitError
from .matroid import EmbeddedMatroid, MatrixPresentation, embed
from .projective import PointSpace, iter_bits, point_space, popcount


@dataclass(frozen=True)
class CensusClass:
    """One isomorphism class: key, a representative green set, and a label."""

    key: tuple
    members: tuple[int, ...]
    size: int
    rank: int
    label: str


@dataclass(frozen=True)
class CensusReport:
    """Classes found by a census, with scan statistics."""

    q: int
    r: int
    description: str
    classes: tuple[CensusClass, ...]
    scanned: int
    seconds: float = field(compare=False)

    def to_tsv(self) -> str:
        """Deterministic tab-separated table, one row per class."""
        lines = ["key\tsize\trank\tlabel\tmembers"]
        for c in self.classes:
            lines.append("\t".join((
                format_key(c.key),
                str(c.size),
                str(c.rank),
                c.label or "-",
                ",".join(map(str, c.members)),
            )))
        return "\n".join(lines) + "\n"


def format_key(key: tuple | None) -> str:
    if key is None:
        return "-"
    q, r, mask = key
    return f"{q}:{r}:{mask:x}"


# ------------------------------------------------------------ minimal census

def _comatroid_status(space: PointSpace) -> bytearray:
    """Flat-criterion verdict for every green mask of a small space."""
    status = bytearray(1 << space.n)
    for mask in range(1 << space.n):
        status[mask] = decide_flat_criterion(EmbeddedMatroid(space, mask)).is_comatroid
    return status


def _proper_flat_masks(space: PointSpace, green: int):
    seen = set()
    for fmask, _ in space.all_flat_masks():
        x = fmask & green
        if x != green and x not in seen:
            seen.add(x)
            yield x


def _exhaustive_minimal(r: int, q: int) -> tuple[list[int], int]:
    """Masks of minimal non-comatroids of full rank, plus colorings scanned."""
    space = point_space(r, q)
    status = _comatroid_status(space)
    out = []
    for green in range(1 << space.n):
        if status[green] or space.rank_of_mask(green) != r:
            continue
        if all(status[x] for x in _proper_flat_masks(space, green)):
            out.append(green)
    return out, 1 << space.n


def _generator_permutations(space: PointSpace) -> tuple[tuple[int, ...], ...]:
    """Point permutations induced by a generating set of the linear group."""
    from .linalg import vec_scale

    lookup = {}
    for i, v in enumerate(space.points):
        for lam in range(1, space.q):
            lookup[vec_scale(lam, v, space.q)] = i
    maps = [
        lambda v: v[1:] + v[:1],
        lambda v: (v[1], v[0]) + v[2:],
        lambda v: ((v[0] + v[1]) % space.q,) + v[1:],
    ]
    if space.q > 2:
        maps.append(lambda v: ((2 * v[0]) % space.q,) + v[1:])
    return tuple(tuple(lookup[f(v)] for v in space.points) for f in maps)


def _orbit_of(space: PointSpace, green: int,
              perms: tuple[tuple[int, ...], ...]) -> set[int]:
    """Projective-equivalence orbit of a green mask."""
    orbit = {green}
    stack = [green]
    while stack:
        mask = stack.pop()
        for perm in perms:
            image = 0
            rest = mask
            while rest:
                low = rest & -rest
                image |= 1 << perm[low.bit_length() - 1]
                rest ^= low
            if image not in orbit:
                orbit.add(image)
                stack.append(image)
    return orbit


def _dedup_classes(space: PointSpace, masks, labeler) -> tuple[CensusClass, ...]:
    perms = _generator_permutations(space)
    hit = set(masks)
    pending = set(masks)
    classes = []
    while pending:
        orbit = _orbit_of(space, min(pending), perms)
        pending -= orbit
        green = min(orbit & hit)
        key = canonical_key(EmbeddedMatroid(space, green))
        size = popcount(green)
        rank = space.rank_of_mask(green)
        classes.append(CensusClass(
            key, tuple(iter_bits(green)), size, rank, labeler(key, green)))
    classes.sort(key=lambda c: (c.size, c.key))
    return tuple(classes)


def _fill_complement_labels(space: PointSpace, classes) -> tuple[CensusClass, ...]:
    """Label unnamed classes whose complement carries a name."""
    named_keys = {c.key: c.label for c in classes if c.label}
    out = []
    for c in classes:
        label = c.label
        if not label:
            green = sum(1 << p for p in c.members)
            ckey = canonical_key(EmbeddedMatroid(space, green).complement())
            partner = named_keys.get(ckey)
            if partner:
                label = f"complement of {partner}"
        out.append(CensusClass(c.key, c.members, c.size, c.rank, label))
    return tuple(out)


def _ternary_rank3_names():
    builders = {
        "U(3,4)": lambda: embed(circuit_with_u24(4, ())),
        "P(U23,U23)": lambda: embed(named("P(U23,U23)")),
        "U24+2U23": lambda: embed(named("U24+2U23")),
        "U24+2U24": lambda: embed(named("R6")),
        "P(U24,U23)": lambda: embed(named("P(U24,U23)")),
        "M(K4)": lambda: embed(named("M(K4)")),
        "W3": lambda: embed(named("W3")),
    }
    out = {}
    for name, build in builders.items():
        m = build()
        out[canonical_key(m)] = name
        ckey = canonical_key(m.complement())
        out.setdefault(ckey, f"complement of {name}")
    return out


FIVE_VERTEX_GRAPHS = {
    "M(C5)": ((1, 2), (2, 3), (3, 4), (4, 5), (5, 1)),
    "M(house)": ((1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)),
    "M(K2,3)": ((1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)),
    "M(gem)": ((1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3), (1, 4)),
    "M(subdivided K4)": ((1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3), (2, 4)),
    "M(K2,3)+e": ((1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (1, 2)),
}


def _five_vertex_graphic_names():
    """Canonical keys of the six minimal rank-4 binary graphic classes."""
    from .catalog import graph_cycle_matroid

    return {canonical_key(embed(graph_cycle_matroid(edges, 2))): name
            for name, edges in FIVE_VERTEX_GRAPHS.items()}


def minimal_non_comatroids(r: int, q: int) -> CensusReport:
    """Classify minimal non-comatroids of rank r over GF(q), up to equivalence."""
    t0 = time.time()
    if (q, r) == (2, 3):
        return CensusReport(2, 3, "minimal non-comatroids, exhaustive",
                            (), 1 << 7, time.time() - t0)
    if (q, r) == (2, 4):
        masks, scanned = _exhaustive_minimal(4, 2)
        names = _five_vertex_graphic_names()
        classes = _dedup_classes(point_space(4, 2), masks,
                                 lambda key, green: names.get(key, ""))
        classes = _fill_complement_labels(point_space(4, 2), classes)
        return CensusReport(2, 4, "minimal non-comatroids, exhaustive",
                            classes, scanned, time.time() - t0)
    if (q, r) == (3, 3):
        masks, scanned = _exhaustive_minimal(3, 3)
        names = _ternary_rank3_names()
        classes = _dedup_classes(point_space(3, 3), masks,
                                 lambda key, green: names.get(key, ""))
        return CensusReport(3, 3, "minimal non-comatroids, exhaustive",
                            classes, scanned, time.time() - t0)
    if (q, r) == (3, 4):
        return _restricted_ternary_rank4(t0)
    raise ValueError(f"census supports (q,r) in (2,3), (2,4), (3,3), (3,4); got ({q},{r})")


def _restricted_ternary_rank4(t0: float) -> CensusReport:
    """Rank-4 ternary scan over the circuit-with-U(2,4) family members only."""
    space = point_space(4, 3)
    classes = []
    scanned = 0
    for k, d in ((5, 0), (4, 1), (3, 2)):
        m = embed(circuit_with_u24(k, range(d))).to_span()
        scanned += 1
        if decide_flat_criterion(m).is_comatroid:
            continue
        flats_ok = all(
            decide_flat_criterion(EmbeddedMatroid(m.space, x)).is_comatroid
            for x in _proper_flat_masks(m.space, m.green_mask))
        if not flats_ok:
            continue
        key = canonical_key(m)
        label = f"circuit with U(2,4) family (k={k}, d={d})"
        classes.append(CensusClass(
            key, tuple(iter_bits(m.green_mask)), m.n, m.rank, label))
    classes.sort(key=lambda c: (c.size, c.key))
    return CensusReport(3, 4, "minimal non-comatroids, family-restricted",
                        tuple(classes), scanned, time.time() - t0)


# ------------------------------------------------------------ hyperplane scan

GREEN_HYPERPLANE_BOUND = 26
TOTAL_HYPERPLANE_BOUND = 32


@dataclass(frozen=True)
class ExtensionScan:
    """Survivors of the two-threshold hyperplane count over seed extensions."""

    seed_members: tuple[int, ...]
    max_extra: int
    seed_i: int
    seed_j: int | None
    survivors: tuple[tuple[tuple[int, ...], int, int], ...]
    scanned: int
    j_computed: int

    def to_tsv(self) -> str:
        lines = ["extra\ti\tj"]
        for extra, i, j in self.survivors:
            lines.append("\t".join((",".join(map(str, extra)) or "-",
                                    str(i), str(j))))
        return "\n".join(lines) + "\n"


def _scan_tables(space: PointSpace, green0: int, ext: tuple[int, ...]):
    """Per-hyperplane lookup tables indexed by the local extra-point submask.

    For hyperplane H the green side of seed + S meets H in a set determined
    by S's trace on H, and the red side is the untouched part of that trace's
    complement within H; both rank-4 connectivity verdicts are tabulated.
    """
    hyperplanes = space.flats_of_rank(space.r - 1)
    ext_pos = {p: k for k, p in enumerate(ext)}
    tables = []
    for hmask in hyperplanes:
        local = tuple(p for p in ext if (hmask >> p) & 1)
        gseed = green0 & hmask
        eh_full = sum(1 << p for p in local)
        gt = bytearray(1 << len(local))
        rt = bytearray(1 << len(local))
        for sub in range(1 << len(local)):
            picked = sum(1 << local[t] for t in iter_bits(sub))
            x = gseed | picked
            gt[sub] = (space.rank_of_mask(x) == space.r - 1
                       and space.is_connected_mask(x))
            y = eh_full ^ picked
            rt[sub] = (space.rank_of_mask(y) == space.r - 1
                       and space.is_connected_mask(y))
        bit_of = {ext_pos[p]: t for t, p in enumerate(local)}
        offmask = sum(1 << ext_pos[p] for p in ext if not (hmask >> p) & 1)
        tables.append((gt, rt, bit_of, offmask))
    return tables


def _gosper_masks(width: int, size: int):
    """Same-popcount masks below 2**width in increasing integer order."""
    if size == 0:
        yield 0
        return
    if size > width:
        return
    mask = (1 << size) - 1
    top = 1 << width
    while mask < top:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


def _scan_block(space: PointSpace, green0: int, ext: tuple[int, ...],
                tables, max_extra: int, prefix_bits: int, pattern: int):
    """Scan all extensions whose trace on the first prefix_bits equals pattern."""
    contributions = [[] for _ in ext]
    for h, (_, _, bit_of, _) in enumerate(tables):
        for k, t in bit_of.items():
            contributions[k].append((h, 1 << t))
    n_h = len(tables)
    survivors = []
    scanned = 0
    j_computed = 0
    base_size = popcount(pattern)
    rest_width = len(ext) - prefix_bits
    for size in range(max_extra - base_size + 1):
        for tail in _gosper_masks(rest_width, size):
            smask = pattern | (tail << prefix_bits)
            scanned += 1
            idx = [0] * n_h
            rest = smask
            while rest:
                low = rest & -rest
                for h, bit in contributions[low.bit_length() - 1]:
                    idx[h] |= bit
                rest ^= low
            i = 0
            for h in range(n_h):
                i += tables[h][0][idx[h]]
            if i >= GREEN_HYPERPLANE_BOUND:
                continue
            j_computed += 1
            confined = any(smask & off == off for _, _, _, off in tables)
            if confined:
                red = space.full_mask & ~green0
                for k in iter_bits(smask):
                    red &= ~(1 << ext[k])
                mc = EmbeddedMatroid(space, red)
                j = len(mc.connected_hyperplanes())
            else:
                j = 0
                for h in range(n_h):
                    j += tables[h][1][idx[h]]
            if i + j < TOTAL_HYPERPLANE_BOUND:
                survivors.append((smask, i, j))
    return survivors, scanned, j_computed


def _scan_worker(args):
    r, q, green0, max_extra, prefix_bits, pattern = args
    space = point_space(r, q)
    ext = tuple(p for p in range(space.n) if not (green0 >> p) & 1)
    tables = _scan_tables(space, green0, ext)
    return _scan_block(space, green0, ext, tables, max_extra,
                       prefix_bits, pattern)


def hyperplane_scan(seed: EmbeddedMatroid, max_extra: int,
                    jobs: int = 1) -> ExtensionScan:
    """Count connected hyperplanes of every bounded extension of a rank-5 seed.

    An extension survives when its green hyperplane count i stays below 26
    and, with the complement's count j, i + j stays below 32; j is skipped
    whenever i alone already disqualifies the extension.
    """
    m = seed.to_span()
    if m.q != 2 or m.space.r != 5:
        raise ValueError("hyperplane scan requires a seed spanning PG(4,2)")
    space = m.space
    green0 = m.green_mask
    ext = tuple(p for p in range(space.n) if not (green0 >> p) & 1)
    if max_extra > len(ext):
        raise ValueError(f"max_extra {max_extra} exceeds {len(ext)} spare points")
    seed_i = len(m.connected_hyperplanes())
    seed_j = None
    if seed_i < GREEN_HYPERPLANE_BOUND:
        seed_j = len(m.complement().connected_hyperplanes())
    if max_extra == 0:
        survivors = ()
        if seed_j is not None and seed_i + seed_j < TOTAL_HYPERPLANE_BOUND:
            survivors = (((), seed_i, seed_j),)
        return ExtensionScan(m.elements, 0, seed_i, seed_j, survivors,
                             1, int(seed_j is not None))
    prefix_bits = 0
    while (1 << prefix_bits) < jobs:
        prefix_bits += 1
    prefix_bits = min(prefix_bits, len(ext))
    blocks = [(space.r, space.q, green0, max_extra, prefix_bits, pattern)
              for pattern in range(1 << prefix_bits)
              if popcount(pattern) <= max_extra]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_worker, blocks))
    else:
        tables = _scan_tables(space, green0, ext)
        results = [_scan_block(space, green0, ext, tables, max_extra,
                               prefix_bits, pattern)
                   for *_, prefix_bits, pattern in blocks]
    survivors = []
    scanned = 0
    j_computed = 0
    for block_survivors, block_scanned, block_j in results:
        survivors.extend(block_survivors)
        scanned += block_scanned
        j_computed += block_j
    survivors.sort(key=lambda rec: (popcount(rec[0]), rec[0]))
    return ExtensionScan(
        m.elements, max_extra, seed_i, seed_j,
        tuple((tuple(ext[k] for k in iter_bits(smask)), i, j)
              for smask, i, j in survivors),
        scanned, j_computed)


# --------------------------------------------------- rank-5 binary cross-check

def _connected_spanning_classes(r: int, q: int, max_size: int):
    """Orbit representatives of connected spanning colorings, one per class."""
    space = point_space(r, q)
    perms = _generator_permutations(space)
    seen = set()
    reps = []
    for green in range(1, 1 << space.n):
        if green in seen or popcount(green) > max_size:
            continue
        if space.rank_of_mask(green) != r or not space.is_connected_mask(green):
            continue
        orbit = _orbit_of(space, green, perms)
        seen.update(orbit)
        reps.append(green)
    return space, reps


def rank5_binary_minimal_classes(max_part_size: int = 9) -> tuple[CensusClass, ...]:
    """Minimal rank-5 non-comatroids among gluings of a circuit to a small part.

    A rank-5 minimal non-comatroid with a series pair splits as a two-sum or
    parallel connection of a circuit with a smaller connected matroid, so the
    candidate space runs over circuits glued to every connected spanning class
    of the complementary rank.
    """
    from .catalog import circuit, parallel_connection, two_sum

    found: dict[tuple, int] = {}
    big = point_space(5, 2)
    for k in (3, 4, 5):
        part_rank = 7 - k
        space, reps = _connected_spanning_classes(part_rank, 2, max_part_size)
        ck = circuit(k, 2)
        for green in reps:
            members = tuple(iter_bits(green))
            part = MatrixPresentation(
                2, tuple(space.points[i] for i in members))
            for b in range(len(members)):
                for glue in (two_sum, parallel_connection):
                    cand = embed(glue(part, b, ck, 0)).to_span()
                    if cand.rank != 5:
                        continue
                    if decide_flat_criterion(cand).is_comatroid:
                        continue
                    flats_ok = all(
                        decide_flat_criterion(
                            EmbeddedMatroid(cand.space, x)).is_comatroid
                        for x in _proper_flat_masks(cand.space, cand.green_mask))
                    if not flats_ok:
                        continue
                    key = canonical_key(cand)
                    if key not in found:
                        found[key] = cand.green_mask
    classes = []
    for key, green in found.items():
        classes.append(CensusClass(
            key, tuple(iter_bits(green)), popcount(green),
            big.rank_of_mask(green), ""))
    classes.sort(key=lambda c: (c.size, c.key))
    return tuple(classes)


# -------------------------------------------------------- coloring enumerator

def enumerate_colorings(space: PointSpace, filter, dedup: bool,
                        samples: int | None = None, seed: int = 0) -> CensusReport:
    """Colorings passing a predicate, exhaustively or by seeded sampling."""
    t0 = time.time()
    if samples is None and space.n > 15:
        raise ResourceLimitError(
            f"exhaustive enumeration capped at 15 points, space has {space.n}")
    if samples is None:
        candidates = range(1 << space.n)
        scanned = 1 << space.n
        description = "colorings, exhaustive"
    else:
        import random

        rng = random.Random(seed)
        candidates = sorted({rng.randrange(1 << space.n) for _ in range(samples)})
        scanned = len(candidates)
        description = f"colorings, sampled (seed={seed})"
    hits = [green for green in candidates
            if filter(EmbeddedMatroid(space, green))]
    if dedup:
        classes = _dedup_classes(space, hits, lambda key, green: "")
    else:
        classes = tuple(
            CensusClass(None, tuple(iter_bits(green)), popcount(green),
                        space.rank_of_mask(green), "")
            for green in hits)
    return CensusReport(space.q, space.r, description, classes,
                        scanned, time.time() - t0)
