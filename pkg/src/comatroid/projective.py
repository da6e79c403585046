"""Projective geometries PG(r-1, q) over GF(2) and GF(3).

Points are normalized coordinate tuples (first nonzero coordinate 1) in
lexicographic order, addressed by index. Point sets are int bitmasks over
those indices. Spaces with at most 15 points additionally carry full
closure/rank lookup tables, which the exhaustive searches rely on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import ResourceLimitError
from .linalg import Echelon, check_field, normalize, vec_add, vec_scale

MAX_SPACE_RANK = 8
_TABLE_POINT_LIMIT = 15


def gaussian_binomial(r: int, k: int, q: int) -> int:
    """Number of rank-k subspaces of GF(q)^r."""
    if k < 0 or k > r:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (r - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FlatHandle:
    """A projective flat: its point members and projective rank."""

    space: "PointSpace"
    members: tuple[int, ...]
    rank: int

    @property
    def mask(self) -> int:
        m = 0
        for i in self.members:
            m |= 1 << i
        return m


class PointSpace:
    """The point set of PG(r-1, q) with closure and rank machinery."""

    def __init__(self, r: int, q: int):
        check_field(q)
        if not 0 <= r <= MAX_SPACE_RANK:
            raise ResourceLimitError(f"projective rank {r} outside supported range 0..{MAX_SPACE_RANK}")
        self.r = r
        self.q = q
        pts = []
        for vec in itertools.product(range(q), repeat=r):
            if any(vec) and vec[next(i for i, a in enumerate(vec) if a)] == 1:
                pts.append(vec)
        # itertools.product yields tuples in lexicographic order already
        self.points: tuple[tuple[int, ...], ...] = tuple(pts)
        self.n = len(pts)
        self.index: dict[tuple[int, ...], int] = {p: i for i, p in enumerate(pts)}
        self.full_mask = (1 << self.n) - 1
        self._sum_tables: dict[int, tuple[int, ...]] | None = None
        self._closure_table: list[int] | None = None
        self._rank_table: bytearray | None = None
        self._rank_memo: dict[int, int] = {}
        self._closure_memo: dict[int, int] = {}
        self._components_memo: dict[int, tuple[int, ...]] = {}
        self._vc_memo: dict[int, int] = {}
        self._flats_by_rank: dict[int, tuple[int, ...]] = {}
        self._embeddings: dict[int, tuple["PointSpace", dict[int, int]]] = {}
        self._contractions: dict[int, tuple["PointSpace", list[int | None]]] = {}
        self._line_memo: dict[tuple[int, int], tuple[int, ...]] = {}
        if self.n <= _TABLE_POINT_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"PG({self.r - 1},{self.q})"

    # ------------------------------------------------------------------ lines

    def line_completions(self, i: int, j: int) -> tuple[int, ...]:
        """Indices of the other points on the line through distinct points i, j."""
        key = (i, j) if i < j else (j, i)
        got = self._line_memo.get(key)
        if got is None:
            u, v = self.points[i], self.points[j]
            if self.q == 2:
                got = (self.index[vec_add(u, v, 2)],)
            else:
                got = (
                    self.index[normalize(vec_add(u, v, 3), 3)],
                    self.index[normalize(vec_add(u, vec_scale(2, v, 3), 3), 3)],
                )
            self._line_memo[key] = got
        return got

    # ----------------------------------------------------------------- tables

    def _build_tables(self):
        n, q = self.n, self.q
        comp = [[()] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                comp[i][j] = comp[j][i] = self.line_completions(i, j)
        size_to_rank = {}
        s = 0
        for k in range(self.r + 1):
            size_to_rank[s] = k
            s = s * q + 1  # point count (q^k - 1)/(q - 1), built up one rank at a time
        cl = [0] * (1 << n)
        rk = bytearray(1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            x = low.bit_length() - 1
            c = cl[mask ^ low]
            if not (c >> x) & 1:
                new = c | low
                for i in iter_bits(c):
                    for extra in comp[i][x]:
                        new |= 1 << extra
                c = new
            cl[mask] = c
            rk[mask] = size_to_rank[popcount(c)]
        self._closure_table = cl
        self._rank_table = rk

    @property
    def has_tables(self) -> bool:
        return self._rank_table is not None

    # ------------------------------------------------------------ rank/closure

    def rank_of_mask(self, mask: int) -> int:
        if self._rank_table is not None:
            return self._rank_table[mask]
        got = self._rank_memo.get(mask)
        if got is None:
            ech = Echelon(self.q, self.r)
            for i in iter_bits(mask):
                ech.insert(self.points[i])
            got = ech.rank
            self._rank_memo[mask] = got
        return got

    def closure_mask(self, mask: int) -> int:
        if self._closure_table is not None:
            return self._closure_table[mask]
        got = self._closure_memo.get(mask)
        if got is None:
            ech = Echelon(self.q, self.r)
            for i in iter_bits(mask):
                ech.insert(self.points[i])
            got = 0
            for i, p in enumerate(self.points):
                if ech.contains(p):
                    got |= 1 << i
            self._closure_memo[mask] = got
        return got

    def mask_of(self, members) -> int:
        m = 0
        for i in members:
            m |= 1 << i
        return m

    def members_of(self, mask: int) -> tuple[int, ...]:
        return tuple(iter_bits(mask))

    # ------------------------------------------------------------------ flats

    def flats_of_rank(self, k: int) -> tuple[int, ...]:
        """Masks of all projective flats of rank k, sorted."""
        if not 0 <= k <= self.r:
            return ()
        got = self._flats_by_rank.get(k)
        if got is not None:
            return got
        if k == 0:
            got = (0,)
        elif k == self.r:
            got = (self.full_mask,)
        elif self._closure_table is not None:
            got = tuple(
                m for m in range(1 << self.n)
                if self._closure_table[m] == m and self._rank_table[m] == k
            )
        elif k == self.r - 1:
            got = self._hyperplanes_by_duality()
        elif k == 1:
            got = tuple(1 << i for i in range(self.n))
        else:
            prev = self.flats_of_rank(k - 1)
            seen = set()
            for f in prev:
                for p in range(self.n):
                    if (f >> p) & 1:
                        continue
                    new = f | (1 << p)
                    for i in iter_bits(f):
                        for extra in self.line_completions(i, p):
                            new |= 1 << extra
                    seen.add(new)
            got = tuple(sorted(seen))
        self._flats_by_rank[k] = got
        return got

    def _hyperplanes_by_duality(self) -> tuple[int, ...]:
        q = self.q
        out = []
        for phi in self.points:
            m = 0
            for i, p in enumerate(self.points):
                if sum(a * b for a, b in zip(phi, p)) % q == 0:
                    m |= 1 << i
            out.append(m)
        return tuple(sorted(out))

    def all_flat_masks(self) -> tuple[tuple[int, int], ...]:
        """(mask, rank) for every projective flat, empty through full."""
        out = []
        for k in range(self.r + 1):
            out.extend((m, k) for m in self.flats_of_rank(k))
        return tuple(out)

    # ------------------------------------------------------------- components

    def components_mask(self, mask: int) -> tuple[int, ...]:
        """Connected components of the restriction to mask, as masks.

        Elements share a component exactly when they are linked through
        fundamental circuits of a fixed basis of the restriction.
        """
        got = self._components_memo.get(mask)
        if got is not None:
            return got
        idxs = list(iter_bits(mask))
        parent = {i: i for i in idxs}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ech = Echelon(self.q, self.r)
        nonbasis = []
        for i in idxs:
            if not ech.insert(self.points[i]):
                nonbasis.append(i)
        # coords positions follow insertion order, i.e. idxs order
        for y in nonbasis:
            c = ech.coords(self.points[y])
            ry = find(y)
            for pos, coeff in enumerate(c):
                if coeff:
                    rb = find(idxs[pos])
                    if rb != ry:
                        parent[rb] = ry
        blocks: dict[int, int] = {}
        for i in idxs:
            root = find(i)
            blocks[root] = blocks.get(root, 0) | (1 << i)
        got = tuple(sorted(blocks.values()))
        self._components_memo[mask] = got
        return got

    def is_connected_mask(self, mask: int) -> bool:
        return len(self.components_mask(mask)) <= 1

    # ------------------------------------------------- vertical connectivity

    def vertical_connectivity_mask(self, mask: int) -> int:
        """Least k admitting a vertical k-separation of the restriction, else its rank."""
        if mask == 0:
            return 0
        got = self._vc_memo.get(mask)
        if got is not None:
            return got
        rank = self.rank_of_mask
        rs = rank(mask)
        best = rs
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        # only partitions with both sides non-spanning admit a vertical separation
        while True:
            a = sub | low
            if a != mask:
                ra = rank(a)
                if ra < rs:
                    rb = rank(mask ^ a)
                    if rb < rs:
                        cand = ra + rb - rs + 1
                        if cand < best:
                            best = cand
            if sub == 0:
                break
            sub = (sub - 1) & rest
        self._vc_memo[mask] = best
        return best

    # ------------------------------------------------------------ embeddings

    def flat_embedding(self, flat_mask: int) -> tuple["PointSpace", dict[int, int]]:
        """Re-coordinatization of a projective flat onto its own geometry.

        Returns the small space PG(k-1, q) and the index map defined on every
        point of the flat, built from the greedy basis of the flat.
        """
        got = self._embeddings.get(flat_mask)
        if got is not None:
            return got
        members = list(iter_bits(flat_mask))
        k = self.rank_of_mask(flat_mask)
        sub = point_space(k, self.q)
        scan = Echelon(self.q, self.r)
        basis = [i for i in members if scan.insert(self.points[i])]
        # fresh echelon over the basis alone so coords() has length exactly k
        basis_ech = Echelon(self.q, self.r)
        for i in basis:
            basis_ech.insert(self.points[i])
        mapping = {}
        for i in members:
            c = basis_ech.coords(self.points[i])
            if c is None:
                raise AssertionError("flat member outside its own span")
            mapping[i] = sub.index[normalize(c, self.q)]
        got = (sub, mapping)
        self._embeddings[flat_mask] = got
        return got

    def translate_mask(self, mask: int, mapping: dict[int, int]) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << mapping[i]
        return out

    def contraction_map(self, e: int) -> tuple["PointSpace", list[int | None]]:
        """Projection of the whole space along point e onto PG(r-2, q).

        Coordinates are taken in a basis with e last; dropping the final
        coordinate realizes contraction of e for spanning restrictions.
        """
        got = self._contractions.get(e)
        if got is not None:
            return got
        sub = point_space(self.r - 1, self.q)
        scan = Echelon(self.q, self.r)
        order = [e] + [i for i in range(self.n) if i != e]
        basis = [i for i in order if scan.insert(self.points[i])]
        ech = Echelon(self.q, self.r)
        for i in basis:
            ech.insert(self.points[i])
        # coords in basis order with e first; the image drops the e-coordinate
        mapping: list[int | None] = []
        for i in range(self.n):
            if i == e:
                mapping.append(None)
                continue
            c = ech.coords(self.points[i])
            mapping.append(sub.index[normalize(c[1:], self.q)])
        got = (sub, mapping)
        self._contractions[e] = got
        return got


@lru_cache(maxsize=None)
def point_space(r: int, q: int) -> PointSpace:
    """Shared PointSpace instance for PG(r-1, q)."""
    return PointSpace(r, q)


def enumerate_points(rank: int, q: int) -> tuple[tuple[int, ...], ...]:
    """Ordered point list of PG(rank-1, q)."""
    return point_space(rank, q).points


def rank_of(space: PointSpace, points) -> int:
    """Projective rank of a set of point indices."""
    return space.rank_of_mask(space.mask_of(points))


def closure(space: PointSpace, points) -> FlatHandle:
    """Smallest projective flat containing the given point indices."""
    mask = space.closure_mask(space.mask_of(points))
    return FlatHandle(space, space.members_of(mask), space.rank_of_mask(mask))


def enumerate_flats(space: PointSpace, k: int) -> tuple[FlatHandle, ...]:
    """All projective flats of rank k, ordered by member tuple."""
    out = [
        FlatHandle(space, space.members_of(m), k)
        for m in space.flats_of_rank(k)
    ]
    out.sort(key=lambda f: f.members)
    return tuple(out)
