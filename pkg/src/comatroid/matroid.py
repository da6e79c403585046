"""Simple GF(q)-representable matroids embedded as green point sets in PG(r-1, q).

An EmbeddedMatroid is a projective geometry together with a green subset; the
red points are the rest. All matroid operations (rank, flats, connectivity,
complements, direct sums, simplified contraction) are derived from the ambient
geometry, so every matroid here is automatically simple and loopless.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ResourceLimitError, SimplicityError
from .linalg import Echelon, check_field, normalize
from .projective import FlatHandle, PointSpace, iter_bits, point_space, popcount

BRUTE_FORCE_CAP = 24


@dataclass(frozen=True)
class MatrixPresentation:
    """A GF(q) matrix given column by column, with optional column labels."""

    q: int
    columns: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        check_field(self.q)
        object.__setattr__(self, "columns", tuple(tuple(c) for c in self.columns))
        if self.columns:
            m = len(self.columns[0])
            if any(len(c) != m for c in self.columns):
                raise ValueError("columns must share a common length")
        if any(a % self.q != a for c in self.columns for a in c):
            raise ValueError(f"matrix entries must lie in 0..{self.q - 1}")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.columns):
                raise ValueError("label count must match column count")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("duplicate column labels")

    @property
    def rows(self) -> int:
        return len(self.columns[0]) if self.columns else 0


@dataclass(frozen=True)
class Partition2:
    """An ordered bipartition of a point set, used as a separation witness."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]


@dataclass(frozen=True)
class MatroidFlat:
    """A flat of an embedded matroid: its members and minimal projective span."""

    matroid: "EmbeddedMatroid"
    members: tuple[int, ...]
    span: FlatHandle

    @property
    def rank(self) -> int:
        return self.span.rank

    @property
    def mask(self) -> int:
        m = 0
        for i in self.members:
            m |= 1 << i
        return m


@dataclass(frozen=True)
class EmbeddedMatroid:
    """A green point subset of PG(r-1, q); red is the complement point set."""

    space: PointSpace
    green_mask: int
    labels: tuple[tuple[str, int], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.green_mask & ~self.space.full_mask:
            raise ValueError("green set contains indices outside the space")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            for _, i in self.labels:
                if not (self.green_mask >> i) & 1:
                    raise ValueError("label attached to a non-green point")

    # ------------------------------------------------------------- basic views

    @property
    def q(self) -> int:
        return self.space.q

    @property
    def n(self) -> int:
        return popcount(self.green_mask)

    @property
    def elements(self) -> tuple[int, ...]:
        return self.space.members_of(self.green_mask)

    @property
    def red_mask(self) -> int:
        return self.space.full_mask & ~self.green_mask

    @cached_property
    def rank(self) -> int:
        return self.space.rank_of_mask(self.green_mask)

    @cached_property
    def span_mask(self) -> int:
        return self.space.closure_mask(self.green_mask)

    @property
    def is_spanning(self) -> bool:
        return self.rank == self.space.r

    @cached_property
    def label_to_index(self) -> dict[str, int]:
        return dict(self.labels or ())

    def mask_of_labels(self, names) -> int:
        m = 0
        for name in names:
            m |= 1 << self.label_to_index[name]
        return m

    def _subset_mask(self, S) -> int:
        if S is None:
            return self.green_mask
        m = self.space.mask_of(S)
        if m & ~self.green_mask:
            raise ValueError("subset contains non-green points")
        return m

    def __repr__(self):
        return f"EmbeddedMatroid({self.space!r}, n={self.n}, rank={self.rank})"

    # ------------------------------------------------------------ rank & flats

    def rank_of(self, S=None) -> int:
        return self.space.rank_of_mask(self._subset_mask(S))

    def _span_flat_masks(self):
        """(flat mask in ambient coordinates, rank) over all flats of the green span."""
        if self.is_spanning:
            yield from self.space.all_flat_masks()
            return
        sub, mapping = self.space.flat_embedding(self.span_mask)
        back = {v: k for k, v in mapping.items()}
        for fmask, k in sub.all_flat_masks():
            amb = 0
            for i in iter_bits(fmask):
                amb |= 1 << back[i]
            yield amb, k

    def flats_of(self) -> list[MatroidFlat]:
        """All flats of the matroid, each with its minimal projective span."""
        seen = set()
        for fmask, _ in self._span_flat_masks():
            seen.add(fmask & self.green_mask)
        out = []
        for inter in seen:
            cl = self.space.closure_mask(inter)
            span = FlatHandle(self.space, self.space.members_of(cl), self.space.rank_of_mask(cl))
            out.append(MatroidFlat(self, self.space.members_of(inter), span))
        out.sort(key=lambda f: (f.rank, f.members))
        return out

    def _span_flats_of_rank(self, j: int):
        """Ambient masks of the rank-j projective flats of the green span."""
        if self.is_spanning:
            yield from self.space.flats_of_rank(j)
            return
        sub, mapping = self.space.flat_embedding(self.span_mask)
        back = {v: k for k, v in mapping.items()}
        for fmask in sub.flats_of_rank(j):
            amb = 0
            for i in iter_bits(fmask):
                amb |= 1 << back[i]
            yield amb

    def hyperplane_masks(self) -> tuple[int, ...]:
        """Masks of the rank-(r-1) flats of the matroid, in ambient coordinates."""
        k = self.rank
        if k == 0:
            return ()
        seen = set()
        for fmask in self._span_flats_of_rank(k - 1):
            inter = fmask & self.green_mask
            if self.space.rank_of_mask(inter) == k - 1:
                seen.add(inter)
        return tuple(sorted(seen))

    def connected_hyperplanes(self) -> list[MatroidFlat]:
        """Hyperplane flats whose restriction is connected.

        Empty and single-point restrictions count as connected.
        """
        out = []
        for inter in self.hyperplane_masks():
            if self.space.is_connected_mask(inter):
                cl = self.space.closure_mask(inter)
                span = FlatHandle(self.space, self.space.members_of(cl), self.space.rank_of_mask(cl))
                out.append(MatroidFlat(self, self.space.members_of(inter), span))
        out.sort(key=lambda f: f.members)
        return out

    # ------------------------------------------------------------ connectivity

    def components_of(self, S=None) -> tuple[tuple[int, ...], ...]:
        """Connected components of the restriction to S, coloops as singletons."""
        blocks = self.space.components_mask(self._subset_mask(S))
        return tuple(self.space.members_of(b) for b in blocks)

    def is_connected(self, S=None) -> bool:
        return len(self.components_of(S)) <= 1

    def vertical_connectivity(self, S=None) -> int:
        """Least k admitting a vertical k-separation of the restriction, else its rank."""
        mask = self._subset_mask(S)
        size = popcount(mask)
        if size > BRUTE_FORCE_CAP:
            raise ResourceLimitError(f"vertical connectivity capped at {BRUTE_FORCE_CAP} elements, got {size}")
        return self.space.vertical_connectivity_mask(mask)

    # ---------------------------------------------------------------- circuits

    def circuits(self, S=None, size_cap: int | None = None) -> list[tuple[int, ...]]:
        """All minimal dependent subsets of S with size at most size_cap."""
        mask = self._subset_mask(S)
        idxs = self.space.members_of(mask)
        if len(idxs) > BRUTE_FORCE_CAP:
            raise ResourceLimitError(f"circuit enumeration capped at {BRUTE_FORCE_CAP} elements, got {len(idxs)}")
        rank = self.space.rank_of_mask
        top = rank(mask) + 1
        if size_cap is not None:
            top = min(top, size_cap)
        out = []
        for size in range(2, top + 1):
            for combo in itertools.combinations(idxs, size):
                m = self.space.mask_of(combo)
                if rank(m) != size - 1:
                    continue
                if all(rank(m ^ (1 << x)) == size - 1 for x in combo):
                    out.append(combo)
        return out

    def is_coloop(self, e: int) -> bool:
        mask = self._subset_mask([e])
        return self.space.rank_of_mask(self.green_mask ^ mask) == self.rank - 1

    def is_free_element(self, e: int) -> bool:
        """True iff e is not a coloop and every circuit through e is spanning."""
        emask = self._subset_mask([e])
        if self.is_coloop(e):
            return False
        rank = self.space.rank_of_mask
        k = self.rank
        others = self.space.members_of(self.green_mask ^ emask)
        # non-spanning circuits have at most k elements
        for size in range(2, k + 1):
            for combo in itertools.combinations(others, size - 1):
                m = self.space.mask_of(combo) | emask
                if rank(m) != size - 1:
                    continue
                if all(rank(m ^ (1 << x)) == size - 1 for x in iter_bits(m)):
                    return False
        return True

    # -------------------------------------------------------------- cocircuits

    def cocircuits_min_size(self) -> int:
        """Minimum cocircuit size, via complements of hyperplane flats."""
        if not self.green_mask:
            raise ValueError("the empty matroid has no cocircuits")
        best = self.n
        for h in self.hyperplane_masks():
            best = min(best, self.n - popcount(h))
        return best

    def series_classes(self) -> tuple[tuple[int, ...], ...]:
        """Partition of the ground set by the relation 'together in a 2-cocircuit'."""
        idxs = list(self.elements)
        parent = {i: i for i in idxs}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        k = self.rank
        for e, f in itertools.combinations(idxs, 2):
            rest = self.green_mask ^ (1 << e) ^ (1 << f)
            if self.space.rank_of_mask(rest) != k - 1:
                continue
            if self.space.closure_mask(rest) & self.green_mask != rest:
                continue
            re, rf = find(e), find(f)
            if re != rf:
                parent[re] = rf
        blocks: dict[int, list[int]] = {}
        for i in idxs:
            blocks.setdefault(find(i), []).append(i)
        return tuple(sorted(tuple(b) for b in blocks.values()))

    # ------------------------------------------------------------- embeddings

    def to_span(self) -> "EmbeddedMatroid":
        """The same matroid re-embedded so that its green set spans the space."""
        if self.is_spanning:
            return self
        sub, mapping = self.space.flat_embedding(self.span_mask)
        green = self.space.translate_mask(self.green_mask, mapping)
        labels = None
        if self.labels is not None:
            labels = tuple((name, mapping[i]) for name, i in self.labels)
        return EmbeddedMatroid(sub, green, labels)

    def _padded_to(self, t: int) -> "EmbeddedMatroid":
        """Span re-embedding padded with zero coordinates up to t rows."""
        m = self.to_span()
        if t == m.space.r:
            return m
        target = point_space(t, self.q)
        pad = (0,) * (t - m.space.r)
        remap = {i: target.index[p + pad] for i, p in enumerate(m.space.points)}
        green = 0
        for i in iter_bits(m.green_mask):
            green |= 1 << remap[i]
        labels = None
        if m.labels is not None:
            labels = tuple((name, remap[i]) for name, i in m.labels)
        return EmbeddedMatroid(target, green, labels)

    def complement(self, t: int | None = None) -> "EmbeddedMatroid":
        """The (GF(q), t)-complement: the red side of a rank-t embedding.

        With t equal to the ambient rank of a spanning matroid the embedding is
        left untouched, so complementation is an exact involution there.
        """
        k = self.rank
        if t is None:
            t = k
        if t < k:
            raise ValueError(f"complement rank {t} below matroid rank {k}")
        if t == self.space.r and self.is_spanning:
            return EmbeddedMatroid(self.space, self.red_mask)
        m = self._padded_to(t)
        return EmbeddedMatroid(m.space, m.red_mask)

    def direct_sum(self, other: "EmbeddedMatroid") -> "EmbeddedMatroid":
        """Block-diagonal embedding of the direct sum in PG(r1+r2-1, q)."""
        if self.q != other.q:
            raise ValueError("direct sum requires matching field orders")
        a = self.to_span()
        b = other.to_span()
        target = point_space(a.space.r + b.space.r, self.q)
        zeros_a = (0,) * b.space.r
        zeros_b = (0,) * a.space.r
        green = 0
        for i in iter_bits(a.green_mask):
            green |= 1 << target.index[a.space.points[i] + zeros_a]
        for i in iter_bits(b.green_mask):
            green |= 1 << target.index[zeros_b + b.space.points[i]]
        return EmbeddedMatroid(target, green)

    def restrict(self, S) -> "EmbeddedMatroid":
        """Restriction to a green subset, kept in the ambient space."""
        mask = self._subset_mask(S)
        labels = None
        if self.labels is not None:
            labels = tuple((name, i) for name, i in self.labels if (mask >> i) & 1)
        return EmbeddedMatroid(self.space, mask, labels)

    def restrict_to_flat(self, flat) -> "EmbeddedMatroid":
        """Restriction to a flat, re-embedded in the projective span of the flat."""
        mask = flat.mask if isinstance(flat, MatroidFlat) else self.space.mask_of(flat)
        if mask & ~self.green_mask:
            raise ValueError("flat members must be green")
        if self.space.closure_mask(mask) & self.green_mask != mask:
            raise ValueError("the given set is not a flat of the matroid")
        cl = self.space.closure_mask(mask)
        sub, mapping = self.space.flat_embedding(cl)
        green = self.space.translate_mask(mask, mapping)
        labels = None
        if self.labels is not None:
            labels = tuple((name, mapping[i]) for name, i in self.labels if (mask >> i) & 1)
        return EmbeddedMatroid(sub, green, labels)

    def si_contract(self, e: int) -> "EmbeddedMatroid":
        """Simplification of the contraction by e, embedded in PG(r-2, q)."""
        self._subset_mask([e])
        m = self
        if not self.is_spanning:
            _, emb = self.space.flat_embedding(self.span_mask)
            m = self.to_span()
            e = emb[e]
        if m.space.r == 1:
            return EmbeddedMatroid(point_space(0, self.q), 0)
        sub, mapping = m.space.contraction_map(e)
        green = 0
        for i in iter_bits(m.green_mask):
            if i != e:
                green |= 1 << mapping[i]
        return EmbeddedMatroid(sub, green)


def embed(pres: MatrixPresentation) -> EmbeddedMatroid:
    """Embed a matrix presentation into PG(rank-1, q) as a green point set.

    The columns are re-coordinatized over a basis of the column space, so the
    ambient rank always equals the rank of the matrix.
    """
    cols = pres.columns
    if not cols:
        return EmbeddedMatroid(point_space(0, pres.q), 0)
    if any(not any(c) for c in cols):
        raise SimplicityError("zero column in presentation")
    scan = Echelon(pres.q, pres.rows)
    basis = [c for c in cols if scan.insert(c)]
    if len(basis) == pres.rows:
        coords = cols
    else:
        # trim to the row rank by re-coordinatizing over a column basis
        ech = Echelon(pres.q, pres.rows)
        for c in basis:
            ech.insert(c)
        coords = [ech.coords(c) for c in cols]
    space = point_space(len(basis), pres.q)
    green = 0
    labels = []
    for pos, c in enumerate(coords):
        p = space.index[normalize(c, pres.q)]
        if (green >> p) & 1:
            raise SimplicityError(f"columns {pos} and an earlier column are projectively equal")
        green |= 1 << p
        if pres.labels is not None:
            labels.append((pres.labels[pos], p))
    return EmbeddedMatroid(space, green, tuple(labels) if pres.labels is not None else None)


# ------------------------------------------------------ operation-style names

def matroid_rank(M: EmbeddedMatroid, S=None) -> int:
    return M.rank_of(S)


def flats_of(M: EmbeddedMatroid) -> list[MatroidFlat]:
    return M.flats_of()


def components(M: EmbeddedMatroid, S=None) -> tuple[tuple[int, ...], ...]:
    return M.components_of(S)


def vertical_connectivity(M: EmbeddedMatroid, S=None) -> int:
    return M.vertical_connectivity(S)


def circuits(M: EmbeddedMatroid, S=None, size_cap: int | None = None) -> list[tuple[int, ...]]:
    return M.circuits(S, size_cap)


def cocircuits_min_size(M: EmbeddedMatroid) -> int:
    return M.cocircuits_min_size()


def series_classes(M: EmbeddedMatroid) -> tuple[tuple[int, ...], ...]:
    return M.series_classes()


def is_free_element(M: EmbeddedMatroid, e: int) -> bool:
    return M.is_free_element(e)


def complement(M: EmbeddedMatroid, t: int | None = None) -> EmbeddedMatroid:
    return M.complement(t)


def direct_sum(M1: EmbeddedMatroid, M2: EmbeddedMatroid) -> EmbeddedMatroid:
    return M1.direct_sum(M2)


def si_contract(M: EmbeddedMatroid, e: int) -> EmbeddedMatroid:
    return M.si_contract(e)


def restrict_to_flat(M: EmbeddedMatroid, F) -> EmbeddedMatroid:
    return M.restrict_to_flat(F)


def connected_hyperplanes(M: EmbeddedMatroid) -> list[MatroidFlat]:
    return M.connected_hyperplanes()
