"""Three independent deciders for GF(q)-comatroid membership.

A GF(q)-comatroid is built from the empty matroid by direct sums and
complements inside projective space. The recursive decider follows that
definition directly; the flat-criterion decider checks the equal-rank flat
condition; the forbidden-flat decider matches flats of the matroid and its
complement against a finite catalog plus unbounded families.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .canonical import canonical_key
from .catalog import circuit_with_u24, named
from .errors import ResourceLimitError
from .formats import loads_presentation
from .matroid import EmbeddedMatroid, embed
from .projective import iter_bits, popcount

RECURSIVE_RANK_CAP = 7
FLAT_RANK_CAP = 6
INDUCED_MINOR_RANK_CAP = 5


@dataclass(frozen=True)
class Verdict:
    """A decision with the method that produced it and a replayable certificate."""

    is_comatroid: bool
    method: str
    certificate: tuple | None = None


# ---------------------------------------------------------------- recursive

_rec_memo: dict[tuple[int, int, int], tuple[bool, tuple]] = {}


def _decide_rec(m: EmbeddedMatroid) -> tuple[bool, tuple]:
    """Decision and trace for a matroid spanning its own space."""
    key = (m.space.r, m.q, m.green_mask)
    got = _rec_memo.get(key)
    if got is not None:
        return got
    if m.green_mask == 0:
        out = (True, ("empty",))
    else:
        comps = m.space.components_mask(m.green_mask)
        if len(comps) > 1:
            children = []
            ok = True
            for c in comps:
                sub = EmbeddedMatroid(m.space, c).to_span()
                good, cert = _decide_rec(sub)
                children.append((tuple(iter_bits(c)), cert))
                ok = ok and good
            out = (ok, ("components", tuple(children)))
        else:
            comp = m.complement()
            if comp.rank == m.rank and m.space.is_connected_mask(comp.green_mask):
                out = (False, ("blocked",))
            else:
                good, cert = _decide_rec(comp.to_span())
                out = (good, ("complement", cert))
    _rec_memo[key] = out
    return out


def decide_recursive(M: EmbeddedMatroid) -> Verdict:
    """Decide by unwinding complements and direct-sum components to the empty base."""
    if M.rank > RECURSIVE_RANK_CAP:
        raise ResourceLimitError(
            f"recursive decision capped at rank {RECURSIVE_RANK_CAP}, got {M.rank}")
    ok, cert = _decide_rec(M.to_span())
    return Verdict(ok, "recursive", cert)


# ------------------------------------------------------------ flat criterion

def decide_flat_criterion(M: EmbeddedMatroid) -> Verdict:
    """Decide via the equal-rank flat condition on the span of the matroid.

    The matroid passes iff it is empty or every projective flat F with
    r(F ∩ G) = r(F − G) has a disconnected restriction on at least one side.
    """
    if M.rank > FLAT_RANK_CAP:
        raise ResourceLimitError(
            f"flat criterion capped at rank {FLAT_RANK_CAP}, got {M.rank}")
    m = M.to_span()
    if m.green_mask == 0:
        return Verdict(True, "flat-criterion")
    space = m.space
    green = m.green_mask
    rank = space.rank_of_mask
    connected = space.is_connected_mask
    # top rank first and levels streamed lazily: both sides spanning and
    # connected is the common failure, so most non-comatroids exit on the
    # full space before any lower level of the flat lattice is built
    for frank in range(space.r, 0, -1):
        for fmask in space.flats_of_rank(frank):
            x = fmask & green
            y = fmask & ~green
            if rank(x) != rank(y):
                continue
            if connected(x) and connected(y):
                return Verdict(False, "flat-criterion",
                               ("violating-flat", tuple(iter_bits(fmask))))
    return Verdict(True, "flat-criterion")


# ---------------------------------------------------------- forbidden flats

@dataclass(frozen=True)
class ForbiddenCatalog:
    """Fixed forbidden-flat entries for one field, plus family descriptions."""

    q: int
    entries: tuple[tuple[str, int, int, tuple], ...]
    families: tuple[str, ...]

    def fixed_candidates(self, rank: int, size: int):
        for name, r, n, key in self.entries:
            if r == rank and n == size:
                yield name, key


def _forbidden_dir_presentations():
    root = resources.files("comatroid").joinpath("data/forbidden")
    out = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".mat"):
            out.append((entry.name[:-4], loads_presentation(entry.read_text(encoding="utf-8"))))
    return out


@lru_cache(maxsize=None)
def forbidden_catalog(q: int) -> ForbiddenCatalog:
    """The forbidden-flat catalog for GF(q), fixed entries loaded from data files."""
    entries = []
    for name, pres in _forbidden_dir_presentations():
        if pres.q != q:
            continue
        m = embed(pres)
        entries.append((name, m.rank, m.n, canonical_key(m)))
    if q == 2:
        m = embed(named("P(U34,U34)"))
        entries.append(("P(U34,U34)", m.rank, m.n, canonical_key(m)))
        families = ("circuit of size exceeding five",)
    else:
        families = ("circuit of size exceeding three",
                    "circuit with U(2,4) two-summed on at least one element")
    return ForbiddenCatalog(q, tuple(sorted(entries)), families)


@lru_cache(maxsize=None)
def _family_key(k: int, d: int) -> tuple:
    """Canonical key of the k-circuit with d two-summed copies of U(2,4)."""
    return canonical_key(embed(circuit_with_u24(k, range(d))))


def _match_forbidden(side: EmbeddedMatroid, cat: ForbiddenCatalog):
    """First (flat members, entry name) match on one side, or None.

    Every forbidden member has rank at least 3, so only flats of rank 3 and
    up are scanned; each matroid flat is visited once, at its own closure.
    """
    if side.green_mask == 0:
        return None
    m = side.to_span()
    space = m.space
    green = m.green_mask
    min_circuit = 6 if cat.q == 2 else 4
    # top-rank flats first: circuits and family members sit at the span, so
    # dense non-members are rejected before the wide low-rank levels
    for frank in range(space.r, 2, -1):
        for fmask in space.flats_of_rank(frank):
            x = fmask & green
            if x == 0 or space.closure_mask(x) != fmask:
                continue
            size = popcount(x)
            if size == frank + 1 and size >= min_circuit and space.is_connected_mask(x):
                return (tuple(iter_bits(x)), f"circuit of size {size}")
            if cat.q == 3:
                ksig = 2 * (frank + 1) - size
                dsig = size - frank - 1
                if ksig >= 3 and dsig >= 1 and space.is_connected_mask(x):
                    sub = EmbeddedMatroid(space, x)
                    if canonical_key(sub) == _family_key(ksig, dsig):
                        return (tuple(iter_bits(x)),
                                f"circuit with U(2,4) family (k={ksig}, d={dsig})")
            hit_key = None
            for name, key in cat.fixed_candidates(frank, size):
                if hit_key is None:
                    hit_key = canonical_key(EmbeddedMatroid(space, x))
                if hit_key == key:
                    return (tuple(iter_bits(x)), name)
    return None


def decide_forbidden_flats(M: EmbeddedMatroid, cat: ForbiddenCatalog | None = None) -> Verdict:
    """Decide by scanning flats of M and of its complement for forbidden members."""
    if M.rank > FLAT_RANK_CAP:
        raise ResourceLimitError(
            f"forbidden-flat decision capped at rank {FLAT_RANK_CAP}, got {M.rank}")
    if cat is None:
        cat = forbidden_catalog(M.q)
    if cat.q != M.q:
        raise ValueError(f"catalog is for GF({cat.q}), matroid over GF({M.q})")
    m = M.to_span()
    hit = _match_forbidden(m, cat)
    if hit is not None:
        return Verdict(False, "forbidden-flat", ("witness", "M") + hit)
    comp = m.complement()
    hit = _match_forbidden(comp, cat)
    if hit is not None:
        return Verdict(False, "forbidden-flat", ("witness", "M^c") + hit)
    return Verdict(True, "forbidden-flat")


# ------------------------------------------------------------ induced minors

def _node_key(m: EmbeddedMatroid) -> tuple:
    """Equivalence key for a spanning matroid, via the sparser of green and red."""
    n = m.n
    total = len(m.space.points)
    if 2 * n <= total:
        return ("g", m.q, m.space.r, n, canonical_key(m))
    return ("r", m.q, m.space.r, n, canonical_key(m.complement().to_span()))


@lru_cache(maxsize=None)
def _induced_minor_list(q: int) -> dict[tuple, str]:
    """Forbidden induced minors of rank at most the cap, keyed for matching."""
    out: dict[tuple, str] = {}

    def add(m, name):
        m = m.to_span()
        if m.rank <= INDUCED_MINOR_RANK_CAP:
            out.setdefault(_node_key(m), name)

    if q == 2:
        from .catalog import circuit

        add(embed(circuit(6, 2)).complement(), "complement of a 6-circuit")
        add(embed(named("P(U34,U34)")), "P(U34,U34)")
        bundled = dict(_forbidden_dir_presentations())
        for name, _, _, _ in forbidden_catalog(2).entries:
            if name == "P(U34,U34)":
                continue
            m = embed(bundled[name])
            add(m, name)
            add(m.complement(), f"complement of {name}")
    else:
        for k in range(3, 8):
            for d in range(0, 5):
                if (k, d) == (3, 0):
                    # the triangle's complement is a single point, a comatroid
                    continue
                if k - 1 + d > INDUCED_MINOR_RANK_CAP:
                    continue
                member = embed(circuit_with_u24(k, range(d)))
                add(member.complement(), f"complement of family (k={k}, d={d})")
        from .catalog import circuit

        seven = {"U(3,4)": embed(circuit(4, 3))}
        for name in ("P(U23,U23)", "U24+2U23", "R6", "P(U24,U23)", "M(K4)", "W3"):
            seven[name] = embed(named(name))
        for name, m in seven.items():
            add(m, name)
            add(m.complement(), f"complement of {name}")
    return out


def has_forbidden_induced_minor(M: EmbeddedMatroid, cat=None) -> bool:
    """True iff flat-restrictions and si-contractions reach a forbidden list member."""
    if M.rank > INDUCED_MINOR_RANK_CAP:
        raise ResourceLimitError(
            f"induced-minor search capped at rank {INDUCED_MINOR_RANK_CAP}, got {M.rank}")
    listing = _induced_minor_list(M.q) if cat is None else cat
    seen: set[tuple] = set()
    stack = [M.to_span()]
    while stack:
        m = stack.pop()
        # every forbidden member has rank at least 3, and neither operation
        # increases rank, so smaller nodes are dead ends
        if m.rank < 3:
            continue
        key = _node_key(m)
        if key in seen:
            continue
        seen.add(key)
        if key in listing:
            return True
        for flat in m.flats_of():
            if flat.mask == m.green_mask or flat.mask == 0:
                continue
            stack.append(m.restrict_to_flat(flat).to_span())
        for e in m.elements:
            stack.append(m.si_contract(e).to_span())
    return False


# -------------------------------------------------------------------- replay

def verify_certificate(M: EmbeddedMatroid, verdict: Verdict) -> bool:
    """Replay a certificate against M, independently of the producing decider."""
    cert = verdict.certificate
    if cert is None:
        return True
    if verdict.method == "recursive":
        try:
            return _replay_rec(M.to_span(), cert) == verdict.is_comatroid
        except _ReplayError:
            return False
    m = M.to_span()
    if verdict.method == "flat-criterion":
        tag, members = cert[0], cert[1]
        if tag != "violating-flat":
            return False
        fmask = m.space.mask_of(members)
        if m.space.closure_mask(fmask) != fmask:
            return False
        x = fmask & m.green_mask
        y = fmask & ~m.green_mask
        return (m.space.rank_of_mask(x) == m.space.rank_of_mask(y)
                and m.space.is_connected_mask(x)
                and m.space.is_connected_mask(y)
                and not verdict.is_comatroid)
    if verdict.method == "forbidden-flat":
        tag, side_name, members, entry = cert
        if tag != "witness":
            return False
        side = m if side_name == "M" else m.complement().to_span()
        x = side.space.mask_of(members)
        if x & ~side.green_mask:
            return False
        if side.space.closure_mask(x) & side.green_mask != x:
            return False
        sub = EmbeddedMatroid(side.space, x)
        cat = forbidden_catalog(m.q)
        hit = _match_forbidden_single(sub, cat)
        return hit == entry and not verdict.is_comatroid
    return False


def _match_forbidden_single(sub: EmbeddedMatroid, cat: ForbiddenCatalog) -> str | None:
    """Name of the forbidden entry the whole green set of sub matches, if any."""
    m = sub.to_span()
    size, rank = m.n, m.rank
    min_circuit = 6 if cat.q == 2 else 4
    if size == rank + 1 and size >= min_circuit and m.is_connected():
        return f"circuit of size {size}"
    if cat.q == 3:
        ksig = 2 * (rank + 1) - size
        dsig = size - rank - 1
        if ksig >= 3 and dsig >= 1 and m.is_connected():
            if canonical_key(m) == _family_key(ksig, dsig):
                return f"circuit with U(2,4) family (k={ksig}, d={dsig})"
    for name, key in cat.fixed_candidates(rank, size):
        if canonical_key(m) == key:
            return name
    return None


class _ReplayError(Exception):
    pass


def _replay_rec(m: EmbeddedMatroid, cert: tuple) -> bool:
    tag = cert[0]
    if tag == "empty":
        if m.green_mask != 0:
            raise _ReplayError
        return True
    if tag == "blocked":
        comp = m.complement()
        if not (m.is_connected() and comp.rank == m.rank
                and m.space.is_connected_mask(comp.green_mask)):
            raise _ReplayError
        return False
    if tag == "components":
        comps = m.space.components_mask(m.green_mask)
        if len(comps) < 2 or len(comps) != len(cert[1]):
            raise _ReplayError
        ok = True
        for c, (members, sub_cert) in zip(comps, cert[1]):
            if m.space.mask_of(members) != c:
                raise _ReplayError
            sub = EmbeddedMatroid(m.space, c).to_span()
            ok = _replay_rec(sub, sub_cert) and ok
        return ok
    if tag == "complement":
        comp = m.complement()
        if not m.is_connected():
            raise _ReplayError
        if comp.rank == m.rank and m.space.is_connected_mask(comp.green_mask):
            raise _ReplayError
        return _replay_rec(comp.to_span(), cert[1])
    raise _ReplayError
