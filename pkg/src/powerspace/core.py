"""Finite T0 spaces as bit-vector posets.

Every finite topology is Alexandrov: its opens are exactly the upper sets
of the specialization order, and the order is recovered from any subbasis
by intersecting the subbasic opens around each point (the intersection is
the minimal open neighborhood).  A space therefore stores one bit mask per
point, the set of points above it, and materializes open families only on
demand behind a size cap.

Subsets of a space are plain ints, bit i standing for point i.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .config import DEFAULT_LIMITS, Limits
from .errors import CycleDetected, LimitExceeded, NotT0, PowerspaceTooLarge


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def set_label(names: Sequence[str], mask: int) -> str:
    return "{" + ",".join(names[i] for i in bits(mask)) + "}"


@dataclass(frozen=True)
class FiniteSpace:
    """A finite T0 space, stored as its specialization order.

    names  one identifier per point, pairwise distinct
    up     up[i] is the bit mask of {j : i <= j}, including i itself

    The open sets are the upper sets of the order.  They are enumerated
    lazily because iterated powerspace constructions make the family
    Dedekind-large long before the point count becomes a problem.
    """

    names: tuple[str, ...]
    up: tuple[int, ...]

    def __post_init__(self):
        n = len(self.names)
        if len(self.up) != n:
            raise ValueError("names and up must have equal length")
        if len(set(self.names)) != n:
            raise ValueError("point names must be pairwise distinct")
        full = (1 << n) - 1
        for i, m in enumerate(self.up):
            if m & ~full:
                raise ValueError("up mask out of range")
            if not (m >> i) & 1:
                raise ValueError("order must be reflexive")
            for j in bits(m):
                if self.up[j] & ~m:
                    raise ValueError("order must be transitive")
                if j != i and (self.up[j] >> i) & 1:
                    raise ValueError("order must be antisymmetric")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    @cached_property
    def down(self) -> tuple[int, ...]:
        d = [0] * self.n
        for i, m in enumerate(self.up):
            for j in bits(m):
                d[j] |= 1 << i
        return tuple(d)

    @cached_property
    def fingerprint(self) -> str:
        payload = repr((self.names, self.up)).encode()
        return hashlib.sha256(payload).hexdigest()[:12]

    def __repr__(self):
        return f"FiniteSpace(n={self.n}, fp={self.fingerprint})"

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def is_upper(self, mask: int) -> bool:
        for i in bits(mask):
            if self.up[i] & ~mask:
                return False
        return True

    # opens are upper sets, closed sets are lower sets
    is_open = is_upper

    def is_lower(self, mask: int) -> bool:
        for i in bits(mask):
            if self.down[i] & ~mask:
                return False
        return True

    is_closed = is_lower

    def closure_mask(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            m |= self.down[i]
        return m

    def saturation_mask(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            m |= self.up[i]
        return m

    def interior_mask(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            if not (self.up[i] & ~mask):
                m |= 1 << i
        return m

    def minimal_points(self, mask: int) -> int:
        """Bit mask of the order-minimal points of mask."""
        m = 0
        for i in bits(mask):
            if self.down[i] & mask == 1 << i:
                m |= 1 << i
        return m

    @cached_property
    def _opens_memo(self) -> dict:
        return {}

    def opens(self, limits: Limits = DEFAULT_LIMITS) -> tuple[int, ...]:
        """All open sets, sorted ascending as masks.  Cap guarded."""
        cap = limits.max_construction_points
        got = self._opens_memo.get(cap)
        if got is None:
            got = tuple(enumerate_upper_sets(self.up, cap))
            self._opens_memo[cap] = got
        return got

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with j covering i in the order."""
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            shadow = 0
            for j in bits(strict):
                shadow |= self.up[j] & ~(1 << j)
            for j in bits(strict & ~shadow):
                out.append((i, j))
        return out

    def point_index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class PtSet:
    """A subset of a space's points, kept next to its space."""

    space: FiniteSpace
    mask: int

    def __post_init__(self):
        if self.mask & ~self.space.full_mask:
            raise ValueError("extent outside the space")

    def points(self) -> tuple[str, ...]:
        return tuple(self.space.names[i] for i in bits(self.mask))

    def label(self) -> str:
        return set_label(self.space.names, self.mask)

    def __contains__(self, i: int) -> bool:
        return bool((self.mask >> i) & 1)

    def to_json(self) -> dict:
        return {"space": self.space.fingerprint, "points": list(self.points())}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure.  witness is present iff it failed."""

    holds: bool
    witness: object = None
    info: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("a holding verdict carries no witness")
        if not self.holds and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "witness": _jsonable(self.witness),
            "info": _jsonable(dict(self.info)),
        }


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, PtSet):
        return obj.to_json()
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=repr)
        return [_jsonable(v) for v in items]
    return repr(obj)


@dataclass(frozen=True)
class SpaceMap:
    """A total point function with explicit domain and codomain."""

    domain: FiniteSpace
    codomain: FiniteSpace
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.domain.n:
            raise ValueError("table length must match the domain")
        for v in self.table:
            if not 0 <= v < self.codomain.n:
                raise ValueError("table entry outside the codomain")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def image_mask(self) -> int:
        return mask_of(self.table)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def preimage_mask(self, mask: int) -> int:
        m = 0
        for i, v in enumerate(self.table):
            if (mask >> v) & 1:
                m |= 1 << i
        return m


def identity_map(space: FiniteSpace) -> SpaceMap:
    return SpaceMap(space, space, tuple(range(space.n)))


def compose(outer: SpaceMap, inner: SpaceMap) -> SpaceMap:
    if inner.codomain != outer.domain:
        raise ValueError("composition mismatch")
    return SpaceMap(inner.domain, outer.codomain, tuple(outer.table[v] for v in inner.table))


def check_continuous(f: SpaceMap) -> Verdict:
    """Continuity of a map between finite spaces.

    Preimage commutes with unions and intersections, so it is enough that
    the preimage of every minimal open neighborhood of the codomain is
    open.  The witness, when the check fails, is such a subbasic open.
    """
    dom, cod = f.domain, f.codomain
    for y in range(cod.n):
        pre = f.preimage_mask(cod.up[y])
        if not dom.is_upper(pre):
            return Verdict(False, witness=PtSet(cod, cod.up[y]), info={"checker": "check_continuous"})
    return Verdict(True, info={"checker": "check_continuous", "subbasics": cod.n})


def is_monotone(f: SpaceMap) -> bool:
    for i in range(f.domain.n):
        fi = f.table[i]
        for j in bits(f.domain.up[i]):
            if not f.codomain.leq(fi, f.table[j]):
                return False
    return True


def iter_continuous_maps(dom: FiniteSpace, cod: FiniteSpace) -> Iterator[SpaceMap]:
    """All continuous (equivalently monotone) maps dom -> cod."""
    if dom.n == 0:
        yield SpaceMap(dom, cod, ())
        return
    if cod.n == 0:
        return
    for table in product(range(cod.n), repeat=dom.n):
        f = SpaceMap(dom, cod, table)
        if is_monotone(f):
            yield f


# ---------------------------------------------------------------------------
# constructors


def space_from_opens(names: Sequence[str], opens: Iterable[Iterable[int] | int]) -> FiniteSpace:
    """Build a space from a generating family of opens.

    The family is implicitly closed under union and intersection, with the
    empty and full sets adjoined; since the closure does not change which
    points each open separates, the order can be read off the given family
    directly.  Raises NotT0 when two points share all their neighborhoods.
    """
    names = tuple(names)
    n = len(names)
    full = (1 << n) - 1
    masks = []
    for o in opens:
        m = o if isinstance(o, int) else mask_of(o)
        if m & ~full:
            raise ValueError("open contains unknown points")
        masks.append(m)
    up = []
    for p in range(n):
        m = full
        for o in masks:
            if (o >> p) & 1:
                m &= o
        up.append(m)
    seen: dict[int, int] = {}
    for p, m in enumerate(up):
        if m in seen:
            raise NotT0((names[seen[m]], names[p]))
        seen[m] = p
    return FiniteSpace(names, tuple(up))


def space_from_subbasis(names: Sequence[str], subbasis: Sequence[int]) -> FiniteSpace:
    """Space generated by a subbasis of opens.  Same derivation as
    space_from_opens; kept separate so constructions share one audited
    entry point that takes raw masks."""
    return space_from_opens(names, list(subbasis))


def space_from_poset(names: Sequence[str], covers: Iterable[tuple]) -> FiniteSpace:
    """Build a space from order generators (x below y per pair)."""
    names = tuple(names)
    n = len(names)
    index = {nm: i for i, nm in enumerate(names)}
    up = [1 << i for i in range(n)]
    for a, b in covers:
        i = a if isinstance(a, int) else index[a]
        j = b if isinstance(b, int) else index[b]
        up[i] |= 1 << j
    # Warshall-style closure
    for k in range(n):
        bk = 1 << k
        for i in range(n):
            if up[i] & bk:
                up[i] |= up[k]
    for i in range(n):
        for j in bits(up[i]):
            if j != i and (up[j] >> i) & 1:
                raise CycleDetected((names[i], names[j]))
    return FiniteSpace(names, tuple(up))


def subspace(space: FiniteSpace, mask: int) -> tuple[FiniteSpace, SpaceMap]:
    """The subspace on mask together with its inclusion map."""
    chosen = list(bits(mask))
    pos = {p: k for k, p in enumerate(chosen)}
    up = []
    for p in chosen:
        m = 0
        for q in bits(space.up[p] & mask):
            m |= 1 << pos[q]
        up.append(m)
    sub = FiniteSpace(tuple(space.names[p] for p in chosen), tuple(up))
    return sub, SpaceMap(sub, space, tuple(chosen))


def space_product(s: FiniteSpace, t: FiniteSpace) -> tuple[FiniteSpace, list[tuple[int, int]]]:
    """Topological product; for finite spaces this is the product order."""
    pairs = [(i, j) for i in range(s.n) for j in range(t.n)]
    pos = {p: k for k, p in enumerate(pairs)}
    names = tuple(f"({s.names[i]},{t.names[j]})" for i, j in pairs)
    up = []
    for i, j in pairs:
        m = 0
        for a in bits(s.up[i]):
            for b in bits(t.up[j]):
                m |= 1 << pos[(a, b)]
        up.append(m)
    return FiniteSpace(names, tuple(up)), pairs


# ---------------------------------------------------------------------------
# point-set operations


def closure(space: FiniteSpace, s: PtSet) -> PtSet:
    _check_same(space, s)
    return PtSet(space, space.closure_mask(s.mask))


def saturation(space: FiniteSpace, s: PtSet) -> PtSet:
    _check_same(space, s)
    return PtSet(space, space.saturation_mask(s.mask))


def interior(space: FiniteSpace, s: PtSet) -> PtSet:
    _check_same(space, s)
    return PtSet(space, space.interior_mask(s.mask))


def _check_same(space: FiniteSpace, s: PtSet):
    if s.space != space:
        raise ValueError("point set belongs to a different space")


# ---------------------------------------------------------------------------
# upper-set enumeration and the topology closure


def enumerate_upper_sets(up: Sequence[int], cap: int | None = None) -> list[int]:
    """All upper sets of the order, ascending as masks.

    Depth-first over the points, maximal elements first, so a point may be
    included exactly when everything strictly above it already is.  Aborts
    with PowerspaceTooLarge once more than cap sets have been produced.
    """
    n = len(up)
    order = sorted(range(n), key=lambda i: (up[i].bit_count(), i))
    out: list[int] = []
    stack: list[tuple[int, int]] = [(0, 0)]
    while stack:
        pos, cur = stack.pop()
        if pos == n:
            out.append(cur)
            if cap is not None and len(out) > cap:
                raise PowerspaceTooLarge(f"more than {cap} upper sets")
            continue
        p = order[pos]
        stack.append((pos + 1, cur))
        if up[p] & ~cur == 1 << p:
            stack.append((pos + 1, cur | (1 << p)))
    out.sort()
    return out


def enumerate_lower_sets(space: FiniteSpace, cap: int | None = None) -> list[int]:
    return enumerate_upper_sets(space.down, cap)


def close_family(seeds: Iterable[int], full: int, cap: int | None = None) -> frozenset[int]:
    """Close a family of sets under pairwise union and intersection,
    with the empty and full sets adjoined."""
    fam = {0, full}
    fam.update(seeds)
    frontier = list(fam)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(fam):
                for c in (a | b, a & b):
                    if c not in fam:
                        fam.add(c)
                        fresh.append(c)
                        if cap is not None and len(fam) > cap:
                            raise PowerspaceTooLarge(f"family closure above {cap} sets")
        frontier = fresh
    return frozenset(fam)


def weak_topology_family(space: FiniteSpace, limits: Limits = DEFAULT_LIMITS) -> frozenset[int]:
    """Topology generated by complements of point closures."""
    full = space.full_mask
    seeds = [full & ~space.down[p] for p in range(space.n)]
    return close_family(seeds, full, limits.max_construction_points)


def scott_topology_family(space: FiniteSpace, limits: Limits = DEFAULT_LIMITS) -> frozenset[int]:
    """On a finite poset the Scott opens are exactly the upper sets."""
    return frozenset(space.opens(limits))


# ---------------------------------------------------------------------------
# enumeration of all finite T0 spaces


_CANONICAL_CACHE: dict[tuple[int, ...], tuple[int, ...]] = {}


def canonical_order_key(up: tuple[int, ...]) -> tuple[int, ...]:
    """Least relabeling of the order under all point permutations."""
    got = _CANONICAL_CACHE.get(up)
    if got is not None:
        return got
    n = len(up)
    best: tuple[int, ...] | None = None
    for perm in permutations(range(n)):
        relabeled = [0] * n
        for i in range(n):
            m = 0
            for j in bits(up[i]):
                m |= 1 << perm[j]
            relabeled[perm[i]] = m
        t = tuple(relabeled)
        if best is None or t < best:
            best = t
    _CANONICAL_CACHE[up] = best
    return best


_POSET_CACHE: dict[int, list[tuple[int, ...]]] = {}


def _canonical_posets_exact(k: int) -> list[tuple[int, ...]]:
    """All posets on exactly k points, one canonical representative each.

    Grown by adding a maximal point above each lower set of a smaller
    poset; every poset arises this way along any linear extension.
    """
    if k == 0:
        return [()]
    got = _POSET_CACHE.get(k)
    if got is not None:
        return got
    out: set[tuple[int, ...]] = set()
    for smaller in _canonical_posets_exact(k - 1):
        space_down = FiniteSpace(tuple(f"p{i}" for i in range(k - 1)), smaller).down if k > 1 else ()
        lowers = enumerate_upper_sets(space_down) if k > 1 else [0]
        for low in lowers:
            up = [m | (1 << (k - 1)) if (low >> i) & 1 else m for i, m in enumerate(smaller)]
            up.append(1 << (k - 1))
            out.add(canonical_order_key(tuple(up)))
    result = sorted(out)
    _POSET_CACHE[k] = result
    return result


_SPACE_CACHE: dict[tuple[int, bool], tuple[FiniteSpace, ...]] = {}


def enumerate_spaces(n: int, up_to_iso: bool = True, limits: Limits = DEFAULT_LIMITS) -> tuple[FiniteSpace, ...]:
    """All finite T0 spaces on at most n points, the empty space included.

    With up_to_iso the list carries one representative per poset
    isomorphism class; otherwise every labeling appears.
    """
    if n > limits.max_enumeration_points:
        raise LimitExceeded(f"enumeration capped at {limits.max_enumeration_points} points")
    key = (n, up_to_iso)
    got = _SPACE_CACHE.get(key)
    if got is not None:
        return got
    spaces: list[FiniteSpace] = []
    for k in range(n + 1):
        reps = _canonical_posets_exact(k)
        if up_to_iso:
            ups: list[tuple[int, ...]] = reps
        else:
            labeled: set[tuple[int, ...]] = set()
            for up in reps:
                for perm in permutations(range(k)):
                    relabeled = [0] * k
                    for i in range(k):
                        m = 0
                        for j in bits(up[i]):
                            m |= 1 << perm[j]
                        relabeled[perm[i]] = m
                    labeled.add(tuple(relabeled))
            ups = sorted(labeled)
        names = tuple(f"p{i}" for i in range(k))
        spaces.extend(FiniteSpace(names, up) for up in ups)
    result = tuple(spaces)
    _SPACE_CACHE[key] = result
    return result


# ---------------------------------------------------------------------------
# ready-made small spaces


def chain(n: int, names: Sequence[str] | None = None) -> FiniteSpace:
    names = tuple(names) if names else tuple(f"c{i}" for i in range(n))
    return FiniteSpace(names, tuple(mask_of(range(i, n)) for i in range(n)))


def antichain(n: int, names: Sequence[str] | None = None) -> FiniteSpace:
    names = tuple(names) if names else tuple(f"a{i}" for i in range(n))
    return FiniteSpace(names, tuple(1 << i for i in range(n)))


def sierpinski() -> FiniteSpace:
    return chain(2, names=("bot", "top"))


def empty_space() -> FiniteSpace:
    return FiniteSpace((), ())


# ---------------------------------------------------------------------------
# JSON interchange


def space_to_json(space: FiniteSpace) -> dict:
    return {
        "points": list(space.names),
        "order": [[space.names[i], space.names[j]] for i, j in space.covers()],
    }


def space_from_json(data: dict | str) -> FiniteSpace:
    """Accepts either the covers form or the explicit opens form."""
    if isinstance(data, str):
        data = json.loads(data)
    names = data["points"]
    if "order" in data:
        return space_from_poset(names, [tuple(p) for p in data["order"]])
    if "opens" in data:
        return space_from_opens(names, [list(o) for o in data["opens"]])
    raise ValueError("space JSON needs either 'order' or 'opens'")
