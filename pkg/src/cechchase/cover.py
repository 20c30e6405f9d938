"""Covers, nerves and saturated cover data.

A cover is modelled on a finite ground set. Its saturated form carries
everything the chase needs: the nerve, the inclusion relation between
members, and the map ``hat`` sending a nerve simplex to the index of the
member equal to the corresponding intersection.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .simplicial import SimplicialComplex, Simplex, full_subcomplex, homology, is_connected
from .zint import AbelianGroupInvariants


@dataclass(frozen=True)
class GroundSetCover:
    ground: tuple
    members: tuple[tuple[str, frozenset], ...]

    def __post_init__(self):
        ground = tuple(self.ground)
        members = tuple((str(lab), frozenset(s)) for lab, s in self.members)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "members", members)
        labels = [lab for lab, _ in members]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate member labels")
        gset = set(ground)
        for lab, s in members:
            if not s:
                raise ValueError("member %s is empty" % lab)
            if not s <= gset:
                raise ValueError("member %s has elements outside the ground set: %s" % (lab, sorted(map(str, s - gset))))

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.members]

    @property
    def sets(self) -> list[frozenset]:
        return [s for _, s in self.members]

    def uncovered(self) -> set:
        covered = set().union(*self.sets) if self.members else set()
        return set(self.ground) - covered

    def __len__(self) -> int:
        return len(self.members)


def nerve(c: GroundSetCover) -> SimplicialComplex:
    """Index sets with nonempty common intersection; vertex order is member order."""
    sets = c.sets
    found: list[Simplex] = []

    def extend(prefix, inter, start):
        for j in range(start, len(sets)):
            meet = inter & sets[j]
            if meet:
                s = prefix + (j,)
                found.append(s)
                extend(s, meet, j + 1)

    for i, s in enumerate(sets):
        found.append((i,))
        extend((i,), s, i + 1)
    return SimplicialComplex(c.labels, found)


@dataclass(frozen=True, eq=False)
class SaturatedCoverDatum:
    """Combinatorial stand-in for a saturated good cover.

    ``below[i]`` is the set of indices j whose member is contained in member
    i (so ``i in below[i]``); ``hat`` maps each nerve simplex to the index of
    the member equal to its intersection.
    """

    labels: tuple[str, ...]
    nerve: SimplicialComplex
    below: tuple[frozenset[int], ...]
    hat: Mapping[Simplex, int]
    _subnerves: dict = field(default_factory=dict, repr=False)

    def incl(self, j: int, i: int) -> bool:
        """True when member j is contained in member i."""
        return j in self.below[i]

    def h(self, b: Iterable[int]) -> int:
        b = tuple(sorted(set(b)))
        try:
            return self.hat[b]
        except KeyError:
            raise ValueError("%r is not a nerve simplex" % (b,)) from None

    def subnerve(self, b: Simplex) -> SimplicialComplex:
        return subnerve(self, b)

    def violations(self) -> list[str]:
        return validate_datum(self)

    def check(self) -> SaturatedCoverDatum:
        bad = validate_datum(self)
        if bad:
            raise ValueError("invalid saturated cover datum:\n  " + "\n  ".join(bad[:20]))
        return self

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return "SaturatedCoverDatum(%d indices, nerve dim %d)" % (len(self.labels), self.nerve.dim)


def validate_datum(d: SaturatedCoverDatum) -> list[str]:
    """Check the saturated-cover axioms; returns a list of violations."""
    bad = []
    n = len(d.labels)
    if d.nerve.labels != d.labels:
        bad.append("nerve labels differ from index labels")
    if set(d.hat) != set(d.nerve.simplices):
        bad.append("hat is not defined exactly on the nerve simplices")
    for i in range(n):
        if (i,) not in d.nerve:
            bad.append("index %s is not a nerve vertex" % d.labels[i])
            continue
        if d.hat.get((i,)) != i:
            bad.append("hat({%s}) != %s" % (d.labels[i], d.labels[i]))
        if i not in d.below[i]:
            bad.append("incl is not reflexive at %s" % d.labels[i])
        for j in d.below[i]:
            if j != i and not i < j:
                bad.append("order: %s is contained in %s but does not come after it" % (d.labels[j], d.labels[i]))
    for b in d.nerve.simplices:
        hb = d.hat.get(b)
        if hb is None:
            continue
        for l in b:
            if not d.incl(hb, l):
                bad.append("hat%r=%s is not contained in member %s" % (b, d.labels[hb], d.labels[l]))
        for j in range(len(b)):
            face = b[:j] + b[j + 1:]
            if face and d.hat.get(face, -1) > hb:
                bad.append("monotonicity: hat%r > hat%r" % (face, b))
        for j in d.below[hb]:
            if j not in b and tuple(sorted(b + (j,))) not in d.nerve:
                bad.append("cone vertex: %r + %s is not a nerve simplex" % (b, d.labels[j]))
    return bad


def datum_from_cover(c: GroundSetCover) -> SaturatedCoverDatum:
    """The datum of a cover that is already saturated (raises otherwise)."""
    sets = c.sets
    where: dict[frozenset, int] = {}
    for i, s in enumerate(sets):
        if s in where:
            raise ValueError("members %s and %s are equal; hat would be ambiguous" % (c.labels[where[s]], c.labels[i]))
        where[s] = i
    N = nerve(c)
    hat = {}
    for b in N.simplices:
        inter = frozenset.intersection(*(sets[i] for i in b))
        if inter not in where:
            raise ValueError("cover is not saturated: intersection of %s is not a member" % ",".join(c.labels[i] for i in b))
        hat[b] = where[inter]
    below = tuple(frozenset(j for j, t in enumerate(sets) if t <= s) for s in sets)
    return SaturatedCoverDatum(tuple(c.labels), N, below, hat).check()


def saturate(c: GroundSetCover) -> tuple[GroundSetCover, SaturatedCoverDatum]:
    """Add every missing nonempty intersection as a new member.

    The original members keep their relative order. New members are ordered
    by decreasing size, ties broken on the tuple of original indices whose
    members contain them, and placed as late as the superset-first rule allows
    (appended at the end unless an original member is a proper subset).
    """
    sets = c.sets
    for i, j in combinations(range(len(sets)), 2):
        if sets[i] == sets[j]:
            raise ValueError("members %s and %s are equal; hat would be ambiguous" % (c.labels[i], c.labels[j]))
        if sets[i] < sets[j]:
            raise ValueError("member %s is contained in %s but listed first" % (c.labels[i], c.labels[j]))
    closure = set(sets)
    frontier = set(sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in sets:
                m = a & b
                if m and m not in closure:
                    new.add(m)
        closure |= new
        frontier = new
    original = {s: i for i, s in enumerate(sets)}
    added = [s for s in closure if s not in original]
    gens = {s: tuple(i for i, t in enumerate(sets) if s <= t) for s in added}
    added.sort(key=lambda s: (-len(s), gens[s]))

    # topological sort: superset-first, original order kept, new members late
    nodes = [("o", i, s) for i, s in enumerate(sets)] + [("n", k, s) for k, s in enumerate(added)]
    preds = {n: 0 for n in range(len(nodes))}
    succ: dict[int, list[int]] = {n: [] for n in range(len(nodes))}

    def edge(a, b):
        succ[a].append(b)
        preds[b] += 1

    for a in range(len(nodes)):
        for b in range(len(nodes)):
            if nodes[a][2] > nodes[b][2]:
                edge(a, b)
    for i in range(len(sets) - 1):
        edge(i, i + 1)
    key = lambda n: (0, nodes[n][1]) if nodes[n][0] == "o" else (1, nodes[n][1])
    heap = [(key(n), n) for n in preds if preds[n] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, n = heapq.heappop(heap)
        order.append(n)
        for m in succ[n]:
            preds[m] -= 1
            if preds[m] == 0:
                heapq.heappush(heap, (key(m), m))
    labels = []
    members = []
    for n in order:
        kind, k, s = nodes[n]
        lab = c.labels[k] if kind == "o" else "&".join(c.labels[i] for i in gens[s])
        labels.append(lab)
        members.append((lab, s))
    out = GroundSetCover(c.ground, tuple(members))
    return out, datum_from_cover(out)


def _simplex_label(X: SimplicialComplex, s: Simplex) -> str:
    names = [X.labels[v] for v in s]
    sep = "" if all(len(n) == 1 for n in names) else "."
    return sep.join(names)


def star_cover(X: SimplicialComplex) -> SaturatedCoverDatum:
    """Saturated datum of the open-star cover of X.

    Indices are the simplices of X by (dimension, lexicographic); a set of
    them spans a nerve simplex iff their union is a simplex of X, and hat is
    the union.
    """
    if not X.simplices:
        raise ValueError("star cover of an empty complex")
    order = sorted(X.simplices, key=lambda s: (len(s), s))
    pos = {s: i for i, s in enumerate(order)}
    labels = [_simplex_label(X, s) for s in order]
    maximal = []
    for t in X.maximal_simplices():
        faces = [pos[f] for r in range(1, len(t) + 1) for f in combinations(t, r)]
        maximal.append(faces)
    N = SimplicialComplex.from_maximal(labels, maximal)
    hat = {}
    for b in N.simplices:
        u = tuple(sorted(set().union(*(order[i] for i in b))))
        hat[b] = pos[u]
    below = tuple(frozenset(pos[t] for t in X.simplices if set(s) <= set(t)) for s in order)
    return SaturatedCoverDatum(tuple(labels), N, below, hat)


def star_ground_cover(X: SimplicialComplex) -> GroundSetCover:
    """The open-star cover as a ground-set cover on the simplices of X."""
    order = sorted(X.simplices, key=lambda s: (len(s), s))
    ground = tuple(_simplex_label(X, s) for s in order)
    members = []
    for s in order:
        members.append((_simplex_label(X, s), frozenset(_simplex_label(X, t) for t in order if set(s) <= set(t))))
    return GroundSetCover(ground, tuple(members))


def subnerve(d: SaturatedCoverDatum, b: Simplex) -> SimplicialComplex:
    """Full subcomplex of the nerve on the members contained in member hat(b)."""
    h = d.h(b)
    cache = d._subnerves
    if h not in cache:
        cache[h] = full_subcomplex(d.nerve, d.below[h])
    return cache[h]


def embedding(small_labels: Sequence[str], big_labels: Sequence[str]) -> list[int]:
    """Rank map from a cover into a refinement, matched by label; must be increasing."""
    where = {lab: i for i, lab in enumerate(big_labels)}
    try:
        emb = [where[lab] for lab in small_labels]
    except KeyError as e:
        raise ValueError("index %s is missing from the refinement" % e) from None
    if any(a >= b for a, b in zip(emb, emb[1:])):
        raise ValueError("refinement order does not extend the original order")
    return emb


# ---------------------------------------------------------------------------
# Goodness


@dataclass(frozen=True)
class IntersectionReport:
    simplex: Simplex
    connected: bool
    reduced_homology: tuple[AbelianGroupInvariants, ...]

    @property
    def passed(self) -> bool:
        return self.connected and all(g.is_trivial for g in self.reduced_homology)


@dataclass(frozen=True)
class CoverGoodnessReport:
    entries: tuple[IntersectionReport, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[IntersectionReport]:
        return [e for e in self.entries if not e.passed]


def goodness_check(members: Sequence[SimplicialComplex], X: SimplicialComplex) -> CoverGoodnessReport:
    """Z-acyclicity proxy for a good cover by subcomplexes of X.

    Every nonempty intersection must be connected with vanishing reduced
    integral homology. Acyclic does not imply contractible; at this scale the
    proxy is what we can decide.
    """
    simplex_sets = []
    for K in members:
        if not K.simplices <= X.simplices:
            raise ValueError("cover member is not a subcomplex of X")
        simplex_sets.append(K.simplices)
    entries = []

    def visit(b, inter):
        K = SimplicialComplex(X.labels, inter)
        groups = tuple(homology(K, k, reduced=True) for k in range(K.dim + 1))
        entries.append(IntersectionReport(b, is_connected(K), groups))
        for j in range(b[-1] + 1, len(simplex_sets)):
            meet = inter & simplex_sets[j]
            if meet:
                visit(b + (j,), meet)

    for i, s in enumerate(simplex_sets):
        if s:
            visit((i,), s)
    entries.sort(key=lambda e: (len(e.simplex), e.simplex))
    return CoverGoodnessReport(tuple(entries))


def subnerve_cover(d: SaturatedCoverDatum) -> list[SimplicialComplex]:
    """The subnerves of the single indices, as a cover of the nerve by subcomplexes."""
    return [subnerve(d, (i,)) for i in range(len(d.labels))]
