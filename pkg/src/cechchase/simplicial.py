"""Ordered abstract simplicial complexes with integral chains and cochains.

A simplex is a strictly increasing tuple of vertex ranks; the empty tuple
``()`` is the single cell of degree -1 that carries the augmentation.
Orientation signs are never stored, only computed from positions.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .zint import AbelianGroupInvariants, IntMatrix, homology_invariants

Simplex = tuple  # tuple[int, ...], strictly increasing


class Vertex(NamedTuple):
    label: str
    rank: int


def _check_simplex(s) -> Simplex:
    s = tuple(s)
    if any(a >= b for a, b in zip(s, s[1:])):
        raise ValueError("simplex %r is not strictly increasing" % (s,))
    return s


class SimplicialComplex:
    """A finite complex whose vertices are the ranks ``0..len(labels)-1``.

    ``labels`` is the vertex naming of the ambient order; a full subcomplex
    keeps the ambient labels and ranks, so chains on it are literally chains
    on the ambient complex.
    """

    def __init__(self, labels: Sequence[str], simplices: Iterable[Simplex]):
        self.labels = tuple(str(x) for x in labels)
        simplices = frozenset(_check_simplex(s) for s in simplices)
        if () in simplices:
            raise ValueError("the empty simplex is implicit, do not list it")
        n = len(self.labels)
        for s in simplices:
            if s[0] < 0 or s[-1] >= n:
                raise ValueError("simplex %r uses an unknown vertex" % (s,))
            if len(s) > 1:
                for j in range(len(s)):
                    if s[:j] + s[j + 1:] not in simplices:
                        raise ValueError("not downward closed: face of %r missing" % (s,))
        self.simplices = simplices
        self._by_dim: dict[int, list[Simplex]] = {}
        for s in sorted(simplices, key=lambda s: (len(s), s)):
            self._by_dim.setdefault(len(s) - 1, []).append(s)
        self._index: dict[int, dict[Simplex, int]] = {}
        self._cofacets: dict[Simplex, list[Simplex]] | None = None

    @classmethod
    def from_maximal(cls, labels: Sequence[str], maximal: Iterable[Iterable[int]]) -> SimplicialComplex:
        closure = set()
        for m in maximal:
            m = tuple(sorted(set(m)))
            if not m:
                continue
            if m in closure:
                continue
            for r in range(1, len(m) + 1):
                closure.update(combinations(m, r))
        return cls(labels, closure)

    @classmethod
    def from_labelled(cls, labels: Sequence[str], maximal: Iterable[Iterable[str]]) -> SimplicialComplex:
        rank = {lab: i for i, lab in enumerate(labels)}
        if len(rank) != len(labels):
            raise ValueError("duplicate vertex labels")
        faces = []
        for m in maximal:
            try:
                faces.append([rank[v] for v in m])
            except KeyError as e:
                raise ValueError("unknown vertex %s" % e) from None
        return cls.from_maximal(labels, faces)

    @property
    def dim(self) -> int:
        return max(self._by_dim, default=-1)

    @property
    def vertices(self) -> list[Vertex]:
        return [Vertex(self.labels[s[0]], s[0]) for s in self._by_dim.get(0, [])]

    @property
    def vertex_ranks(self) -> frozenset[int]:
        return frozenset(s[0] for s in self._by_dim.get(0, []))

    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.labels == other.labels and self.simplices == other.simplices

    def __hash__(self):
        return hash((self.labels, self.simplices))

    def __repr__(self) -> str:
        counts = [len(self._by_dim[k]) for k in sorted(self._by_dim)]
        return "SimplicialComplex(f-vector=%r)" % (counts,)

    def simplices_of_dim(self, k: int) -> list[Simplex]:
        """Sorted k-simplices; ``k == -1`` gives ``[()]`` for a nonempty complex."""
        if k == -1:
            return [()] if self.simplices else []
        return self._by_dim.get(k, [])

    def index(self, k: int) -> dict[Simplex, int]:
        if k not in self._index:
            self._index[k] = {s: i for i, s in enumerate(self.simplices_of_dim(k))}
        return self._index[k]

    def cofacets(self, s: Simplex) -> list[Simplex]:
        """Simplices of one dimension higher having ``s`` as a face."""
        if self._cofacets is None:
            cf: dict[Simplex, list[Simplex]] = {}
            for t in sorted(self.simplices):
                if len(t) == 1:
                    cf.setdefault((), []).append(t)
                else:
                    for j in range(len(t)):
                        cf.setdefault(t[:j] + t[j + 1:], []).append(t)
            self._cofacets = cf
        return self._cofacets.get(tuple(s), [])

    def maximal_simplices(self) -> list[Simplex]:
        return sorted((s for s in self.simplices if not self.cofacets(s)), key=lambda s: (len(s), s))

    def name(self, s: Simplex) -> str:
        """The ``(x_a x_b ...)`` notation; ``()`` is written ``1``."""
        if not s:
            return "1"
        return "(" + " ".join("x_" + self.labels[v] for v in s) + ")"

    def boundary_matrix(self, k: int) -> IntMatrix:
        """Matrix of C_k -> C_{k-1}; ``k == 0`` gives the augmentation row."""
        rows_idx = self.index(k - 1)
        out = [dict() for _ in rows_idx]
        cols = self.simplices_of_dim(k)
        for c, s in enumerate(cols):
            if k == 0:
                out[0][c] = 1
                continue
            for j in range(len(s)):
                out[rows_idx[s[:j] + s[j + 1:]]][c] = -1 if j % 2 else 1
        return IntMatrix.from_sparse_rows(len(rows_idx), len(cols), out)

    def coboundary_matrix(self, k: int) -> IntMatrix:
        """Matrix of C^k -> C^{k+1}, the transpose of ``boundary_matrix(k+1)``."""
        return self.boundary_matrix(k + 1).transpose()


def full_subcomplex(K: SimplicialComplex, W: Iterable[int]) -> SimplicialComplex:
    W = frozenset(W)
    unknown = W - K.vertex_ranks
    if unknown:
        raise ValueError("vertices %s are not in the complex" % sorted(unknown))
    return SimplicialComplex(K.labels, (s for s in K.simplices if W.issuperset(s)))


# ---------------------------------------------------------------------------
# Chains and cochains


class _Graded:
    """Finitely supported integer function on simplices of one degree."""

    __slots__ = ("degree", "_data")

    def __init__(self, degree: int, data: Mapping[Simplex, int] | None = None):
        if degree < -1:
            raise ValueError("degree must be >= -1")
        clean = {}
        for s, v in (data or {}).items():
            s = _check_simplex(s)
            if len(s) != degree + 1:
                raise ValueError("simplex %r does not have degree %d" % (s, degree))
            v = int(v)
            if v:
                clean[s] = v
        self.degree = degree
        self._data = clean

    @classmethod
    def _raw(cls, degree, data):
        obj = cls.__new__(cls)
        obj.degree = degree
        obj._data = data
        return obj

    @classmethod
    def zero(cls, degree: int):
        return cls._raw(degree, {})

    @classmethod
    def basis(cls, s: Simplex, coeff: int = 1):
        s = _check_simplex(s)
        return cls(len(s) - 1, {s: coeff})

    @classmethod
    def scalar(cls, z: int):
        return cls(-1, {(): z})

    def __getitem__(self, s) -> int:
        return self._data.get(tuple(s), 0)

    def items(self):
        return self._data.items()

    def support(self) -> list[Simplex]:
        return sorted(self._data)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __bool__(self) -> bool:
        return bool(self._data)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.degree == other.degree and self._data == other._data

    def __hash__(self):
        return hash((type(self).__name__, self.degree, frozenset(self._data.items())))

    def _combine(self, other, c):
        if type(other) is not type(self):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch: %d vs %d" % (self.degree, other.degree))
        out = dict(self._data)
        for s, v in other._data.items():
            nv = out.get(s, 0) + c * v
            if nv:
                out[s] = nv
            else:
                out.pop(s, None)
        return self._raw(self.degree, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self._raw(self.degree, {s: -v for s, v in self._data.items()})

    def __rmul__(self, c: int):
        c = int(c)
        if not c:
            return self.zero(self.degree)
        return self._raw(self.degree, {s: c * v for s, v in self._data.items()})

    __mul__ = __rmul__

    def restrict(self, K: SimplicialComplex):
        """Drop everything outside K (the degree -1 cell is always kept)."""
        return self._raw(self.degree, {s: v for s, v in self._data.items() if not s or s in K.simplices})

    def check_in(self, K: SimplicialComplex):
        for s in self._data:
            if s and s not in K.simplices:
                raise ValueError("%s is not a simplex of the ambient complex" % (s,))
        return self

    def to_vector(self, K: SimplicialComplex) -> list[int]:
        return [self._data.get(s, 0) for s in K.simplices_of_dim(self.degree)]

    @classmethod
    def from_vector(cls, K: SimplicialComplex, degree: int, vec: Sequence[int]):
        return cls(degree, dict(zip(K.simplices_of_dim(degree), vec)))

    def format(self, K: SimplicialComplex | None = None) -> str:
        if not self._data:
            return "0"
        out = []
        for s in sorted(self._data):
            v = self._data[s]
            name = K.name(s) if K is not None else ("(" + " ".join(map(str, s)) + ")" if s else "1")
            sign = "-" if v < 0 else "+"
            mag = "" if abs(v) == 1 else "%d*" % abs(v)
            out.append("%s %s%s" % (sign, mag, name))
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return "%s(%d, %r)" % (type(self).__name__, self.degree, dict(sorted(self._data.items())))


class Chain(_Graded):
    """Integral Delta-chain of a fixed degree."""


class Cochain(_Graded):
    """Integral Delta-cochain of a fixed degree."""


def boundary(c: Chain, augment: bool = False) -> Chain:
    """Alternating sum of faces; on 0-chains only with ``augment=True``,
    which lands in degree -1 as the coefficient sum on ``()``."""
    if c.degree == -1:
        raise ValueError("no boundary below degree -1")
    if c.degree == 0 and not augment:
        raise ValueError("boundary of a 0-chain needs augment=True")
    out: dict[Simplex, int] = {}
    for s, v in c.items():
        for j in range(len(s)):
            f = s[:j] + s[j + 1:]
            out[f] = out.get(f, 0) + (-v if j % 2 else v)
    return Chain._raw(c.degree - 1, {f: v for f, v in out.items() if v})


def _position(t: Simplex, s: Simplex) -> int:
    """Index in t of the one vertex that s lacks."""
    for j, (a, b) in enumerate(zip(s, t)):
        if a != b:
            return j
    return len(s)


def coboundary(phi: Cochain, K: SimplicialComplex) -> Cochain:
    """(delta phi)(t) = phi(boundary t) over the (deg+1)-simplices t of K."""
    out: dict[Simplex, int] = {}
    for s, v in phi.items():
        if s and s not in K.simplices:
            raise ValueError("cochain is supported off the complex at %r" % (s,))
        for t in K.cofacets(s):
            j = _position(t, s)
            out[t] = out.get(t, 0) + (-v if j % 2 else v)
    return Cochain._raw(phi.degree + 1, {t: v for t, v in out.items() if v})


def evaluate(phi: Cochain, c: Chain) -> int:
    if phi.degree != c.degree:
        raise ValueError("cannot pair a degree-%d cochain with a degree-%d chain" % (phi.degree, c.degree))
    if len(c) > len(phi):
        return sum(v * c[s] for s, v in phi.items())
    return sum(v * phi[s] for s, v in c.items())


# ---------------------------------------------------------------------------
# Groups


def homology(K: SimplicialComplex, k: int, reduced: bool = False) -> AbelianGroupInvariants:
    if k < 0 or k > K.dim:
        return AbelianGroupInvariants(0)
    d_out = K.boundary_matrix(k) if (k > 0 or reduced) else None
    d_in = K.boundary_matrix(k + 1)
    if d_out is None:
        d_out = IntMatrix.zeros(0, d_in.nrows)
    return homology_invariants(d_in, d_out)


def cohomology(K: SimplicialComplex, k: int) -> AbelianGroupInvariants:
    if k < 0 or k > K.dim:
        return AbelianGroupInvariants(0)
    d_out = K.coboundary_matrix(k)
    d_in = K.coboundary_matrix(k - 1) if k > 0 else None
    return homology_invariants(d_in, d_out)


def is_connected(K: SimplicialComplex) -> bool:
    verts = K.vertex_ranks
    if not verts:
        return False
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in K.simplices_of_dim(1):
        parent[find(a)] = find(b)
    return len({find(v) for v in verts}) == 1
