"""The Cech double complex over a saturated cover datum.

Position (k, m) holds, for every nerve k-simplex b, an m-chain (or m-cochain)
on the subnerve of b. Cech degree -1 is the first column: a single summand
keyed by ``()`` whose subnerve is the whole nerve. Inner degree -1 is the
augmentation row, where each summand is an integer on the empty simplex.

Horizontal maps are the covariant Cech differential and its adjoint,
vertical maps the simplicial boundary and coboundary; squares commute. The
cone operator on a subnerve contracts it onto its cone vertex x_hat(b).
"""

from __future__ import annotations

from itertools import permutations
from typing import Mapping

from .cover import SaturatedCoverDatum, subnerve
from .simplicial import Chain, Cochain, SimplicialComplex, Simplex, _Graded, _position, boundary, coboundary
from .zint import AbelianGroupInvariants, IntMatrix, elementary_divisors, homology_invariants


class _CechElement:
    _part_type: type = _Graded

    __slots__ = ("cech_degree", "inner_degree", "parts")

    def __init__(self, cech_degree: int, inner_degree: int, parts: Mapping[Simplex, _Graded] | None = None):
        if cech_degree < -1 or inner_degree < -1:
            raise ValueError("degrees must be >= -1")
        clean = {}
        for b, z in (parts or {}).items():
            b = tuple(b)
            if len(b) != cech_degree + 1:
                raise ValueError("key %r does not have Cech degree %d" % (b, cech_degree))
            if not isinstance(z, self._part_type):
                raise TypeError("parts must be %s" % self._part_type.__name__)
            if z.degree != inner_degree:
                raise ValueError("part at %r has degree %d, expected %d" % (b, z.degree, inner_degree))
            if z:
                clean[b] = z
        self.cech_degree = cech_degree
        self.inner_degree = inner_degree
        self.parts = clean

    @classmethod
    def zero(cls, cech_degree: int, inner_degree: int):
        return cls(cech_degree, inner_degree)

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.cech_degree, self.inner_degree)

    def __getitem__(self, b):
        return self.parts.get(tuple(b), self._part_type.zero(self.inner_degree))

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.bidegree == other.bidegree and self.parts == other.parts

    def _combine(self, other, c):
        if type(other) is not type(self) or other.bidegree != self.bidegree:
            raise ValueError("bidegree mismatch")
        out = dict(self.parts)
        for b, z in other.parts.items():
            out[b] = out[b] + c * z if b in out else c * z
        return type(self)(self.cech_degree, self.inner_degree, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return type(self)(self.cech_degree, self.inner_degree, {b: -z for b, z in self.parts.items()})

    def __rmul__(self, c: int):
        return type(self)(self.cech_degree, self.inner_degree, {b: c * z for b, z in self.parts.items()})

    def check_support(self, d: SaturatedCoverDatum):
        for b, z in self.parts.items():
            z.check_in(_summand_complex(d, b))
        return self

    def scalars(self) -> dict[Simplex, int]:
        """Parts of an inner-degree -1 element as plain integers."""
        if self.inner_degree != -1:
            raise ValueError("only inner degree -1 parts are integers")
        return {b: z[()] for b, z in self.parts.items()}

    def format(self, d: SaturatedCoverDatum) -> str:
        if not self.parts:
            return "0"
        lines = []
        for b in sorted(self.parts):
            key = "{" + ",".join(d.labels[i] for i in b) + "}" if b else "N"
            lines.append("%s: %s" % (key, self.parts[b].format(d.nerve)))
        return "\n".join(lines)

    def __repr__(self) -> str:
        return "%s%r{%s}" % (type(self).__name__, self.bidegree, ", ".join("%r: %r" % kv for kv in sorted(self.parts.items())))


class CechChain(_CechElement):
    _part_type = Chain


class CechCochain(_CechElement):
    _part_type = Cochain


def _summand_complex(d: SaturatedCoverDatum, b: Simplex) -> SimplicialComplex:
    return d.nerve if not b else subnerve(d, b)


def from_scalars(cls, cech_degree: int, values: Mapping[Simplex, int]):
    return cls(cech_degree, -1, {b: cls._part_type.scalar(v) for b, v in values.items()})


# ---------------------------------------------------------------------------
# Horizontal maps


def cech_partial(d: SaturatedCoverDatum, c: CechChain, check: bool = False) -> CechChain:
    """Covariant Cech differential: the part z on b goes, with sign (-1)^j,
    to the key b minus its j-th index. From Cech degree 0 it lands in the
    first column, where it is the plain sum."""
    if c.cech_degree < 0:
        raise ValueError("no Cech differential out of the first column")
    if check:
        c.check_support(d)
    out: dict[Simplex, Chain] = {}
    for b, z in c.parts.items():
        for j in range(len(b)):
            face = b[:j] + b[j + 1:]
            term = -z if j % 2 else z
            out[face] = out[face] + term if face in out else term
    return CechChain(c.cech_degree - 1, c.inner_degree, out)


def cech_delta(d: SaturatedCoverDatum, phi: CechCochain) -> CechCochain:
    """Adjoint of ``cech_partial``:
    (delta phi)_b = sum_j (-1)^j phi_{b - b_j} restricted to the subnerve of b."""
    N = d.nerve
    out: dict[Simplex, Cochain] = {}
    for face, psi in phi.parts.items():
        for b in N.cofacets(face):
            j = _position(b, face)
            term = psi.restrict(subnerve(d, b))
            if not term:
                continue
            if j % 2:
                term = -term
            out[b] = out[b] + term if b in out else term
    return CechCochain(phi.cech_degree + 1, phi.inner_degree, out)


def pairing(phi: CechCochain, c: CechChain) -> int:
    if phi.bidegree != c.bidegree:
        raise ValueError("bidegree mismatch %r vs %r" % (phi.bidegree, c.bidegree))
    total = 0
    for b, z in c.parts.items():
        psi = phi.parts.get(b)
        if psi is not None:
            total += sum(v * psi[s] for s, v in z.items())
    return total


# ---------------------------------------------------------------------------
# Vertical maps


def vertical_boundary(c: CechChain) -> CechChain:
    return CechChain(c.cech_degree, c.inner_degree - 1, {b: boundary(z, augment=True) for b, z in c.parts.items()})


def vertical_coboundary(d: SaturatedCoverDatum, phi: CechCochain) -> CechCochain:
    return CechCochain(
        phi.cech_degree, phi.inner_degree + 1,
        {b: coboundary(psi, _summand_complex(d, b)) for b, psi in phi.parts.items()},
    )


def cone(d: SaturatedCoverDatum, b: Simplex, z: Chain, check: bool = True) -> Chain:
    """Cone from x_hat(b): prepend hat(b) to every simplex avoiding it, kill the rest.

    hat(b) is the smallest vertex of the subnerve, so prepending keeps the
    rank order. On degree -1 this is z -> z * (x_hat(b)).
    """
    h = d.h(b)
    if check:
        z.check_in(subnerve(d, b))
    out = {}
    for s, v in z.items():
        if s and s[0] == h:
            continue
        if s and s[0] < h:
            raise ValueError("%r is not supported on the subnerve of %r" % (s, b))
        out[(h,) + s] = v
    return Chain._raw(z.degree + 1, out)


def cone_dual(d: SaturatedCoverDatum, b: Simplex, phi: Cochain) -> Cochain:
    """(cone_dual phi)(z) = phi(cone z); lowers the degree by one."""
    if phi.degree < 0:
        raise ValueError("cone_dual needs degree >= 0")
    h = d.h(b)
    out = {s[1:]: v for s, v in phi.items() if s[0] == h}
    return Cochain._raw(phi.degree - 1, out)


def cone_cech(d: SaturatedCoverDatum, c: CechChain) -> CechChain:
    if c.cech_degree < 0:
        raise ValueError("the first column has no cone vertex")
    return CechChain(c.cech_degree, c.inner_degree + 1, {b: cone(d, b, z) for b, z in c.parts.items()})


def cone_dual_cech(d: SaturatedCoverDatum, phi: CechCochain) -> CechCochain:
    if phi.cech_degree < 0:
        raise ValueError("the first column has no cone vertex")
    return CechCochain(phi.cech_degree, phi.inner_degree - 1, {b: cone_dual(d, b, psi) for b, psi in phi.parts.items()})


# ---------------------------------------------------------------------------
# The chase on chains


def chase_stages(d: SaturatedCoverDatum, b: Simplex) -> list[CechChain]:
    """Every intermediate element of (cech_partial . cone)^(k+1) applied to e_b,
    starting with e_b itself and alternating cone / cech_partial."""
    b = tuple(b)
    if b not in d.nerve:
        raise ValueError("%r is not a nerve simplex" % (b,))
    c = CechChain(len(b) - 1, -1, {b: Chain.scalar(1)})
    stages = [c]
    for _ in range(len(b)):
        c = cone_cech(d, c)
        stages.append(c)
        c = cech_partial(d, c)
        stages.append(c)
    return stages


def iterated_chase_bruteforce(d: SaturatedCoverDatum, b: Simplex) -> Chain:
    """(cech_partial . cone)^(k+1)(e_b), computed literally."""
    return chase_stages(d, b)[-1][()]


def permutation_sign(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def _flag_simplex(d: SaturatedCoverDatum, order) -> Simplex | None:
    """hat of the growing prefixes of ``order``; None if two consecutive agree."""
    seq = []
    acc = []
    for i in order:
        acc.append(i)
        h = d.h(acc)
        if seq and seq[-1] == h:
            return None
        seq.append(h)
    s = tuple(seq)
    if any(a >= c for a, c in zip(s, s[1:])):
        raise ValueError("hat is not monotone along %r" % (order,))
    if s not in d.nerve:
        raise ValueError("flag %r is not a nerve simplex" % (s,))
    return s


def iterated_chase_closed_form(d: SaturatedCoverDatum, b: Simplex) -> Chain:
    """sum over sigma of sgn(sigma) (x_hat{b_s(k)} x_hat{b_s(k),b_s(k-1)} ... x_hat{b}),
    terms with a repeated vertex dropped."""
    b = tuple(b)
    if b not in d.nerve:
        raise ValueError("%r is not a nerve simplex" % (b,))
    k = len(b) - 1
    out: dict[Simplex, int] = {}
    for p in permutations(range(k + 1)):
        s = _flag_simplex(d, [b[p[k - l]] for l in range(k + 1)])
        if s is not None:
            out[s] = out.get(s, 0) + permutation_sign(p)
    return Chain(k, out)


def subdivision_S(d: SaturatedCoverDatum, c: Chain) -> Chain:
    """Linear extension of
    x_b -> sum over sigma of sgn(sigma) (x_hat{b_s(0)} x_hat{b_s(0),b_s(1)} ... x_hat{b})."""
    if c.degree < 0:
        raise ValueError("subdivision is defined on chains of degree >= 0")
    k = c.degree
    out: dict[Simplex, int] = {}
    for b, v in c.items():
        if b not in d.nerve:
            raise ValueError("%r is not a nerve simplex" % (b,))
        for p in permutations(range(k + 1)):
            s = _flag_simplex(d, [b[i] for i in p])
            if s is not None:
                out[s] = out.get(s, 0) + v * permutation_sign(p)
    return Chain(k, out)


def palindromic_sign(k: int) -> int:
    """Sign of i -> k - i on {0..k}, i.e. (-1)^(k(k+1)/2)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return -1 if (k * (k + 1) // 2) % 2 else 1


# ---------------------------------------------------------------------------
# Matrices and exactness of the double complex


def inner_cech_matrix(d: SaturatedCoverDatum, k: int) -> IntMatrix:
    """Matrix of the Cech coboundary on the augmentation row, Cech degree k -> k+1,
    assembled by applying ``cech_delta`` to basis elements."""
    N = d.nerve
    cols = N.simplices_of_dim(k)
    rows_idx = N.index(k + 1)
    out = [dict() for _ in rows_idx]
    for c, b in enumerate(cols):
        img = cech_delta(d, from_scalars(CechCochain, k, {b: 1}))
        for key, z in img.parts.items():
            out[rows_idx[key]][c] = z[()]
    return IntMatrix.from_sparse_rows(len(rows_idx), len(cols), out)


def _matrix(domain, codomain, image_of) -> IntMatrix:
    idx = {x: i for i, x in enumerate(codomain)}
    rows = [dict() for _ in codomain]
    for c, x in enumerate(domain):
        for y, v in image_of(x).items():
            rows[idx[y]][c] = v
    return IntMatrix.from_sparse_rows(len(codomain), len(domain), rows)


def _row_image(d):
    def image(x):
        b, s = x
        c = cech_partial(d, CechChain(len(b) - 1, len(s) - 1, {b: Chain.basis(s)}))
        return {(key, t): v for key, z in c.parts.items() for t, v in z.items()}
    return image


def exactness_report(d: SaturatedCoverDatum, max_total_degree: int = 4) -> list[dict]:
    """Homology of the columns (fixed b) and rows (fixed inner simplex) of the
    chain double complex at every position (k, m) with k, m >= -1 off the first
    row and column and k + m <= max_total_degree.

    Columns split over the keys b and rows over inner simplices, so every
    group is computed blockwise. Each record carries the position, the kind
    ('column' or 'row'), the homology invariants and the block that produced
    them when nonzero.
    """
    N = d.nerve
    records = []
    # columns: augmented chain complex of each subnerve, positions m >= -1;
    # the block only depends on hat(b), so groups are cached per cone vertex
    bd = lambda s: dict(boundary(Chain.basis(s), augment=True).items())
    cache: dict[tuple[int, int], AbelianGroupInvariants] = {}

    def column_group(h, m):
        if (h, m) not in cache:
            K = d.subnerve((h,))
            here = K.simplices_of_dim(m)
            d_in = _matrix(K.simplices_of_dim(m + 1), here, bd)
            d_out = _matrix(here, K.simplices_of_dim(m - 1), bd) if m >= 0 else IntMatrix.zeros(0, len(here))
            cache[h, m] = homology_invariants(d_in, d_out)
        return cache[h, m]

    for k in range(0, min(N.dim, max_total_degree + 1) + 1):
        for m in range(-1, max_total_degree - k + 1):
            total = AbelianGroupInvariants(0)
            worst = None
            for b in N.simplices_of_dim(k):
                g = column_group(d.h(b), m)
                if not g.is_trivial:
                    total = _direct_sum(total, g)
                    worst = worst or b
            records.append({"kind": "column", "position": (k, m), "homology": total, "exact": total.is_trivial, "witness": worst})
    # rows: fixed inner simplex sigma, Cech degrees k >= 0
    image = _row_image(d)
    for m in range(0, max_total_degree + 1):
        blocks: dict[Simplex, dict[int, list]] = {}
        for k in range(0, max_total_degree - m + 2):
            for b in N.simplices_of_dim(k):
                for s in subnerve(d, b).simplices_of_dim(m):
                    blocks.setdefault(s, {}).setdefault(k, []).append((b, s))
        for k in range(0, max_total_degree - m + 1):
            total = AbelianGroupInvariants(0)
            worst = None
            for s, by_k in blocks.items():
                here = by_k.get(k, [])
                if not here:
                    continue
                target = [((), s)] if k == 0 else by_k.get(k - 1, [])
                d_out = _matrix(here, target, image)
                d_in = _matrix(by_k.get(k + 1, []), here, image)
                g = homology_invariants(d_in, d_out)
                if not g.is_trivial:
                    total = _direct_sum(total, g)
                    worst = worst or s
            records.append({"kind": "row", "position": (k, m), "homology": total, "exact": total.is_trivial, "witness": worst})
    return records


def first_column_cokernel(d: SaturatedCoverDatum, m: int) -> list[Simplex]:
    """Nerve m-simplices lying in no subnerve: the cokernel of the sum map
    into the first column is free on these."""
    covered = set()
    for i in range(len(d.labels)):
        covered.update(subnerve(d, (i,)).simplices_of_dim(m))
    return [s for s in d.nerve.simplices_of_dim(m) if s not in covered]


def _direct_sum(a: AbelianGroupInvariants, b: AbelianGroupInvariants) -> AbelianGroupInvariants:
    ts = list(a.torsion) + list(b.torsion)
    if not ts:
        return AbelianGroupInvariants(a.rank + b.rank)
    divs = elementary_divisors(IntMatrix([[t if i == j else 0 for j in range(len(ts))] for i, t in enumerate(ts)]))
    return AbelianGroupInvariants(a.rank + b.rank, tuple(x for x in divs if x > 1))
