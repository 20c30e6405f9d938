"""Zig-zag chase of Delta-cocycles and certification against evaluation.

For a saturated datum and a k-cocycle alpha on its nerve, the chase through
the cochain double complex produces a Cech k-cocycle. It should agree, up to
an explicit Cech coboundary, with the evaluation cocycle
b -> (-1)^(k(k+1)/2) alpha(x_b). ``certify_theorem`` finds that coboundary
over the integers and re-checks it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .cech import (
    CechCochain,
    cech_delta,
    cone_dual_cech,
    from_scalars,
    inner_cech_matrix,
    iterated_chase_bruteforce,
    palindromic_sign,
)
from .cover import GroundSetCover, SaturatedCoverDatum, embedding, nerve, saturate
from .simplicial import Cochain, SimplicialComplex, Simplex, coboundary, cohomology, evaluate
from .zint import (
    AbelianGroupInvariants,
    IntMatrix,
    hermite_normal_form,
    homology_invariants,
    smith_normal_form,
    solve_linear,
)


class NotACocycleError(ValueError):
    pass


class CertificationError(RuntimeError):
    """No integral coboundary witness exists; ``dump`` has the counterexample."""

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


@dataclass(frozen=True)
class CechCocycleZ:
    """A Cech cochain of the constant sheaf Z: an integer per nerve k-simplex."""

    k: int
    values: Mapping[Simplex, int]

    def __post_init__(self):
        object.__setattr__(self, "values", {tuple(b): int(v) for b, v in self.values.items() if v})

    def __sub__(self, other: CechCocycleZ) -> CechCocycleZ:
        if other.k != self.k:
            raise ValueError("degree mismatch")
        keys = set(self.values) | set(other.values)
        return CechCocycleZ(self.k, {b: self.values.get(b, 0) - other.values.get(b, 0) for b in keys})

    def __add__(self, other: CechCocycleZ) -> CechCocycleZ:
        return self - (-1 * other)

    def __rmul__(self, c: int) -> CechCocycleZ:
        return CechCocycleZ(self.k, {b: c * v for b, v in self.values.items()})

    def __getitem__(self, b) -> int:
        return self.values.get(tuple(b), 0)

    def __bool__(self) -> bool:
        return bool(self.values)

    def as_cech_cochain(self) -> CechCochain:
        return from_scalars(CechCochain, self.k, self.values)

    def as_cochain(self) -> Cochain:
        return Cochain(self.k, self.values)

    def to_vector(self, N: SimplicialComplex) -> list[int]:
        return [self.values.get(b, 0) for b in N.simplices_of_dim(self.k)]


def cech_coboundary_z(d: SaturatedCoverDatum, z: CechCocycleZ) -> CechCocycleZ:
    return CechCocycleZ(z.k + 1, cech_delta(d, z.as_cech_cochain()).scalars())


def _require_cocycle(K: SimplicialComplex, alpha: Cochain, k: int):
    if alpha.degree != k:
        raise ValueError("alpha has degree %d, expected %d" % (alpha.degree, k))
    alpha.check_in(K)
    if coboundary(alpha, K):
        raise NotACocycleError("alpha is not a cocycle on the nerve")


def zigzag_chase(d: SaturatedCoverDatum, alpha: Cochain, k: int, cross_check: bool = False) -> CechCocycleZ:
    """Alternate cech_delta and cone_dual k+1 times, starting from alpha in the
    first column; the result sits on the augmentation row."""
    _require_cocycle(d.nerve, alpha, k)
    phi = CechCochain(-1, k, {(): alpha})
    for _ in range(k + 1):
        phi = cone_dual_cech(d, cech_delta(d, phi))
    out = CechCocycleZ(k, phi.scalars())
    if cech_coboundary_z(d, out):
        raise AssertionError("chased cochain is not Cech-closed")
    if cross_check:
        for b in d.nerve.simplices_of_dim(k):
            if evaluate(alpha, iterated_chase_bruteforce(d, b)) != out[b]:
                raise AssertionError("chase disagrees with alpha(chain chase) at %r" % (b,))
    return out


def evaluation_cocycle(d: SaturatedCoverDatum, alpha: Cochain, k: int) -> CechCocycleZ:
    """b -> (-1)^(k(k+1)/2) alpha(x_b0 ... x_bk)."""
    _require_cocycle(d.nerve, alpha, k)
    sign = palindromic_sign(k)
    out = CechCocycleZ(k, {b: sign * v for b, v in alpha.items()})
    if cech_coboundary_z(d, out):
        raise AssertionError("evaluation cochain is not Cech-closed")
    return out


@dataclass(frozen=True)
class TheoremCertificate:
    k: int
    alpha: Cochain
    chased: CechCocycleZ
    evaluated: CechCocycleZ
    sign: int
    witness: CechCochain
    all_checked: bool


def find_witness(delta: IntMatrix, K: SimplicialComplex, k: int, target: CechCocycleZ, hnf=None) -> CechCocycleZ | None:
    """x with delta(x) = target over Z, where ``delta`` is the degree k-1 -> k
    coboundary matrix on K; None if no integral x exists."""
    if k == 0:
        return CechCocycleZ(-1, {}) if not target else None
    x = solve_linear(delta, target.to_vector(K), hnf=hnf)
    if x is None:
        return None
    return CechCocycleZ(k - 1, dict(zip(K.simplices_of_dim(k - 1), x)))


def _dump(d_labels, alpha, chased, evaluated, k, reason):
    enc = lambda m: {",".join(map(str, b)): v for b, v in sorted(m.items())}
    return {
        "reason": reason,
        "k": k,
        "indices": list(d_labels),
        "alpha": enc(dict(alpha.items())),
        "chased": enc(chased.values),
        "evaluated": enc(evaluated.values),
    }


def certify_theorem(d: SaturatedCoverDatum, alpha: Cochain, k: int, hnf=None) -> TheoremCertificate:
    """Chase alpha, evaluate alpha, and exhibit an integral Cech cochain whose
    coboundary is their difference. Raises CertificationError if none exists.

    ``hnf`` may carry a Hermite decomposition of the degree k-1 -> k Cech
    matrix when certifying several classes of one degree.
    """
    chased = zigzag_chase(d, alpha, k)
    evaluated = evaluation_cocycle(d, alpha, k)
    diff = chased - evaluated
    delta = inner_cech_matrix(d, k - 1) if k > 0 else None
    w = find_witness(delta, d.nerve, k, diff, hnf=hnf)
    if w is None:
        raise CertificationError(
            "no integral witness in degree %d" % k,
            _dump(d.labels, alpha, chased, evaluated, k, "no integral coboundary witness"),
        )
    witness = w.as_cech_cochain() if k > 0 else CechCochain(-1, -1)
    ok = (k == 0) or cech_coboundary_z(d, w).values == diff.values
    if not ok:
        raise AssertionError("witness failed re-verification")
    return TheoremCertificate(k, alpha, chased, evaluated, palindromic_sign(k), witness, True)


def restrict_cocycle(z: CechCocycleZ, emb: Sequence[int], target: SimplicialComplex) -> CechCocycleZ:
    """Keep the values on nerve simplices whose indices all come from the
    smaller cover; ``emb[i]`` is the rank in the refinement of index i."""
    emb = list(emb)
    if any(a >= b for a, b in zip(emb, emb[1:])):
        raise ValueError("embedding is not order preserving")
    back = {v: i for i, v in enumerate(emb)}
    out = {}
    for b, v in z.values.items():
        if all(i in back for i in b):
            key = tuple(back[i] for i in b)
            if key not in target:
                raise ValueError("%r is not a simplex of the smaller nerve" % (key,))
            out[key] = v
    res = CechCocycleZ(z.k, out)
    if coboundary(res.as_cochain(), target):
        raise AssertionError("restricted cochain is not closed")
    return res


# ---------------------------------------------------------------------------
# Groups and generators


def cech_cohomology(d: SaturatedCoverDatum, k: int) -> AbelianGroupInvariants:
    """Cech cohomology of the constant sheaf Z, from matrices of cech_delta."""
    N = d.nerve
    if k < 0 or k > N.dim:
        return AbelianGroupInvariants(0)
    d_out = inner_cech_matrix(d, k)
    d_in = inner_cech_matrix(d, k - 1) if k > 0 else None
    return homology_invariants(d_in, d_out)


def cohomology_generators(K: SimplicialComplex, k: int) -> list[tuple[int, Cochain]]:
    """Cocycles whose classes generate H^k(K; Z), each with its order
    (0 for a free generator)."""
    if k < 0 or k > K.dim:
        return []
    if cohomology(K, k).is_trivial:
        return []
    n = len(K.simplices_of_dim(k))
    dk = K.coboundary_matrix(k)
    snf = smith_normal_form(dk)
    r = snf.rank
    zdim = n - r
    Z = [snf.V.column(j) for j in range(r, n)]  # kernel basis, as vectors
    if k > 0:
        prev = K.coboundary_matrix(k - 1)
        coords = [snf.V_inv.row(i) for i in range(r, n)]
        # image of the previous coboundary in kernel coordinates
        B = IntMatrix(coords, ncols=n) @ prev
    else:
        B = IntMatrix.zeros(zdim, 0)
    snf_b = smith_normal_form(B)
    diag = snf_b.diagonal
    gens = []
    for i in range(zdim):
        order = diag[i] if i < len(diag) else 0
        if order == 1:
            continue
        coeff = snf_b.U_inv.column(i)
        vec = [sum(c * Z[j][t] for j, c in enumerate(coeff) if c) for t in range(n)]
        alpha = Cochain.from_vector(K, k, vec)
        if coboundary(alpha, K):
            raise AssertionError("generator is not a cocycle")
        gens.append((order, alpha))
    return gens


def cocycle_representatives(K: SimplicialComplex, k: int) -> list[Cochain]:
    return [alpha for _, alpha in cohomology_generators(K, k)]


# ---------------------------------------------------------------------------
# Refinement


@dataclass(frozen=True)
class RefinementCertificate:
    k: int
    alpha: Cochain
    restricted: CechCocycleZ
    evaluated: CechCocycleZ
    witness: CechCocycleZ


def certify_refinement(c: GroundSetCover, k: int) -> list[RefinementCertificate]:
    """Chase every generator of H^k over the saturation of c, restrict to the
    original indices, and certify it against the signed evaluation on the
    nerve of c."""
    big, d = saturate(c)
    small = nerve(c)
    emb = embedding(c.labels, d.labels)
    sign = palindromic_sign(k)
    delta = small.coboundary_matrix(k - 1) if k > 0 else None
    hnf = hermite_normal_form(delta) if delta is not None else None
    out = []
    for alpha in cocycle_representatives(d.nerve, k):
        chased = zigzag_chase(d, alpha, k)
        restricted = restrict_cocycle(chased, emb, small)
        ev_big = CechCocycleZ(k, {b: sign * alpha[b] for b in d.nerve.simplices_of_dim(k)})
        evaluated = restrict_cocycle(ev_big, emb, small)
        w = find_witness(delta, small, k, restricted - evaluated, hnf=hnf)
        if w is None:
            raise CertificationError(
                "restricted chase is not cohomologous to evaluation in degree %d" % k,
                _dump(c.labels, alpha, restricted, evaluated, k, "no integral witness over the original cover"),
            )
        out.append(RefinementCertificate(k, alpha, restricted, evaluated, w))
    return out


# ---------------------------------------------------------------------------
# Serialization


def _fmt_map(values: Mapping[Simplex, int], labels=None) -> str:
    if not values:
        return "0"
    items = []
    for b in sorted(values):
        key = ",".join(labels[i] for i in b) if labels is not None else ",".join(map(str, b))
        items.append("%s:%d" % (key, values[b]))
    return ";".join(items)


def certificate_record(cert: TheoremCertificate, generator: int = 0, order: int = 0) -> str:
    """One line of ``key=value`` fields, keys sorted index tuples."""
    fields = [
        ("record", "certificate"),
        ("k", cert.k),
        ("generator", generator),
        ("order", order),
        ("sign", cert.sign),
        ("alpha", _fmt_map(dict(cert.alpha.items()))),
        ("chased", _fmt_map(cert.chased.values)),
        ("evaluated", _fmt_map(cert.evaluated.values)),
        ("witness", _fmt_map(cert.witness.scalars()) if cert.k > 0 else "0"),
        ("verified", int(cert.all_checked)),
    ]
    return " ".join("%s=%s" % kv for kv in fields)


def certificate_report(cert: TheoremCertificate, d: SaturatedCoverDatum, generator: int = 0, order: int = 0) -> str:
    N = d.nerve
    kind = "free" if order == 0 else "order %d" % order
    lines = [
        "certificate for generator %d of H^%d (%s)" % (generator, cert.k, kind),
        "  sign (-1)^(k(k+1)/2) = %+d" % cert.sign,
        "  alpha     = %s" % cert.alpha.format(N),
        "  chased    = %s" % _fmt_map(cert.chased.values, d.labels),
        "  evaluated = %s" % _fmt_map(cert.evaluated.values, d.labels),
        "  witness   = %s" % (_fmt_map(cert.witness.scalars(), d.labels) if cert.k > 0 else "0"),
        "  verified  = %s" % ("yes" if cert.all_checked else "no"),
    ]
    return "\n".join(lines)


def dump_json(err: CertificationError) -> str:
    return json.dumps(err.dump, sort_keys=True)
