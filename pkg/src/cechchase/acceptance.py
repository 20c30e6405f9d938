"""The acceptance suite: nine criteria run over the bundled corpus.

Each criterion is a function taking a shared ``Corpus`` and returning a
``CriterionResult``; the CLI ``corpus`` command and the test suite both call
``run_all``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .cech import (
    chase_stages,
    cone,
    cone_dual,
    exactness_report,
    first_column_cokernel,
    iterated_chase_bruteforce,
    iterated_chase_closed_form,
    palindromic_sign,
)
from .chase import CertificationError, cech_cohomology, certify_refinement, certify_theorem, cohomology_generators
from .cover import SaturatedCoverDatum, star_cover, validate_datum
from .formats import LoadedInput, corpus_entries, load_input
from .simplicial import Chain, Cochain, SimplicialComplex, boundary, coboundary, cohomology, homology
from .zint import AbelianGroupInvariants, IntMatrix, smith_normal_form, solve_linear


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    rows: list = field(default_factory=list)

    def line(self) -> str:
        return "criterion %d %s: %s (%s)" % (self.number, "PASS" if self.passed else "FAIL", self.title, self.detail)


class Corpus:
    """Corpus inputs loaded once; every datum is validated on load."""

    def __init__(self):
        self.inputs: list[LoadedInput] = []
        for name, _ in corpus_entries():
            item = load_input(name)
            bad = validate_datum(item.datum)
            if bad:
                raise AssertionError("corpus datum %s violates %s" % (name, bad[0]))
            self.inputs.append(item)

    @cached_property
    def by_name(self) -> dict[str, LoadedInput]:
        return {x.name: x for x in self.inputs}

    def data(self) -> list[tuple[str, SaturatedCoverDatum]]:
        return [(x.name, x.datum) for x in self.inputs]


# ---------------------------------------------------------------------------
# 1. worked example
#
# Every block of the worked example for k = 0, 1, 2 as symbolic data: a stage
# maps a key (positions into b) to terms (coefficient, hat arguments), each
# hat argument again a tuple of positions. Stages run from e_b upwards.

_H = lambda *pos: tuple(pos)

WORKED_EXAMPLE = {
    0: [
        {(0,): [(1, ())]},
        {(0,): [(1, (_H(0),))]},
        {(): [(1, (_H(0),))]},
    ],
    1: [
        {(0, 1): [(1, ())]},
        {(0, 1): [(1, (_H(0, 1),))]},
        {(0,): [(-1, (_H(0, 1),))], (1,): [(1, (_H(0, 1),))]},
        {(0,): [(-1, (_H(0), _H(0, 1)))], (1,): [(1, (_H(1), _H(0, 1)))]},
        {(): [(-1, (_H(0), _H(0, 1))), (1, (_H(1), _H(0, 1)))]},
    ],
    2: [
        {(0, 1, 2): [(1, ())]},
        {(0, 1, 2): [(1, (_H(0, 1, 2),))]},
        {
            (0, 1): [(1, (_H(0, 1, 2),))],
            (0, 2): [(-1, (_H(0, 1, 2),))],
            (1, 2): [(1, (_H(0, 1, 2),))],
        },
        {
            (0, 1): [(1, (_H(0, 1), _H(0, 1, 2)))],
            (0, 2): [(-1, (_H(0, 2), _H(0, 1, 2)))],
            (1, 2): [(1, (_H(1, 2), _H(0, 1, 2)))],
        },
        {
            (0,): [(1, (_H(0, 2), _H(0, 1, 2))), (-1, (_H(0, 1), _H(0, 1, 2)))],
            (1,): [(1, (_H(0, 1), _H(0, 1, 2))), (-1, (_H(1, 2), _H(0, 1, 2)))],
            (2,): [(1, (_H(1, 2), _H(0, 1, 2))), (-1, (_H(0, 2), _H(0, 1, 2)))],
        },
        {
            (0,): [(1, (_H(0), _H(0, 2), _H(0, 1, 2))), (-1, (_H(0), _H(0, 1), _H(0, 1, 2)))],
            (1,): [(1, (_H(1), _H(0, 1), _H(0, 1, 2))), (-1, (_H(1), _H(1, 2), _H(0, 1, 2)))],
            (2,): [(1, (_H(2), _H(1, 2), _H(0, 1, 2))), (-1, (_H(2), _H(0, 2), _H(0, 1, 2)))],
        },
        {
            (): [
                (1, (_H(0), _H(0, 2), _H(0, 1, 2))),
                (-1, (_H(0), _H(0, 1), _H(0, 1, 2))),
                (1, (_H(1), _H(0, 1), _H(0, 1, 2))),
                (-1, (_H(1), _H(1, 2), _H(0, 1, 2))),
                (1, (_H(2), _H(1, 2), _H(0, 1, 2))),
                (-1, (_H(2), _H(0, 2), _H(0, 1, 2))),
            ]
        },
    ],
}


def instantiate_term(d: SaturatedCoverDatum, b, args) -> tuple | None:
    """Substitute hat values; a consecutive repeat makes the term zero."""
    verts = [d.h(tuple(b[p] for p in a)) for a in args]
    if any(x == y for x, y in zip(verts, verts[1:])):
        return None
    if any(x > y for x, y in zip(verts, verts[1:])):
        raise AssertionError("hat sequence %r is not increasing" % verts)
    return tuple(verts)


def instantiate_stage(d: SaturatedCoverDatum, b, stage) -> dict:
    out = {}
    for key, terms in stage.items():
        acc: dict = {}
        for coeff, args in terms:
            s = instantiate_term(d, b, args)
            if s is not None:
                acc[s] = acc.get(s, 0) + coeff
        acc = {s: v for s, v in acc.items() if v}
        if acc:
            out[tuple(b[p] for p in key)] = acc
    return out


def _stage_as_dict(c) -> dict:
    return {key: dict(z.items()) for key, z in c.parts.items()}


def worked_example_mismatches(d: SaturatedCoverDatum, b) -> list[str]:
    """Compare every stage of the chain chase of e_b, and the closed form,
    with the worked example after hat substitution."""
    k = len(b) - 1
    stages = chase_stages(d, b)
    expected = WORKED_EXAMPLE[k]
    bad = []
    if len(stages) != len(expected):
        return ["%r: %d stages, expected %d" % (b, len(stages), len(expected))]
    for n, (got, want) in enumerate(zip(stages, expected)):
        if _stage_as_dict(got) != instantiate_stage(d, b, want):
            bad.append("%r: stage %d differs" % (b, n))
    closed = dict(iterated_chase_closed_form(d, b).items())
    if closed != instantiate_stage(d, b, expected[-1]).get((), {}):
        bad.append("%r: closed form differs" % (b,))
    return bad


def criterion_1(corpus: Corpus) -> CriterionResult:
    # the solid triangle's star cover has all seven hat values distinct on
    # (a, b, c) and many coincidences elsewhere, which exercises the zero rule
    X = SimplicialComplex.from_maximal(["a", "b", "c"], [(0, 1, 2)])
    data = [("solid-triangle", star_cover(X))] + corpus.data()
    checked = 0
    bad = []
    generic = 0
    for name, d in data:
        N = d.nerve
        for k in range(0, min(2, N.dim) + 1):
            for b in N.simplices_of_dim(k):
                bad += ["%s %s" % (name, m) for m in worked_example_mismatches(d, b)]
                checked += 1
                if k == 2 and len(iterated_chase_closed_form(d, b)) == 6:
                    generic += 1
    ok = not bad and generic > 0
    return CriterionResult(1, "worked example k=0,1,2", ok,
                           "%d simplices, %d with all six k=2 terms distinct, %d mismatches" % (checked, generic, len(bad)),
                           rows=bad[:5])


# ---------------------------------------------------------------------------
# 2. closed form against brute force


def criterion_2(corpus: Corpus) -> CriterionResult:
    checked = 0
    bad = []
    for name, d in corpus.data():
        for k in range(0, min(3, d.nerve.dim) + 1):
            for b in d.nerve.simplices_of_dim(k):
                checked += 1
                if iterated_chase_closed_form(d, b) != iterated_chase_bruteforce(d, b):
                    bad.append("%s %r" % (name, b))
    return CriterionResult(2, "closed form = brute-force chase", not bad,
                           "%d nerve simplices of dim <= 3, %d mismatches" % (checked, len(bad)), rows=bad[:5])


# ---------------------------------------------------------------------------
# 3. cone lemma and its dual


def cone_lemma_failures(d: SaturatedCoverDatum) -> tuple[int, list[str]]:
    """Check dC + Cd = id and delta C' + C' delta = id on every basis element
    of every subnerve, degrees -1 to the subnerve dimension. The cone only
    depends on hat(b), so one b per cone vertex suffices."""
    hats = sorted(set(d.hat.values()))
    checked = 0
    bad = []
    for h in hats:
        b = (h,)
        K = d.subnerve(b)
        for m in range(-1, K.dim + 1):
            for s in K.simplices_of_dim(m):
                z = Chain.basis(s)
                lhs = boundary(cone(d, b, z), augment=True)
                if m >= 0:
                    lhs = lhs + cone(d, b, boundary(z, augment=True))
                if lhs != z:
                    bad.append("cone at %s on %r" % (d.labels[h], s))
                phi = Cochain.basis(s)
                rhs = cone_dual(d, b, coboundary(phi, K))
                if m >= 0:
                    rhs = rhs + coboundary(cone_dual(d, b, phi), K)
                if rhs != phi:
                    bad.append("dual cone at %s on %r" % (d.labels[h], s))
                checked += 2
    return checked, bad


def criterion_3(corpus: Corpus) -> CriterionResult:
    total = 0
    bad = []
    for name, d in corpus.data():
        n, failures = cone_lemma_failures(d)
        total += n
        bad += ["%s %s" % (name, f) for f in failures]
    return CriterionResult(3, "cone lemma and dual", not bad, "%d identities, %d failures" % (total, len(bad)), rows=bad[:5])


# ---------------------------------------------------------------------------
# 4. theorem certificates

THEOREM_CASES = [
    ("triangle-boundary", 1, AbelianGroupInvariants(1)),
    ("hexagon", 1, AbelianGroupInvariants(1)),
    ("octahedron", 2, AbelianGroupInvariants(1)),
    ("torus", 1, AbelianGroupInvariants(2)),
    ("torus", 2, AbelianGroupInvariants(1)),
    ("rp2", 1, AbelianGroupInvariants(0)),
    ("rp2", 2, AbelianGroupInvariants(0, (2,))),
]


def criterion_4(corpus: Corpus) -> CriterionResult:
    rows = []
    ok = True
    certs = 0
    nontrivial = 0
    for name, k, expected in THEOREM_CASES:
        d = corpus.by_name[name].datum
        group = cohomology(d.nerve, k)
        gens = cohomology_generators(d.nerve, k)
        good = 0
        for _, alpha in gens:
            try:
                cert = certify_theorem(d, alpha, k)
            except CertificationError:
                continue
            good += 1
            nontrivial += bool(cert.witness)
        passed = group == expected and good == len(gens)
        ok &= passed
        certs += good
        rows.append("%s k=%d H=%s generators=%d certified=%d %s" % (name, k, group, len(gens), good, "ok" if passed else "FAIL"))
    return CriterionResult(4, "theorem certificates", ok,
                           "%d certificates, %d with nonzero witness" % (certs, nontrivial), rows=rows)


# ---------------------------------------------------------------------------
# 5. group agreement


def criterion_5(corpus: Corpus) -> CriterionResult:
    rows = []
    ok = True
    for item in corpus.inputs:
        d = item.datum
        N = d.nerve
        top = N.dim + 1
        groups = []
        for k in range(0, top + 1):
            cech = cech_cohomology(d, k)
            delta = cohomology(N, k)
            same = cech == delta
            if item.complex is not None:
                same &= cech == cohomology(item.complex, k)
            ok &= same
            groups.append(str(cech) + ("" if same else "!"))
        rows.append("%s: %s" % (item.name, ", ".join("H^%d=%s" % (k, g) for k, g in enumerate(groups))))
    return CriterionResult(5, "Cech = Delta cohomology", ok, "%d data" % len(corpus.inputs), rows=rows)


# ---------------------------------------------------------------------------
# 6. exactness of rows and columns


def criterion_6(corpus: Corpus, max_total_degree: int = 4) -> CriterionResult:
    rows = []
    ok = True
    positions = 0
    for name, d in corpus.data():
        report = exactness_report(d, max_total_degree)
        bad = [r for r in report if not r["exact"]]
        positions += len(report)
        ok &= not bad
        cok = [len(first_column_cokernel(d, m)) for m in range(0, min(max_total_degree, d.nerve.dim) + 1)]
        rows.append("%s: %d positions, %d not exact; first-column cokernel ranks %s" % (name, len(report), len(bad), cok))
    return CriterionResult(6, "rows and columns exact off the first", ok, "%d positions" % positions, rows=rows)


# ---------------------------------------------------------------------------
# 7. restriction from the saturation


def criterion_7(corpus: Corpus) -> CriterionResult:
    rows = []
    ok = True
    covers = [x for x in corpus.inputs if x.saturated is not None]
    for item in covers:
        c = item.original or item.saturated
        for k in range(0, item.datum.nerve.dim + 1):
            try:
                certs = certify_refinement(c, k)
                rows.append("%s k=%d: %d restricted certificates" % (item.name, k, len(certs)))
            except CertificationError as e:
                ok = False
                rows.append("%s k=%d: FAIL %s" % (item.name, k, e))
    ok &= bool(covers)
    return CriterionResult(7, "restriction from the saturation", ok, "%d covers" % len(covers), rows=rows)


# ---------------------------------------------------------------------------
# 8. sign table


def inversion_sign(k: int) -> int:
    perm = [k - i for i in range(k + 1)]
    inv = sum(1 for i, j in combinations(range(k + 1), 2) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def criterion_8(corpus: Corpus | None = None) -> CriterionResult:
    expected = [1, -1, -1, 1, 1, -1, -1]
    got = [palindromic_sign(k) for k in range(7)]
    inv = [inversion_sign(k) for k in range(7)]
    ok = got == expected == inv
    return CriterionResult(8, "palindromic sign table", ok, " ".join("%+d" % s for s in got))


# ---------------------------------------------------------------------------
# 9. linear algebra substrate


def random_matrix(rng: random.Random, max_dim: int = 12, bound: int = 9) -> IntMatrix:
    r, c = rng.randint(0, max_dim), rng.randint(0, max_dim)
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)], ncols=c)


def snf_failures(A: IntMatrix) -> list[str]:
    snf = smith_normal_form(A)
    bad = []
    if snf.U @ A @ snf.V != snf.D:
        bad.append("U A V != D")
    if not (snf.U.is_unimodular() and snf.V.is_unimodular()):
        bad.append("not unimodular")
    if snf.U @ snf.U_inv != IntMatrix.identity(A.nrows) or snf.V @ snf.V_inv != IntMatrix.identity(A.ncols):
        bad.append("inverse mismatch")
    diag = snf.diagonal
    if any(x <= 0 for x in diag) or any(b % a for a, b in zip(diag, diag[1:])):
        bad.append("divisibility chain")
    off = [(i, j) for i in range(A.nrows) for j in range(A.ncols) if snf.D[i, j] and (i != j or i >= snf.rank)]
    if off:
        bad.append("D not diagonal")
    return bad


def criterion_9(corpus: Corpus | None = None, n: int = 200, seed: int = 0) -> CriterionResult:
    rng = random.Random(seed)
    bad = []
    solved = 0
    for t in range(n):
        A = random_matrix(rng)
        bad += ["matrix %d: %s" % (t, f) for f in snf_failures(A)]
        x0 = [rng.randint(-5, 5) for _ in range(A.ncols)]
        b = A @ x0
        x = solve_linear(A, b)
        if x is None or A @ x != b:
            bad.append("matrix %d: consistent system not solved" % t)
        else:
            solved += 1
        rhs = [rng.randint(-9, 9) for _ in range(A.nrows)]
        y = solve_linear(A, rhs)
        if y is not None and A @ y != rhs:
            bad.append("matrix %d: bad solution" % t)
    rp2 = corpus.by_name["rp2"].complex if corpus is not None else None
    torsion = str(homology(rp2, 1)) if rp2 is not None else "skipped"
    if rp2 is not None and homology(rp2, 1) != AbelianGroupInvariants(0, (2,)):
        bad.append("RP2 H_1 = %s" % torsion)
    return CriterionResult(9, "integer linear algebra", not bad,
                           "%d matrices, %d systems solved, RP2 H_1 = %s" % (n, solved, torsion), rows=bad[:5])


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


def run_all(corpus: Corpus | None = None, seed: int = 0) -> list[CriterionResult]:
    corpus = corpus or Corpus()
    out = []
    for fn in CRITERIA:
        t = time.perf_counter()
        res = criterion_9(corpus, seed=seed) if fn is criterion_9 else fn(corpus)
        res.seconds = time.perf_counter() - t
        out.append(res)
    return out
