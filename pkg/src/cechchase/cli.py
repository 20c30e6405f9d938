"""Command-line front end.

Inputs are complex files (their star cover is used), cover files, or names
of corpus entries. Output is deterministic for fixed input and flags.

Exit codes: 0 success, 1 usage or parse error, 2 certification failure,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import __version__
from .acceptance import Corpus, run_all
from .cech import palindromic_sign
from .chase import (
    CertificationError,
    cech_cohomology,
    certificate_record,
    certificate_report,
    certify_refinement,
    certify_theorem,
    cohomology_generators,
    dump_json,
    zigzag_chase,
    _fmt_map,
)
from .cover import nerve, saturate
from .formats import LoadedInput, ParseError, corpus_dir, load_input
from .simplicial import SimplicialComplex, cohomology

EXIT_OK, EXIT_USAGE, EXIT_CERT, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("cechchase")


class UsageError(Exception):
    pass


def _name(K: SimplicialComplex, s) -> str:
    return "{" + ",".join(K.labels[v] for v in s) + "}"


def _degrees(args, top: int) -> list[int]:
    if args.degree is None:
        return list(range(0, top + 1))
    if args.degree < 0:
        raise UsageError("--degree must be >= 0")
    return [args.degree]


def _nerve_of(item: LoadedInput) -> SimplicialComplex:
    if item.original is not None:
        return nerve(item.original)
    if item.saturated is not None:
        return nerve(item.saturated)
    return item.datum.nerve


def cmd_nerve(args, out) -> int:
    item = load_input(args.input)
    N = _nerve_of(item)
    if args.format == "records":
        for k in range(N.dim + 1):
            for s in N.simplices_of_dim(k):
                out.write("record=simplex dim=%d indices=%s\n" % (k, ",".join(N.labels[v] for v in s)))
        return EXIT_OK
    counts = [len(N.simplices_of_dim(k)) for k in range(N.dim + 1)]
    out.write("nerve of %s: %d indices, dimension %d, f-vector %s\n" % (item.name, len(N.labels), N.dim, counts))
    for k in range(N.dim + 1):
        out.write("dim %d: %s\n" % (k, " ".join(_name(N, s) for s in N.simplices_of_dim(k))))
    return EXIT_OK


def cmd_saturate(args, out) -> int:
    item = load_input(args.input)
    if item.saturated is None:
        raise UsageError("saturate needs a cover file with explicit members")
    c = item.original or item.saturated
    big, d = saturate(c)
    added = len(big) - len(c)
    if args.format == "records":
        for i, (lab, s) in enumerate(big.members):
            out.write("record=member rank=%d label=%s original=%d elements=%s\n"
                      % (i, lab, int(lab in c.labels), ",".join(sorted(map(str, s)))))
        for b in sorted(d.hat, key=lambda b: (len(b), b)):
            out.write("record=hat simplex=%s hat=%s\n" % (",".join(d.labels[i] for i in b), d.labels[d.hat[b]]))
        return EXIT_OK
    out.write("saturation of %s: %d members (%d added)\n" % (item.name, len(big), added))
    for i, (lab, s) in enumerate(big.members):
        tag = "" if lab in c.labels else "  (new)"
        out.write("  %d %s: %s%s\n" % (i, lab, " ".join(sorted(map(str, s))), tag))
    bad = d.violations()
    out.write("datum axioms: %s\n" % ("ok" if not bad else "; ".join(bad)))
    return EXIT_OK if not bad else EXIT_INTERNAL


def cmd_cohomology(args, out) -> int:
    item = load_input(args.input)
    d = item.datum
    for k in _degrees(args, d.nerve.dim):
        cech = cech_cohomology(d, k)
        delta = cohomology(d.nerve, k)
        fields = [("k", k), ("cech", cech), ("nerve", delta)]
        if item.complex is not None:
            fields.append(("complex", cohomology(item.complex, k)))
        agree = len({str(v) for _, v in fields[1:]}) == 1
        fields.append(("agree", "yes" if agree else "no"))
        if args.format == "records":
            out.write("record=cohomology " + " ".join("%s=%s" % (a, str(b).replace(" ", "")) for a, b in fields) + "\n")
        else:
            out.write("H^%d: %s\n" % (k, ", ".join("%s %s" % (a, b) for a, b in fields[1:])))
        if not agree:
            return EXIT_INTERNAL
    return EXIT_OK


def cmd_chase(args, out) -> int:
    item = load_input(args.input)
    d = item.datum
    for k in _degrees(args, d.nerve.dim):
        for g, (order, alpha) in enumerate(cohomology_generators(d.nerve, k)):
            chased = zigzag_chase(d, alpha, k, cross_check=True)
            if args.format == "records":
                out.write("record=chase k=%d generator=%d order=%d alpha=%s chased=%s\n"
                          % (k, g, order, _fmt_map(dict(alpha.items())), _fmt_map(chased.values)))
            else:
                out.write("H^%d generator %d (%s)\n" % (k, g, "free" if order == 0 else "order %d" % order))
                out.write("  alpha  = %s\n" % alpha.format(d.nerve))
                out.write("  chased = %s\n" % _fmt_map(chased.values, d.labels))
    return EXIT_OK


def cmd_certify(args, out) -> int:
    item = load_input(args.input)
    d = item.datum
    top = item.complex.dim if item.complex is not None else d.nerve.dim
    count = 0
    try:
        for k in _degrees(args, top):
            if item.original is not None:
                for g, cert in enumerate(certify_refinement(item.original, k)):
                    count += 1
                    if args.format == "records":
                        out.write("record=restricted k=%d generator=%d sign=%d restricted=%s evaluated=%s witness=%s verified=1\n"
                                  % (k, g, palindromic_sign(k), _fmt_map(cert.restricted.values),
                                     _fmt_map(cert.evaluated.values), _fmt_map(cert.witness.values)))
                    else:
                        labels = item.original.labels
                        out.write("restricted certificate for generator %d of H^%d over %s\n" % (g, k, item.name))
                        out.write("  restricted = %s\n" % _fmt_map(cert.restricted.values, labels))
                        out.write("  evaluated  = %s\n" % _fmt_map(cert.evaluated.values, labels))
                        out.write("  witness    = %s\n" % _fmt_map(cert.witness.values, labels))
                continue
            for g, (order, alpha) in enumerate(cohomology_generators(d.nerve, k)):
                cert = certify_theorem(d, alpha, k)
                count += 1
                if args.format == "records":
                    out.write(certificate_record(cert, g, order) + "\n")
                else:
                    out.write(certificate_report(cert, d, g, order) + "\n")
    except CertificationError as e:
        out.write("certification failed: %s\n" % e)
        out.write(dump_json(e) + "\n")
        return EXIT_CERT
    if args.format == "human":
        out.write("%d certificate%s verified\n" % (count, "" if count == 1 else "s"))
    return EXIT_OK


def cmd_corpus(args, out) -> int:
    corpus = Corpus()
    results = run_all(corpus, seed=args.seed or 0)
    for r in results:
        if args.format == "records":
            out.write("record=criterion number=%d passed=%d title=%s\n" % (r.number, int(r.passed), r.title.replace(" ", "_")))
        else:
            out.write(r.line() + "\n")
            for row in r.rows:
                out.write("    %s\n" % row)
        log.info("criterion %d took %.2fs", r.number, r.seconds)
    ok = all(r.passed for r in results)
    if args.format == "human":
        out.write("%d/%d criteria passed (corpus at %s)\n" % (sum(r.passed for r in results), len(results),
                                                                "$CECHCHASE_CORPUS" if corpus_dir().name != "corpus" else "bundled"))
    return EXIT_OK if ok else EXIT_INTERNAL


COMMANDS = {
    "nerve": (cmd_nerve, "list the nerve of a cover (or of the star cover of a complex)"),
    "saturate": (cmd_saturate, "add all intersections to a cover and check the datum axioms"),
    "cohomology": (cmd_cohomology, "Cech and Delta cohomology groups"),
    "chase": (cmd_chase, "zig-zag chase of every cohomology generator"),
    "certify": (cmd_certify, "certify chase = signed evaluation up to a Cech coboundary"),
    "corpus": (cmd_corpus, "run the acceptance suite over the bundled corpus"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cechchase", description="Nerves, Cech double complexes and the zig-zag chase over Z.")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        if name != "corpus":
            sp.add_argument("input", help="complex file, cover file, or corpus name")
        sp.add_argument("--degree", "-k", type=int, default=None, help="cohomological degree (default: all)")
        sp.add_argument("--format", choices=("human", "records"), default="human")
        sp.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
        sp.add_argument("-v", "--verbose", action="count", default=0)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    fn = COMMANDS[args.command][0]
    t = time.perf_counter()
    try:
        code = fn(args, out)
    except (ParseError, UsageError, KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        sys.stderr.write("cechchase %s: %s\n" % (args.command, msg))
        return EXIT_USAGE
    except (AssertionError, ArithmeticError) as e:
        sys.stderr.write("cechchase %s: internal invariant violated: %s\n" % (args.command, e))
        return EXIT_INTERNAL
    log.info("%s finished in %.2fs", args.command, time.perf_counter() - t)
    return code


if __name__ == "__main__":
    sys.exit(main())
