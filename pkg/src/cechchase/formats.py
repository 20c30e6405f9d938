"""Text formats for complexes and covers, and the bundled corpus.

A complex file::

    vertices: a b c
    simplices:
    a b
    b c

lists vertices in rank order, then maximal simplices one per line. A cover
file either lists a ground set and members::

    ground: 1 2 3
    member A: 1 2

or asks for the star cover of a complex with ``starcover of <name>``, where
the name is a corpus entry or a complex file next to the cover file.
``#`` starts a comment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .cover import GroundSetCover, SaturatedCoverDatum, datum_from_cover, saturate, star_cover
from .simplicial import SimplicialComplex

CORPUS_ENV = "CECHCHASE_CORPUS"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = "%s:%d" % (source, line) if line is not None else source
        super().__init__("%s: %s" % (where, message))


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_complex(text: str, source: str = "<input>") -> SimplicialComplex:
    labels = None
    maximal: list[tuple[int, list[str]]] = []
    in_simplices = False
    for n, line in _lines(text):
        key, sep, rest = line.partition(":")
        key = key.strip()
        if sep and key == "vertices":
            if labels is not None:
                raise ParseError("vertices declared twice", n, source)
            labels = rest.split()
            if not labels:
                raise ParseError("no vertices", n, source)
            if len(set(labels)) != len(labels):
                raise ParseError("duplicate vertex label", n, source)
            in_simplices = False
        elif sep and key == "simplices":
            in_simplices = True
            if rest.strip():
                maximal.append((n, rest.split()))
        elif in_simplices and not sep:
            maximal.append((n, line.split()))
        else:
            raise ParseError("unexpected line %r" % line, n, source)
    if labels is None:
        raise ParseError("missing 'vertices:' line", None, source)
    rank = {v: i for i, v in enumerate(labels)}
    faces = []
    for n, verts in maximal:
        unknown = [v for v in verts if v not in rank]
        if unknown:
            raise ParseError("unknown vertex %s" % unknown[0], n, source)
        if len(set(verts)) != len(verts):
            raise ParseError("repeated vertex in simplex", n, source)
        faces.append([rank[v] for v in verts])
    # isolated vertices are still vertices
    faces.extend([i] for i in range(len(labels)))
    return SimplicialComplex.from_maximal(labels, faces)


@dataclass(frozen=True)
class CoverSpec:
    """A parsed cover file: either an explicit ground-set cover or a complex
    whose star cover is wanted."""

    cover: GroundSetCover | None = None
    star_of: SimplicialComplex | None = None
    name: str = ""


def parse_cover(text: str, source: str = "<input>", resolve=None) -> CoverSpec:
    """``resolve(name)`` turns a ``starcover of`` name into a complex."""
    ground = None
    members = []
    star = None
    for n, line in _lines(text):
        if line.startswith("starcover of"):
            name = line[len("starcover of"):].strip()
            if not name:
                raise ParseError("missing complex name", n, source)
            if star is not None or ground is not None:
                raise ParseError("starcover cannot be combined with other declarations", n, source)
            try:
                star = (resolve or load_complex)(name)
            except (OSError, KeyError, ValueError) as e:
                raise ParseError("cannot load complex %r: %s" % (name, e), n, source) from None
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("unexpected line %r" % line, n, source)
        words = key.split()
        if words == ["ground"]:
            if ground is not None:
                raise ParseError("ground declared twice", n, source)
            ground = rest.split()
        elif len(words) == 2 and words[0] == "member":
            if ground is None:
                raise ParseError("member before 'ground:'", n, source)
            elems = rest.split()
            if not elems:
                raise ParseError("member %s is empty" % words[1], n, source)
            missing = [e for e in elems if e not in ground]
            if missing:
                raise ParseError("element %s not in ground set" % missing[0], n, source)
            if any(lab == words[1] for lab, _ in members):
                raise ParseError("duplicate member label %s" % words[1], n, source)
            members.append((words[1], frozenset(elems)))
        else:
            raise ParseError("unexpected line %r" % line, n, source)
        if star is not None:
            raise ParseError("starcover cannot be combined with other declarations", n, source)
    if star is not None:
        return CoverSpec(star_of=star)
    if ground is None:
        raise ParseError("missing 'ground:' line", None, source)
    if not members:
        raise ParseError("no members", None, source)
    return CoverSpec(cover=GroundSetCover(tuple(ground), tuple(members)))


# ---------------------------------------------------------------------------
# Files and the corpus


def corpus_dir() -> Path:
    env = os.environ.get(CORPUS_ENV)
    return Path(env) if env else Path(__file__).with_name("corpus")


def corpus_entries() -> list[tuple[str, str]]:
    """(name, kind) for every corpus file, kind 'complex' or 'cover', sorted."""
    out = []
    for p in sorted(corpus_dir().iterdir()):
        if p.suffix in (".complex", ".cover"):
            out.append((p.stem, p.suffix[1:]))
    return out


def load_complex(name_or_path: str, base: Path | None = None) -> SimplicialComplex:
    p = _locate(name_or_path, ".complex", base)
    return parse_complex(p.read_text(), str(p))


def _locate(name: str, suffix: str, base: Path | None) -> Path:
    candidates = [Path(name)]
    if base is not None:
        candidates += [base / name, base / (name + suffix)]
    candidates.append(corpus_dir() / (name + suffix))
    for c in candidates:
        if c.is_file():
            return c
    raise KeyError("no file or corpus entry named %r" % name)


def file_kind(text: str) -> str:
    for _, line in _lines(text):
        if line.startswith("vertices") or line.startswith("simplices"):
            return "complex"
        if line.startswith("ground") or line.startswith("starcover") or line.startswith("member"):
            return "cover"
        break
    raise ParseError("cannot tell whether this is a complex or a cover file")


@dataclass(frozen=True)
class LoadedInput:
    """What a CLI input resolves to. ``original`` is set when the cover was
    not saturated and ``datum`` belongs to its saturation."""

    name: str
    datum: SaturatedCoverDatum
    complex: SimplicialComplex | None = None
    original: GroundSetCover | None = None
    saturated: GroundSetCover | None = None


def load_input(name_or_path: str) -> LoadedInput:
    """Read a complex (star cover derived) or a cover file, or a corpus name."""
    try:
        p = _locate(name_or_path, ".complex", None)
    except KeyError:
        p = _locate(name_or_path, ".cover", None)
    text = p.read_text()
    source = str(p)
    if file_kind(text) == "complex":
        X = parse_complex(text, source)
        return LoadedInput(p.stem, star_cover(X), complex=X)
    spec = parse_cover(text, source, resolve=lambda n: load_complex(n, p.parent))
    if spec.star_of is not None:
        return LoadedInput(p.stem, star_cover(spec.star_of), complex=spec.star_of)
    return input_from_cover(p.stem, spec.cover)


def input_from_cover(name: str, c: GroundSetCover) -> LoadedInput:
    try:
        return LoadedInput(name, datum_from_cover(c), saturated=c)
    except ValueError:
        big, d = saturate(c)
        return LoadedInput(name, d, original=c, saturated=big)
