import pytest

from cechchase.formats import (
    CORPUS_ENV,
    ParseError,
    corpus_dir,
    corpus_entries,
    file_kind,
    load_complex,
    load_input,
    parse_complex,
    parse_cover,
)


class TestComplexFormat:
    def test_basic(self):
        K = parse_complex("vertices: a b c\nsimplices:\na b\nb c  # comment\n")
        assert K.labels == ("a", "b", "c")
        assert K.simplices == {(0,), (1,), (2,), (0, 1), (1, 2)}

    def test_inline_simplex_and_isolated_vertex(self):
        K = parse_complex("vertices: a b c\nsimplices: a b\n")
        assert (2,) in K and (0, 1) in K

    def test_order_is_listed_order(self):
        K = parse_complex("vertices: z y\nsimplices:\ny z\n")
        assert K.labels == ("z", "y") and (0, 1) in K

    @pytest.mark.parametrize("text,line", [
        ("vertices: a b\nsimplices:\na q\n", 3),
        ("vertices: a a\n", 1),
        ("vertices: a\nfoo: bar\n", 2),
        ("vertices: a b\nsimplices:\na a\n", 3),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_complex(text, "f.complex")
        assert info.value.line == line
        assert "f.complex:%d" % line in str(info.value)

    def test_missing_vertices(self):
        with pytest.raises(ParseError):
            parse_complex("simplices:\na b\n")


class TestCoverFormat:
    def test_members(self):
        spec = parse_cover("ground: 1 2 3\nmember A: 1 2\nmember B: 2 3\n")
        assert spec.cover.labels == ["A", "B"]
        assert spec.cover.sets == [{"1", "2"}, {"2", "3"}]

    def test_starcover(self):
        spec = parse_cover("starcover of triangle-boundary\n")
        assert spec.star_of is not None and len(spec.star_of.labels) == 3

    @pytest.mark.parametrize("text,line", [
        ("ground: 1 2\nmember A: 3\n", 2),
        ("member A: 1\n", 1),
        ("ground: 1\nmember A:\n", 2),
        ("ground: 1\nmember A: 1\nmember A: 1\n", 3),
        ("starcover of nowhere-at-all\n", 1),
        ("ground: 1\nstarcover of torus\n", 2),
        ("ground: 1\nwhat\n", 2),
    ])
    def test_errors(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_cover(text)
        assert info.value.line == line

    def test_no_members(self):
        with pytest.raises(ParseError):
            parse_cover("ground: 1\n")

    def test_kind(self):
        assert file_kind("# x\nvertices: a\n") == "complex"
        assert file_kind("ground: 1\n") == "cover"
        with pytest.raises(ParseError):
            file_kind("hello\n")


class TestCorpus:
    def test_entries(self):
        names = [n for n, _ in corpus_entries()]
        assert names == sorted(names)
        for want in ["hexagon", "nested-pair", "octahedron", "rp2", "simplex3", "three-arc", "torus", "triangle-boundary"]:
            assert want in names

    def test_load_complex_by_name(self):
        assert load_complex("torus").dim == 2

    def test_load_input_kinds(self):
        assert load_input("torus").complex is not None
        arcs = load_input("three-arc")
        assert arcs.original is not None and len(arcs.datum.labels) == 6
        nested = load_input("nested-pair")
        assert nested.original is None and nested.saturated is not None

    def test_env_override(self, tmp_path, monkeypatch):
        (tmp_path / "dot.complex").write_text("vertices: p\nsimplices:\np\n")
        (tmp_path / "ring.cover").write_text("starcover of dot\n")
        monkeypatch.setenv(CORPUS_ENV, str(tmp_path))
        assert corpus_dir() == tmp_path
        assert corpus_entries() == [("dot", "complex"), ("ring", "cover")]
        assert load_input("ring").datum.labels == ("p",)

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            load_input("no-such-thing")
