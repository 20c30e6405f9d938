import pytest
from hypothesis import HealthCheck, settings

from cechchase.cover import star_cover
from cechchase.formats import load_complex
from cechchase.simplicial import SimplicialComplex

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def complexes():
    names = ["triangle-boundary", "hexagon", "octahedron", "torus", "rp2", "simplex3"]
    return {n: load_complex(n) for n in names}


@pytest.fixture(scope="session")
def tri():
    return SimplicialComplex.from_maximal(["a", "b", "c"], [(0, 1), (1, 2), (0, 2)])


@pytest.fixture(scope="session")
def tri_star(tri):
    return star_cover(tri)


@pytest.fixture(scope="session")
def solid_triangle_star():
    return star_cover(SimplicialComplex.from_maximal(["a", "b", "c"], [(0, 1, 2)]))


@pytest.fixture(scope="session")
def stars(complexes):
    return {n: star_cover(X) for n, X in complexes.items()}
