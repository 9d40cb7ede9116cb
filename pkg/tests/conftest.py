import pytest
from hypothesis import settings

from hcodim.catalog import catalog_get, load_action, load_algebra, load_grading

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


class Fixture:
    def __init__(self, name):
        self.name = name
        self.doc = catalog_get(name)
        self.A = load_algebra(self.doc)
        self.grading = load_grading(self.doc, self.A)
        self.act = load_action(self.doc)


_cache = {}


def load(name) -> Fixture:
    if name not in _cache:
        _cache[name] = Fixture(name)
    return _cache[name]


@pytest.fixture
def fx():
    return load


def random_multilinear(rnd, n, decorations=(None,), terms=3, assoc=False):
    """A random multilinear polynomial of degree n drawn from the monomial basis."""
    from hcodim.freealg import HPolynomial, enumerate_multilinear_monomials

    pool = enumerate_multilinear_monomials(n, list(decorations), assoc=assoc)
    picks = rnd.sample(pool, min(terms, len(pool)))
    return HPolynomial({m: rnd.randint(-3, 3) or 1 for m in picks})


def decorations_of(f):
    """Decoration list and (act, grading) operands for a loaded fixture."""
    from hcodim.freealg import Grade, HBasis

    if f.act is not None:
        return [HBasis(j) for j in range(f.act.hdim)], (f.act, None)
    if f.grading is not None:
        return [Grade(t) for t in f.grading.support], (None, f.grading)
    return [None], (None, None)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
