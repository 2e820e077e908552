import pytest

from nbmine import NeighborhoodPattern
from nbmine.oracle import toy_db

# Acceptance lines collected by test_acceptance.py, echoed at the end of the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def toy():
    return toy_db()


class ToyPatterns:
    """Named shapes over the toy vocabulary, pivot = an author."""

    def __init__(self, g):
        self.g = g
        self.AUTHOR = g.vertex_label_vocab.id("Author")
        self.PAPER = g.vertex_label_vocab.id("Paper")
        self.W = g.edge_label_vocab.id("writes")
        self.C = g.edge_label_vocab.id("cites")

    def v(self, name):
        return self.g.vertex_names.id(name)

    def vids(self, *names):
        return tuple(sorted(self.v(n) for n in names))

    def build(self, n, labels=(), edges=()):
        return NeighborhoodPattern.build(n, labels, edges)

    @property
    def two_papers(self):
        return self.build(3, (), [(0, 1, self.W), (0, 2, self.W)])

    @property
    def self_cite(self):
        return self.build(3, (), [(0, 1, self.W), (0, 2, self.W), (2, 1, self.C)])

    @property
    def has_cited_paper(self):
        return self.build(3, (), [(0, 1, self.W), (2, 1, self.C)])

    @property
    def cites_another(self):
        return self.build(3, (), [(0, 1, self.W), (1, 2, self.C)])

    @property
    def path_two_edges(self):
        return self.cites_another

    @property
    def path_two_edges_labeled(self):
        return self.build(3, [(2, self.PAPER)], [(0, 1, self.W), (1, 2, self.C)])


@pytest.fixture(scope="session")
def tp(toy):
    return ToyPatterns(toy)
