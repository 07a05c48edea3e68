import random

import pytest

from otcodes.codes import LinearCode, parity_check
from otcodes.exactfield import DenseMatrix
from otcodes.harness import load

G_TERNARY = [[1, 0, 0, 1, 1, 1, 1], [0, 1, 0, 0, 1, 1, 0], [0, 0, 1, 0, 0, 2, 1]]
H_TERNARY = [[2, 0, 0, 1, 0, 0, 0], [2, 2, 0, 0, 1, 0, 0], [2, 2, 1, 0, 0, 1, 0], [2, 0, 2, 0, 0, 0, 1]]
H_QUINARY = [[1, 0, 0, 1, 1, 0], [0, 1, 0, -1, 0, 1], [0, 0, 1, 0, -1, -1]]
H_SPLIT = [[1, 0, 0, 0, -1, 0, 0], [0, 1, 0, 0, -1, 0, 0], [0, 0, 1, 0, 0, -1, 1], [0, 0, 0, 1, 0, -1, 0]]

FIXTURES = ["quinary_6_3", "ternary_7_3", "ternary_7_3_natural_order", "ternary_7_3_split", "ternary_7_3_y5_last"]


def one_based(sets):
    return [tuple(i + 1 for i in s) for s in sets]


def zero_based(sets):
    return [tuple(i - 1 for i in s) for s in sets]


@pytest.fixture
def ternary():
    return LinearCode.from_rows(3, G_TERNARY)


@pytest.fixture
def ternary_H(ternary):
    return parity_check(ternary)


@pytest.fixture
def quinary():
    return LinearCode.from_parity_check(DenseMatrix.from_rows(5, H_QUINARY))


@pytest.fixture
def split():
    return LinearCode.from_parity_check(DenseMatrix.from_rows(3, H_SPLIT))


def fixture_code(name):
    return load(name)


def corpus_params(seed):
    """(n, k, p) for the seeded property corpus: n <= 8, k <= 4, p in {2, 3, 5}."""
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    n = rng.randint(4, 8)
    k = rng.randint(1, min(4, n - 1))
    return n, k, p


def random_squarefree(seed, max_n=7):
    """Seeded square-free monomial ideal: (n, minimal nonfaces as 0-based index tuples)."""
    from otcodes.matroid import minimalize

    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    gens = [tuple(sorted(rng.sample(range(n), rng.randint(1, min(4, n))))) for _ in range(rng.randint(1, 6))]
    return n, minimalize(gens)


def monomial_basis(n, p, sets):
    from otcodes.polyring import GroebnerBasis, Polynomial, TermOrder, support_monomial

    return GroebnerBasis(TermOrder.grevlex(n), tuple(Polynomial.monomial(n, p, support_monomial(n, s)) for s in sets))


ACCEPTANCE_NOTES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, after the normal pytest summary."""
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when not in ("call", "setup"):
                continue
            num = int(nodeid.split("test_criterion_")[1].split("_")[0])
            ok = status == "passed"
            outcomes[num] = outcomes.get(num, True) and ok
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(outcomes):
        note = ACCEPTANCE_NOTES.get(num, "")
        terminalreporter.write_line(f"criterion {num}: {'PASS' if outcomes[num] else 'FAIL'}"
                                    + (f"  ({note})" if note else ""))
