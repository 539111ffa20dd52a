from fractions import Fraction

import pytest

from pepsets import make_field, make_system

PELL_JOB = """\
field x^2-2 as s
pep vars m,n over s
  x = (-1)^(m) * (1/2) * (3-2s)^(n) + (-1)^(m) * (1/2) * (3+2s)^(n)
  y = (1/(2s)) * (3-2s)^(n) - (1/(2s)) * (3+2s)^(n)
end
"""


@pytest.fixture(scope="session")
def Q():
    return make_field("x-1")


@pytest.fixture(scope="session")
def K2():
    return make_field("x^2-2", symbol="s")


@pytest.fixture(scope="session")
def Ki():
    return make_field("x^2+1", symbol="i")


@pytest.fixture(scope="session")
def K3():
    # discriminant -23 is squarefree, so the power basis is the maximal order
    return make_field("x^3-x-1", symbol="c")


def pell_system(K):
    s = K.gen
    half = Fraction(1, 2)
    return make_system(
        K,
        [3 - 2 * s, 3 + 2 * s, -1],
        [
            [(half, [[0, 1], [0, 0], [1, 0]]), (half, [[0, 0], [0, 1], [1, 0]])],
            [(1 / (2 * s), [[0, 1], [0, 0], [0, 0]]), (-1 / (2 * s), [[0, 0], [0, 1], [0, 0]])],
        ],
        variables=("m", "n"),
    )


@pytest.fixture(scope="session")
def pell(K2):
    return pell_system(K2)


@pytest.fixture(scope="session")
def laurent(Q):
    """1 + 2^{n1} - 2^{n2}."""
    return make_system(Q, [2], [[(1, [[0, 0]]), (1, [[1, 0]]), (-1, [[0, 1]])]])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(mod.RESULTS, key=lambda s: (int(s[1:].split()[0].rstrip("ab")), s)):
        terminalreporter.write_line(mod.RESULTS[label])
