import pytest

from twistfrt.freealg import Alphabet
from twistfrt.quadspace import EndoTensor
from twistfrt.scalar import ParamSet
from twistfrt.twisted_frt import TwistTensor, build_presentation

QP = ParamSet(("q", "p"))

PLANE_ROWS = [
    ["1", "0", "0", "0"],
    ["0", "0", "q", "0"],
    ["0", "q", "1 - q^2", "0"],
    ["0", "0", "0", "1"],
]

B_PRIME_ROWS = [
    ["1", "0", "0", "0"],
    ["0", "(q - 1/q)/(q + 1/q)", "2/(q + 1/q)", "0"],
    ["0", "2/(q + 1/q)", "(1/q - q)/(q + 1/q)", "0"],
    ["0", "0", "0", "1"],
]


def plane_B(P=QP):
    return EndoTensor.from_strings(2, PLANE_ROWS, P)


def b_prime(P=QP):
    return EndoTensor.from_strings(2, B_PRIME_ROWS, P)


def two_param_twist(P=QP):
    p = P.gen("p")
    g = {}
    for i in (1, 2):
        g[(i, 1, 2)] = p
        g[(i, 2, 1)] = p.inverse()
    return TwistTensor.diagonal(2, P, g)


def nc(text, P=QP, n=2):
    from twistfrt.parsing import parse_ncpoly

    return parse_ncpoly(text, Alphabet.for_dim(n), P)


@pytest.fixture(scope="session")
def P():
    return QP


@pytest.fixture(scope="session")
def B():
    return plane_B()


@pytest.fixture(scope="session")
def Bp():
    return b_prime()


@pytest.fixture(scope="session")
def gamma():
    return two_param_twist()


@pytest.fixture(scope="session")
def pres(B, gamma):
    return build_presentation(B, gamma)


@pytest.fixture(scope="session")
def A2():
    return Alphabet.for_dim(2)


# the six defining relations of the two-parameter quantum matrices
KNOWN_RELATIONS = [
    "ac - p*q ca",
    "ab - p^-1*q ba",
    "bc - p^2 cb",
    "cd - p^-1*q dc",
    "bd - p*q db",
    "ad - da + p*(q^-1 - q) cb",
]


# one summary line per acceptance criterion
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    prev = _CRITERIA.get(number, (title, True))
    _CRITERIA[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
