import random

import pytest

from tapediag.signature import parse_signature


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def rel_sig():
    return parse_signature("sort A; frobenius; gen R : A -> A; gen S : A -> A; gen T : A -> A;")


@pytest.fixture
def sig():
    return parse_signature(
        """
        sort A B C;
        gen c : A -> B;  gen d : B -> C;  gen e : C -> A;
        gen f : A B -> C;
        gen R : A -> A;  gen S : A -> A;
        """
    )


def pytest_terminal_summary(terminalreporter):
    import sys

    lines = [line for m in list(sys.modules.values()) for line in getattr(m, "ACCEPTANCE_LINES", [])]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
