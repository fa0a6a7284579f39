import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from wellnested import Buchi, Muller, OmegaIdpda, PushdownAlphabet, make_idpda  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

SIG = PushdownAlphabet("<", ">", "a")
SIG_AB = PushdownAlphabet("<", ">", "ab")

# one line per acceptance criterion, printed after the run
REPORT = []


def m_ref_structure():
    return make_idpda(
        SIG, "pq", "p", "s",
        internal=[("p", "a", "q"), ("q", "a", "p")],
        push=[("p", "<", "p", "s"), ("q", "<", "q", "s")],
        pop=[("p", ">", "s", "p"), ("q", ">", "s", "q")],
    )


def m_ref():
    return OmegaIdpda(m_ref_structure(), Muller([{"p", "q"}]))


def guess_structure():
    """Nondeterministic: on ``a``, ``p`` may stay or move to ``q``; ``q`` stays."""
    return make_idpda(SIG, "pq", "p", "s", internal=[("p", "a", "p"), ("p", "a", "q"), ("q", "a", "q")])


def guess_buchi():
    return OmegaIdpda(guess_structure(), Buchi({"q"}))


@pytest.fixture
def mref():
    return m_ref()


@pytest.fixture
def mref_struct():
    return m_ref_structure()


def pytest_terminal_summary(terminalreporter):
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
