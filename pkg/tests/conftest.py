import pytest
from hypothesis import HealthCheck, settings

from src.core.automaton import compile
from src.core.canonize import canonize
from src.core.parser import parse
from src.core.pastify import to_past_ebr
from src.schemas.partition import Partition, SpecFile
from src.services.benchmark_service import BenchmarkService
from src.services.synthesis_service import SynthesisService

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")


ECHO_SPEC = """\
.inputs u1 u2
.outputs c1 c2
G(u1 -> X X c1) & G(u2 -> X c2)
"""

GRANT_SPEC = """\
.inputs r
.outputs g
G(r -> F[0,2] g)
"""


@pytest.fixture
def synthesis_service():
    return SynthesisService()


@pytest.fixture
def benchmark_service():
    return BenchmarkService()


@pytest.fixture
def echo_spec():
    return SpecFile.from_text(ECHO_SPEC)


@pytest.fixture
def grant_spec():
    return SpecFile.from_text(GRANT_SPEC)


def build_automaton(text: str, inputs=(), outputs=()):
    """Parse, pastify, canonize and compile one formula"""
    partition = Partition(uncontrollable=list(inputs), controllable=list(outputs))
    return compile(canonize(to_past_ebr(parse(text))), partition)


@pytest.fixture
def automaton_for():
    return build_automaton
