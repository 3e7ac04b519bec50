import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from desco.cli import corpus_dir  # noqa: E402
from desco.io import load  # noqa: E402

settings.register_profile("default", deadline=None, print_blob=True)
settings.load_profile("default")


@pytest.fixture(scope="session")
def corpus() -> Path:
    return corpus_dir()


@pytest.fixture(scope="session")
def guideway(corpus):
    return load(corpus / "guideway/plant.gen"), load(corpus / "guideway/spec.gen")


@pytest.fixture
def fixture_pair(corpus):
    def get(name, spec="spec.gen"):
        return load(corpus / "fixtures" / name / "plant.gen"), load(corpus / "fixtures" / name / spec)
    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
