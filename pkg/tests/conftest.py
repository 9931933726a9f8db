import io
from pathlib import Path

import pytest

from propnet.corpus import Version, load_version
from propnet.textproc import LangResources, default_resource_root, load_resources

FIXTURES = Path(__file__).parent / "fixtures"


def make_version(records, language="xx", translator=""):
    """Version from [(number, text), ...] without touching the filesystem."""
    lines = [f"{number}\t{text}" for number, text in records]
    return load_version(io.StringIO("\n".join(lines) + "\n"), language, translator)


@pytest.fixture(scope="session")
def resource_root():
    return default_resource_root()


@pytest.fixture(scope="session")
def german_version(resource_root):
    path = resource_root / "texts" / "tractatus_de.txt"
    with open(path, encoding="utf-8") as handle:
        return load_version(handle, "de", "")


@pytest.fixture(scope="session")
def english_version(resource_root):
    path = resource_root / "texts" / "tractatus_en_ogden.txt"
    with open(path, encoding="utf-8") as handle:
        return load_version(handle, "en", "Ogden and Ramsey")


@pytest.fixture(scope="session")
def de_resources():
    return load_resources("de")


@pytest.fixture(scope="session")
def en_resources():
    return load_resources("en")


@pytest.fixture
def plain_resources():
    # no stopwords, no stemming: tokens pass through untouched
    return LangResources(language="xx", stopwords=frozenset())
