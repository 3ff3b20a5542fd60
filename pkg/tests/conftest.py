from importlib import resources

import pytest

from rfring.document import WorkspaceDoc

CORPUS_PATH = str(resources.files("rfring") / "data" / "corpus.json")


@pytest.fixture(scope="session")
def doc():
    return WorkspaceDoc.load(CORPUS_PATH)


@pytest.fixture(scope="session")
def corpus_path():
    return CORPUS_PATH


@pytest.fixture(scope="session")
def sl2z(doc):
    return doc.amalgam("sl2z")
