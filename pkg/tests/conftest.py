from typing import Dict

import numpy as np
import pytest

from corpus import corpus, MFDocument
from mf import MatrixFactorization
from ring import GF, PolyRing, QQ


@pytest.fixture
def R() -> PolyRing:
    return PolyRing(QQ, ("x", "y"))


@pytest.fixture
def R7() -> PolyRing:
    return PolyRing(GF(7), ("x", "y"))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture(scope="session")
def docs() -> Dict[str, MFDocument]:
    return {doc.name: doc for doc in corpus()}


@pytest.fixture(scope="session")
def items(docs) -> Dict[str, MatrixFactorization]:
    return {name: doc.to_mf() for name, doc in docs.items()}
