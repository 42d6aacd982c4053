import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from linhyp import signature
from linhyp.laws import law_signature


@pytest.fixture
def sig():
    return law_signature()


@pytest.fixture
def gsig():
    """Object-labelled signature with the running f/g/h generators."""
    return signature({"f": ("A", "B"), "g": ("B", "A"),
                      "h": (("B", "A"), ("C", "D"))})


@pytest.fixture
def rng():
    return random.Random(20240817)
