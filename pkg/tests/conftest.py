import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.automaton.io import load_automaton  # noqa: E402
from app.sequence.values import VanDerCorputSequence  # noqa: E402
from app.spectral.eigen import spectral_data  # noqa: E402

AUTOMATA = ROOT / "automata"


@pytest.fixture(scope="session")
def automata_dir():
    return AUTOMATA


@pytest.fixture(scope="session")
def example1():
    return load_automaton(AUTOMATA / "example1.aut")


@pytest.fixture(scope="session")
def example2():
    return load_automaton(AUTOMATA / "example2.aut")


@pytest.fixture(scope="session")
def final_example():
    return load_automaton(AUTOMATA / "final_example.aut")


@pytest.fixture(scope="session")
def golden():
    return load_automaton(AUTOMATA / "golden.aut")


@pytest.fixture(scope="session")
def binary():
    return load_automaton(AUTOMATA / "binary.aut")


@pytest.fixture(scope="session")
def example1_data(example1):
    return spectral_data(example1)


@pytest.fixture(scope="session")
def example2_data(example2):
    return spectral_data(example2)


@pytest.fixture(scope="session")
def final_data(final_example):
    return spectral_data(final_example, allow_reducible=True)


@pytest.fixture(scope="session")
def example1_seq(example1, example1_data):
    return VanDerCorputSequence(example1, example1_data)


@pytest.fixture(scope="session")
def binary_seq(binary):
    return VanDerCorputSequence(binary, spectral_data(binary))


@pytest.fixture()
def isolated_env(tmp_path, monkeypatch):
    """Point every output directory at tmp_path and make the settings file absent."""
    monkeypatch.setenv("AVDC_DATA_ROOT", str(tmp_path / "data"))
    return tmp_path
