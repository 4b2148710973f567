import json
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "goldens"

EXP1_TEXT = "move the BlueROV from 0,0,0 to 15,25,0"
EXP2_TEXT = "add ten oysters on a circle of radius 3 around the origin"
EXP3_TEXT = "delete all objects within the square of side 15 centered at the origin"
EXP4_TEXT = "follow a circular path of radius 3 around the origin"


@pytest.fixture(scope="session")
def experiment_fixtures() -> dict[str, str]:
    with open(DATA_DIR / "fixtures_experiments.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def adversarial_corpus() -> list[dict]:
    with open(DATA_DIR / "adversarial_corpus.json", encoding="utf-8") as fh:
        return json.load(fh)
