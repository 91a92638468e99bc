import json
import os
import pathlib

import pytest

DATA = pathlib.Path(os.environ.get("REPPACT_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="session")
def monthey_config():
    return json.loads((DATA / "monthey" / "config.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def monthey_tally():
    import reppact

    return reppact.load_tally_csv(DATA / "monthey" / "tally.csv")


@pytest.fixture(scope="session")
def data_dir():
    return DATA
