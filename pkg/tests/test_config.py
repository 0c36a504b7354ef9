import json
import tempfile
from pathlib import Path

import pytest

from lpplab.config import DEFAULT_MAX_CELLS, EXECUTION_FIELDS, RunConfig, load_config, max_cells
from lpplab.errors import ConfigError


def write_config(temp_dir: str, payload) -> Path:
    path = Path(temp_dir) / "config.json"
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return path


def test_defaults_and_overrides():
    config = load_config(None, {"seed": 5, "beta": None})
    assert config.seed == 5
    assert config.beta is None
    assert config.family == "linear"


def test_file_then_overrides():
    with tempfile.TemporaryDirectory() as temp_dir:
        path = write_config(temp_dir, {"schema_version": 1, "N": 8.0, "seed": 1,
                                       "xi": [0.0, 1.5]})
        config = load_config(path, {"seed": 9})
    assert config.N == 8
    assert isinstance(config.N, int)
    assert config.seed == 9
    assert config.xi == [0.0, 1.5]


@pytest.mark.parametrize("payload, match", [
    ('{"schema_version": 1,', "Malformed config"),
    ("[1, 2]", "JSON object"),
    ({"N": 4}, "schema_version"),
    ({"schema_version": 2}, "schema_version"),
    ({"schema_version": 1, "colour": "red"}, "Unknown config field"),
    ({"schema_version": 1, "N": 4.5}, "must be an integer"),
    ({"schema_version": 1, "seed": "zero"}, "must be a number"),
    ({"schema_version": 1, "family": 3}, "must be a string"),
    ({"schema_version": 1, "xi": 0.5}, "must be a list"),
])
def test_invalid_configs(payload, match):
    with tempfile.TemporaryDirectory() as temp_dir:
        path = write_config(temp_dir, payload)
        with pytest.raises(ConfigError, match=match):
            load_config(path)


def test_missing_config_file():
    with pytest.raises(ConfigError, match="Cannot read config"):
        load_config(Path("/nonexistent/lpplab/config.json"))


def test_to_json_is_sorted_and_compact():
    text = RunConfig(seed=3).to_json()
    assert text.startswith('{"N":null,"N_list":[64,128,256,512]')
    assert json.loads(text)["seed"] == 3
    assert "workers" in json.loads(text)


def test_to_json_leaves_out_execution_fields():
    data = json.loads(RunConfig(workers=4).to_json(exclude=EXECUTION_FIELDS))
    assert "workers" not in data
    assert data["seed"] == 0


def test_max_cells(monkeypatch):
    monkeypatch.delenv("LPPLAB_MAX_CELLS", raising=False)
    assert max_cells() == DEFAULT_MAX_CELLS
    monkeypatch.setenv("LPPLAB_MAX_CELLS", "1000")
    assert max_cells() == 1000
    monkeypatch.setenv("LPPLAB_MAX_CELLS", "0")
    with pytest.raises(ConfigError, match="positive"):
        max_cells()
