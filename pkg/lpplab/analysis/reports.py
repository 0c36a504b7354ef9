import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)


def write_json_report(path: str | Path, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True, default=float)
        f.write("\n")
    logger.info(f"Wrote report {path}")
    return path
