"""
Monte Carlo batches over counter-based substreams.

Sample s of a run always comes from substream (seed, s), so the emitted
vector depends only on (config, statistic) and never on the worker count.
"""
import csv
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from lpplab.errors import DomainError
from lpplab.lpp.dp import antidiagonal_process, last_passage
from lpplab.lpp.model import SimConfig, Statistic

logger = logging.getLogger(__name__)

CHUNKS_PER_WORKER = 4


def sample_statistic(config: SimConfig, statistic: Statistic, index: int) -> np.ndarray:
    """The statistic of substream `index` as a 1-d array."""
    if statistic is Statistic.GMN:
        return np.array([last_passage(config, substream_index=index).g])
    values = antidiagonal_process(config.seq, config.N, config.seed, index)
    return np.array([value for _, value in values])


def _run_chunk(job: tuple[SimConfig, Statistic, int, int]) -> np.ndarray:
    config, statistic, start, stop = job
    return np.vstack([sample_statistic(config, statistic, s) for s in range(start, stop)])


def monte_carlo(config: SimConfig, statistic: Statistic = Statistic.GMN,
                workers: int | None = None) -> np.ndarray:
    """
    `config.samples` independent realizations, ordered by substream index.

    Returns shape (samples,) for GMN and (samples, 2N-1) for ANTIDIAGONAL,
    column c holding k = c - (N-1).
    """
    if statistic is Statistic.ANTIDIAGONAL and config.N is None:
        raise DomainError("Anti-diagonal statistic needs SimConfig.N")
    workers = workers or os.cpu_count() or 1
    size = max(1, math.ceil(config.samples / (workers * CHUNKS_PER_WORKER)))
    jobs = [(config, statistic, start, min(start + size, config.samples))
            for start in range(0, config.samples, size)]
    logger.info("Monte Carlo %s: %d samples of %s in %d chunks on %d workers",
                statistic.value, config.samples, config.seq, len(jobs), workers)

    if workers == 1:
        blocks = [_run_chunk(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            blocks = list(executor.map(_run_chunk, jobs))
    result = np.vstack(blocks)
    return result[:, 0] if statistic is Statistic.GMN else result


def write_samples_csv(path: Path, config: SimConfig, statistic: Statistic,
                      samples: np.ndarray, header: str | None = None):
    """
    Raw samples, one row per (substream[, k]), under `#` header lines that
    echo the resolved config.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        if header is not None:
            f.write(f"# config: {header}\n")
        f.write(f"# sim: {json.dumps(config.to_dict(), sort_keys=True)}\n")
        writer = csv.writer(f)
        if statistic is Statistic.GMN:
            f.write("# seed,substream,value\n")
            for index, value in enumerate(samples):
                writer.writerow([config.seed, index, repr(float(value))])
        else:
            f.write("# seed,substream,k,value\n")
            for index, row in enumerate(samples):
                for c, value in enumerate(row):
                    writer.writerow([config.seed, index, c - (config.N - 1), repr(float(value))])
