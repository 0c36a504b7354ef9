import logging
import time
from contextlib import contextmanager

from lpplab.params import ParamSeq

# Acceptance-scale settings
GUMBEL_N = [64, 512]
GUMBEL_SAMPLES = 10_000
GUMBEL_SEEDS = [1, 2, 3]

EXPONENT_N = [64, 128, 256, 512]
EXPONENT_SAMPLES = 2000
EXPONENT_CASES = [
    ("power(1)", ParamSeq.power(1.0), 0.0),
    ("power(0.1)", ParamSeq.power(0.1), 2 * (1 / 3 - 0.1)),
    ("constant(1/2)", ParamSeq.constant(0.5), 2 / 3),
]

TRIVIALITY_N = [128, 256, 512]
TRIVIALITY_SAMPLES = 4000

WORKERS = None


@contextmanager
def timed(label: str):
    """Log the wall time of the enclosed block."""
    start = time.time()
    yield
    logging.info(f"{label}: {time.time() - start:.2f} s")


def log_table(title: str, header: list[str], rows: list[list]):
    logging.info(f"\n=== {title} ===")
    logging.info("  ".join(f"{h:>12}" for h in header))
    for row in rows:
        logging.info("  ".join(f"{v:>12.6g}" if isinstance(v, float) else f"{v!s:>12}"
                               for v in row))
