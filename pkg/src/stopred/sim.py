"""Monte-Carlo frame error rates on the binary erasure channel."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .codes import LinearCode
from .decoders import (
    ReceivedWord,
    agd_a_schedule,
    agd_b_schedule,
    agd_decode,
    iterative_decode,
    ml_decode,
)
from .gf2 import BitMatrix
from .patterns import ErasurePattern

DECODERS = ("iterative", "agd_a", "agd_b", "ml")
Z95 = 1.959963984540054
MIN_FAILURES = 10


def sample_bec(n: int, er: float, rng: np.random.Generator) -> ErasurePattern:
    """Erase each of ``n`` coordinates independently with probability ``er``."""
    if not 0 < er < 1:
        raise ValueError("erasure rate must lie strictly between 0 and 1")
    return ErasurePattern(n, tuple(np.flatnonzero(rng.random(n) < er).tolist()))


@dataclass
class SimConfig:
    H: BitMatrix
    decoder: str
    er_grid: Sequence[float]
    trials: int
    seed: int = 0
    code: LinearCode | None = None
    memoryless: bool = False
    name: str = "H"

    def __post_init__(self) -> None:
        if self.decoder not in DECODERS:
            raise ValueError(f"decoder must be one of {DECODERS}")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not self.er_grid or any(not 0 < er < 1 for er in self.er_grid):
            raise ValueError("every erasure rate must lie strictly between 0 and 1")
        if self.code is None:
            self.code = LinearCode.from_parity(self.H)
        elif self.code.n != self.H.ncols:
            raise ValueError("code length does not match matrix width")
        if any(self.code.generator.syndrome(h) for h in self.H.rows):
            raise ValueError("matrix rows must be dual codewords of the code")


@dataclass
class SimRecord:
    er: float
    trials: int
    failures: int
    fer: float
    ci: float
    mean_perms: float
    mean_iters: float
    low_failures: bool = field(default=False)

    @classmethod
    def from_counts(cls, er, trials, failures, perms, iters) -> SimRecord:
        fer = failures / trials
        ci = Z95 * math.sqrt(fer * (1 - fer) / trials)
        return cls(er, trials, failures, fer, ci, perms / trials, iters / trials, failures < MIN_FAILURES)


def _decode(cfg: SimConfig, y: ReceivedWord, sched_rng: np.random.Generator):
    if cfg.decoder == "iterative":
        return iterative_decode(cfg.H, y)
    if cfg.decoder == "ml":
        return ml_decode(cfg.H, y)
    seed = int(sched_rng.integers(2**32))
    ext = cfg.code.extended
    sched = (agd_a_schedule if cfg.decoder == "agd_a" else agd_b_schedule)(cfg.code.n, ext, seed)
    return agd_decode(cfg.code, cfg.H, sched, y, memoryless=cfg.memoryless)


def simulate(cfg: SimConfig) -> list[SimRecord]:
    """One record per grid point, transmitting the all-zero codeword.

    Each grid point draws erasures and schedule seeds from its own child of
    the master seed, so decoders run with the same master seed see the same
    erasure patterns.
    """
    n = cfg.H.ncols
    records = []
    for er, child in zip(cfg.er_grid, np.random.SeedSequence(cfg.seed).spawn(len(cfg.er_grid))):
        pat_seq, sched_seq = child.spawn(2)
        rng = np.random.default_rng(pat_seq)
        srng = np.random.default_rng(sched_seq)
        failures = perms = iters = 0
        for _ in range(cfg.trials):
            E = sample_bec(n, er, rng)
            out = _decode(cfg, ReceivedWord(n, 0, E.mask), srng)
            if out.recovered:
                if out.codeword.bits:
                    raise AssertionError("all-zero transmission decoded to a nonzero word")
            else:
                failures += 1
            perms += out.perms_tried
            iters += out.iterations
        records.append(SimRecord.from_counts(er, cfg.trials, failures, perms, iters))
    return records


CSV_FIELDS = ["er", "trials", "failures", "fer", "ci", "mean_perms", "mean_iters"]


def format_csv(records: Sequence[SimRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(asdict(r))
    return buf.getvalue()


def format_gnuplot(records: Sequence[SimRecord], title: str = "") -> str:
    lines = [f"# {title}" if title else "#", "# er fer ci"]
    lines += [f"{r.er:.6g} {r.fer:.6g} {r.ci:.6g}" for r in records]
    return "\n".join(lines) + "\n"


def parse_config(text: str) -> dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"expected key=value, got {raw!r}")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out
