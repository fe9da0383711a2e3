"""Randomized benchmark comparing the two synthesis algorithms.

For each (don't-care fraction, trial) cell a random ternary sequence is
generated, both algorithms run end to end with verification, and gate
counts plus the reduction percentage (G1-G2)/G1*100 are reported.  All
randomness derives from the master seed, so reports are byte-identical
across runs; wall time is logged to stderr only.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import io
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .pipeline import synthesize
from .permutation import parse_perm_spec
from .sequence import TernarySequence

DEFAULT_FRACTIONS = (0.0, 0.25, 0.5, 0.9, 0.99)


@dataclass(frozen=True)
class BenchConfig:
    n: int = 4096
    fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    p: int | str = 2
    trials: int = 5
    seed: int = 1
    perm: str = "lfsr"
    fill: str = "balance"

    def __post_init__(self):
        if self.n < 8:
            raise ValueError("benchmark sequences must have n >= 8")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        fr = tuple(self.fractions)
        if list(fr) != sorted(set(fr)) or any(not (0.0 <= f <= 1.0) for f in fr):
            raise ValueError("fractions must be distinct, ascending, within [0, 1]")
        if self.p != "sweep" and (not isinstance(self.p, int) or self.p < 1):
            raise ValueError("p must be a positive integer or 'sweep'")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "fractions": list(self.fractions),
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "perm": self.perm,
            "fill": self.fill,
        }

    def config_hash(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(canon.encode()).hexdigest()[:16]

    @classmethod
    def from_mapping(cls, data: dict) -> "BenchConfig":
        kwargs = {}
        for key in ("n", "trials", "seed"):
            if key in data:
                kwargs[key] = int(data[key])
        if "fractions" in data:
            raw = data["fractions"]
            if isinstance(raw, str):
                raw = raw.split(",")
            kwargs["fractions"] = tuple(float(f) for f in raw)
        if "p" in data:
            raw = data["p"]
            kwargs["p"] = raw if raw == "sweep" else int(raw)
        for key in ("perm", "fill"):
            if key in data:
                kwargs[key] = str(data[key])
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> "BenchConfig":
        text = Path(path).read_text(encoding="utf-8")
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls.from_mapping(json.loads(text))
        data = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line {line!r}; expected key = value")
            key, value = line.split("=", 1)
            data[key.strip()] = value.strip()
        return cls.from_mapping(data)


@dataclass(frozen=True)
class BenchRow:
    fraction: float
    trial: int
    g_baseline: Optional[int]
    g_presented: Optional[int]
    reduction_pct: Optional[float]
    stages_baseline: Optional[int] = None
    stages_presented: Optional[int] = None
    error: Optional[str] = None


@dataclass(frozen=True)
class BenchReport:
    config: BenchConfig
    rows: tuple[BenchRow, ...]
    aggregates: tuple[dict, ...]
    environment: dict = field(default_factory=dict)

    @property
    def all_failed(self) -> bool:
        return all(row.error is not None for row in self.rows)


def random_ternary(n: int, fraction: float, rng: random.Random) -> TernarySequence:
    """Fair random specified bits; don't-care positions sampled without
    replacement so the realized fraction is within 1/n of the request."""
    bits: list[Optional[int]] = [rng.randint(0, 1) for _ in range(n)]
    n_dc = round(fraction * n)
    for pos in rng.sample(range(n), n_dc):
        bits[pos] = None
    return TernarySequence(tuple(bits))


def _cell_seed(master: int, fraction_index: int, trial: int) -> int:
    key = f"{master}:{fraction_index}:{trial}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def _run_cell(payload: dict) -> dict:
    cfg = BenchConfig.from_mapping(payload["config"])
    fi = payload["fraction_index"]
    trial = payload["trial"]
    fraction = cfg.fractions[fi]
    rng = random.Random(_cell_seed(cfg.seed, fi, trial))
    a = random_ternary(cfg.n, fraction, rng)
    perm = parse_perm_spec(cfg.perm)
    started = time.perf_counter()
    try:
        if cfg.p == "sweep":
            from .pipeline import sweep_parallelization

            base = sweep_parallelization(a, algorithm="baseline", fill=cfg.fill).best()
            pres = sweep_parallelization(a, perm=perm, algorithm="presented").best()
            if base is None or pres is None:
                raise RuntimeError("sweep produced no valid rows")
            g1, k1 = base.gate_count, base.stages
            g2, k2 = pres.gate_count, pres.stages
        else:
            rb = synthesize(a, cfg.p, algorithm="baseline", fill=cfg.fill,
                            fill_seed=_cell_seed(cfg.seed, fi, trial) ^ 0xF1)
            rp = synthesize(a, cfg.p, algorithm="presented", perm=perm)
            if not rb.verified:
                raise RuntimeError(f"baseline verification mismatch at {rb.mismatch}")
            if not rp.verified:
                raise RuntimeError(f"presented verification mismatch at {rp.mismatch}")
            g1, k1 = rb.gate_count, rb.stages
            g2, k2 = rp.gate_count, rp.stages
        reduction = 100.0 * (g1 - g2) / g1 if g1 else 0.0
        row = {
            "fraction": fraction, "trial": trial,
            "g_baseline": g1, "g_presented": g2,
            "reduction_pct": reduction,
            "stages_baseline": k1, "stages_presented": k2,
            "error": None,
        }
    except Exception as exc:
        row = {
            "fraction": fraction, "trial": trial,
            "g_baseline": None, "g_presented": None, "reduction_pct": None,
            "stages_baseline": None, "stages_presented": None,
            "error": f"{type(exc).__name__}: {exc}",
        }
    row["_seconds"] = time.perf_counter() - started
    return row


def run_bench(cfg: BenchConfig, jobs: int = 1, log=None) -> BenchReport:
    """Run every (fraction, trial) cell and assemble the report.

    Cells are independent; with jobs > 1 they run in worker processes and
    are merged in key order, so the report does not depend on scheduling.
    """
    log = log if log is not None else sys.stderr
    payloads = [
        {"config": cfg.to_dict(), "fraction_index": fi, "trial": trial}
        for fi in range(len(cfg.fractions))
        for trial in range(cfg.trials)
    ]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = list(pool.map(_run_cell, payloads))
    else:
        raw = []
        for payload in payloads:
            row = _run_cell(payload)
            print(
                f"bench fraction={row['fraction']} trial={row['trial']}"
                f" g1={row['g_baseline']} g2={row['g_presented']}"
                f" [{row['_seconds']:.1f}s]",
                file=log, flush=True,
            )
            raw.append(row)
    raw.sort(key=lambda row: (row["fraction"], row["trial"]))
    rows = tuple(
        BenchRow(**{k: v for k, v in row.items() if not k.startswith("_")})
        for row in raw
    )
    aggregates = []
    for fraction in cfg.fractions:
        cell = [row for row in rows if row.fraction == fraction and row.error is None]
        if cell:
            aggregates.append({
                "fraction": fraction,
                "mean_g_baseline": sum(r.g_baseline for r in cell) / len(cell),
                "mean_g_presented": sum(r.g_presented for r in cell) / len(cell),
                "mean_reduction_pct": sum(r.reduction_pct for r in cell) / len(cell),
                "trials_ok": len(cell),
            })
        else:
            aggregates.append({"fraction": fraction, "trials_ok": 0})
    environment = {
        "package_version": __version__,
        "python_version": ".".join(str(x) for x in sys.version_info[:3]),
        "sequence_model": "specified bits fair i.i.d.; don't-care positions "
                          "uniform without replacement",
    }
    return BenchReport(config=cfg, rows=rows, aggregates=tuple(aggregates),
                       environment=environment)


def report_to_csv(report: BenchReport) -> str:
    """Table-1-style CSV: fraction, G1, G2, reduction, plus aggregates."""
    out = io.StringIO()
    out.write(f"# seed={report.config.seed} config_hash={report.config.config_hash()}\n")
    out.write("fraction,trial,g_baseline,g_presented,reduction_pct,error\n")

    def fmt(x):
        if x is None:
            return ""
        if isinstance(x, float):
            return f"{x:.4f}"
        return str(x)

    for row in report.rows:
        out.write(
            f"{fmt(row.fraction)},{row.trial},{fmt(row.g_baseline)},"
            f"{fmt(row.g_presented)},{fmt(row.reduction_pct)},"
            f"{row.error or ''}\n"
        )
    for agg in report.aggregates:
        if agg.get("trials_ok"):
            out.write(
                f"{fmt(agg['fraction'])},mean,{fmt(agg['mean_g_baseline'])},"
                f"{fmt(agg['mean_g_presented'])},{fmt(agg['mean_reduction_pct'])},\n"
            )
        else:
            out.write(f"{fmt(agg['fraction'])},mean,,,,all trials failed\n")
    return out.getvalue()


def report_to_json(report: BenchReport) -> str:
    doc = {
        "config": report.config.to_dict(),
        "config_hash": report.config.config_hash(),
        "seed": report.config.seed,
        "rows": [
            {
                "fraction": row.fraction, "trial": row.trial,
                "g_baseline": row.g_baseline, "g_presented": row.g_presented,
                "reduction_pct": row.reduction_pct,
                "stages_baseline": row.stages_baseline,
                "stages_presented": row.stages_presented,
                "error": row.error,
            }
            for row in report.rows
        ],
        "aggregates": list(report.aggregates),
        "environment": report.environment,
    }
    return json.dumps(doc, sort_keys=True, indent=1)
