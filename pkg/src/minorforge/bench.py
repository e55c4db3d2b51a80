"""Experiment harness: sweeps over generated graphs, JSONL persistence,
CSV summaries, and a dependency-free SVG scatter of certified minor size
against sqrt(n*d).

Workers run independent (graph, seed) cells; results are written by the
parent in submission order, so output bytes are independent of the worker
count (runtime_ms aside, which the determinism hash excludes).
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .builder import BuilderConfig, baseline_random_contraction, build_minor, derive_parameters
from .certify import theoretical_bounds, verify_certificate, verify_certificate_edgewise
from .errors import InputError, InvariantViolation, MinorForgeError
from .expansion import SearchBudget, check_vertex_expansion
from .generators import generate
from .graph import min_degree

THREADS_ENV = "MINORFORGE_THREADS"


@dataclass
class ExperimentRecord:
    generator: dict
    seed: int
    config: dict
    certified_k: int
    baseline_k: int
    runtime_ms: int
    bounds: dict
    verdicts: dict

    def to_row(self) -> dict:
        return {
            "generator": self.generator,
            "seed": self.seed,
            "config": self.config,
            "certified_k": self.certified_k,
            "baseline_k": self.baseline_k,
            "runtime_ms": self.runtime_ms,
            "bounds": self.bounds,
            "verdicts": self.verdicts,
        }

    @classmethod
    def from_row(cls, row: dict) -> "ExperimentRecord":
        return cls(**row)


def _run_cell(job: tuple[dict, int, dict]) -> dict:
    gen_spec, seed, config_overrides = job
    try:
        params = dict(gen_spec)
        name = params.get("name")
        if name in ("gnp", "random_regular") and "seed" not in params:
            params["seed"] = seed
        g = generate(params)
        cfg = BuilderConfig(**{**config_overrides, "seed": seed})
        t0 = time.perf_counter()
        cert = build_minor(g, cfg)
        runtime_ms = int((time.perf_counter() - t0) * 1000)
        rep1 = verify_certificate(g, cert)
        rep2 = verify_certificate_edgewise(g, cert)
        if not (rep1.valid and rep2.valid):
            raise InvariantViolation("sweep certificate failed re-verification")
        d = max(1, min_degree(g))
        try:
            k0, _, _ = derive_parameters(g.n, d, cfg)
            k0 = min(k0, g.n)
        except MinorForgeError:
            k0 = min(3, g.n)
        baseline = baseline_random_contraction(g, k0, seed)
        quick = SearchBudget(ls_seeds=8, power_iters=30, seed=seed)
        vexp = check_vertex_expansion(g, cfg.eps, quick)
        record = ExperimentRecord(
            generator=dict(gen_spec),
            seed=seed,
            config=cfg.to_json_dict(),
            certified_k=cert.k,
            baseline_k=baseline.k,
            runtime_ms=runtime_ms,
            bounds=theoretical_bounds(g.n, d, cfg.t, 0.5, cfg.log_base),
            verdicts={
                "vertex_expansion": {
                    "passed": vexp.passed,
                    "exactness": vexp.exactness,
                    "checked_subsets": vexp.checked_subsets,
                }
            },
        )
        return record.to_row()
    except MinorForgeError as exc:
        return {"generator": dict(gen_spec), "seed": seed, "error": str(exc)}


def expand_sweep(sweep: dict) -> list[tuple[dict, int, dict]]:
    """Expand a sweep description into (generator, seed, config) jobs.

    Either an explicit ``cells`` list of generator dicts, or a ``product``
    entry whose list-valued parameters are crossed.
    """
    seeds = sweep.get("seeds", [0])
    config = sweep.get("config", {})
    cells: list[dict] = []
    if "cells" in sweep:
        cells = [dict(c) for c in sweep["cells"]]
    elif "product" in sweep:
        base = dict(sweep["product"])
        lists = {k: v for k, v in base.items() if isinstance(v, list)}
        fixed = {k: v for k, v in base.items() if not isinstance(v, list)}
        cells = [dict(fixed)]
        for key, values in lists.items():
            cells = [{**c, key: v} for c in cells for v in values]
    else:
        raise InputError("sweep needs a 'cells' list or a 'product' entry")
    if not cells:
        raise InputError("sweep expanded to zero cells")
    return [(cell, seed, config) for cell in cells for seed in seeds]


def run_sweep(
    sweep: dict,
    out_path: str | None = None,
    csv_path: str | None = None,
    svg_path: str | None = None,
    max_workers: int | None = None,
) -> list[dict]:
    """Run every (cell, seed) job, append rows to JSONL, emit summaries.

    Per-row failures are recorded and do not stop the sweep.
    """
    jobs = expand_sweep(sweep)
    if max_workers is None:
        max_workers = int(os.environ.get(THREADS_ENV, "1"))
    if max_workers > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            rows = list(pool.map(_run_cell, jobs))
    else:
        rows = [_run_cell(job) for job in jobs]
    if out_path:
        with open(out_path, "a", encoding="utf-8") as f:
            for row in rows:
                f.write(json.dumps(row, sort_keys=True) + "\n")
    if csv_path:
        write_summary_csv(summarize(rows), csv_path)
    if svg_path:
        write_scatter_svg(rows, svg_path)
    return rows


def _row_nd(row: dict) -> tuple[int, int] | None:
    gen = row.get("generator", {})
    n, d = gen.get("n"), gen.get("d")
    if isinstance(n, int) and isinstance(d, int):
        return n, d
    return None


def summarize(rows: list[dict]) -> list[dict]:
    """Group successful (n, d) rows and average certified k per cell."""
    groups: dict[tuple[int, int], list[int]] = {}
    for row in rows:
        if "error" in row:
            continue
        nd = _row_nd(row)
        if nd is None:
            continue
        groups.setdefault(nd, []).append(row["certified_k"])
    out = []
    for (n, d) in sorted(groups):
        ks = groups[(n, d)]
        out.append(
            {
                "n": n,
                "d": d,
                "mean_k": sum(ks) / len(ks),
                "sqrt_nd": math.sqrt(n * d),
            }
        )
    return out


def write_summary_csv(summary: list[dict], path: str) -> None:
    import csv

    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=["n", "d", "mean_k", "sqrt_nd"])
        writer.writeheader()
        for row in summary:
            writer.writerow(row)


def write_scatter_svg(rows: list[dict], path: str) -> None:
    """Log-log scatter of certified_k against sqrt(n*d), 800x600, no deps."""
    points = []
    for row in rows:
        if "error" in row:
            continue
        nd = _row_nd(row)
        if nd is None or row["certified_k"] < 1:
            continue
        points.append((math.sqrt(nd[0] * nd[1]), row["certified_k"]))
    width, height, margin = 800, 600, 60
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="black"/>',
        f'<text x="{width // 2}" y="{height - 15}" text-anchor="middle" '
        f'font-size="14">sqrt(n*d), log scale</text>',
        f'<text x="18" y="{height // 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 18 {height // 2})">certified k, log scale</text>',
    ]
    if points:
        xs = [math.log10(x) for x, _ in points]
        ys = [math.log10(max(1, y)) for _, y in points]
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = min(ys), max(ys)
        x_span = (x_hi - x_lo) or 1.0
        y_span = (y_hi - y_lo) or 1.0

        def sx(x):
            return margin + (x - x_lo) / x_span * (width - 2 * margin)

        def sy(y):
            return height - margin - (y - y_lo) / y_span * (height - 2 * margin)

        for (x, y), lx, ly in zip(points, xs, ys):
            parts.append(
                f'<circle cx="{sx(lx):.1f}" cy="{sy(ly):.1f}" r="4" '
                f'fill="steelblue" fill-opacity="0.7"><title>'
                f"sqrt(nd)={x:.1f}, k={y}</title></circle>"
            )
        for lx, label in ((x_lo, f"{10 ** x_lo:.0f}"), (x_hi, f"{10 ** x_hi:.0f}")):
            parts.append(
                f'<text x="{sx(lx):.1f}" y="{height - margin + 20}" '
                f'text-anchor="middle" font-size="12">{label}</text>'
            )
        for ly, label in ((y_lo, f"{10 ** y_lo:.0f}"), (y_hi, f"{10 ** y_hi:.0f}")):
            parts.append(
                f'<text x="{margin - 8}" y="{sy(ly):.1f}" text-anchor="end" '
                f'font-size="12">{label}</text>'
            )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(parts) + "\n")


def determinism_hash(rows: list[dict]) -> str:
    """SHA-256 over the rows with the runtime_ms field removed."""
    canon = []
    for row in rows:
        row = dict(row)
        row.pop("runtime_ms", None)
        canon.append(json.dumps(row, sort_keys=True))
    return hashlib.sha256("\n".join(canon).encode("utf-8")).hexdigest()
