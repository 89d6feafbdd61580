"""
Cross-validation harness: random instances, method vs reference solver, counterexample capture
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from .cone import dualize
from .io_service import (
    CounterexampleRecord,
    oracle_to_json,
    outcome_to_json,
    problem_of,
    save_counterexample,
)
from .lpp_service import LppOutcome, LppStatus, lpp_solve
from .oracle_service import OracleOutcome, OracleStatus, simplex_solve, verify_solution

logger = logging.getLogger(__name__)

DIVERGENCES = ("agree", "value-mismatch", "status-mismatch", "method-fail", "cap-overrun")
BUDGET_FLAGS = ("cell-read-budget-exceeded", "update-budget-exceeded")


def classify(method: LppOutcome, oracle: OracleOutcome) -> str:
    """Compare the method's outcome with the reference solver's"""
    if method.kind is LppStatus.METHOD_FAIL:
        if any(flag.endswith("cap-overrun") for flag in method.flags):
            return "cap-overrun"
        return "status-mismatch" if oracle.status is OracleStatus.OPTIMAL else "method-fail"
    if method.has_value:
        if oracle.status is not OracleStatus.OPTIMAL:
            return "status-mismatch"
        return "agree" if method.z == oracle.z else "value-mismatch"
    if method.kind is LppStatus.UNBOUNDED:
        return "agree" if oracle.status is OracleStatus.UNBOUNDED else "status-mismatch"
    # NoMaximum
    if oracle.status in (OracleStatus.INFEASIBLE, OracleStatus.UNBOUNDED):
        return "agree"
    return "status-mismatch"


def certificate_ok(A, b, c, method: LppOutcome) -> Optional[bool]:
    """Exact check of the reported point; None when there is nothing to check"""
    if method.kind is LppStatus.POSITIVE_MAX:
        return verify_solution(A, b, c, method.x, method.z)
    if method.kind is LppStatus.NEGATIVE_MAX:
        At, b_dual, c_dual = dualize(A, b, c)
        return verify_solution(At, b_dual, c_dual, method.dual_y, -method.z)
    return None


def generate_instance(rng: np.random.Generator, m_max: int, n_max: int, entry_range: int):
    m = int(rng.integers(1, m_max + 1))
    n = int(rng.integers(1, n_max + 1))

    def draw(*shape):
        return rng.integers(-entry_range, entry_range + 1, size=shape).tolist()

    A = [[Fraction(v) for v in row] for row in draw(m, n)]
    b = [Fraction(v) for v in draw(m)]
    c = [Fraction(v) for v in draw(n)]
    return A, b, c


def _max_counter(method: LppOutcome, key: str) -> int:
    values = [0]
    for run in (method.primal, method.dual):
        if run is not None:
            values += [r.counters.get(key, 0) for r in run.trace]
    return max(values)


def _budget_breaches(method: LppOutcome) -> int:
    runs = [run for run in (method.primal, method.dual) if run is not None]
    return sum(1 for run in runs for r in run.trace for flag in r.flags if flag in BUDGET_FLAGS)


def run_instance(index: int, A, b, c) -> Dict[str, Any]:
    """Solve one instance both ways; the row is JSON-ready"""
    method = lpp_solve(A, b, c)
    oracle = simplex_solve(A, b, c)
    divergence = classify(method, oracle)
    return {
        "index": index,
        "m": len(A),
        "n": len(c),
        "method_status": method.kind.value,
        "oracle_status": oracle.status.value,
        "method_z": None if method.z is None else str(method.z),
        "oracle_z": None if oracle.z is None else str(oracle.z),
        "divergence": divergence,
        "primal_steps": method.primal.steps,
        "dual_steps": 0 if method.dual is None else method.dual.steps,
        "max_cells_read": _max_counter(method, "cells_read"),
        "max_update_mults": _max_counter(method, "update_mults"),
        "budget_breaches": _budget_breaches(method),
        "step_bound_ok": method.primal.steps <= len(c) and (method.dual is None or method.dual.steps <= len(A)),
        "certificate_ok": certificate_ok(A, b, c, method),
        "method_outcome": outcome_to_json(method),
        "oracle_outcome": oracle_to_json(oracle),
    }


def _run_packed(job: Tuple[int, Any, Any, Any]) -> Dict[str, Any]:
    return run_instance(*job)


def summarize(rows: List[Dict[str, Any]]) -> Dict[str, Any]:
    """Tallies and per-dimension tables of a campaign"""
    df = pd.DataFrame(rows, columns=["index", "m", "n", "divergence", "primal_steps", "dual_steps",
                                     "max_cells_read", "max_update_mults", "budget_breaches",
                                     "certificate_ok", "step_bound_ok"])
    tallies = {d: int((df["divergence"] == d).sum()) for d in DIVERGENCES}
    if df.empty:
        return {"tallies": tallies, "by_dimension": [], "max_steps_by_n": {}, "max_cells_read": 0,
                "max_update_mults": 0, "certificate_failures": [], "step_bound_failures": [],
                "budget_breaches": []}
    by_dim = (pd.crosstab([df["m"], df["n"]], df["divergence"])
              .reindex(columns=list(DIVERGENCES), fill_value=0)
              .reset_index())
    steps = df.assign(steps=df[["primal_steps", "dual_steps"]].max(axis=1)).groupby("n")["steps"].max()
    return {
        "tallies": tallies,
        "by_dimension": [{k: int(v) for k, v in rec.items()} for rec in by_dim.to_dict(orient="records")],
        "max_steps_by_n": {int(k): int(v) for k, v in steps.items()},
        "max_cells_read": int(df["max_cells_read"].max()),
        "max_update_mults": int(df["max_update_mults"].max()),
        "certificate_failures": [int(i) for i in df.loc[df["certificate_ok"].map(lambda ok: ok is False), "index"]],
        "step_bound_failures": [int(i) for i in df.loc[~df["step_bound_ok"].astype(bool), "index"]],
        "budget_breaches": [int(i) for i in df.loc[df["budget_breaches"] > 0, "index"]],
    }


def fuzz_run(m_max: int, n_max: int, count: int, seed: int, entry_range: int,
             out_dir: Optional[Path] = None, workers: int = 1,
             extra: Optional[List[Tuple[Any, Any, Any]]] = None) -> Dict[str, Any]:
    """
    Random campaign of `count` instances, deterministic under `seed`.

    Instances are drawn up front; results are folded in index order whatever
    the worker count. `extra` instances are appended after the random ones.
    """
    if min(m_max, n_max, count, entry_range) < 1 or workers < 1:
        raise ValueError("fuzz parameters must be positive")
    rng = np.random.default_rng(seed)
    jobs = [(k, *generate_instance(rng, m_max, n_max, entry_range)) for k in range(count)]
    for A, b, c in extra or []:
        jobs.append((len(jobs), A, b, c))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_packed, jobs, chunksize=8))
    else:
        rows = [_run_packed(job) for job in jobs]

    records = []
    for (index, A, b, c), row in zip(jobs, rows):
        if row["divergence"] == "agree" and row["certificate_ok"] is not False:
            continue
        logger.info("instance %d diverged: %s", index, row["divergence"])
        if out_dir is not None:
            record = CounterexampleRecord(
                problem=problem_of(A, b, c, name=f"fuzz-{seed}-{index}"),
                method_outcome=row["method_outcome"],
                oracle_outcome=row["oracle_outcome"],
                divergence=row["divergence"],
                seed=seed,
                index=index,
            )
            records.append(str(save_counterexample(record, Path(out_dir) / f"counterexample_{seed}_{index:05d}.json")))

    report = {
        "params": {"m_max": m_max, "n_max": n_max, "count": count, "seed": seed,
                   "entry_range": entry_range, "workers": workers},
        **summarize(rows),
        "records": records,
        "instances": [{k: v for k, v in row.items() if k not in ("method_outcome", "oracle_outcome")}
                      for row in rows],
    }
    return report


def replay_record(record: CounterexampleRecord) -> Dict[str, Any]:
    """Re-solve a stored record; `reproduced` is true when both outcomes match bit-exactly"""
    A, b, c = record.problem.data()
    method = lpp_solve(A, b, c)
    oracle = simplex_solve(A, b, c)
    method_json, oracle_json = outcome_to_json(method), oracle_to_json(oracle)
    divergence = classify(method, oracle)
    return {
        "divergence": divergence,
        "reproduced": (method_json == record.method_outcome and oracle_json == record.oracle_outcome
                       and divergence == record.divergence),
        "method_outcome": method_json,
        "oracle_outcome": oracle_json,
    }
