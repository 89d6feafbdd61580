"""
Problem files, outcome/trace serialization and counterexample records
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_serializer, field_validator, model_validator

from .bounds import BoundFunction, CostPartition, LinearForm
from .cone import Tableau, TableauError, make_tableau
from .exact_core import format_rational, parse_rational
from .lpp_service import LppOutcome
from .oracle_service import OracleOutcome
from .pmrp_service import PmrpOutcome, StepRecord
from .selector import SelectionResult


class ProblemFileError(ValueError):
    """Unreadable or inconsistent problem file"""


def _rationals(values, what: str) -> List[Fraction]:
    if not isinstance(values, (list, tuple)):
        raise ValueError(f"{what} must be a list")
    try:
        return [parse_rational(v) for v in values]
    except (ValueError, TypeError) as e:
        raise ValueError(f"{what}: {e}")


class ProblemFile(BaseModel):
    """max objective.x  s.t.  A x <= b, x >= 0; scalars are "p/q" strings or integers"""
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True, frozen=True)

    name: Optional[str] = None
    objective: List[Fraction] = Field(..., min_length=1)
    A: List[List[Fraction]]
    b: List[Fraction]
    sense: Literal["max"] = "max"

    @field_validator("objective", "b", mode="before")
    @classmethod
    def _parse_vector(cls, values, info):
        return _rationals(values, info.field_name)

    @field_validator("A", mode="before")
    @classmethod
    def _parse_matrix(cls, rows):
        if not isinstance(rows, (list, tuple)):
            raise ValueError("A must be a list of rows")
        return [_rationals(row, f"A row {i + 1}") for i, row in enumerate(rows)]

    @model_validator(mode="after")
    def _check_dimensions(self):
        n = len(self.objective)
        for i, row in enumerate(self.A):
            if len(row) != n:
                raise ValueError(f"dimension mismatch: A row {i + 1} has {len(row)} entries, objective has {n}")
        if len(self.b) != len(self.A):
            raise ValueError(f"dimension mismatch: A has {len(self.A)} rows, b has {len(self.b)} entries")
        return self

    @field_serializer("objective", "b")
    def _dump_vector(self, values):
        return [format_rational(v) for v in values]

    @field_serializer("A")
    def _dump_matrix(self, rows):
        return [[format_rational(v) for v in row] for row in rows]

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.objective)

    def data(self):
        """(A, b, c) as tuples of Fractions"""
        return [tuple(row) for row in self.A], tuple(self.b), tuple(self.objective)


def _reject_duplicates(pairs):
    keys = [k for k, _ in pairs]
    duplicates = sorted({k for k in keys if keys.count(k) > 1})
    if duplicates:
        raise ProblemFileError(f"duplicate keys: {', '.join(duplicates)}")
    return dict(pairs)


def _validation_message(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(p) for p in item["loc"])
        parts.append(f"{where}: {item['msg']}" if where else item["msg"])
    return "; ".join(parts)


def problem_from_dict(data: Dict[str, Any]) -> ProblemFile:
    try:
        return ProblemFile.model_validate(data)
    except ValidationError as e:
        raise ProblemFileError(_validation_message(e)) from e


def parse_problem(text: str) -> ProblemFile:
    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ProblemFileError("problem file must hold a JSON object")
    return problem_from_dict(data)


def load_problem(path: Union[str, Path]) -> ProblemFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemFileError(f"cannot read {path}: {e}") from e
    return parse_problem(text)


def serialize_problem(problem: ProblemFile) -> str:
    return json.dumps(problem.model_dump(mode="json", exclude_none=True), ensure_ascii=False, indent=2)


def problem_of(A, b, c, name: Optional[str] = None) -> ProblemFile:
    return problem_from_dict({"name": name, "objective": list(c), "A": [list(r) for r in A], "b": list(b)})


# ══════════════════════════════════════════════════════════════
# Tableau states
# ══════════════════════════════════════════════════════════════

class TableauState(BaseModel):
    """A saved tableau (rows -1..m over z, x1..xn, h) with its step and active variables"""
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True, frozen=True)

    name: Optional[str] = None
    step: int = Field(0, ge=0)
    remaining: List[int]
    tableau: List[List[Fraction]] = Field(..., min_length=2)
    var_prefix: str = "x"

    @field_validator("tableau", mode="before")
    @classmethod
    def _parse_rows(cls, rows):
        if not isinstance(rows, (list, tuple)):
            raise ValueError("tableau must be a list of rows")
        return [_rationals(row, f"tableau row {i - 1}") for i, row in enumerate(rows)]

    @model_validator(mode="after")
    def _check_shape(self):
        width = len(self.tableau[0])
        if width < 2 or any(len(row) != width for row in self.tableau):
            raise ValueError("dimension mismatch: tableau rows need equal width of at least 2")
        n = width - 2
        bad = [j for j in self.remaining if not 1 <= j <= n]
        if bad or len(set(self.remaining)) != len(self.remaining):
            raise ValueError(f"remaining must hold distinct columns in 1..{n}")
        return self

    def to_tableau(self) -> Tableau:
        try:
            return make_tableau(self.tableau, sorted(self.remaining), self.step, self.var_prefix)
        except TableauError as e:
            raise ProblemFileError(str(e)) from e


def load_state(path: Union[str, Path]) -> TableauState:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"), object_pairs_hook=_reject_duplicates)
        return TableauState.model_validate(data)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    except ValidationError as e:
        raise ProblemFileError(_validation_message(e)) from e
    except OSError as e:
        raise ProblemFileError(f"cannot read {path}: {e}") from e


# ══════════════════════════════════════════════════════════════
# Outcomes and traces
# ══════════════════════════════════════════════════════════════

def _fmt(q: Optional[Fraction]) -> Optional[str]:
    return None if q is None else format_rational(q)


def _vec(values) -> Optional[List[str]]:
    return None if values is None else [format_rational(v) for v in values]


def form_to_json(form: LinearForm) -> Dict[str, Any]:
    return {"x": _vec(form.x), "h": format_rational(form.h)}


def bound_to_json(f: BoundFunction) -> Dict[str, Any]:
    return {
        "source": list(f.source),
        "v": _vec(f.v),
        "r": format_rational(f.r),
        "kind": f.kind.value,
        "hclass": f.hclass.value,
    }


def selection_to_json(sel: SelectionResult) -> Dict[str, Any]:
    return {
        "chosen": list(sel.chosen),
        "fz": form_to_json(sel.fz_star),
        "fb": bound_to_json(sel.fb_star),
        "classes": [c.value for c in sel.tt],
        "tau": str(sel.tau.magnitude),
        "tie_stage": sel.tie_stage,
        "second": None if sel.second is None else str(sel.second.magnitude),
        "first_ties": [list(p) for p in sel.first_ties],
    }


def partition_to_json(part: CostPartition) -> Dict[str, List[int]]:
    return {"plus": sorted(part.xplus), "zero": sorted(part.xzero), "minus": sorted(part.xminus)}


def step_record_to_json(record: StepRecord) -> Dict[str, Any]:
    return {
        "k": record.k,
        "case": record.case.value,
        "partition": partition_to_json(record.partition),
        "candidates": [list(p) for p in record.candidates],
        "candidate_kind": None if record.candidate_kind is None else record.candidate_kind.value,
        "selection": None if record.selection is None else selection_to_json(record.selection),
        "tableau": record.tableau.snapshot(),
        "remaining": list(record.tableau.remaining),
        "produced": None if record.produced is None else record.produced.snapshot(),
        "forced": record.forced,
        "counters": record.counters,
        "flags": record.flags,
    }


def pmrp_outcome_to_json(outcome: PmrpOutcome, include_trace: bool = True) -> Dict[str, Any]:
    prefix = outcome.final.var_prefix
    data = {
        "status": outcome.status.value,
        "reason": outcome.reason,
        "zcoef": _fmt(outcome.zcoef),
        "assignment": {f"{prefix}{j}": format_rational(v) for j, v in sorted(outcome.assignment.items())},
        "steps": outcome.steps,
    }
    if include_trace:
        data["trace"] = [step_record_to_json(r) for r in outcome.trace]
    return data


def outcome_to_json(outcome: LppOutcome, include_traces: bool = False) -> Dict[str, Any]:
    data = {
        "status": outcome.kind.value,
        "z": _fmt(outcome.z),
        "x": _vec(outcome.x),
        "y": _vec(outcome.dual_y),
        "flags": outcome.flags,
    }
    if outcome.primal_witness is not None:
        data["primal_witness"] = _vec(outcome.primal_witness)
    if include_traces:
        data["traces"] = {
            "primal": pmrp_outcome_to_json(outcome.primal),
            "dual": None if outcome.dual is None else pmrp_outcome_to_json(outcome.dual),
        }
    return data


def oracle_to_json(outcome: OracleOutcome) -> Dict[str, Any]:
    return {
        "status": outcome.status.value,
        "z": _fmt(outcome.z),
        "x": _vec(outcome.x),
        "ray": _vec(outcome.ray),
        "pivots": outcome.pivots,
    }


def write_trace(outcome: LppOutcome, path: Union[str, Path]) -> int:
    """One JSON object per step record, primal search first; returns the line count"""
    lines = []
    for search, run in (("primal", outcome.primal), ("dual", outcome.dual)):
        if run is None:
            continue
        for record in run.trace:
            lines.append(json.dumps({"search": search, **step_record_to_json(record)}, ensure_ascii=False))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return len(lines)


# ══════════════════════════════════════════════════════════════
# Counterexamples
# ══════════════════════════════════════════════════════════════

Divergence = Literal["agree", "value-mismatch", "status-mismatch", "method-fail", "cap-overrun"]


class CounterexampleRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    problem: ProblemFile
    method_outcome: Dict[str, Any]
    oracle_outcome: Dict[str, Any]
    divergence: Divergence
    seed: int
    index: int = 0


def save_counterexample(record: CounterexampleRecord, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(record.model_dump(mode="json"), ensure_ascii=False, indent=2), encoding="utf-8")
    return path


def load_counterexample(path: Union[str, Path]) -> CounterexampleRecord:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"), object_pairs_hook=_reject_duplicates)
        return CounterexampleRecord.model_validate(data)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    except ValidationError as e:
        raise ProblemFileError(_validation_message(e)) from e
    except OSError as e:
        raise ProblemFileError(f"cannot read {path}: {e}") from e
