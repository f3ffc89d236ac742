"""Run the analysis pipeline over files on disk and render the results."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .detectors import CAUSES, CauseKind, Finding, detect_all
from .frontend import JavaParseError, Notice, SourceFile, SourceSpan, parse_unit
from .model import QualifiedName, build_graph
from .scoring import CAUSE_LABELS, MetricsRecord, PicipScore, compute_metrics, score_class, score_picip

FORMATS = ("text", "json")
ERROR_KINDS = frozenset(
    {"MissingPath", "ReadError", "UnterminatedComment", "UnterminatedString", "JavaSyntaxError", "LexError"}
)

Diagnostic = Union[Finding, Notice]


@dataclass
class RunConfig:
    inputs: list[str]
    format: str = "text"
    fail_threshold: int | None = None
    include_metrics: bool = False
    per_class: bool = False

    def __post_init__(self) -> None:
        if not self.inputs:
            raise ValueError("at least one input path is required")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.fail_threshold is not None and not 1 <= self.fail_threshold <= 6:
            raise ValueError("fail threshold must be between 1 and 6")


@dataclass
class RunReport:
    scores: list[PicipScore] = field(default_factory=list)
    metrics: list[MetricsRecord] | None = None
    diagnostics: list[Diagnostic] = field(default_factory=list)
    files_parsed: int = 0
    files_failed: int = 0

    @property
    def errors(self) -> list[Notice]:
        return [d for d in self.diagnostics if isinstance(d, Notice) and d.kind in ERROR_KINDS]


def _file_id(path: Path) -> str:
    return path.as_posix()


def collect_files(inputs: list[str]) -> tuple[list[str], list[str]]:
    """Expand inputs into a sorted, de-duplicated list of files plus missing paths."""
    files: set[str] = set()
    missing: list[str] = []
    for raw in inputs:
        path = Path(raw)
        if path.is_dir():
            files.update(_file_id(p) for p in path.rglob("*.java") if p.is_file())
        elif path.is_file():
            files.add(_file_id(path))
        else:
            missing.append(raw)
    return sorted(files), sorted(missing)


def _diagnostic_key(d: Diagnostic):
    if isinstance(d, Finding):
        return (d.span.file, d.span.line, d.span.column, d.kind.value, str(d.subject))
    span = d.span or SourceSpan("", 0, 0)
    return (span.file, span.line, span.column, d.kind, d.message)


def run(config: RunConfig) -> tuple[RunReport, int]:
    files, missing = collect_files(config.inputs)
    diagnostics: list[Diagnostic] = [
        Notice("MissingPath", f"input path does not exist: {m}", None) for m in missing
    ]
    units = []
    failed = 0
    for path in files:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            failed += 1
            diagnostics.append(Notice("ReadError", f"cannot read {path}: {exc}", None))
            continue
        notes: list[Notice] = []
        try:
            decls = parse_unit(SourceFile(path, text), notes)
        except JavaParseError as exc:
            failed += 1
            diagnostics.append(Notice(type(exc).__name__, f"{exc.message}; file excluded", exc.span))
            continue
        units.append((path, decls))
        diagnostics.extend(notes)

    graph = build_graph(units)
    findings = detect_all(graph)
    diagnostics.extend(graph.warnings)
    diagnostics.extend(f for f in findings if not f.kind.is_cause)

    if config.per_class:
        scores = [score_class(graph, findings, q) for q in graph]
    else:
        scores = [score_picip(graph, findings, q) for q in graph.top_levels()]
    report = RunReport(
        scores=scores,
        metrics=[compute_metrics(graph, q) for q in graph] if config.include_metrics else None,
        diagnostics=sorted(diagnostics, key=_diagnostic_key),
        files_parsed=len(units),
        files_failed=failed,
    )

    if missing or failed:
        return report, 2
    threshold = config.fail_threshold
    if threshold is not None and any(s.total >= threshold for s in scores if s.subject.is_top_level):
        return report, 1
    return report, 0


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _name_dict(q: QualifiedName) -> dict:
    return {"name": str(q), "file": q.file}


def _name_from(d: dict) -> QualifiedName:
    return QualifiedName(d["file"], tuple(d["name"].split(".")))


def _finding_dict(f: Finding) -> dict:
    return {
        "kind": f.kind.value,
        "subject": str(f.subject),
        "file": f.subject.file,
        "line": f.span.line,
        "column": f.span.column,
        "related": [_name_dict(q) for q in f.related],
        "message": f.message,
    }


def _notice_dict(n: Notice) -> dict:
    return {
        "kind": n.kind,
        "file": n.span.file if n.span else None,
        "line": n.span.line if n.span else None,
        "column": n.span.column if n.span else None,
        "message": n.message,
    }


def _diagnostic_from(d: dict) -> Diagnostic:
    if "subject" in d:
        subject = _name_from({"name": d["subject"], "file": d["file"]})
        return Finding(
            kind=CauseKind(d["kind"]),
            subject=subject,
            related=tuple(_name_from(r) for r in d["related"]),
            span=SourceSpan(d["file"], d["line"], d["column"]),
            message=d["message"],
        )
    span = SourceSpan(d["file"], d["line"], d["column"]) if d["file"] is not None else None
    return Notice(d["kind"], d["message"], span)


def report_to_dict(report: RunReport) -> dict:
    out: dict = {
        "classes": [
            {
                "name": str(s.subject),
                "file": s.subject.file,
                "causes": {kind.short: int(bit) for kind, bit in zip(CAUSES, s.cause_bits)},
                "total": s.total,
                "findings": [_finding_dict(f) for f in s.findings],
            }
            for s in report.scores
        ],
        "diagnostics": [
            _finding_dict(d) if isinstance(d, Finding) else _notice_dict(d) for d in report.diagnostics
        ],
    }
    if report.metrics is not None:
        out["metrics"] = [
            {
                **_name_dict(m.subject),
                "dit": m.dit,
                "noc": m.noc,
                "tpc": m.tpc,
                "tpac": m.tpac,
                "tac": m.tac,
            }
            for m in report.metrics
        ]
    out["summary"] = {"files_parsed": report.files_parsed, "files_failed": report.files_failed}
    return out


def report_from_dict(data: dict) -> RunReport:
    scores = []
    for row in data["classes"]:
        scores.append(
            PicipScore(
                subject=_name_from(row),
                cause_bits=tuple(bool(row["causes"][kind.short]) for kind in CAUSES),
                findings=tuple(_diagnostic_from(f) for f in row["findings"]),
            )
        )
    metrics = None
    if "metrics" in data:
        metrics = [
            MetricsRecord(_name_from(m), m["dit"], m["noc"], m["tpc"], m["tpac"], m["tac"]) for m in data["metrics"]
        ]
    return RunReport(
        scores=scores,
        metrics=metrics,
        diagnostics=[_diagnostic_from(d) for d in data["diagnostics"]],
        files_parsed=data["summary"]["files_parsed"],
        files_failed=data["summary"]["files_failed"],
    )


def load_report(text: str) -> RunReport:
    return report_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Text
# ---------------------------------------------------------------------------


def _where(d: Diagnostic) -> str:
    return str(d.span) if d.span else "-"


def _text(report: RunReport) -> str:
    width = max(len(label) for label in CAUSE_LABELS.values())
    lines: list[str] = []
    for s in report.scores:
        lines.append(f"{s.subject}  ({s.subject.file})")
        for kind, bit in zip(CAUSES, s.cause_bits):
            lines.append(f"  {CAUSE_LABELS[kind]:<{width}}  {int(bit)}")
        lines.append(f"  total: {s.total}")
        for f in s.findings:
            lines.append(f"    {f.kind.short} {_where(f)}: {f.message}")
        lines.append("")

    if report.diagnostics:
        lines.append("diagnostics:")
        for d in report.diagnostics:
            kind = d.kind.value if isinstance(d, Finding) else d.kind
            lines.append(f"  {kind} {_where(d)}: {d.message}")
        lines.append("")

    if report.metrics is not None:
        names = [str(m.subject) for m in report.metrics]
        w = max([len("class"), *map(len, names)])
        lines.append("metrics:")
        lines.append(f"  {'class':<{w}}  {'DIT':>5}  {'NOC':>5}  {'TPC':>5}  {'TPAC':>5}  {'TAC':>5}")
        for m in report.metrics:
            dit = "cycle" if m.dit is None else str(m.dit)
            tac = "cycle" if m.tac is None else str(m.tac)
            lines.append(f"  {str(m.subject):<{w}}  {dit:>5}  {m.noc:>5}  {m.tpc:>5}  {m.tpac:>5}  {tac:>5}")
        lines.append("")

    lines.append(f"files parsed: {report.files_parsed}, files failed: {report.files_failed}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def format_report(report: RunReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"
    if format == "text":
        return _text(report)
    raise ValueError(f"unknown format {format!r}")
