"""Static analysis of inheritance problems around Java inner classes."""

from .detectors import CAUSES, CauseKind, Finding, detect_all
from .frontend import ClassDecl, JavaParseError, MethodSig, SourceFile, SourceSpan, lex, parse_unit
from .model import (
    Ambiguous,
    ClassGraph,
    External,
    Internal,
    QualifiedName,
    build_graph,
    enclosing_chain,
    resolve_superclass,
    superclass_chain,
)
from .report import RunConfig, RunReport, format_report, load_report, run
from .scoring import MetricsRecord, NotTopLevel, PicipScore, compute_metrics, score_class, score_picip


def analyze_sources(sources: dict[str, str]) -> tuple[ClassGraph, list[Finding]]:
    """Parse in-memory sources keyed by path, build the graph and run every detector."""
    units = [(path, parse_unit(SourceFile(path, text))) for path, text in sources.items()]
    graph = build_graph(units)
    return graph, detect_all(graph)


__all__ = [
    "Ambiguous",
    "CAUSES",
    "CauseKind",
    "ClassDecl",
    "ClassGraph",
    "External",
    "Finding",
    "Internal",
    "JavaParseError",
    "MethodSig",
    "MetricsRecord",
    "NotTopLevel",
    "PicipScore",
    "QualifiedName",
    "RunConfig",
    "RunReport",
    "SourceFile",
    "SourceSpan",
    "analyze_sources",
    "build_graph",
    "compute_metrics",
    "detect_all",
    "enclosing_chain",
    "format_report",
    "lex",
    "load_report",
    "parse_unit",
    "resolve_superclass",
    "run",
    "score_class",
    "score_picip",
    "superclass_chain",
]
