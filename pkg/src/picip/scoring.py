"""PICIP aggregation and the classic inheritance metrics."""

from __future__ import annotations

from dataclasses import dataclass

from .detectors import CAUSES, CauseKind, Finding, deep_nesting, dual_inheritance
from .model import ClassGraph, QualifiedName, ends_external, superclass_chain

# Row labels of the six-cause table, in cause order.
CAUSE_LABELS = {
    CauseKind.C1_InnerExtendsOuter: "The superclass of inner class is its outer class.",
    CauseKind.C2_SuperInheritsOuter: (
        "The superclass of inner class is inheriting from the outer class of that inner class."
    ),
    CauseKind.C3_InnerNameMatchesTopLevel: "The name of inner class is same with external class.",
    CauseKind.C4_OverrideInCycle: "Overriding methods found in the inner class where cyclic inheritance takes place.",
    CauseKind.C5_DeepNesting: "Deep level of inner class (more than one level)",
    CauseKind.C6_InheritanceAtOuterAndInner: "Inheritance at outer class and inner class.",
}


class NotTopLevel(ValueError):
    pass


@dataclass(frozen=True)
class PicipScore:
    subject: QualifiedName
    cause_bits: tuple[bool, bool, bool, bool, bool, bool]
    findings: tuple[Finding, ...]

    @property
    def total(self) -> int:
        return sum(self.cause_bits)

    def bit(self, kind: CauseKind) -> bool:
        return self.cause_bits[CAUSES.index(kind)]


@dataclass(frozen=True)
class MetricsRecord:
    subject: QualifiedName
    dit: int | None  # None: undefined, the class inherits from itself
    noc: int
    tpc: int
    tpac: int
    tac: int | None


def _score(subject: QualifiedName, supporting: list[Finding]) -> PicipScore:
    kinds = {f.kind for f in supporting}
    return PicipScore(
        subject=subject,
        cause_bits=tuple(kind in kinds for kind in CAUSES),
        findings=tuple(supporting),
    )


def score_picip(graph: ClassGraph, findings: list[Finding], top_level: QualifiedName) -> PicipScore:
    """Score one top-level class: one point per cause found anywhere in its nesting tree."""
    if not top_level.is_top_level:
        raise NotTopLevel(f"{top_level} is nested; PICIP is scored per top-level class")
    if top_level not in graph:
        raise KeyError(top_level)
    return _score(top_level, [f for f in findings if f.kind.is_cause and f.subject.within(top_level)])


def score_class(graph: ClassGraph, findings: list[Finding], name: QualifiedName) -> PicipScore:
    """Score any class, treating a nested class as the root of its own subtree.

    Findings of the first four causes are attributed from the subtree; deep
    nesting and dual inheritance are re-evaluated relative to ``name``.
    """
    if name.is_top_level:
        return score_picip(graph, findings, name)
    local = (CauseKind.C5_DeepNesting, CauseKind.C6_InheritanceAtOuterAndInner)
    supporting = [f for f in findings if f.kind.is_cause and f.kind not in local and f.subject.within(name)]
    for check in (deep_nesting, dual_inheritance):
        f = check(graph, name)
        if f is not None:
            supporting.append(f)
    return _score(name, supporting)


def _progeny(graph: ClassGraph, name: QualifiedName) -> set[QualifiedName]:
    seen: set[QualifiedName] = set()
    stack = list(graph[name].subclasses)
    while stack:
        q = stack.pop()
        if q not in seen:
            seen.add(q)
            stack.extend(graph[q].subclasses)
    return seen


def compute_metrics(graph: ClassGraph, name: QualifiedName) -> MetricsRecord:
    node = graph[name]
    chain = superclass_chain(graph, name)
    if chain.cyclic:
        dit = None
    else:
        dit = len(chain) + (1 if ends_external(graph, name, chain) else 0)
    return MetricsRecord(
        subject=name,
        dit=dit,
        noc=len(node.subclasses),
        tpc=len(_progeny(graph, name)),
        tpac=1 if node.decl.extends_ref else 0,
        tac=dit,
    )
