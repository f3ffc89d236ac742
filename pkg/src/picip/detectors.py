"""Detectors for inner-class inheritance problems and compiler-rejected cycles.

Each ``detect_*`` function is a pure function of a built :class:`ClassGraph`.
:func:`detect_all` runs them in order and returns one sorted list.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .frontend import SourceSpan
from .model import ClassGraph, QualifiedName, enclosing_chain, superclass_chain


class CauseKind(enum.Enum):
    C1_InnerExtendsOuter = "C1_InnerExtendsOuter"
    C2_SuperInheritsOuter = "C2_SuperInheritsOuter"
    C3_InnerNameMatchesTopLevel = "C3_InnerNameMatchesTopLevel"
    C4_OverrideInCycle = "C4_OverrideInCycle"
    C5_DeepNesting = "C5_DeepNesting"
    C6_InheritanceAtOuterAndInner = "C6_InheritanceAtOuterAndInner"
    D_SelfOrChainCycle = "D_SelfOrChainCycle"
    D_ExtendsOwnNested = "D_ExtendsOwnNested"

    @property
    def short(self) -> str:
        return self.value.split("_", 1)[0]

    @property
    def is_cause(self) -> bool:
        return self.value.startswith("C")


# Score-bearing kinds in table order.
CAUSES = tuple(k for k in CauseKind if k.is_cause)
_KIND_ORDER = {kind: i for i, kind in enumerate(CauseKind)}


@dataclass(frozen=True)
class Finding:
    kind: CauseKind
    subject: QualifiedName
    related: tuple[QualifiedName, ...]
    span: SourceSpan
    message: str

    def sort_key(self):
        return (self.subject.file, self.span.line, self.span.column, _KIND_ORDER[self.kind], self.subject.segments)


def _finding(graph: ClassGraph, kind: CauseKind, subject: QualifiedName, related, message: str) -> Finding:
    return Finding(kind, subject, tuple(related), graph[subject].decl.span, message)


def _sorted(findings: list[Finding]) -> list[Finding]:
    return sorted(findings, key=Finding.sort_key)


def cycle_members(graph: ClassGraph) -> dict[QualifiedName, list[QualifiedName]]:
    """Map each class lying on an inheritance cycle to the cycle, starting at its superclass."""
    on_cycle = {}
    for name in graph:
        chain = superclass_chain(graph, name)
        if chain.cyclic and chain[-1] == name:
            on_cycle[name] = list(chain)
    return on_cycle


def detect_compiler_cycles(graph: ClassGraph) -> list[Finding]:
    findings = []
    for name, cycle in cycle_members(graph).items():
        if len(cycle) == 1:
            message = f"{name} extends itself"
        else:
            message = f"{name} is on the inheritance cycle " + " -> ".join(map(str, [name, *cycle]))
        findings.append(_finding(graph, CauseKind.D_SelfOrChainCycle, name, cycle, message))
    for name in graph:
        target = graph.superclass_of(name)
        if target is not None and target != name and target.within(name):
            findings.append(
                _finding(
                    graph,
                    CauseKind.D_ExtendsOwnNested,
                    name,
                    [target],
                    f"{name} extends {target}, which is nested inside it",
                )
            )
    return _sorted(findings)


def detect_c1_inner_extends_outer(graph: ClassGraph) -> list[Finding]:
    cyclic = cycle_members(graph)
    findings = []
    for name in graph:
        target = graph.superclass_of(name)
        if target is None or name in cyclic:
            continue
        chain = enclosing_chain(graph, name)
        if target not in chain:
            continue
        message = f"{name} extends its enclosing class {target}"
        level = chain.index(target) + 1
        if level > 1:
            message += f" ({level} levels out, not the immediate outer class)"
        findings.append(_finding(graph, CauseKind.C1_InnerExtendsOuter, name, [target], message))
    return _sorted(findings)


def detect_c2_super_inherits_outer(graph: ClassGraph) -> list[Finding]:
    cyclic = cycle_members(graph)
    findings = []
    for name in graph:
        target = graph.superclass_of(name)
        if target is None or name in cyclic:
            continue
        chain = enclosing_chain(graph, name)
        if not chain or target in chain:
            continue
        ancestors = superclass_chain(graph, target)
        reached = next((c for c in ancestors if c in chain), None)
        if reached is None:
            continue
        findings.append(
            _finding(
                graph,
                CauseKind.C2_SuperInheritsOuter,
                name,
                [target, reached],
                f"{name} extends {target}, which inherits from {reached} enclosing {name}",
            )
        )
    return _sorted(findings)


def detect_c3_name_collision(graph: ClassGraph) -> list[Finding]:
    findings = []
    for name in graph:
        if name.is_top_level:
            continue
        matches = graph.top_level_by_name.get(name.simple_name, [])
        if matches:
            findings.append(
                _finding(
                    graph,
                    CauseKind.C3_InnerNameMatchesTopLevel,
                    name,
                    matches,
                    f"inner class {name} has the same name as top-level "
                    + ", ".join(f"{m} ({m.file})" for m in matches),
                )
            )
    return _sorted(findings)


def detect_c4_override_in_cycle(graph: ClassGraph, c1_and_c2_findings: list[Finding]) -> list[Finding]:
    """Flag overriding methods in classes already involved in a containment cycle.

    A method overrides when its name and erased parameter types match a
    non-private, non-static method declared on any corpus superclass.
    """
    findings = []
    subjects = sorted(
        {
            f.subject
            for f in c1_and_c2_findings
            if f.kind in (CauseKind.C1_InnerExtendsOuter, CauseKind.C2_SuperInheritsOuter)
        }
    )
    for name in subjects:
        own = {m.signature: m for m in graph[name].decl.methods if not m.is_static}
        for ancestor in superclass_chain(graph, name):
            inheritable = {
                m.signature
                for m in graph[ancestor].decl.methods
                if m.visibility != "private" and not m.is_static
            }
            overridden = sorted(sig for sig in own if sig in inheritable)
            if overridden:
                methods = ", ".join(f"{n}({', '.join(p)})" for n, p in overridden)
                findings.append(
                    _finding(
                        graph,
                        CauseKind.C4_OverrideInCycle,
                        name,
                        [ancestor],
                        f"{name} overrides {methods} from {ancestor} while inheriting cyclically",
                    )
                )
                break
    return _sorted(findings)


def deep_nesting(graph: ClassGraph, root: QualifiedName) -> Finding | None:
    """C5 relative to ``root``: some class sits two or more levels below it."""
    below = [q for q in graph.subtree(root) if q.depth - root.depth >= 2]
    if not below:
        return None
    deepest = max(q.depth for q in below)
    related = [q for q in below if q.depth == deepest]
    return _finding(
        graph,
        CauseKind.C5_DeepNesting,
        root,
        related,
        f"{root} nests inner classes {deepest - root.depth} levels deep",
    )


def dual_inheritance(graph: ClassGraph, root: QualifiedName) -> Finding | None:
    """C6 relative to ``root``: it extends something and so does a nested class."""
    if not graph[root].decl.extends_ref:
        return None
    related = [q for q in graph.subtree(root) if q != root and graph[q].decl.extends_ref]
    if not related:
        return None
    return _finding(
        graph,
        CauseKind.C6_InheritanceAtOuterAndInner,
        root,
        related,
        f"{root} and its inner classes " + ", ".join(map(str, related)) + " both use inheritance",
    )


def detect_c5_deep_nesting(graph: ClassGraph) -> list[Finding]:
    return _sorted([f for top in graph.top_levels() if (f := deep_nesting(graph, top))])


def detect_c6_dual_inheritance(graph: ClassGraph) -> list[Finding]:
    return _sorted([f for top in graph.top_levels() if (f := dual_inheritance(graph, top))])


def detect_all(graph: ClassGraph) -> list[Finding]:
    c1 = detect_c1_inner_extends_outer(graph)
    c2 = detect_c2_super_inherits_outer(graph)
    findings = [
        *detect_compiler_cycles(graph),
        *c1,
        *c2,
        *detect_c3_name_collision(graph),
        *detect_c4_override_in_cycle(graph, c1 + c2),
        *detect_c5_deep_nesting(graph),
        *detect_c6_dual_inheritance(graph),
    ]
    return _sorted(findings)
