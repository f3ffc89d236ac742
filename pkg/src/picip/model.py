"""Corpus-wide class graph with lexically scoped superclass resolution."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .frontend import ClassDecl, Notice


@dataclass(frozen=True, order=True)
class QualifiedName:
    """Path of simple names from a top-level class down to a class.

    ``file`` keeps same-named top-level classes from different files apart;
    it is not part of the displayed name.
    """

    file: str
    segments: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("a qualified name needs at least one segment")

    def __str__(self) -> str:
        return ".".join(self.segments)

    def __repr__(self) -> str:
        return f"QualifiedName({str(self)!r}, file={self.file!r})"

    @property
    def simple_name(self) -> str:
        return self.segments[-1]

    @property
    def is_top_level(self) -> bool:
        return len(self.segments) == 1

    @property
    def depth(self) -> int:
        return len(self.segments) - 1

    @property
    def parent(self) -> QualifiedName | None:
        if self.is_top_level:
            return None
        return QualifiedName(self.file, self.segments[:-1])

    @property
    def top_level(self) -> QualifiedName:
        return QualifiedName(self.file, self.segments[:1])

    def child(self, name: str) -> QualifiedName:
        return QualifiedName(self.file, self.segments + (name,))

    def within(self, root: QualifiedName) -> bool:
        """True when this class is ``root`` or nested (at any depth) inside it."""
        n = len(root.segments)
        return self.file == root.file and self.segments[:n] == root.segments


@dataclass(frozen=True)
class Internal:
    target: QualifiedName


@dataclass(frozen=True)
class External:
    raw: str


@dataclass(frozen=True)
class Ambiguous:
    candidates: tuple[QualifiedName, ...]
    chosen: QualifiedName


SuperRef = Optional[Union[Internal, External, Ambiguous]]


@dataclass
class ClassNode:
    name: QualifiedName
    decl: ClassDecl
    outer: QualifiedName | None
    members: dict[str, QualifiedName] = field(default_factory=dict)
    super_ref: SuperRef = None
    subclasses: list[QualifiedName] = field(default_factory=list)

    @property
    def file(self) -> str:
        return self.name.file


@dataclass
class ClassGraph:
    classes: dict[QualifiedName, ClassNode] = field(default_factory=dict)
    top_level_by_name: dict[str, list[QualifiedName]] = field(default_factory=dict)
    warnings: list[Notice] = field(default_factory=list)

    def __contains__(self, name: object) -> bool:
        return name in self.classes

    def __getitem__(self, name: QualifiedName) -> ClassNode:
        return self.classes[name]

    def __iter__(self) -> Iterator[QualifiedName]:
        return iter(sorted(self.classes))

    def __len__(self) -> int:
        return len(self.classes)

    def top_levels(self) -> list[QualifiedName]:
        return sorted(q for q in self.classes if q.is_top_level)

    def subtree(self, root: QualifiedName) -> list[QualifiedName]:
        return sorted(q for q in self.classes if q.within(root))

    def superclass_of(self, name: QualifiedName) -> QualifiedName | None:
        """The corpus class ``name`` extends, following an ambiguous choice."""
        ref = self.classes[name].super_ref
        if isinstance(ref, Internal):
            return ref.target
        if isinstance(ref, Ambiguous):
            return ref.chosen
        return None

    def find(self, dotted: str, file: str | None = None) -> QualifiedName:
        """Look a class up by its dotted name; ``file`` disambiguates."""
        segments = tuple(dotted.split("."))
        hits = [q for q in self.classes if q.segments == segments and file in (None, q.file)]
        if not hits:
            raise KeyError(dotted)
        if len(hits) > 1:
            raise KeyError(f"{dotted} is defined in several files: {sorted(q.file for q in hits)}")
        return hits[0]


def _index(graph: ClassGraph, decl: ClassDecl, name: QualifiedName, outer: QualifiedName | None) -> None:
    if name in graph.classes:
        graph.warnings.append(
            Notice("DuplicateClass", f"class {name} is declared twice in one file; later one ignored", decl.span)
        )
        return
    node = ClassNode(name=name, decl=decl, outer=outer)
    graph.classes[name] = node
    for inner in decl.inners:
        child = name.child(inner.simple_name)
        if inner.simple_name not in node.members:
            node.members[inner.simple_name] = child
        _index(graph, inner, child, name)


def build_graph(units: Iterable[tuple[str, list[ClassDecl]]]) -> ClassGraph:
    """Index every class of every unit and resolve all ``extends`` references.

    Units are processed in path order so the result does not depend on the
    order they are supplied in.
    """
    graph = ClassGraph()
    for path, decls in sorted(units, key=lambda unit: unit[0]):
        for decl in decls:
            _index(graph, decl, QualifiedName(path, (decl.simple_name,)), None)

    by_name: dict[str, list[QualifiedName]] = defaultdict(list)
    for q in sorted(graph.classes):
        if q.is_top_level:
            by_name[q.simple_name].append(q)
    graph.top_level_by_name = dict(by_name)
    for simple, names in sorted(by_name.items()):
        files = sorted({q.file for q in names})
        if len(files) > 1:
            graph.warnings.append(
                Notice(
                    "DuplicateTopLevel",
                    f"top-level class {simple} is declared in {len(files)} files: {', '.join(files)}",
                    graph.classes[names[0]].decl.span,
                )
            )

    for q in sorted(graph.classes):
        node = graph.classes[q]
        node.super_ref = resolve_superclass(graph, q)
        if isinstance(node.super_ref, Ambiguous):
            graph.warnings.append(
                Notice(
                    "AmbiguousSuperclass",
                    f"{q} extends {node.decl.extends_ref}, which matches classes in "
                    f"{len(node.super_ref.candidates)} files; using {node.super_ref.chosen.file}",
                    node.decl.span,
                )
            )
    for q in sorted(graph.classes):
        target = graph.superclass_of(q)
        if target is not None:
            graph.classes[target].subclasses.append(q)
    return graph


def _head_candidates(graph: ClassGraph, name: QualifiedName, head: str) -> list[QualifiedName]:
    scope: QualifiedName | None = name
    while scope is not None:
        if scope.simple_name == head:
            return [scope]
        member = graph.classes[scope].members.get(head)
        if member is not None:
            return [member]
        scope = scope.parent
    everywhere = graph.top_level_by_name.get(head, [])
    same_file = [q for q in everywhere if q.file == name.file]
    return same_file[:1] or list(everywhere)


def resolve_superclass(graph: ClassGraph, name: QualifiedName) -> SuperRef:
    """Resolve the ``extends`` clause of ``name`` against the corpus.

    The first dotted segment is looked up in the class itself, then in each
    enclosing class from the innermost outward (own name first, then member
    classes), then among top-level classes of the same file, and finally
    among top-level classes anywhere. The remaining segments select member
    classes. Anything that does not resolve becomes :class:`External`.
    """
    raw = graph.classes[name].decl.extends_ref
    if not raw:
        return None
    head, *rest = raw.split(".")
    resolved = []
    for candidate in _head_candidates(graph, name, head):
        for segment in rest:
            candidate = graph.classes[candidate].members.get(segment)
            if candidate is None:
                break
        if candidate is not None:
            resolved.append(candidate)
    if not resolved:
        return External(raw)
    if len(resolved) == 1:
        return Internal(resolved[0])
    resolved.sort(key=lambda q: q.file)
    return Ambiguous(tuple(resolved), resolved[0])


def enclosing_chain(graph: ClassGraph, name: QualifiedName) -> list[QualifiedName]:
    chain = []
    outer = graph.classes[name].outer
    while outer is not None:
        chain.append(outer)
        outer = graph.classes[outer].outer
    return chain


class AncestorChain(list):
    """List of superclasses, nearest first; ``cyclic`` marks a revisit."""

    cyclic: bool = False


def superclass_chain(graph: ClassGraph, name: QualifiedName) -> AncestorChain:
    chain = AncestorChain()
    seen = {name}
    current = graph.superclass_of(name)
    while current is not None:
        chain.append(current)
        if current in seen:
            chain.cyclic = True
            break
        seen.add(current)
        current = graph.superclass_of(current)
    return chain


def ends_external(graph: ClassGraph, name: QualifiedName, chain: list[QualifiedName]) -> bool:
    """Whether the acyclic ``chain`` of ``name`` stops at a non-corpus superclass."""
    last = chain[-1] if chain else name
    return isinstance(graph.classes[last].super_ref, External)
