"""Tokenizer and declaration-level parser for a pragmatic subset of Java.

Only what is needed to recover class nesting, ``extends`` clauses and method
signatures is modeled. Method and initializer bodies are skipped by brace
matching, so local and anonymous classes never show up. ``interface``,
``enum``, ``record`` and annotation-type declarations are skipped whole and
reported as notes.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass, field

KEYWORDS = frozenset(
    {
        "class",
        "extends",
        "static",
        "public",
        "protected",
        "private",
        "interface",
        "enum",
        "package",
        "import",
    }
)
PUNCTUATION = frozenset("{}()<>,.;")

# Contextual or non-structural modifiers; they arrive as identifiers.
_SOFT_MODIFIERS = frozenset(
    {
        "abstract",
        "final",
        "strictfp",
        "sealed",
        "default",
        "synchronized",
        "native",
        "transient",
        "volatile",
    }
)
_VISIBILITY = ("public", "protected", "private")


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str


@dataclass(frozen=True, order=True)
class SourceSpan:
    file: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Notice:
    """A non-finding diagnostic: skipped declarations, warnings, errors."""

    kind: str
    message: str
    span: SourceSpan | None = None


@dataclass(frozen=True)
class MethodSig:
    name: str
    param_type_texts: tuple[str, ...]
    visibility: str
    is_static: bool
    span: SourceSpan

    @property
    def signature(self) -> tuple[str, tuple[str, ...]]:
        return self.name, self.param_type_texts


@dataclass
class ClassDecl:
    simple_name: str
    span: SourceSpan
    extends_ref: str | None = None
    methods: list[MethodSig] = field(default_factory=list)
    inners: list[ClassDecl] = field(default_factory=list)
    is_static_nested: bool = False

    def walk(self):
        """Yield this declaration and every nested one, depth first."""
        yield self
        for inner in self.inners:
            yield from inner.walk()

    def depth(self) -> int:
        """Length of the longest chain of nested declarations below this one."""
        return max((1 + inner.depth() for inner in self.inners), default=0)


class TokenKind(enum.Enum):
    IDENT = "ident"
    KEYWORD = "keyword"
    PUNCT = "punct"
    OTHER = "other"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    def __repr__(self) -> str:
        return f"Token({self.kind.value}, {self.text!r}, {self.line}:{self.column})"


class JavaParseError(Exception):
    """Base for errors that exclude a file from analysis."""

    def __init__(self, message: str, span: SourceSpan) -> None:
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


class LexError(JavaParseError):
    pass


class UnterminatedComment(LexError):
    pass


class UnterminatedString(LexError):
    pass


class JavaSyntaxError(JavaParseError):
    pass


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_" or c == "$"


def _is_ident_part(c: str) -> bool:
    return c.isalnum() or c == "_" or c == "$"


class _Positions:
    def __init__(self, path: str, text: str) -> None:
        self.path = path
        self.starts = [0] + [i + 1 for i, c in enumerate(text) if c == "\n"]

    def line_col(self, offset: int) -> tuple[int, int]:
        line = bisect.bisect_right(self.starts, offset)
        return line, offset - self.starts[line - 1] + 1

    def span(self, offset: int) -> SourceSpan:
        return SourceSpan(self.path, *self.line_col(offset))


def _scan_quoted(text: str, start: int, quote: str, pos: _Positions) -> int:
    """Return the offset just past the literal starting at ``start``."""
    n = len(text)
    if quote == '"' and text.startswith('"""', start):
        end = start + 3
        while end < n:
            if text[end] == "\\":
                end += 2
            elif text.startswith('"""', end):
                return end + 3
            else:
                end += 1
        raise UnterminatedString("unterminated text block", pos.span(start))
    end = start + 1
    while end < n:
        c = text[end]
        if c == "\\":
            end += 2
            continue
        if c == quote:
            return end + 1
        if c == "\n":
            break
        end += 1
    what = "string" if quote == '"' else "character"
    raise UnterminatedString(f"unterminated {what} literal", pos.span(start))


def lex(source: SourceFile) -> list[Token]:
    text = source.text
    pos = _Positions(source.path, text)
    tokens: list[Token] = []
    n = len(text)
    i = 0

    def emit(kind: TokenKind, start: int, end: int) -> None:
        tokens.append(Token(kind, text[start:end], *pos.line_col(start)))

    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif text.startswith("//", i):
            nl = text.find("\n", i)
            i = n if nl < 0 else nl + 1
        elif text.startswith("/*", i):
            close = text.find("*/", i + 2)
            if close < 0:
                raise UnterminatedComment("unterminated block comment", pos.span(i))
            i = close + 2
        elif c == '"' or c == "'":
            # literals carry no structure; drop them
            i = _scan_quoted(text, i, c, pos)
        elif _is_ident_start(c):
            j = i + 1
            while j < n and _is_ident_part(text[j]):
                j += 1
            word = text[i:j]
            emit(TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENT, i, j)
            i = j
        elif c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and (_is_ident_part(text[j]) or text[j] == "."):
                j += 1
            emit(TokenKind.OTHER, i, j)
            i = j
        elif text.startswith("...", i):
            emit(TokenKind.OTHER, i, i + 3)
            i += 3
        elif c in PUNCTUATION:
            emit(TokenKind.PUNCT, i, i + 1)
            i += 1
        else:
            emit(TokenKind.OTHER, i, i + 1)
            i += 1
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, source: SourceFile, tokens: list[Token], notes: list[Notice] | None):
        self.path = source.path
        self.toks = tokens
        self.pos = 0
        self.notes = notes
        self.eof_span = _Positions(source.path, source.text).span(len(source.text))

    # -- token helpers -----------------------------------------------------

    def peek(self, k: int = 0) -> Token | None:
        i = self.pos + k
        return self.toks[i] if i < len(self.toks) else None

    def at(self, text: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok is not None and tok.text == text

    def at_ident(self, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok is not None and tok.kind is TokenKind.IDENT

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise JavaSyntaxError("unexpected end of file", self.eof_span)
        self.pos += 1
        return tok

    def span_of(self, tok: Token) -> SourceSpan:
        return SourceSpan(self.path, tok.line, tok.column)

    def note(self, kind: str, message: str, tok: Token) -> None:
        if self.notes is not None:
            self.notes.append(Notice(kind, message, self.span_of(tok)))

    # -- skipping ----------------------------------------------------------

    def skip_block(self) -> None:
        """Skip a balanced ``{ ... }`` group starting at the current token."""
        opener = self.advance()
        depth = 1
        while depth:
            tok = self.peek()
            if tok is None:
                raise JavaSyntaxError("unbalanced braces: '{' is never closed", self.span_of(opener))
            self.pos += 1
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                depth -= 1

    def skip_group(self, open_: str, close: str) -> list[Token]:
        """Consume a balanced group and return the tokens strictly inside it."""
        opener = self.advance()
        depth = 1
        inside: list[Token] = []
        while True:
            tok = self.peek()
            if tok is None:
                raise JavaSyntaxError(f"'{open_}' is never closed", self.span_of(opener))
            self.pos += 1
            if tok.text == open_:
                depth += 1
            elif tok.text == close:
                depth -= 1
                if depth == 0:
                    return inside
            inside.append(tok)

    def skip_annotation(self) -> None:
        self.advance()  # '@'
        if self.at_ident() or (self.peek() and self.peek().kind is TokenKind.KEYWORD):
            self.advance()
        while self.at(".") and self.peek(1) is not None:
            self.pos += 2
        if self.at("("):
            self.skip_group("(", ")")

    def skip_to_semicolon(self) -> None:
        """Skip a field declaration or stray statement up to its ``;``."""
        start = self.peek()
        depth = 0
        while True:
            tok = self.peek()
            if tok is None:
                raise JavaSyntaxError("declaration is never terminated", self.span_of(start))
            if tok.text in "{(" and tok.kind is TokenKind.PUNCT:
                depth += 1
            elif tok.text in "})" and tok.kind is TokenKind.PUNCT:
                if depth == 0:
                    return
                depth -= 1
            elif tok.text == ";" and depth == 0:
                self.pos += 1
                return
            self.pos += 1

    def skip_type_declaration(self, kind: str) -> None:
        start = self.peek()
        name = "?"
        while not self.at("{"):
            tok = self.advance()
            if name == "?" and tok.kind is TokenKind.IDENT and tok.text not in ("interface", "record"):
                name = tok.text
            if tok.text in ";}":
                raise JavaSyntaxError(f"malformed {kind} declaration", self.span_of(start))
        self.skip_block()
        self.note("SkippedDeclaration", f"{kind} {name} skipped", start)

    # -- declarations ------------------------------------------------------

    def modifiers(self) -> set[str]:
        mods: set[str] = set()
        while True:
            tok = self.peek()
            if tok is None:
                return mods
            if tok.text == "@" and not self.at("interface", 1):
                self.skip_annotation()
            elif tok.text in _VISIBILITY or tok.text == "static" or (
                tok.kind is TokenKind.IDENT and tok.text in _SOFT_MODIFIERS
            ):
                mods.add(tok.text)
                self.pos += 1
            elif tok.text == "non" and self.at("-", 1) and self.at("sealed", 2):
                self.pos += 3
            else:
                return mods

    def type_declaration_kind(self) -> str | None:
        tok = self.peek()
        if tok is None:
            return None
        if tok.kind is TokenKind.KEYWORD and tok.text in ("class", "interface", "enum"):
            return tok.text
        if tok.text == "@" and self.at("interface", 1):
            return "annotation type"
        if tok.text == "record" and self.at_ident(1) and (self.at("(", 2) or self.at("<", 2)):
            return "record"
        return None

    def compilation_unit(self) -> list[ClassDecl]:
        classes: list[ClassDecl] = []
        while self.peek() is not None:
            tok = self.peek()
            if tok.text == ";":
                self.pos += 1
            elif tok.kind is TokenKind.KEYWORD and tok.text in ("package", "import"):
                self.skip_to_semicolon()
            elif tok.text == "}":
                raise JavaSyntaxError("unbalanced braces: unexpected '}'", self.span_of(tok))
            else:
                decl = self.declaration(top_level=True)
                if decl is not None:
                    classes.append(decl)
        return classes

    def declaration(self, top_level: bool) -> ClassDecl | None:
        start = self.peek()
        mods = self.modifiers()
        kind = self.type_declaration_kind()
        if kind == "class":
            return self.class_declaration(mods)
        if kind is not None:
            self.skip_type_declaration(kind)
            return None
        if top_level:
            # module-info and other oddities: skip one statement or block
            if start is None or self.peek() is None:
                raise JavaSyntaxError("unexpected end of file", self.eof_span)
            while not self.at("{") and not self.at(";"):
                if self.at("}"):
                    raise JavaSyntaxError("unbalanced braces: unexpected '}'", self.span_of(self.peek()))
                self.advance()
            if self.at("{"):
                self.skip_block()
            else:
                self.pos += 1
            self.note("SkippedDeclaration", "unrecognized top-level declaration skipped", start)
        return None

    def class_declaration(self, mods: set[str]) -> ClassDecl:
        keyword = self.advance()
        name_tok = self.peek()
        if name_tok is None or name_tok.kind is not TokenKind.IDENT:
            raise JavaSyntaxError("'class' keyword without identifier", self.span_of(keyword))
        self.pos += 1
        decl = ClassDecl(name_tok.text, self.span_of(name_tok), is_static_nested="static" in mods)
        if self.at("<"):
            self.skip_group("<", ">")
        while not self.at("{"):
            tok = self.advance()
            if tok.text == "extends" and decl.extends_ref is None:
                decl.extends_ref = self.type_name(tok)
            elif tok.text in (";", "}"):
                raise JavaSyntaxError(f"class {decl.simple_name} has no body", self.span_of(tok))
            elif tok.text == "<":
                self.pos -= 1
                self.skip_group("<", ">")
        self.advance()
        self.class_body(decl)
        return decl

    def type_name(self, after: Token) -> str:
        """Read a dotted type name, dropping generic arguments and annotations."""
        parts: list[str] = []
        while self.at("@"):
            self.skip_annotation()
        if not self.at_ident():
            raise JavaSyntaxError("'extends' without a type name", self.span_of(after))
        parts.append(self.advance().text)
        while True:
            if self.at("<"):
                self.skip_group("<", ">")
            elif self.at(".") and self.at_ident(1):
                self.pos += 1
                parts.append(self.advance().text)
            else:
                return ".".join(parts)

    def class_body(self, decl: ClassDecl) -> None:
        while True:
            tok = self.peek()
            if tok is None:
                raise JavaSyntaxError(
                    f"unbalanced braces: body of class {decl.simple_name} is never closed", decl.span
                )
            if tok.text == "}":
                self.pos += 1
                return
            if tok.text == ";":
                self.pos += 1
            elif tok.text == "{":
                self.skip_block()
            elif tok.text == "static" and self.at("{", 1):
                self.pos += 1
                self.skip_block()
            else:
                self.member(decl)

    def member(self, decl: ClassDecl) -> None:
        mods = self.modifiers()
        kind = self.type_declaration_kind()
        if kind == "class":
            decl.inners.append(self.class_declaration(mods))
            return
        if kind is not None:
            self.skip_type_declaration(kind)
            return
        header: list[Token] = []
        while True:
            tok = self.peek()
            if tok is None:
                raise JavaSyntaxError(
                    f"unbalanced braces: body of class {decl.simple_name} is never closed", decl.span
                )
            if tok.text == "<":
                self.skip_group("<", ">")
                continue
            if tok.text in ("(", "=", ";", "{", "}"):
                break
            header.append(self.advance())

        if tok.text == "(":
            params = self.skip_group("(", ")")
            while not self.at("{") and not self.at(";") and not self.at("}"):
                self.advance()
            if self.at("{"):
                self.skip_block()
            elif self.at(";"):
                self.pos += 1
            name = header[-1] if header else None
            # a constructor has nothing but its name left after modifiers
            if name is not None and name.kind is TokenKind.IDENT and len(header) > 1:
                decl.methods.append(
                    MethodSig(
                        name=name.text,
                        param_type_texts=_param_types(params),
                        visibility=next((v for v in _VISIBILITY if v in mods), "package"),
                        is_static="static" in mods,
                        span=self.span_of(name),
                    )
                )
        elif tok.text in ("=", ";"):
            self.skip_to_semicolon()
        elif tok.text == "{":
            self.skip_block()


def _split_params(tokens: list[Token]) -> list[list[Token]]:
    params: list[list[Token]] = [[]]
    depth = 0
    for tok in tokens:
        if tok.text in "(<[" and tok.kind is not TokenKind.IDENT:
            depth += 1
        elif tok.text in ")>]" and tok.kind is not TokenKind.IDENT:
            depth -= 1
        elif tok.text == "," and depth == 0:
            params.append([])
            continue
        params[-1].append(tok)
    return [p for p in params if p]


def _param_type(tokens: list[Token]) -> str | None:
    kept: list[Token] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.text == "@":
            i += 2
            while i + 1 < len(tokens) and tokens[i].text == ".":
                i += 2
            if i < len(tokens) and tokens[i].text == "(":
                depth = 0
                while i < len(tokens):
                    depth += {"(": 1, ")": -1}.get(tokens[i].text, 0)
                    i += 1
                    if depth == 0:
                        break
            continue
        if not (tok.kind is TokenKind.IDENT and tok.text == "final"):
            kept.append(tok)
        i += 1

    erased: list[str] = []
    depth = 0
    for tok in kept:
        if tok.text == "<":
            depth += 1
        elif tok.text == ">":
            depth -= 1
        elif depth == 0:
            erased.append(tok.text)

    trailing_dims = 0
    while len(erased) >= 2 and erased[-2:] == ["[", "]"]:
        trailing_dims += 1
        del erased[-2:]
    if not erased:
        return None
    name = erased.pop()
    if name == "this" or not erased:
        return None
    text = "".join("[]" if t == "..." else t for t in erased)
    return text + "[]" * trailing_dims


def _param_types(tokens: list[Token]) -> tuple[str, ...]:
    types = (_param_type(p) for p in _split_params(tokens))
    return tuple(t for t in types if t is not None)


def parse_unit(source: SourceFile, notes: list[Notice] | None = None) -> list[ClassDecl]:
    """Parse one file into its top-level class declarations.

    Skipped interfaces, enums and records are appended to ``notes`` when a
    list is supplied. Raises a :class:`JavaParseError` subclass when the file
    cannot be lexed or parsed.
    """
    tokens = lex(source)
    return _Parser(source, tokens, notes).compilation_unit()
