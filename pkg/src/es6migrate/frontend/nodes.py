"""Syntax tree for the supported JavaScript subset.

Nodes compare by identity (analysis passes key bookkeeping on node objects);
use :func:`structurally_equal` for the value comparison needed by round-trip
checks. Parsed nodes carry character-offset spans into their source text;
synthesized nodes carry ``span=None``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterator, Optional

Span = tuple[int, int]


@dataclass(eq=False)
class Node:
    """Base class; every concrete node ends its field list with ``span``."""

    def children(self) -> Iterator["Node"]:
        return iter_child_nodes(self)


# --- expressions ---


@dataclass(eq=False)
class Identifier(Node):
    name: str
    span: Optional[Span] = None


@dataclass(eq=False)
class Literal(Node):
    value: object
    raw: str
    lit_kind: str  # number | string | boolean | null | regex
    span: Optional[Span] = None


@dataclass(eq=False)
class ThisExpression(Node):
    span: Optional[Span] = None


@dataclass(eq=False)
class Array(Node):
    elements: list[Node] = field(default_factory=list)
    span: Optional[Span] = None


@dataclass(eq=False)
class PropertyPair(Node):
    key: Node  # Identifier or Literal(string|number)
    value: Node
    span: Optional[Span] = None


@dataclass(eq=False)
class ObjectLiteral(Node):
    properties: list[PropertyPair] = field(default_factory=list)
    span: Optional[Span] = None


@dataclass(eq=False)
class FunctionExpression(Node):
    name: Optional[str]
    params: list[str]
    body: "Block"
    span: Optional[Span] = None


@dataclass(eq=False)
class MemberAccess(Node):
    """Property access; ``computed`` distinguishes bracket from dot notation."""

    obj: Node
    prop: Node  # Identifier when not computed, any expression otherwise
    computed: bool
    span: Optional[Span] = None


@dataclass(eq=False)
class Call(Node):
    callee: Node
    args: list[Node] = field(default_factory=list)
    span: Optional[Span] = None


@dataclass(eq=False)
class New(Node):
    callee: Node
    args: list[Node] = field(default_factory=list)
    span: Optional[Span] = None


@dataclass(eq=False)
class Assignment(Node):
    target: Node
    op: str  # "=", "+=", ...
    value: Node
    span: Optional[Span] = None


@dataclass(eq=False)
class Binary(Node):
    op: str
    left: Node
    right: Node
    span: Optional[Span] = None


@dataclass(eq=False)
class Unary(Node):
    op: str
    argument: Node
    prefix: bool = True
    span: Optional[Span] = None


@dataclass(eq=False)
class Conditional(Node):
    test: Node
    consequent: Node
    alternate: Node
    span: Optional[Span] = None


# --- statements ---


@dataclass(eq=False)
class VarDeclarator(Node):
    name: str
    init: Optional[Node]
    span: Optional[Span] = None


@dataclass(eq=False)
class VarDeclaration(Node):
    declarations: list[VarDeclarator]
    span: Optional[Span] = None


@dataclass(eq=False)
class FunctionDeclaration(Node):
    name: str
    params: list[str]
    body: "Block"
    span: Optional[Span] = None


@dataclass(eq=False)
class ExpressionStatement(Node):
    expression: Node
    span: Optional[Span] = None


@dataclass(eq=False)
class Return(Node):
    argument: Optional[Node] = None
    span: Optional[Span] = None


@dataclass(eq=False)
class If(Node):
    test: Node
    consequent: Node
    alternate: Optional[Node] = None
    span: Optional[Span] = None


@dataclass(eq=False)
class Block(Node):
    body: list[Node] = field(default_factory=list)
    span: Optional[Span] = None


@dataclass(eq=False)
class For(Node):
    init: Optional[Node]  # VarDeclaration or expression
    test: Optional[Node]
    update: Optional[Node]
    body: Node
    span: Optional[Span] = None


@dataclass(eq=False)
class ForIn(Node):
    target: Node  # Identifier or MemberAccess
    declares: bool  # true for `for (var k in ...)`
    iterable: Node
    body: Node
    span: Optional[Span] = None


@dataclass(eq=False)
class While(Node):
    test: Node
    body: Node
    span: Optional[Span] = None


@dataclass(eq=False)
class Break(Node):
    span: Optional[Span] = None


@dataclass(eq=False)
class Continue(Node):
    span: Optional[Span] = None


# --- ES6 module statements ---


@dataclass(frozen=True)
class ImportSpec:
    imported: str
    local: str


@dataclass(frozen=True)
class ExportSpec:
    local: str
    exported: str


@dataclass(eq=False)
class ImportNamed(Node):
    """`import {a, b as c} from "m";` — with no specifiers, `import "m";`."""

    specifiers: list[ImportSpec]
    source: str
    span: Optional[Span] = None


@dataclass(eq=False)
class ImportDefault(Node):
    local: str
    source: str
    span: Optional[Span] = None


@dataclass(eq=False)
class ExportNamed(Node):
    specifiers: list[ExportSpec]
    span: Optional[Span] = None


# --- program ---


@dataclass(eq=False)
class Program(Node):
    body: list[Node]
    directives: list[str] = field(default_factory=list)
    file: object = None  # SourceFile or None
    span: Optional[Span] = None

    def strict_mode(self) -> bool:
        return "use strict" in self.directives


# --- generic tree utilities ---


def iter_child_nodes(node: Node) -> Iterator[Node]:
    for f in fields(node):
        if f.name in ("span", "file"):
            continue
        value = getattr(node, f.name)
        if isinstance(value, Node):
            yield value
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, Node):
                    yield item


def walk(node: Node) -> Iterator[Node]:
    """Pre-order traversal of a subtree, including ``node`` itself."""
    yield node
    for child in iter_child_nodes(node):
        yield from walk(child)


def rewrite(node: Node, fn) -> Node:
    """Post-order rewrite: every subtree is passed through ``fn``.

    ``fn`` receives a node whose children were already rewritten and returns
    its replacement (often the same object). Lists and node fields are
    updated in place on the surrounding tree.
    """
    for f in fields(node):
        if f.name in ("span", "file"):
            continue
        value = getattr(node, f.name)
        if isinstance(value, Node):
            setattr(node, f.name, rewrite(value, fn))
        elif isinstance(value, list):
            for i, item in enumerate(value):
                if isinstance(item, Node):
                    value[i] = rewrite(item, fn)
    return fn(node)


_IGNORED_IN_COMPARISON = ("span", "file", "raw")


def structurally_equal(a, b) -> bool:
    """Value equality ignoring spans and literal spelling (raw text)."""
    if type(a) is not type(b):
        return False
    if not isinstance(a, Node):
        return a == b
    for f in fields(a):
        if f.name in _IGNORED_IN_COMPARISON:
            continue
        va, vb = getattr(a, f.name), getattr(b, f.name)
        if isinstance(va, Node) or isinstance(vb, Node):
            if not structurally_equal(va, vb):
                return False
        elif isinstance(va, list) and isinstance(vb, list):
            if len(va) != len(vb):
                return False
            for ia, ib in zip(va, vb):
                if isinstance(ia, Node) or isinstance(ib, Node):
                    if not structurally_equal(ia, ib):
                        return False
                elif ia != ib:
                    return False
        elif va != vb:
            return False
    return True


def spans_contained(node: Node) -> bool:
    """Check the span-containment invariant for a parsed subtree.

    Synthesized descendants (``span=None``) are skipped.
    """
    for parent in walk(node):
        if parent.span is None:
            continue
        for child in iter_child_nodes(parent):
            if child.span is None:
                continue
            if child.span[0] < parent.span[0] or child.span[1] > parent.span[1]:
                return False
    return True
