"""Scope tree construction and reference-event collection.

ES5 scoping: ``var`` and function declarations are hoisted to the nearest
function (or program) scope; blocks do not introduce scopes. The event pass
separates whole-value identifier references from member accesses on an
identifier base, which is what the dependency and module-object analyses key
on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..frontend.nodes import (
    Array,
    Assignment,
    Binary,
    Block,
    Call,
    Conditional,
    ExpressionStatement,
    For,
    ForIn,
    FunctionDeclaration,
    FunctionExpression,
    Identifier,
    If,
    Literal,
    MemberAccess,
    New,
    Node,
    ObjectLiteral,
    Program,
    PropertyPair,
    Return,
    ThisExpression,
    Unary,
    VarDeclaration,
    VarDeclarator,
    While,
)

READ = "read"
WRITE = "write"
CALL = "call"
DELETE = "delete"


@dataclass(eq=False)
class Scope:
    kind: str  # "program" | "function"
    node: Node
    parent: Optional["Scope"] = None
    decls: dict[str, Node] = field(default_factory=dict)
    children: list["Scope"] = field(default_factory=list)

    def declare(self, name: str, node: Node) -> None:
        self.decls.setdefault(name, node)

    def resolve(self, name: str) -> Optional["Scope"]:
        scope: Optional[Scope] = self
        while scope is not None:
            if name in scope.decls:
                return scope
            scope = scope.parent
        return None


@dataclass(eq=False)
class IdentEvent:
    """A whole-value reference to a name (never a member-access base)."""

    node: Identifier
    name: str
    scope: Scope
    ctx: str


@dataclass(eq=False)
class MemberEvent:
    """A property access whose base is a plain identifier."""

    node: MemberAccess
    base: Identifier
    base_name: str
    scope: Scope
    prop: Optional[str]  # None for bracket (computed) accesses
    ctx: str
    computed: bool


@dataclass(eq=False)
class FunctionInfo:
    node: Node  # FunctionDeclaration | FunctionExpression
    scope: Scope
    uses_this: bool


class ScopeAnalysis:
    def __init__(self, program: Program):
        self.program = program
        self.top = Scope(kind="program", node=program)
        self.ident_events: list[IdentEvent] = []
        self.member_events: list[MemberEvent] = []
        self.functions: list[FunctionInfo] = []
        self._scope_of: dict[int, Scope] = {}
        self._build(program, self.top)
        self._visit_body(program.body, self.top)

    # --- declaration pass ---

    def _build(self, fn_node: Node, scope: Scope) -> None:
        body = fn_node.body if isinstance(fn_node, (Program, FunctionDeclaration, FunctionExpression)) else fn_node
        if isinstance(fn_node, (FunctionDeclaration, FunctionExpression)):
            for param in fn_node.params:
                scope.declare(param, fn_node)
            scope.declare("arguments", fn_node)
            if isinstance(fn_node, FunctionExpression) and fn_node.name:
                scope.declare(fn_node.name, fn_node)
            body = fn_node.body.body
        elif isinstance(fn_node, Program):
            body = fn_node.body
        self._scope_of[id(fn_node)] = scope
        for stmt in body:
            self._hoist(stmt, scope)

    def _hoist(self, node: Node, scope: Scope) -> None:
        if isinstance(node, FunctionDeclaration):
            scope.declare(node.name, node)
            self._enter_function(node, scope)
            return
        if isinstance(node, FunctionExpression):
            self._enter_function(node, scope)
            return
        if isinstance(node, VarDeclarator):
            scope.declare(node.name, node)
        if isinstance(node, ForIn) and node.declares and isinstance(node.target, Identifier):
            scope.declare(node.target.name, node)
        for child in node.children():
            self._hoist(child, scope)

    def _enter_function(self, fn_node: Node, parent: Scope) -> None:
        child = Scope(kind="function", node=fn_node, parent=parent)
        parent.children.append(child)
        self._build(fn_node, child)
        self.functions.append(
            FunctionInfo(node=fn_node, scope=child, uses_this=_uses_own_this(fn_node))
        )

    def scope_of(self, fn_node: Node) -> Scope:
        return self._scope_of[id(fn_node)]

    # --- reference pass ---

    def _visit_body(self, body: list[Node], scope: Scope) -> None:
        for stmt in body:
            self._visit(stmt, scope, READ)

    def _visit(self, node: Optional[Node], scope: Scope, ctx: str) -> None:
        if node is None:
            return
        if isinstance(node, Identifier):
            self.ident_events.append(IdentEvent(node=node, name=node.name, scope=scope, ctx=ctx))
            return
        if isinstance(node, MemberAccess):
            self._visit_member(node, scope, ctx)
            return
        if isinstance(node, Assignment):
            self._visit_target(node.target, scope)
            self._visit(node.value, scope, READ)
            return
        if isinstance(node, Unary):
            if node.op in ("++", "--"):
                self._visit_target(node.argument, scope)
            elif node.op == "delete":
                self._visit(node.argument, scope, DELETE)
            else:
                self._visit(node.argument, scope, READ)
            return
        if isinstance(node, (Call, New)):
            callee = node.callee
            if isinstance(callee, Identifier):
                self.ident_events.append(
                    IdentEvent(node=callee, name=callee.name, scope=scope, ctx=CALL)
                )
            elif isinstance(callee, MemberAccess):
                self._visit_member(callee, scope, CALL)
            else:
                self._visit(callee, scope, READ)
            for arg in node.args:
                self._visit(arg, scope, READ)
            return
        if isinstance(node, (FunctionDeclaration, FunctionExpression)):
            self._visit_body(node.body.body, self.scope_of(node))
            return
        if isinstance(node, PropertyPair):
            if isinstance(node.key, Literal):
                pass  # literal keys are not references
            self._visit(node.value, scope, READ)
            return
        if isinstance(node, VarDeclarator):
            self._visit(node.init, scope, READ)
            return
        if isinstance(node, ForIn):
            if not node.declares:
                self._visit_target(node.target, scope)
            self._visit(node.iterable, scope, READ)
            self._visit(node.body, scope, READ)
            return
        if isinstance(node, (Program, Block, VarDeclaration, ExpressionStatement, Return, If,
                             For, While, Binary, Conditional, Array, ObjectLiteral)):
            for child in node.children():
                self._visit(child, scope, READ)
            return
        # remaining kinds (literals, this, break/continue, import/export) carry
        # no identifier references
        for child in node.children():
            self._visit(child, scope, READ)

    def _visit_member(self, node: MemberAccess, scope: Scope, ctx: str) -> None:
        if isinstance(node.obj, Identifier):
            prop = node.prop.name if (not node.computed and isinstance(node.prop, Identifier)) else None
            self.member_events.append(
                MemberEvent(
                    node=node,
                    base=node.obj,
                    base_name=node.obj.name,
                    scope=scope,
                    prop=prop,
                    ctx=ctx,
                    computed=node.computed,
                )
            )
        else:
            self._visit(node.obj, scope, READ)
        if node.computed:
            self._visit(node.prop, scope, READ)

    def _visit_target(self, target: Node, scope: Scope) -> None:
        if isinstance(target, Identifier):
            self.ident_events.append(
                IdentEvent(node=target, name=target.name, scope=scope, ctx=WRITE)
            )
        elif isinstance(target, MemberAccess):
            self._visit_member(target, scope, WRITE)
        else:
            self._visit(target, scope, READ)

    # --- queries ---

    def free_ident_events(self) -> Iterator[IdentEvent]:
        """Whole-value references that resolve to no declaration in the file."""
        for ev in self.ident_events:
            if ev.scope.resolve(ev.name) is None:
                yield ev

    def events_for(self, name: str, declared_in: Scope):
        """All ident/member events on ``name`` that resolve to ``declared_in``."""
        idents = [
            ev for ev in self.ident_events
            if ev.name == name and ev.scope.resolve(name) is declared_in
        ]
        members = [
            ev for ev in self.member_events
            if ev.base_name == name and ev.scope.resolve(name) is declared_in
        ]
        return idents, members


def _uses_own_this(fn_node: Node) -> bool:
    """True when the function's own body (nested functions excluded)
    references ``this``."""

    def scan(node: Node) -> bool:
        for child in node.children():
            if isinstance(child, ThisExpression):
                return True
            if isinstance(child, (FunctionDeclaration, FunctionExpression)):
                continue
            if scan(child):
                return True
        return False

    return scan(fn_node.body)


# Names that resolve against the host environment rather than project code.
GLOBAL_BUILTINS = frozenset({
    "Array", "ArrayBuffer", "Boolean", "Buffer", "DataView", "Date", "Error",
    "EvalError", "Float32Array", "Float64Array", "Function", "Infinity",
    "Int16Array", "Int32Array", "Int8Array", "JSON", "Map", "Math", "NaN",
    "Number", "Object", "Promise", "Proxy", "RangeError", "ReferenceError",
    "Reflect", "RegExp", "Set", "String", "Symbol", "SyntaxError", "TypeError",
    "URIError", "Uint16Array", "Uint32Array", "Uint8Array", "WeakMap",
    "WeakSet", "XMLHttpRequest", "alert", "arguments", "atob", "btoa",
    "clearInterval", "clearTimeout", "confirm", "console", "decodeURI",
    "decodeURIComponent", "define", "document", "encodeURI",
    "encodeURIComponent", "escape", "eval", "exports", "fetch", "global",
    "globalThis", "history", "isFinite", "isNaN", "localStorage", "location",
    "module", "navigator", "parseFloat", "parseInt", "process", "prompt",
    "require", "requirejs", "sessionStorage", "setInterval", "setTimeout",
    "undefined", "unescape", "window",
})

#: identifiers that name the platform global object
GLOBAL_OBJECT_NAMES = frozenset({"window", "global", "globalThis"})
