"""Module-format detection and recognition of AMD/CJS import bindings."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..frontend.nodes import (
    Array,
    Call,
    ExpressionStatement,
    FunctionExpression,
    Identifier,
    Literal,
    MemberAccess,
    Node,
    ObjectLiteral,
    Program,
    VarDeclaration,
    VarDeclarator,
    walk,
)

DYNAMIC_SPECIFIER = "<dynamic>"


class ModuleFormat(Enum):
    NON_MODULAR = "NonModular"
    AMD = "AMD"
    CJS = "CJS"


def has_top_level_define(program: Program) -> bool:
    for stmt in program.body:
        if _define_call(stmt) is not None:
            return True
    return False


def _define_call(stmt: Node) -> Optional[Call]:
    if isinstance(stmt, ExpressionStatement):
        expr = stmt.expression
        if isinstance(expr, Call) and isinstance(expr.callee, Identifier) and expr.callee.name == "define":
            return expr
    return None


def has_cjs_markers(program: Program) -> bool:
    for node in walk(program):
        if isinstance(node, Call) and isinstance(node.callee, Identifier) and node.callee.name == "require":
            return True
        if isinstance(node, Identifier) and node.name == "exports":
            return True
        if (
            isinstance(node, MemberAccess)
            and not node.computed
            and isinstance(node.obj, Identifier)
            and node.obj.name == "module"
            and isinstance(node.prop, Identifier)
            and node.prop.name == "exports"
        ):
            return True
    return False


def detect_format(program: Program) -> ModuleFormat:
    """AMD when a top-level `define(...)` exists; otherwise CJS when require
    calls or module.exports/exports references exist; NonModular otherwise.
    AMD wins when both appear (the builder reports a warning)."""
    if has_top_level_define(program):
        return ModuleFormat.AMD
    if has_cjs_markers(program):
        return ModuleFormat.CJS
    return ModuleFormat.NON_MODULAR


# --- import bindings ---

NAMESPACE = "namespace"  # var v = require("m");           / AMD factory param
MEMBER = "member"        # var v = require("m").p;
SIDE_EFFECT = "side_effect"  # require("m");               / unbound AMD entry


@dataclass(eq=False)
class ImportBinding:
    specifier: str
    kind: str  # NAMESPACE | MEMBER | SIDE_EFFECT
    local: Optional[str] = None
    member: Optional[str] = None
    declarator: Optional[VarDeclarator] = None
    statement: Optional[Node] = None  # enclosing statement, when top-level
    nested: bool = False
    span: Optional[tuple[int, int]] = None


@dataclass(eq=False)
class AmdInfo:
    call: Call
    statement: ExpressionStatement
    name: Optional[str]  # explicit module id, if given
    factory: Optional[FunctionExpression]
    direct_object: Optional[ObjectLiteral]  # define({...}) form
    bindings: list[ImportBinding]


def _require_specifier(call: Call) -> str:
    if len(call.args) == 1 and isinstance(call.args[0], Literal) and call.args[0].lit_kind == "string":
        return call.args[0].value
    return DYNAMIC_SPECIFIER


def _is_require_call(node: Node) -> bool:
    return isinstance(node, Call) and isinstance(node.callee, Identifier) and node.callee.name == "require"


def collect_cjs_bindings(program: Program) -> tuple[list[ImportBinding], list[Call]]:
    """Recognize the require idioms; return the bindings plus any require
    calls in positions the method does not support."""
    bindings: list[ImportBinding] = []
    recognized: set[int] = set()

    def scan_statements(stmts: list[Node], top_level: bool) -> None:
        for stmt in stmts:
            if isinstance(stmt, VarDeclaration):
                for decl in stmt.declarations:
                    binding = _binding_from_declarator(decl, stmt, nested=not top_level)
                    if binding is not None:
                        bindings.append(binding)
                        recognized.add(id(_require_of_init(decl.init)))
            elif isinstance(stmt, ExpressionStatement) and _is_require_call(stmt.expression):
                call = stmt.expression
                bindings.append(
                    ImportBinding(
                        specifier=_require_specifier(call),
                        kind=SIDE_EFFECT,
                        statement=stmt,
                        nested=not top_level,
                        span=stmt.span,
                    )
                )
                recognized.add(id(call))

    # top-level statements first, then every nested statement list
    scan_statements(program.body, top_level=True)
    for node in walk(program):
        if node is program:
            continue
        body = getattr(node, "body", None)
        if isinstance(body, list):
            scan_statements(body, top_level=False)

    unsupported = [
        node
        for node in walk(program)
        if _is_require_call(node) and id(node) not in recognized
    ]
    return bindings, unsupported


def _require_of_init(init: Optional[Node]) -> Optional[Call]:
    if _is_require_call(init):
        return init
    if (
        isinstance(init, MemberAccess)
        and not init.computed
        and _is_require_call(init.obj)
    ):
        return init.obj
    return None


def _binding_from_declarator(decl: VarDeclarator, stmt: Node, nested: bool) -> Optional[ImportBinding]:
    init = decl.init
    if _is_require_call(init):
        return ImportBinding(
            specifier=_require_specifier(init),
            kind=NAMESPACE,
            local=decl.name,
            declarator=decl,
            statement=stmt,
            nested=nested,
            span=decl.span,
        )
    if (
        isinstance(init, MemberAccess)
        and not init.computed
        and _is_require_call(init.obj)
        and isinstance(init.prop, Identifier)
    ):
        return ImportBinding(
            specifier=_require_specifier(init.obj),
            kind=MEMBER,
            local=decl.name,
            member=init.prop.name,
            declarator=decl,
            statement=stmt,
            nested=nested,
            span=decl.span,
        )
    return None


def collect_amd_info(program: Program) -> Optional[AmdInfo]:
    """Parse the first top-level `define(...)` invocation."""
    for stmt in program.body:
        call = _define_call(stmt)
        if call is None:
            continue
        name: Optional[str] = None
        deps: list[Node] = []
        factory: Optional[FunctionExpression] = None
        direct_object: Optional[ObjectLiteral] = None
        args = list(call.args)
        if args and isinstance(args[0], Literal) and args[0].lit_kind == "string":
            name = args[0].value
            args = args[1:]
        if args and isinstance(args[0], Array):
            deps = args[0].elements
            args = args[1:]
        if args and isinstance(args[0], FunctionExpression):
            factory = args[0]
        elif args and isinstance(args[0], ObjectLiteral):
            direct_object = args[0]

        params = list(factory.params) if factory is not None else []
        bindings: list[ImportBinding] = []
        for index, entry in enumerate(deps):
            if not (isinstance(entry, Literal) and entry.lit_kind == "string"):
                continue  # non-literal entries are reported by the builder
            local = params[index] if index < len(params) else None
            bindings.append(
                ImportBinding(
                    specifier=entry.value,
                    kind=NAMESPACE if local is not None else SIDE_EFFECT,
                    local=local,
                    statement=stmt,
                    span=entry.span,
                )
            )
        return AmdInfo(
            call=call,
            statement=stmt,
            name=name,
            factory=factory,
            direct_object=direct_object,
            bindings=bindings,
        )
    return None
