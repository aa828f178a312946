"""Module-object identification, classification inputs, and bound-property
collection for AMD/CJS modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..frontend.nodes import (
    Assignment,
    Call,
    ExpressionStatement,
    FunctionDeclaration,
    FunctionExpression,
    Identifier,
    Literal,
    MemberAccess,
    New,
    Node,
    ObjectLiteral,
    Program,
    PropertyPair,
    Return,
    ThisExpression,
    VarDeclaration,
    VarDeclarator,
    walk,
)
from .imports import AmdInfo, ModuleFormat, collect_amd_info


class Instantiation(Enum):
    FUNCTION_DECL = "FunctionDecl"
    FUNCTION_EXPR = "FunctionExpr"
    EMPTY_OBJECT = "EmptyObject"
    OBJECT_LITERAL = "ObjectLiteral"
    EVALUATED_EXPRESSION = "EvaluatedExpression"
    IMPORTED = "Imported"


@dataclass(eq=False)
class BoundProperty:
    name: str
    value: Node
    site: Node  # binding ExpressionStatement, or the PropertyPair itself
    via_literal: bool


@dataclass(eq=False)
class ModuleObjectInfo:
    expr: Optional[Node]
    instantiation: Instantiation
    is_namespace: bool = False
    bound_props: list[BoundProperty] = field(default_factory=list)
    name: Optional[str] = None
    aliases: set[str] = field(default_factory=set)
    decl_stmt: Optional[Node] = None
    fn_node: Optional[Node] = None
    literal: Optional[ObjectLiteral] = None
    export_assignments: list[Node] = field(default_factory=list)
    conflicting: bool = False
    bracket_binding_sites: list[Node] = field(default_factory=list)
    nested_binding_sites: list[Node] = field(default_factory=list)
    prototype_extended: bool = False
    this_bound: bool = False
    new_used: bool = False
    returns_instance: bool = False


def _is_module_exports(node: Node) -> bool:
    return (
        isinstance(node, MemberAccess)
        and not node.computed
        and isinstance(node.obj, Identifier)
        and node.obj.name == "module"
        and isinstance(node.prop, Identifier)
        and node.prop.name == "exports"
    )


def _is_exports_ref(node: Node) -> bool:
    return _is_module_exports(node) or (isinstance(node, Identifier) and node.name == "exports")


def identify_module_object(
    program: Program,
    format: ModuleFormat,
    amd_info: Optional[AmdInfo] = None,
) -> Optional[ModuleObjectInfo]:
    """Resolve the expression exported by the module, or None when the module
    exports nothing. Conflicting whole-object assignments set ``conflicting``
    (the module is then refactored as a single export)."""
    if format is ModuleFormat.CJS:
        info = _identify_cjs(program)
    elif format is ModuleFormat.AMD:
        info = _identify_amd(program, amd_info or collect_amd_info(program))
    else:
        return None
    if info is None:
        return None
    collect_bound_properties(info, program)
    _classify_shape(info, program)
    return info


def _identify_cjs(program: Program) -> Optional[ModuleObjectInfo]:
    # whole-object assignments to module.exports (its alias `exports` can only
    # receive property bindings; reassigning it breaks the CJS alias and is
    # caught by the preconditions)
    assignments: list[tuple[Node, Assignment]] = []
    for node in walk(program):
        if isinstance(node, Assignment) and node.op == "=" and _is_module_exports(node.target):
            assignments.append((node, node))
    if assignments:
        exprs = [a.value for _, a in assignments]
        conflicting = len(assignments) > 1 and any(
            not _same_source_object(exprs[0], e) for e in exprs[1:]
        )
        value = exprs[-1]
        info = _resolve_value(value, program.body)
        info.export_assignments = [a for _, a in assignments]
        info.conflicting = conflicting
        _collect_aliases(info, program.body)
        return info

    # alias form only: exports.p = ... / module.exports.p = ... imply an
    # empty-object module object
    for node in walk(program):
        if (
            isinstance(node, MemberAccess)
            and not node.computed
            and _is_exports_ref(node.obj)
        ):
            info = ModuleObjectInfo(expr=None, instantiation=Instantiation.EMPTY_OBJECT)
            _collect_aliases(info, program.body)
            return info
    return None


def _identify_amd(program: Program, amd: Optional[AmdInfo]) -> Optional[ModuleObjectInfo]:
    if amd is None:
        return None
    if amd.direct_object is not None:
        info = _resolve_value(amd.direct_object, program.body)
        return info
    if amd.factory is None:
        return None
    body = amd.factory.body.body
    for stmt in body:
        if isinstance(stmt, Return) and stmt.argument is not None:
            info = _resolve_value(stmt.argument, body)
            info.export_assignments = [stmt]
            _collect_aliases(info, body)
            return info
    return None


def _same_source_object(a: Node, b: Node) -> bool:
    return isinstance(a, Identifier) and isinstance(b, Identifier) and a.name == b.name


def _resolve_value(value: Node, body: list[Node]) -> ModuleObjectInfo:
    if isinstance(value, Identifier):
        decl_stmt, decl = _find_decl(value.name, body)
        info = _info_for_decl(value, decl)
        info.name = value.name
        info.aliases.add(value.name)
        info.decl_stmt = decl_stmt
        return info
    if isinstance(value, ObjectLiteral):
        inst = Instantiation.EMPTY_OBJECT if not value.properties else Instantiation.OBJECT_LITERAL
        return ModuleObjectInfo(expr=value, instantiation=inst, literal=value)
    if isinstance(value, FunctionExpression):
        return ModuleObjectInfo(expr=value, instantiation=Instantiation.FUNCTION_EXPR, fn_node=value)
    if isinstance(value, Call) and isinstance(value.callee, Identifier) and value.callee.name == "require":
        return ModuleObjectInfo(expr=value, instantiation=Instantiation.IMPORTED)
    if isinstance(value, Assignment):
        # chained exports like `module.exports = X = ...`
        return _resolve_value(value.value, body)
    return ModuleObjectInfo(expr=value, instantiation=Instantiation.EVALUATED_EXPRESSION)


def _find_decl(name: str, body: list[Node]) -> tuple[Optional[Node], Optional[Node]]:
    for stmt in body:
        if isinstance(stmt, FunctionDeclaration) and stmt.name == name:
            return stmt, stmt
        if isinstance(stmt, VarDeclaration):
            for decl in stmt.declarations:
                if decl.name == name:
                    return stmt, decl
    return None, None


def _info_for_decl(value: Identifier, decl: Optional[Node]) -> ModuleObjectInfo:
    if isinstance(decl, FunctionDeclaration):
        return ModuleObjectInfo(expr=value, instantiation=Instantiation.FUNCTION_DECL, fn_node=decl)
    if isinstance(decl, VarDeclarator):
        init = decl.init
        if isinstance(init, Assignment):  # var x = module.exports = <expr>
            init = init.value
        if isinstance(init, ObjectLiteral):
            inst = Instantiation.EMPTY_OBJECT if not init.properties else Instantiation.OBJECT_LITERAL
            info = ModuleObjectInfo(expr=value, instantiation=inst, literal=init)
            return info
        if isinstance(init, FunctionExpression):
            return ModuleObjectInfo(expr=value, instantiation=Instantiation.FUNCTION_EXPR, fn_node=init)
        if isinstance(init, Call) and isinstance(init.callee, Identifier) and init.callee.name == "require":
            return ModuleObjectInfo(expr=value, instantiation=Instantiation.IMPORTED)
    return ModuleObjectInfo(expr=value, instantiation=Instantiation.EVALUATED_EXPRESSION)


def _collect_aliases(info: ModuleObjectInfo, body: list[Node]) -> None:
    """Local names referring to the module object: the declared name plus
    `var y = <alias>` / `var y = module.exports [...]` declarators."""
    changed = True
    while changed:
        changed = False
        for stmt in body:
            if not isinstance(stmt, VarDeclaration):
                continue
            for decl in stmt.declarations:
                if decl.name in info.aliases or decl.init is None:
                    continue
                init = decl.init
                if isinstance(init, Assignment) and _is_module_exports(init.target):
                    info.aliases.add(decl.name)
                    changed = True
                elif _is_module_exports(init):
                    info.aliases.add(decl.name)
                    changed = True
                elif isinstance(init, Identifier) and init.name in info.aliases:
                    info.aliases.add(decl.name)
                    changed = True


def _binding_receiver(info: ModuleObjectInfo, target: Node) -> bool:
    """Is ``target.obj`` a reference to the module object?"""
    obj = target.obj
    if isinstance(obj, Identifier) and obj.name in info.aliases:
        return True
    if _is_exports_ref(obj):
        return True
    return False


def collect_bound_properties(info: ModuleObjectInfo, program_or_body) -> list[BoundProperty]:
    """Gather B: dot-notation bindings on the module object (top-level
    statements only) plus object-literal pairs. Bracket bindings and nested
    bindings are recorded separately for the precondition checks; prototype
    bindings stay with the module object."""
    info.bound_props = []
    info.bracket_binding_sites = []
    info.nested_binding_sites = []
    seen: set[str] = set()

    if info.literal is not None:
        for pair in info.literal.properties:
            name = _pair_key_name(pair)
            if name is not None and name not in seen:
                seen.add(name)
                info.bound_props.append(
                    BoundProperty(name=name, value=pair.value, site=pair, via_literal=True)
                )

    if isinstance(program_or_body, Program):
        top_statements = list(program_or_body.body)
        root = program_or_body
    else:
        top_statements = list(program_or_body)
        root = None

    # AMD module objects are bound inside the factory body
    if root is not None and info.export_assignments:
        first = info.export_assignments[0]
        if isinstance(first, Return):
            for node in walk(root):
                body = getattr(node, "body", None)
                if isinstance(body, list) and first in body:
                    top_statements = list(body)
                    break

    top_set = {id(s) for s in top_statements}
    scan_root = root if root is not None else None

    def classify_site(stmt: Node, assign: Assignment) -> None:
        target = assign.target
        if not isinstance(target, MemberAccess):
            return
        if target.computed:
            if _binding_receiver(info, target):
                info.bracket_binding_sites.append(stmt)
            return
        if _is_prototype_binding(info, target):
            info.prototype_extended = True
            return
        if _binding_receiver(info, target):
            if id(stmt) not in top_set:
                info.nested_binding_sites.append(stmt)
                return
            name = target.prop.name
            if name not in seen:
                seen.add(name)
                info.bound_props.append(
                    BoundProperty(name=name, value=assign.value, site=stmt, via_literal=False)
                )

    nodes = walk(scan_root) if scan_root is not None else iter(
        n for stmt in top_statements for n in walk(stmt)
    )
    for node in nodes:
        if isinstance(node, ExpressionStatement) and isinstance(node.expression, Assignment):
            classify_site(node, node.expression)
    return info.bound_props


def _pair_key_name(pair: PropertyPair) -> Optional[str]:
    if isinstance(pair.key, Identifier):
        return pair.key.name
    if isinstance(pair.key, Literal) and pair.key.lit_kind == "string":
        return pair.key.value
    return None


def _is_prototype_binding(info: ModuleObjectInfo, target: MemberAccess) -> bool:
    # X.prototype = ... counts too
    if (
        isinstance(target.obj, Identifier)
        and target.obj.name in info.aliases
        and not target.computed
        and isinstance(target.prop, Identifier)
        and target.prop.name == "prototype"
    ):
        return True
    obj = target.obj
    return (
        isinstance(obj, MemberAccess)
        and not obj.computed
        and isinstance(obj.obj, Identifier)
        and obj.obj.name in info.aliases
        and isinstance(obj.prop, Identifier)
        and obj.prop.name == "prototype"
    )


def _classify_shape(info: ModuleObjectInfo, program: Program) -> None:
    """Namespace detection and the factory-classification inputs."""
    if info.instantiation in (Instantiation.EMPTY_OBJECT, Instantiation.OBJECT_LITERAL):
        info.is_namespace = True
    elif info.instantiation in (Instantiation.FUNCTION_DECL, Instantiation.FUNCTION_EXPR):
        fn = info.fn_node
        empty_body = fn is not None and not fn.body.body
        info.is_namespace = empty_body

    fn = info.fn_node
    if fn is not None:
        info.this_bound = _binds_this_props(fn)
        info.returns_instance = _returns_new(fn)
    if info.aliases:
        for node in walk(program):
            if isinstance(node, New) and isinstance(node.callee, Identifier) and node.callee.name in info.aliases:
                info.new_used = True
                break


def _binds_this_props(fn: Node) -> bool:
    def scan(node: Node) -> bool:
        for child in node.children():
            if isinstance(child, (FunctionDeclaration, FunctionExpression)):
                continue
            if (
                isinstance(child, Assignment)
                and isinstance(child.target, MemberAccess)
                and isinstance(child.target.obj, ThisExpression)
            ):
                return True
            if scan(child):
                return True
        return False

    return scan(fn.body)


def _returns_new(fn: Node) -> bool:
    def scan(node: Node) -> bool:
        for child in node.children():
            if isinstance(child, (FunctionDeclaration, FunctionExpression)):
                continue
            if isinstance(child, Return) and isinstance(child.argument, New):
                return True
            if scan(child):
                return True
        return False

    return scan(fn.body)
