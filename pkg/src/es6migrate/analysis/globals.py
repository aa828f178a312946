"""Collection of global declarations: explicit globals, global-object
properties, top-level declarations, and implied globals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..frontend.nodes import (
    FunctionDeclaration,
    FunctionExpression,
    Node,
    Program,
    VarDeclaration,
    VarDeclarator,
)
from .imports import ModuleFormat
from .scopes import GLOBAL_BUILTINS, GLOBAL_OBJECT_NAMES, WRITE, ScopeAnalysis


@dataclass(eq=False)
class GlobalDecl:
    name: str
    span: Optional[tuple[int, int]]
    node: Node


@dataclass(eq=False)
class GlobalSets:
    """Per-file global declarations; the four maps are disjoint by site."""

    explicit: dict[str, GlobalDecl] = field(default_factory=dict)      # G
    object_props: dict[str, GlobalDecl] = field(default_factory=dict)  # O
    top_level: dict[str, GlobalDecl] = field(default_factory=dict)     # T
    implied: dict[str, GlobalDecl] = field(default_factory=dict)
    # assignments to undeclared names in strict files: probable errors
    strict_implied_reports: list[GlobalDecl] = field(default_factory=list)
    # outer function declarations of AMD files: precondition-checked but not
    # module features
    amd_outer_funcs: dict[str, GlobalDecl] = field(default_factory=dict)


def collect_globals(program: Program, format: ModuleFormat,
                    scopes: ScopeAnalysis | None = None) -> GlobalSets:
    scopes = scopes or ScopeAnalysis(program)
    sets = GlobalSets()

    if format in (ModuleFormat.NON_MODULAR, ModuleFormat.AMD):
        for decl, stmt in _unnested_declarations(program):
            if isinstance(decl, VarDeclarator):
                sets.explicit.setdefault(decl.name, GlobalDecl(decl.name, decl.span, decl))
            elif isinstance(decl, FunctionDeclaration):
                target = sets.top_level if format is ModuleFormat.NON_MODULAR else sets.amd_outer_funcs
                target.setdefault(decl.name, GlobalDecl(decl.name, decl.span, decl))

    # global object property definitions: window.x = ... / global.x = ...
    for ev in scopes.member_events:
        if (
            ev.ctx == WRITE
            and not ev.computed
            and ev.prop is not None
            and ev.base_name in GLOBAL_OBJECT_NAMES
            and ev.scope.resolve(ev.base_name) is None
        ):
            sets.object_props.setdefault(ev.prop, GlobalDecl(ev.prop, ev.node.span, ev.node))

    # implied globals: assignments whose left-hand side resolves nowhere in
    # the file's scope chain
    strict = program.strict_mode()
    for ev in scopes.ident_events:
        if ev.ctx != WRITE or ev.name in GLOBAL_BUILTINS:
            continue
        if ev.scope.resolve(ev.name) is not None:
            continue
        decl = GlobalDecl(ev.name, ev.node.span, ev.node)
        if strict:
            sets.strict_implied_reports.append(decl)
        elif ev.name not in sets.explicit and ev.name not in sets.top_level:
            sets.implied.setdefault(ev.name, decl)
    return sets


def _unnested_declarations(program: Program):
    """Var declarators and function declarations with no function ancestor."""

    def scan(node: Node, stmt: Node):
        if isinstance(node, (FunctionDeclaration, FunctionExpression)):
            if isinstance(node, FunctionDeclaration):
                yield node, stmt
            return  # do not descend into function bodies
        if isinstance(node, VarDeclaration):
            for decl in node.declarations:
                yield decl, node
        for child in node.children():
            if isinstance(child, (VarDeclarator,)):
                continue
            yield from scan(child, stmt)

    for stmt in program.body:
        yield from scan(stmt, stmt)
