"""Refactoring precondition evaluation.

Three families: global-declaration rules (project-wide, abort on violation),
module-object destructuring rules (degrade the module to a single export),
and module-format rules (skip the offending file).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..frontend.nodes import (
    Array,
    Assignment,
    Call,
    ExpressionStatement,
    FunctionDeclaration,
    FunctionExpression,
    Identifier,
    MemberAccess,
    New,
    Node,
    Program,
    PropertyPair,
    Return,
    Unary,
    walk,
)
from .globals import GlobalSets
from .imports import AmdInfo, ImportBinding, ModuleFormat
from .module_object import ModuleObjectInfo
from .scopes import ScopeAnalysis


class Family(Enum):
    GLOBAL_DECLS = "GlobalDecls"
    DESTRUCTURING = "Destructuring"
    MODULE_FORMAT = "ModuleFormat"


class Rule(Enum):
    SINGLE_INTRODUCTION = "SingleIntroduction"
    UNIQUE_TOP_LEVEL_FUNCTIONS = "UniqueTopLevelFunctions"
    DOT_NOTATION = "DotNotation"
    NO_FULL_REFERENCE = "NoFullReference"
    NO_MODIFICATION = "NoModification"
    THIS_IN_NON_STRICT = "ThisInNonStrict"
    TOP_LEVEL_IMPORTS = "TopLevelImports"
    UNSUPPORTED_IMPORT = "UnsupportedImport"


_RULE_FAMILY = {
    Rule.SINGLE_INTRODUCTION: Family.GLOBAL_DECLS,
    Rule.UNIQUE_TOP_LEVEL_FUNCTIONS: Family.GLOBAL_DECLS,
    Rule.DOT_NOTATION: Family.DESTRUCTURING,
    Rule.NO_FULL_REFERENCE: Family.DESTRUCTURING,
    Rule.NO_MODIFICATION: Family.DESTRUCTURING,
    Rule.THIS_IN_NON_STRICT: Family.MODULE_FORMAT,
    Rule.TOP_LEVEL_IMPORTS: Family.MODULE_FORMAT,
    Rule.UNSUPPORTED_IMPORT: Family.MODULE_FORMAT,
}


@dataclass(eq=False)
class PreconditionViolation:
    rule: Rule
    module: str  # module path
    message: str
    site: Optional[tuple[int, int]] = None

    @property
    def family(self) -> Family:
        return _RULE_FAMILY[self.rule]

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "rule": self.rule.value,
            "path": self.module,
            "span": list(self.site) if self.site else None,
            "message": self.message,
        }


# --- module object destructuring preconditions ---


def check_destructuring_preconditions(
    info: ModuleObjectInfo, program: Program, path: str = ""
) -> list[PreconditionViolation]:
    violations: list[PreconditionViolation] = []

    if info.bracket_binding_sites:
        site = info.bracket_binding_sites[0]
        violations.append(
            PreconditionViolation(
                rule=Rule.DOT_NOTATION,
                module=path,
                site=site.span,
                message="module object properties must be defined with dot notation "
                        f"({len(info.bracket_binding_sites)} bracket binding(s))",
            )
        )

    full_ref = _find_full_reference(info, program)
    if full_ref is not None:
        violations.append(
            PreconditionViolation(
                rule=Rule.NO_FULL_REFERENCE,
                module=path,
                site=full_ref.span,
                message="module object is fully referenced beyond its export",
            )
        )

    modification = _find_modification(info, program)
    if modification is not None:
        node, why = modification
        violations.append(
            PreconditionViolation(
                rule=Rule.NO_MODIFICATION,
                module=path,
                site=node.span,
                message=f"module object is modified after export: {why}",
            )
        )
    return violations


def _alias_ref(info: ModuleObjectInfo, node: Node) -> bool:
    return isinstance(node, Identifier) and node.name in info.aliases


def _find_full_reference(info: ModuleObjectInfo, program: Program) -> Optional[Node]:
    if not info.aliases:
        return None
    exports = set(map(id, info.export_assignments))
    alias_decl_inits = set()
    for node in walk(program):
        if isinstance(node, (Call, New)):
            for arg in node.args:
                if _alias_ref(info, arg):
                    return arg
        elif isinstance(node, Return) and id(node) not in exports:
            if _alias_ref(info, node.argument):
                return node.argument
        elif isinstance(node, Assignment) and id(node) not in exports:
            if _alias_ref(info, node.value) and not _is_export_target(node.target):
                return node.value
        elif isinstance(node, Array):
            for el in node.elements:
                if _alias_ref(info, el):
                    return el
        elif isinstance(node, PropertyPair):
            if _alias_ref(info, node.value):
                return node.value
    return None


def _is_export_target(target: Node) -> bool:
    return (
        isinstance(target, MemberAccess)
        and not target.computed
        and isinstance(target.obj, Identifier)
        and target.obj.name == "module"
        and isinstance(target.prop, Identifier)
        and target.prop.name == "exports"
    )


def _find_modification(info: ModuleObjectInfo, program: Program) -> Optional[tuple[Node, str]]:
    exports = set(map(id, info.export_assignments))
    for node in walk(program):
        if isinstance(node, Assignment):
            if _alias_ref(info, node.target) and id(node) not in exports:
                return node, f"binding {node.target.name!r} is reassigned"
            if isinstance(node.target, Identifier) and node.target.name == "exports":
                return node, "whole reassignment of `exports` breaks the CJS alias"
        elif isinstance(node, Unary) and node.op == "delete":
            arg = node.argument
            if isinstance(arg, MemberAccess) and _alias_ref(info, arg.obj):
                return node, "a module object property is deleted"
            if _alias_ref(info, arg):
                return node, "the module object binding is deleted"
    if info.conflicting:
        return info.export_assignments[-1], "conflicting whole-object export assignments"
    if info.nested_binding_sites:
        return info.nested_binding_sites[0], "property bound outside the module's top-level scope"
    return None


# --- global declaration preconditions ---


def check_global_preconditions(
    per_module: dict[str, GlobalSets],
    implied_intros: dict[str, list[str]] | None = None,
) -> list[PreconditionViolation]:
    """``per_module`` maps module path to its global sets; ``implied_intros``
    maps implied names to the modules that introduce them (after cross-file
    filtering)."""
    violations: list[PreconditionViolation] = []

    var_sites: dict[str, list[str]] = {}
    fn_sites: dict[str, list[str]] = {}
    for path in sorted(per_module):
        sets = per_module[path]
        for name in sets.explicit:
            var_sites.setdefault(name, []).append(path)
        for name in {**sets.top_level, **sets.amd_outer_funcs}:
            fn_sites.setdefault(name, []).append(path)
    for name, modules in (implied_intros or {}).items():
        for path in modules:
            existing = var_sites.setdefault(name, [])
            if path not in existing:
                existing.append(path)

    for name in sorted(var_sites):
        paths = sorted(set(var_sites[name]) | set(fn_sites.get(name, [])))
        if len(paths) > 1:
            first = per_module[paths[0]]
            decl = first.explicit.get(name) or first.implied.get(name) or first.top_level.get(name)
            violations.append(
                PreconditionViolation(
                    rule=Rule.SINGLE_INTRODUCTION,
                    module=paths[0],
                    site=decl.span if decl else None,
                    message=f"global {name!r} is introduced in multiple files: " + ", ".join(paths),
                )
            )
    for name in sorted(fn_sites):
        paths = sorted(set(fn_sites[name]))
        if len(paths) > 1:
            decl = (per_module[paths[0]].top_level.get(name)
                    or per_module[paths[0]].amd_outer_funcs.get(name))
            violations.append(
                PreconditionViolation(
                    rule=Rule.UNIQUE_TOP_LEVEL_FUNCTIONS,
                    module=paths[0],
                    site=decl.span if decl else None,
                    message=f"top-level function {name!r} is declared in multiple files: "
                            + ", ".join(paths),
                )
            )
    return violations


# --- module format preconditions ---


def check_format_preconditions(
    program: Program,
    format: ModuleFormat,
    scopes: ScopeAnalysis | None = None,
    bindings: list[ImportBinding] | None = None,
    unsupported_requires: list[Node] | None = None,
    amd_info: AmdInfo | None = None,
    path: str = "",
) -> list[PreconditionViolation]:
    scopes = scopes or ScopeAnalysis(program)
    violations: list[PreconditionViolation] = []

    if not program.strict_mode():
        offender = _plain_function_using_this(program, scopes)
        if offender is not None:
            violations.append(
                PreconditionViolation(
                    rule=Rule.THIS_IN_NON_STRICT,
                    module=path,
                    site=offender.span,
                    message="`this` is referenced by a function that is neither a method "
                            "nor a constructor in a non-strict file",
                )
            )

    nested = [b for b in (bindings or []) if b.nested]
    if format is ModuleFormat.CJS and nested:
        violations.append(
            PreconditionViolation(
                rule=Rule.TOP_LEVEL_IMPORTS,
                module=path,
                site=nested[0].span,
                message="`require` must be invoked in the module's top-level scope",
            )
        )
    if format is ModuleFormat.AMD and amd_info is not None and amd_info.factory is not None:
        ret = _nested_factory_return(amd_info.factory)
        if ret is not None:
            violations.append(
                PreconditionViolation(
                    rule=Rule.TOP_LEVEL_IMPORTS,
                    module=path,
                    site=ret.span,
                    message="the AMD factory return must be at the factory's top level",
                )
            )
    for node in unsupported_requires or []:
        violations.append(
            PreconditionViolation(
                rule=Rule.UNSUPPORTED_IMPORT,
                module=path,
                site=node.span,
                message="`require` is used in a form the migration does not support",
            )
        )
        break
    return violations


def _plain_function_using_this(program: Program, scopes: ScopeAnalysis) -> Optional[Node]:
    method_like: set[int] = set()
    constructor_names: set[str] = set()
    for node in walk(program):
        if isinstance(node, PropertyPair) and isinstance(node.value, (FunctionExpression,)):
            method_like.add(id(node.value))
        elif isinstance(node, Assignment) and isinstance(node.target, MemberAccess):
            if isinstance(node.value, FunctionExpression):
                method_like.add(id(node.value))
        elif isinstance(node, New) and isinstance(node.callee, Identifier):
            constructor_names.add(node.callee.name)

    fe_names: dict[int, str] = {}
    for node in walk(program):
        if isinstance(node, Assignment) and isinstance(node.target, Identifier) \
                and isinstance(node.value, FunctionExpression):
            fe_names[id(node.value)] = node.target.name
    for fn in scopes.functions:
        if not fn.uses_this:
            continue
        node = fn.node
        if id(node) in method_like:
            continue
        name = None
        if isinstance(node, FunctionDeclaration):
            name = node.name
        elif isinstance(node, FunctionExpression):
            name = node.name or fe_names.get(id(node)) or _var_bound_name(program, node)
        if name is not None and name in constructor_names:
            continue
        return node
    return None


def _var_bound_name(program: Program, fn: FunctionExpression) -> Optional[str]:
    from ..frontend.nodes import VarDeclarator

    for node in walk(program):
        if isinstance(node, VarDeclarator) and node.init is fn:
            return node.name
    return None


def _nested_factory_return(factory: FunctionExpression) -> Optional[Return]:
    top = set(map(id, factory.body.body))

    def scan(node: Node) -> Optional[Return]:
        for child in node.children():
            if isinstance(child, (FunctionDeclaration, FunctionExpression)):
                continue
            if isinstance(child, Return) and id(child) not in top:
                return child
            found = scan(child)
            if found is not None:
                return found
        return None

    return scan(factory.body)
