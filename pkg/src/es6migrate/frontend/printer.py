"""Deterministic code printer.

Style: semicolon-terminated statements, double-quoted strings, two-space
indent, one statement per line. Bracket member accesses never print as dot
accesses and vice versa. ``parse(print(p))`` is structurally equal to ``p``.
"""

from __future__ import annotations

from ..errors import PrintError
from .nodes import (
    Array,
    Assignment,
    Binary,
    Block,
    Break,
    Call,
    Conditional,
    Continue,
    ExportNamed,
    ExpressionStatement,
    For,
    ForIn,
    FunctionDeclaration,
    FunctionExpression,
    Identifier,
    If,
    ImportDefault,
    ImportNamed,
    Literal,
    MemberAccess,
    New,
    Node,
    ObjectLiteral,
    Program,
    Return,
    ThisExpression,
    Unary,
    VarDeclaration,
    While,
)

_SEQ = 1
_ASSIGN = 2
_COND = 3
_BINARY = {
    "||": 4, "&&": 5, "|": 6, "^": 7, "&": 8,
    "==": 9, "!=": 9, "===": 9, "!==": 9,
    "<": 10, ">": 10, "<=": 10, ">=": 10, "instanceof": 10, "in": 10,
    "<<": 11, ">>": 11, ">>>": 11,
    "+": 12, "-": 12,
    "*": 13, "/": 13, "%": 13,
}
_UNARY = 14
_POSTFIX = 15
_NEW_NO_ARGS = 17
_CALL_MEMBER = 18
_PRIMARY = 20

_WORD_UNARY = {"typeof", "void", "delete"}

_INDENT = "  "


def print_program(program: Program) -> str:
    lines: list[str] = []
    for stmt in program.body:
        _stmt(stmt, 0, lines)
    return "\n".join(lines) + ("\n" if lines else "")


def print_statement(node: Node) -> str:
    lines: list[str] = []
    _stmt(node, 0, lines)
    return "\n".join(lines)


def _pad(indent: int) -> str:
    return _INDENT * indent


def _stmt(node: Node, indent: int, lines: list[str]) -> None:
    pad = _pad(indent)
    if isinstance(node, VarDeclaration):
        lines.append(pad + _var_fragment(node, indent) + ";")
    elif isinstance(node, FunctionDeclaration):
        if not node.name:
            raise PrintError("function declaration without a name")
        lines.append(pad + _function_text(node.name, node.params, node.body, indent))
    elif isinstance(node, ExpressionStatement):
        text = _expr(node.expression, _SEQ, indent)
        if text.startswith(("function", "{")):
            text = "(" + text + ")"
        lines.append(pad + text + ";")
    elif isinstance(node, Return):
        if node.argument is None:
            lines.append(pad + "return;")
        else:
            lines.append(pad + "return " + _expr(node.argument, _SEQ, indent) + ";")
    elif isinstance(node, If):
        _if_stmt(node, indent, lines, lead="")
    elif isinstance(node, Block):
        lines.append(pad + "{")
        for child in node.body:
            _stmt(child, indent + 1, lines)
        lines.append(pad + "}")
    elif isinstance(node, For):
        init = ""
        if isinstance(node.init, VarDeclaration):
            init = _var_fragment(node.init, indent)
        elif node.init is not None:
            init = _expr(node.init, _SEQ, indent)
        test = _expr(node.test, _SEQ, indent) if node.test is not None else ""
        update = _expr(node.update, _SEQ, indent) if node.update is not None else ""
        _loop(f"for ({init}; {test}; {update})", node.body, indent, lines)
    elif isinstance(node, ForIn):
        target = _expr(node.target, _CALL_MEMBER, indent)
        if node.declares:
            target = "var " + target
        _loop(f"for ({target} in {_expr(node.iterable, _SEQ, indent)})", node.body, indent, lines)
    elif isinstance(node, While):
        _loop(f"while ({_expr(node.test, _SEQ, indent)})", node.body, indent, lines)
    elif isinstance(node, Break):
        lines.append(pad + "break;")
    elif isinstance(node, Continue):
        lines.append(pad + "continue;")
    elif isinstance(node, ImportNamed):
        if not node.specifiers:
            lines.append(pad + f'import "{node.source}";')
        else:
            parts = [
                s.imported if s.imported == s.local else f"{s.imported} as {s.local}"
                for s in node.specifiers
            ]
            lines.append(pad + "import {" + ", ".join(parts) + f'}} from "{node.source}";')
    elif isinstance(node, ImportDefault):
        if not node.local:
            raise PrintError("default import without a local name")
        lines.append(pad + f'import {node.local} from "{node.source}";')
    elif isinstance(node, ExportNamed):
        if not node.specifiers:
            raise PrintError("export statement without exported names")
        parts = [
            s.local if s.local == s.exported else f"{s.local} as {s.exported}"
            for s in node.specifiers
        ]
        lines.append(pad + "export {" + ", ".join(parts) + "};")
    else:
        raise PrintError(f"cannot print {type(node).__name__} as a statement")


def _loop(header: str, body: Node, indent: int, lines: list[str]) -> None:
    pad = _pad(indent)
    if isinstance(body, Block):
        if not body.body:
            lines.append(pad + header + " {}")
            return
        lines.append(pad + header + " {")
        for child in body.body:
            _stmt(child, indent + 1, lines)
        lines.append(pad + "}")
    else:
        lines.append(pad + header)
        _stmt(body, indent + 1, lines)


def _if_stmt(node: If, indent: int, lines: list[str], lead: str) -> None:
    pad = _pad(indent)
    header = lead + "if (" + _expr(node.test, _SEQ, indent) + ")"
    consequent = node.consequent
    # Brace a bare consequent that ends in an else-less `if`: the dangling
    # else would otherwise re-attach to the inner statement on re-parse.
    if node.alternate is not None and not isinstance(consequent, Block) and _dangles(consequent):
        consequent = Block(body=[consequent])
    if isinstance(consequent, Block):
        lines.append(pad + header + " {")
        for child in consequent.body:
            _stmt(child, indent + 1, lines)
        if node.alternate is None:
            lines.append(pad + "}")
        elif isinstance(node.alternate, If):
            _if_stmt(node.alternate, indent, lines, lead="} else ")
        elif isinstance(node.alternate, Block):
            lines.append(pad + "} else {")
            for child in node.alternate.body:
                _stmt(child, indent + 1, lines)
            lines.append(pad + "}")
        else:
            lines.append(pad + "} else")
            _stmt(node.alternate, indent + 1, lines)
    else:
        lines.append(pad + header)
        _stmt(consequent, indent + 1, lines)
        if node.alternate is not None:
            if isinstance(node.alternate, If):
                _if_stmt(node.alternate, indent, lines, lead="else ")
            elif isinstance(node.alternate, Block):
                lines.append(pad + "else {")
                for child in node.alternate.body:
                    _stmt(child, indent + 1, lines)
                lines.append(pad + "}")
            else:
                lines.append(pad + "else")
                _stmt(node.alternate, indent + 1, lines)


def _dangles(stmt: Node) -> bool:
    if isinstance(stmt, If):
        return stmt.alternate is None or _dangles(stmt.alternate)
    if isinstance(stmt, (For, ForIn, While)):
        return _dangles(stmt.body)
    return False


def _var_fragment(node: VarDeclaration, indent: int) -> str:
    if not node.declarations:
        raise PrintError("var statement without declarators")
    parts = []
    for decl in node.declarations:
        if decl.init is None:
            parts.append(decl.name)
        else:
            parts.append(decl.name + " = " + _expr(decl.init, _ASSIGN, indent))
    return "var " + ", ".join(parts)


def _function_text(name: str | None, params: list[str], body: Block, indent: int) -> str:
    head = "function" + ((" " + name) if name else "") + "(" + ", ".join(params) + ") "
    if not body.body:
        return head + "{}"
    lines: list[str] = []
    for child in body.body:
        _stmt(child, indent + 1, lines)
    return head + "{\n" + "\n".join(lines) + "\n" + _pad(indent) + "}"


def _string_text(value: str) -> str:
    out = ['"']
    for ch in value:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif ord(ch) < 0x20:
            out.append("\\u%04x" % ord(ch))
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _expr(node: Node, min_prec: int, indent: int) -> str:
    text, prec = _expr_prec(node, indent)
    if prec < min_prec:
        return "(" + text + ")"
    return text


def _expr_prec(node: Node, indent: int) -> tuple[str, int]:
    if isinstance(node, Identifier):
        if not node.name:
            raise PrintError("identifier without a name")
        return node.name, _PRIMARY
    if isinstance(node, Literal):
        if node.lit_kind == "string":
            return _string_text(node.value), _PRIMARY
        if node.lit_kind in ("number", "regex"):
            return node.raw, _PRIMARY
        return node.raw, _PRIMARY  # boolean / null keep their keyword text
    if isinstance(node, ThisExpression):
        return "this", _PRIMARY
    if isinstance(node, Array):
        inner = ", ".join(_expr(e, _ASSIGN, indent) for e in node.elements)
        return "[" + inner + "]", _PRIMARY
    if isinstance(node, ObjectLiteral):
        if not node.properties:
            return "{}", _PRIMARY
        pad = _pad(indent + 1)
        parts = []
        for pair in node.properties:
            key, _ = _expr_prec(pair.key, indent + 1)
            parts.append(pad + key + ": " + _expr(pair.value, _ASSIGN, indent + 1))
        return "{\n" + ",\n".join(parts) + "\n" + _pad(indent) + "}", _PRIMARY
    if isinstance(node, FunctionExpression):
        return _function_text(node.name, node.params, node.body, indent), _PRIMARY
    if isinstance(node, MemberAccess):
        obj = _expr(node.obj, _CALL_MEMBER, indent)
        if isinstance(node.obj, Literal) and node.obj.lit_kind == "number":
            obj = "(" + obj + ")"
        if node.computed:
            return obj + "[" + _expr(node.prop, _SEQ, indent) + "]", _CALL_MEMBER
        if not isinstance(node.prop, Identifier):
            raise PrintError("dot access property must be an identifier")
        return obj + "." + node.prop.name, _CALL_MEMBER
    if isinstance(node, Call):
        callee = _expr(node.callee, _CALL_MEMBER, indent)
        args = ", ".join(_expr(a, _ASSIGN, indent) for a in node.args)
        return callee + "(" + args + ")", _CALL_MEMBER
    if isinstance(node, New):
        callee = _expr(node.callee, _CALL_MEMBER, indent)
        if node.args:
            args = ", ".join(_expr(a, _ASSIGN, indent) for a in node.args)
            return "new " + callee + "(" + args + ")", _CALL_MEMBER
        return "new " + callee, _NEW_NO_ARGS
    if isinstance(node, Assignment):
        target = _expr(node.target, _POSTFIX, indent)
        value = _expr(node.value, _ASSIGN, indent)
        return target + " " + node.op + " " + value, _ASSIGN
    if isinstance(node, Binary):
        if node.op == ",":
            left = _expr(node.left, _SEQ, indent)
            right = _expr(node.right, _ASSIGN, indent)
            return left + ", " + right, _SEQ
        prec = _BINARY[node.op]
        left = _expr(node.left, prec, indent)
        right = _expr(node.right, prec + 1, indent)
        return left + " " + node.op + " " + right, prec
    if isinstance(node, Unary):
        arg = _expr(node.argument, _UNARY if node.prefix else _POSTFIX, indent)
        if not node.prefix:
            return arg + node.op, _POSTFIX
        if node.op in _WORD_UNARY:
            return node.op + " " + arg, _UNARY
        sep = " " if arg.startswith(node.op[0]) else ""
        return node.op + sep + arg, _UNARY
    if isinstance(node, Conditional):
        test = _expr(node.test, _COND + 1, indent)
        cons = _expr(node.consequent, _ASSIGN, indent)
        alt = _expr(node.alternate, _ASSIGN, indent)
        return test + " ? " + cons + " : " + alt, _COND
    raise PrintError(f"cannot print {type(node).__name__} as an expression")
