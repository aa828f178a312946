"""Recursive-descent parser for the supported subset, plus the ES6
import/export statement forms emitted by the refactoring.

Statements end at ';', at a newline, at '}', or at end of input; other
missing semicolons are syntax errors. Unsupported constructs raise
:class:`JsSyntaxError` so the file can be excluded and reported.
"""

from __future__ import annotations

from ..errors import JsSyntaxError
from . import tokens as T
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
    ExportSpec,
    ExpressionStatement,
    For,
    ForIn,
    FunctionDeclaration,
    FunctionExpression,
    Identifier,
    If,
    ImportDefault,
    ImportNamed,
    ImportSpec,
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
from .source import SourceFile

_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}

_BINARY_PRECEDENCE = {
    "||": 4,
    "&&": 5,
    "|": 6,
    "^": 7,
    "&": 8,
    "==": 9, "!=": 9, "===": 9, "!==": 9,
    "<": 10, ">": 10, "<=": 10, ">=": 10, "instanceof": 10, "in": 10,
    "<<": 11, ">>": 11, ">>>": 11,
    "+": 12, "-": 12,
    "*": 13, "/": 13, "%": 13,
}

_UNARY_OPS = {"!", "~", "+", "-", "typeof", "void", "delete", "++", "--"}

_UNSUPPORTED_STATEMENT_KEYWORDS = {
    "do", "switch", "try", "catch", "finally", "throw", "with", "class",
    "const", "let", "debugger", "case", "default",
}


def parse(source: SourceFile) -> Program:
    """Parse a source file into a Program covering the entire input."""
    program = parse_text(source.text, source.path)
    program.file = source
    return program


def parse_text(text: str, path: str | None = None) -> Program:
    return _Parser(text, path).parse_program()


class _Parser:
    def __init__(self, text: str, path: str | None):
        self.text = text
        self.path = path
        self.toks = T.tokenize(text, path)
        self.pos = 0

    # --- token helpers ---

    def peek(self, ahead: int = 0) -> T.Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def advance(self) -> T.Token:
        tok = self.toks[self.pos]
        if tok.type != T.EOF:
            self.pos += 1
        return tok

    def at(self, ttype: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok.type == ttype and (value is None or tok.value == value)

    def at_punct(self, value: str) -> bool:
        return self.at(T.PUNCT, value)

    def at_keyword(self, value: str) -> bool:
        return self.at(T.KEYWORD, value)

    def expect(self, ttype: str, value: str | None = None) -> T.Token:
        tok = self.peek()
        if tok.type != ttype or (value is not None and tok.value != value):
            want = value if value is not None else ttype
            raise self.error(f"expected {want!r}, found {tok.value or tok.type!r}", tok)
        return self.advance()

    def error(self, message: str, tok: T.Token | None = None) -> JsSyntaxError:
        tok = tok or self.peek()
        return JsSyntaxError(message, (tok.start, tok.end), self.path)

    def eat_statement_end(self) -> int:
        """Consume ';' or accept an implicit terminator; return the end offset."""
        tok = self.peek()
        if tok.type == T.PUNCT and tok.value == ";":
            self.advance()
            return tok.end
        if tok.type == T.EOF or (tok.type == T.PUNCT and tok.value == "}") or tok.newline_before:
            return self.toks[self.pos - 1].end
        raise self.error("expected ';'", tok)

    # --- program / statements ---

    def parse_program(self) -> Program:
        body: list[Node] = []
        directives: list[str] = []
        in_prologue = True
        while not self.at(T.EOF):
            if self.at_punct(";"):
                self.advance()
                continue
            stmt = self.parse_statement()
            if in_prologue and self._directive_of(stmt) is not None:
                directives.append(self._directive_of(stmt))
            else:
                in_prologue = False
            body.append(stmt)
        return Program(body=body, directives=directives, span=(0, len(self.text)))

    @staticmethod
    def _directive_of(stmt: Node) -> str | None:
        if isinstance(stmt, ExpressionStatement) and isinstance(stmt.expression, Literal):
            lit = stmt.expression
            if lit.lit_kind == "string" and lit.raw.startswith(("'", '"')):
                return lit.value
        return None

    def parse_statement(self) -> Node:
        tok = self.peek()
        if tok.type == T.KEYWORD:
            if tok.value in _UNSUPPORTED_STATEMENT_KEYWORDS:
                raise self.error(f"unsupported construct {tok.value!r}", tok)
            handler = {
                "var": self.parse_var_statement,
                "function": self.parse_function_declaration,
                "if": self.parse_if,
                "for": self.parse_for,
                "while": self.parse_while,
                "return": self.parse_return,
                "break": self.parse_break,
                "continue": self.parse_continue,
                "import": self.parse_import,
                "export": self.parse_export,
            }.get(tok.value)
            if handler is not None:
                return handler()
        if tok.type == T.PUNCT and tok.value == "{":
            return self.parse_block()
        return self.parse_expression_statement()

    def parse_var_statement(self, eat_end: bool = True, no_in: bool = False) -> VarDeclaration:
        start = self.expect(T.KEYWORD, "var").start
        decls = [self.parse_var_declarator(no_in)]
        while self.at_punct(","):
            self.advance()
            decls.append(self.parse_var_declarator(no_in))
        end = decls[-1].span[1]
        if eat_end:
            end = max(end, self.eat_statement_end())
        return VarDeclaration(declarations=decls, span=(start, end))

    def parse_var_declarator(self, no_in: bool = False) -> VarDeclarator:
        name_tok = self.expect(T.IDENT)
        init = None
        end = name_tok.end
        if self.at_punct("="):
            self.advance()
            init = self.parse_assignment_expr(no_in=no_in)
            end = init.span[1] if init.span else end
        return VarDeclarator(name=name_tok.value, init=init, span=(name_tok.start, end))

    def parse_function_declaration(self) -> FunctionDeclaration:
        start = self.expect(T.KEYWORD, "function").start
        name = self.expect(T.IDENT).value
        params = self.parse_params()
        body = self.parse_block()
        return FunctionDeclaration(name=name, params=params, body=body, span=(start, body.span[1]))

    def parse_params(self) -> list[str]:
        self.expect(T.PUNCT, "(")
        params: list[str] = []
        while not self.at_punct(")"):
            params.append(self.expect(T.IDENT).value)
            if not self.at_punct(")"):
                self.expect(T.PUNCT, ",")
        self.expect(T.PUNCT, ")")
        return params

    def parse_block(self) -> Block:
        start = self.expect(T.PUNCT, "{").start
        body: list[Node] = []
        while not self.at_punct("}"):
            if self.at(T.EOF):
                raise self.error("unterminated block")
            if self.at_punct(";"):
                self.advance()
                continue
            body.append(self.parse_statement())
        end = self.expect(T.PUNCT, "}").end
        return Block(body=body, span=(start, end))

    def parse_if(self) -> If:
        start = self.expect(T.KEYWORD, "if").start
        self.expect(T.PUNCT, "(")
        test = self.parse_expression()
        self.expect(T.PUNCT, ")")
        consequent = self.parse_statement()
        alternate = None
        end = consequent.span[1]
        if self.at_keyword("else"):
            self.advance()
            alternate = self.parse_statement()
            end = alternate.span[1]
        return If(test=test, consequent=consequent, alternate=alternate, span=(start, end))

    def parse_for(self) -> Node:
        start = self.expect(T.KEYWORD, "for").start
        self.expect(T.PUNCT, "(")
        init: Node | None = None
        if self.at_keyword("var"):
            decl = self.parse_var_statement(eat_end=False, no_in=True)
            if self.at_keyword("in") and len(decl.declarations) == 1 and decl.declarations[0].init is None:
                self.advance()
                iterable = self.parse_expression()
                self.expect(T.PUNCT, ")")
                body = self.parse_statement()
                target = Identifier(decl.declarations[0].name, span=decl.declarations[0].span)
                return ForIn(target=target, declares=True, iterable=iterable, body=body,
                             span=(start, body.span[1]))
            init = decl
        elif not self.at_punct(";"):
            expr = self.parse_expression(no_in=True)
            if self.at_keyword("in"):
                if not isinstance(expr, (Identifier, MemberAccess)):
                    raise self.error("invalid for-in target")
                self.advance()
                iterable = self.parse_expression()
                self.expect(T.PUNCT, ")")
                body = self.parse_statement()
                return ForIn(target=expr, declares=False, iterable=iterable, body=body,
                             span=(start, body.span[1]))
            init = expr
        self.expect(T.PUNCT, ";")
        test = None if self.at_punct(";") else self.parse_expression()
        self.expect(T.PUNCT, ";")
        update = None if self.at_punct(")") else self.parse_expression()
        self.expect(T.PUNCT, ")")
        body = self.parse_statement()
        return For(init=init, test=test, update=update, body=body, span=(start, body.span[1]))

    def parse_while(self) -> While:
        start = self.expect(T.KEYWORD, "while").start
        self.expect(T.PUNCT, "(")
        test = self.parse_expression()
        self.expect(T.PUNCT, ")")
        body = self.parse_statement()
        return While(test=test, body=body, span=(start, body.span[1]))

    def parse_return(self) -> Return:
        tok = self.expect(T.KEYWORD, "return")
        nxt = self.peek()
        argument = None
        end = tok.end
        has_arg = not (
            nxt.type == T.EOF
            or (nxt.type == T.PUNCT and nxt.value in (";", "}"))
            or nxt.newline_before
        )
        if has_arg:
            argument = self.parse_expression()
            end = argument.span[1]
        end = max(end, self.eat_statement_end())
        return Return(argument=argument, span=(tok.start, end))

    def parse_break(self) -> Break:
        tok = self.expect(T.KEYWORD, "break")
        end = max(tok.end, self.eat_statement_end())
        return Break(span=(tok.start, end))

    def parse_continue(self) -> Continue:
        tok = self.expect(T.KEYWORD, "continue")
        end = max(tok.end, self.eat_statement_end())
        return Continue(span=(tok.start, end))

    def parse_expression_statement(self) -> ExpressionStatement:
        expr = self.parse_expression()
        end = max(expr.span[1], self.eat_statement_end())
        return ExpressionStatement(expression=expr, span=(expr.span[0], end))

    # --- ES6 module statements ---

    def parse_import(self) -> Node:
        start = self.expect(T.KEYWORD, "import").start
        if self.at(T.STRING):
            source = T.string_value(self.advance().value)
            end = self.eat_statement_end()
            return ImportNamed(specifiers=[], source=source, span=(start, end))
        if self.at_punct("{"):
            self.advance()
            specs: list[ImportSpec] = []
            while not self.at_punct("}"):
                imported = self.expect(T.IDENT).value
                local = imported
                if self.at(T.IDENT, "as"):
                    self.advance()
                    local = self.expect(T.IDENT).value
                specs.append(ImportSpec(imported=imported, local=local))
                if not self.at_punct("}"):
                    self.expect(T.PUNCT, ",")
            self.expect(T.PUNCT, "}")
            self._expect_contextual("from")
            source = T.string_value(self.expect(T.STRING).value)
            end = self.eat_statement_end()
            return ImportNamed(specifiers=specs, source=source, span=(start, end))
        local = self.expect(T.IDENT).value
        self._expect_contextual("from")
        source = T.string_value(self.expect(T.STRING).value)
        end = self.eat_statement_end()
        return ImportDefault(local=local, source=source, span=(start, end))

    def parse_export(self) -> ExportNamed:
        start = self.expect(T.KEYWORD, "export").start
        self.expect(T.PUNCT, "{")
        specs: list[ExportSpec] = []
        while not self.at_punct("}"):
            local = self.expect(T.IDENT).value
            exported = local
            if self.at(T.IDENT, "as"):
                self.advance()
                exported = self.expect(T.IDENT).value
            specs.append(ExportSpec(local=local, exported=exported))
            if not self.at_punct("}"):
                self.expect(T.PUNCT, ",")
        self.expect(T.PUNCT, "}")
        end = self.eat_statement_end()
        return ExportNamed(specifiers=specs, span=(start, end))

    def _expect_contextual(self, word: str) -> None:
        if not self.at(T.IDENT, word):
            raise self.error(f"expected {word!r}")
        self.advance()

    # --- expressions ---

    def parse_expression(self, no_in: bool = False) -> Node:
        expr = self.parse_assignment_expr(no_in)
        while self.at_punct(","):
            self.advance()
            right = self.parse_assignment_expr(no_in)
            expr = Binary(op=",", left=expr, right=right, span=(expr.span[0], right.span[1]))
        return expr

    def parse_assignment_expr(self, no_in: bool = False) -> Node:
        left = self.parse_conditional(no_in)
        tok = self.peek()
        if tok.type == T.PUNCT and tok.value in _ASSIGN_OPS:
            if not isinstance(left, (Identifier, MemberAccess)):
                raise self.error("invalid assignment target", tok)
            self.advance()
            right = self.parse_assignment_expr(no_in)
            return Assignment(target=left, op=tok.value, value=right,
                              span=(left.span[0], right.span[1]))
        return left

    def parse_conditional(self, no_in: bool = False) -> Node:
        test = self.parse_binary_expr(0, no_in)
        if self.at_punct("?"):
            self.advance()
            consequent = self.parse_assignment_expr()
            self.expect(T.PUNCT, ":")
            alternate = self.parse_assignment_expr(no_in)
            return Conditional(test=test, consequent=consequent, alternate=alternate,
                               span=(test.span[0], alternate.span[1]))
        return test

    def parse_binary_expr(self, min_prec: int, no_in: bool) -> Node:
        left = self.parse_unary()
        while True:
            tok = self.peek()
            op = tok.value
            if tok.type not in (T.PUNCT, T.KEYWORD) or op not in _BINARY_PRECEDENCE:
                break
            if op == "in" and no_in:
                break
            prec = _BINARY_PRECEDENCE[op]
            if prec < min_prec:
                break
            self.advance()
            right = self.parse_binary_expr(prec + 1, no_in)
            left = Binary(op=op, left=left, right=right, span=(left.span[0], right.span[1]))
        return left

    def parse_unary(self) -> Node:
        tok = self.peek()
        if (tok.type == T.PUNCT or tok.type == T.KEYWORD) and tok.value in _UNARY_OPS:
            self.advance()
            argument = self.parse_unary()
            return Unary(op=tok.value, argument=argument, prefix=True,
                         span=(tok.start, argument.span[1]))
        expr = self.parse_lhs()
        tok = self.peek()
        if tok.type == T.PUNCT and tok.value in ("++", "--") and not tok.newline_before:
            self.advance()
            return Unary(op=tok.value, argument=expr, prefix=False, span=(expr.span[0], tok.end))
        return expr

    def parse_lhs(self) -> Node:
        if self.at_keyword("new"):
            expr = self.parse_new_expr()
        else:
            expr = self.parse_primary()
        return self.parse_member_chain(expr, allow_call=True)

    def parse_new_expr(self) -> New:
        start = self.expect(T.KEYWORD, "new").start
        if self.at_keyword("new"):
            callee: Node = self.parse_new_expr()
        else:
            callee = self.parse_member_chain(self.parse_primary(), allow_call=False)
        args: list[Node] = []
        end = callee.span[1]
        if self.at_punct("("):
            args, end = self.parse_args()
        return New(callee=callee, args=args, span=(start, end))

    def parse_args(self) -> tuple[list[Node], int]:
        self.expect(T.PUNCT, "(")
        args: list[Node] = []
        while not self.at_punct(")"):
            args.append(self.parse_assignment_expr())
            if not self.at_punct(")"):
                self.expect(T.PUNCT, ",")
        end = self.expect(T.PUNCT, ")").end
        return args, end

    def parse_member_chain(self, expr: Node, allow_call: bool) -> Node:
        while True:
            if self.at_punct("."):
                self.advance()
                tok = self.peek()
                if tok.type not in (T.IDENT, T.KEYWORD):
                    raise self.error("expected property name", tok)
                self.advance()
                prop = Identifier(tok.value, span=(tok.start, tok.end))
                expr = MemberAccess(obj=expr, prop=prop, computed=False,
                                    span=(expr.span[0], tok.end))
            elif self.at_punct("["):
                self.advance()
                prop = self.parse_expression()
                end = self.expect(T.PUNCT, "]").end
                expr = MemberAccess(obj=expr, prop=prop, computed=True,
                                    span=(expr.span[0], end))
            elif allow_call and self.at_punct("("):
                args, end = self.parse_args()
                expr = Call(callee=expr, args=args, span=(expr.span[0], end))
            else:
                return expr

    def parse_primary(self) -> Node:
        tok = self.peek()
        if tok.type == T.NUMBER:
            self.advance()
            return Literal(value=T.number_value(tok.value), raw=tok.value,
                           lit_kind="number", span=(tok.start, tok.end))
        if tok.type == T.STRING:
            self.advance()
            return Literal(value=T.string_value(tok.value), raw=tok.value,
                           lit_kind="string", span=(tok.start, tok.end))
        if tok.type == T.REGEX:
            self.advance()
            return Literal(value=tok.value, raw=tok.value, lit_kind="regex",
                           span=(tok.start, tok.end))
        if tok.type == T.IDENT:
            self.advance()
            return Identifier(tok.value, span=(tok.start, tok.end))
        if tok.type == T.KEYWORD:
            if tok.value == "this":
                self.advance()
                return ThisExpression(span=(tok.start, tok.end))
            if tok.value in ("true", "false"):
                self.advance()
                return Literal(value=(tok.value == "true"), raw=tok.value,
                               lit_kind="boolean", span=(tok.start, tok.end))
            if tok.value == "null":
                self.advance()
                return Literal(value=None, raw=tok.value, lit_kind="null",
                               span=(tok.start, tok.end))
            if tok.value == "function":
                return self.parse_function_expression()
        if tok.type == T.PUNCT:
            if tok.value == "(":
                self.advance()
                expr = self.parse_expression()
                self.expect(T.PUNCT, ")")
                return expr
            if tok.value == "[":
                return self.parse_array_literal()
            if tok.value == "{":
                return self.parse_object_literal()
        raise self.error(f"unexpected token {tok.value or tok.type!r}", tok)

    def parse_function_expression(self) -> FunctionExpression:
        start = self.expect(T.KEYWORD, "function").start
        name = None
        if self.at(T.IDENT):
            name = self.advance().value
        params = self.parse_params()
        body = self.parse_block()
        return FunctionExpression(name=name, params=params, body=body, span=(start, body.span[1]))

    def parse_array_literal(self) -> Array:
        start = self.expect(T.PUNCT, "[").start
        elements: list[Node] = []
        while not self.at_punct("]"):
            elements.append(self.parse_assignment_expr())
            if not self.at_punct("]"):
                self.expect(T.PUNCT, ",")
        end = self.expect(T.PUNCT, "]").end
        return Array(elements=elements, span=(start, end))

    def parse_object_literal(self) -> ObjectLiteral:
        start = self.expect(T.PUNCT, "{").start
        props: list[PropertyPair] = []
        while not self.at_punct("}"):
            key = self.parse_property_key()
            self.expect(T.PUNCT, ":")
            value = self.parse_assignment_expr()
            props.append(PropertyPair(key=key, value=value, span=(key.span[0], value.span[1])))
            if not self.at_punct("}"):
                self.expect(T.PUNCT, ",")
        end = self.expect(T.PUNCT, "}").end
        return ObjectLiteral(properties=props, span=(start, end))

    def parse_property_key(self) -> Node:
        tok = self.peek()
        if tok.type in (T.IDENT, T.KEYWORD):
            self.advance()
            return Identifier(tok.value, span=(tok.start, tok.end))
        if tok.type == T.STRING:
            self.advance()
            return Literal(value=T.string_value(tok.value), raw=tok.value,
                           lit_kind="string", span=(tok.start, tok.end))
        if tok.type == T.NUMBER:
            self.advance()
            return Literal(value=T.number_value(tok.value), raw=tok.value,
                           lit_kind="number", span=(tok.start, tok.end))
        raise self.error("expected property key", tok)
