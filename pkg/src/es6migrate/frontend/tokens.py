"""Hand-rolled lexer for the supported JavaScript subset.

Comments are skipped (and dropped from output, see CLI docs); newlines
between tokens are tracked to support newline-terminated statements.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import JsSyntaxError

IDENT = "ident"
KEYWORD = "keyword"
NUMBER = "number"
STRING = "string"
REGEX = "regex"
PUNCT = "punct"
EOF = "eof"

KEYWORDS = {
    "var", "function", "return", "if", "else", "for", "while", "new", "this",
    "true", "false", "null", "typeof", "instanceof", "in", "delete", "void",
    "break", "continue", "import", "export", "default",
    # recognized so the parser can reject them with a clear message
    "do", "switch", "case", "try", "catch", "finally", "throw", "with",
    "class", "const", "let", "debugger",
}

_PUNCTUATORS = sorted(
    [
        ">>>=", "===", "!==", ">>>", "<<=", ">>=", "&&", "||", "==", "!=",
        "<=", ">=", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
        "^=", "<<", ">>", "{", "}", "(", ")", "[", "]", ";", ",", "<", ">",
        "+", "-", "*", "/", "%", "&", "|", "^", "!", "~", "?", ":", "=", ".",
    ],
    key=len,
    reverse=True,
)

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f", "v": "\v", "0": "\0"}

# A `/` opens a regex literal unless the previous token can end an expression.
_NO_REGEX_AFTER_PUNCT = {")", "]"}
_NO_REGEX_AFTER_KEYWORD = {"this", "true", "false", "null"}


@dataclass
class Token:
    type: str
    value: str
    start: int
    end: int
    newline_before: bool


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch in "_$"


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch in "_$"


def tokenize(text: str, path: str | None = None) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    newline = False

    def err(msg: str, start: int) -> JsSyntaxError:
        return JsSyntaxError(msg, (start, min(start + 1, n)), path)

    while i < n:
        ch = text[i]
        if ch in " \t\r\f\v":
            i += 1
            continue
        if ch == "\n":
            newline = True
            i += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "*":
            end = text.find("*/", i + 2)
            if end < 0:
                raise err("unterminated block comment", i)
            if "\n" in text[i:end]:
                newline = True
            i = end + 2
            continue

        start = i
        if _is_ident_start(ch):
            while i < n and _is_ident_part(text[i]):
                i += 1
            word = text[start:i]
            ttype = KEYWORD if word in KEYWORDS else IDENT
            tokens.append(Token(ttype, word, start, i, newline))
        elif ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            i = _scan_number(text, i, err)
            tokens.append(Token(NUMBER, text[start:i], start, i, newline))
        elif ch in "'\"":
            i = _scan_string(text, i, err)
            tokens.append(Token(STRING, text[start:i], start, i, newline))
        elif ch == "/" and _regex_allowed(tokens):
            i = _scan_regex(text, i, err)
            tokens.append(Token(REGEX, text[start:i], start, i, newline))
        else:
            for p in _PUNCTUATORS:
                if text.startswith(p, i):
                    i += len(p)
                    tokens.append(Token(PUNCT, p, start, i, newline))
                    break
            else:
                raise err(f"unexpected character {ch!r}", i)
        newline = False

    tokens.append(Token(EOF, "", n, n, newline))
    return tokens


def _regex_allowed(tokens: list[Token]) -> bool:
    if not tokens:
        return True
    prev = tokens[-1]
    if prev.type in (IDENT, NUMBER, STRING, REGEX):
        return False
    if prev.type == PUNCT and prev.value in _NO_REGEX_AFTER_PUNCT:
        return False
    if prev.type == KEYWORD and prev.value in _NO_REGEX_AFTER_KEYWORD:
        return False
    return True


def _scan_number(text: str, i: int, err) -> int:
    n = len(text)
    if text.startswith(("0x", "0X"), i):
        j = i + 2
        while j < n and text[j] in "0123456789abcdefABCDEF":
            j += 1
        if j == i + 2:
            raise err("malformed hex literal", i)
        return j
    j = i
    while j < n and text[j].isdigit():
        j += 1
    if j < n and text[j] == ".":
        j += 1
        while j < n and text[j].isdigit():
            j += 1
    if j < n and text[j] in "eE":
        k = j + 1
        if k < n and text[k] in "+-":
            k += 1
        if k >= n or not text[k].isdigit():
            raise err("malformed exponent", i)
        j = k
        while j < n and text[j].isdigit():
            j += 1
    return j


def _scan_string(text: str, i: int, err) -> int:
    quote = text[i]
    j = i + 1
    n = len(text)
    while j < n:
        ch = text[j]
        if ch == "\\":
            j += 2
            continue
        if ch == "\n":
            raise err("unterminated string literal", i)
        if ch == quote:
            return j + 1
        j += 1
    raise err("unterminated string literal", i)


def _scan_regex(text: str, i: int, err) -> int:
    j = i + 1
    n = len(text)
    in_class = False
    while j < n:
        ch = text[j]
        if ch == "\\":
            j += 2
            continue
        if ch == "\n":
            raise err("unterminated regex literal", i)
        if ch == "[":
            in_class = True
        elif ch == "]":
            in_class = False
        elif ch == "/" and not in_class:
            j += 1
            while j < n and _is_ident_part(text[j]):
                j += 1
            return j
        j += 1
    raise err("unterminated regex literal", i)


def string_value(raw: str) -> str:
    """Decode a quoted string token to its runtime value."""
    body = raw[1:-1]
    out: list[str] = []
    i = 0
    n = len(body)
    while i < n:
        ch = body[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        i += 1
        if i >= n:
            out.append("\\")
            break
        esc = body[i]
        if esc in _ESCAPES:
            out.append(_ESCAPES[esc])
            i += 1
        elif esc == "x" and i + 2 < n + 1:
            out.append(chr(int(body[i + 1 : i + 3], 16)))
            i += 3
        elif esc == "u" and i + 4 < n + 1:
            out.append(chr(int(body[i + 1 : i + 5], 16)))
            i += 5
        elif esc == "\n":
            i += 1  # line continuation
        else:
            out.append(esc)
            i += 1
    return "".join(out)


def number_value(raw: str) -> float:
    if raw.startswith(("0x", "0X")):
        return float(int(raw, 16))
    return float(raw)
