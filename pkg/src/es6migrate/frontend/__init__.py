"""Lexing, parsing and printing of the supported JavaScript subset."""

from . import nodes
from .html import extract_scripts
from .nodes import Node, Program, structurally_equal, walk
from .parser import parse, parse_text
from .printer import print_program, print_statement
from .source import ScriptOrigin, SourceFile

__all__ = [
    "Node",
    "Program",
    "ScriptOrigin",
    "SourceFile",
    "extract_scripts",
    "nodes",
    "parse",
    "parse_text",
    "print_program",
    "print_statement",
    "structurally_equal",
    "walk",
]
