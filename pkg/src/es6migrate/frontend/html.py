"""Tolerant, tag-level extraction of scripts from HTML pages.

Locates ``<script ...>...</script>`` elements in document order; it is not a
full HTML parser.
"""

from __future__ import annotations

import posixpath
import re

from .source import ScriptOrigin, SourceFile

_SCRIPT_OPEN = re.compile(r"<script\b([^>]*)>", re.IGNORECASE)
_SCRIPT_CLOSE = re.compile(r"</script\s*>", re.IGNORECASE)
_SRC_ATTR = re.compile(r"""\bsrc\s*=\s*("([^"]*)"|'([^']*)'|([^\s>]+))""", re.IGNORECASE)
_COMMENT = re.compile(r"<!--.*?-->", re.DOTALL)


def extract_scripts(html_text: str, page_path: str, on_skip=None) -> list[SourceFile]:
    """Return one SourceFile per ``<script>`` element, in document order.

    ``src``-bearing scripts yield HtmlLinked entries carrying the page-relative
    resolved path; inline scripts yield HtmlInline entries whose text is the
    element body. Unresolvable ``src`` values (absolute URLs) are passed to
    ``on_skip`` and skipped.
    """
    files: list[SourceFile] = []
    text = _COMMENT.sub(lambda m: " " * len(m.group(0)), html_text)
    load_index = 0
    pos = 0
    inline_count = 0
    page_dir = posixpath.dirname(page_path)
    while True:
        open_match = _SCRIPT_OPEN.search(text, pos)
        if open_match is None:
            break
        attrs = open_match.group(1)
        close_match = _SCRIPT_CLOSE.search(text, open_match.end())
        body_end = close_match.start() if close_match else len(text)
        pos = close_match.end() if close_match else len(text)

        src_match = _SRC_ATTR.search(attrs)
        if src_match is not None:
            src = src_match.group(2) or src_match.group(3) or src_match.group(4) or ""
            if not src or "://" in src or src.startswith("//"):
                if on_skip is not None:
                    on_skip(page_path, src)
                continue
            resolved = posixpath.normpath(posixpath.join(page_dir, src))
            files.append(
                SourceFile(path=resolved, text="", origin=ScriptOrigin.HTML_LINKED,
                           load_index=load_index)
            )
        else:
            body = html_text[open_match.end():body_end]
            inline_path = f"{page_path}.inline{inline_count}.js"
            inline_count += 1
            files.append(
                SourceFile(path=inline_path, text=body, origin=ScriptOrigin.HTML_INLINE,
                           load_index=load_index)
            )
        load_index += 1
    return files
