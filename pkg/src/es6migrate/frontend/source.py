"""Source file descriptors for project snapshots."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class ScriptOrigin(Enum):
    JS_FILE = "JsFile"
    HTML_INLINE = "HtmlInline"
    HTML_LINKED = "HtmlLinked"


@dataclass(frozen=True)
class SourceFile:
    """One JavaScript source unit of a project snapshot.

    ``path`` is project-relative and unique within a snapshot. ``load_index``
    is the 0-based position in page load order and is present exactly for
    HTML origins.
    """

    path: str
    text: str
    origin: ScriptOrigin = ScriptOrigin.JS_FILE
    load_index: int | None = None

    def __post_init__(self):
        is_html = self.origin in (ScriptOrigin.HTML_INLINE, ScriptOrigin.HTML_LINKED)
        if is_html != (self.load_index is not None):
            raise ValueError("load_index is required exactly for HTML origins")
