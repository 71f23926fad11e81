"""Access to the scenario, book, and template documents shipped with the package.

A CLI argument of the form ``builtin:NAME`` resolves against these tables,
so every bundled table the ``reproduce`` subcommand prints can also be
produced by pointing ``simulate`` at the same documents.
"""

from __future__ import annotations

import json
from importlib import resources

from .errors import DocumentError

SCENARIOS = {
    "original-sb": "original_sb.json",
    "technicolor": "technicolor.json",
    "wbg": "wbg.json",
    "two-beauties": "two_beauties.json",
}

BOOKS = {
    "hitchcock": "hitchcock_book.json",
    "wbg-book": "wbg_book.json",
    "two-beauties-book": "two_beauties_book.json",
    "anti-thirder": "anti_thirder_book.json",
}

TEMPLATES = {
    "wbg-template": "wbg_template.json",
}

_ALL = {**SCENARIOS, **BOOKS, **TEMPLATES}


def bundled_document(name: str) -> dict:
    if name not in _ALL:
        raise DocumentError(
            f"no bundled document named {name!r}; available: {sorted(_ALL)}"
        )
    text = resources.files("centerbook.data").joinpath(_ALL[name]).read_text("utf-8")
    return json.loads(text)


def resolve_source(argument: str):
    """Map "builtin:NAME" to a bundled document; pass file paths through."""
    if argument.startswith("builtin:"):
        return bundled_document(argument[len("builtin:"):])
    return argument
