"""Base files: one rule per line, ``#`` comments, ``!`` header lines first."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterator, List, Set, Tuple, Union

from ptvalidity.errors import RuleSyntaxError, SystemFileError
from ptvalidity.rules import Base, Rule, parse_rule
from ptvalidity.syntax import FALSUM

logger = logging.getLogger(__name__)

ALLOW_BOT = "!allow-bot-conclusions"
KNOWN_HEADERS = {ALLOW_BOT}


def strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def numbered_lines(text: str) -> Iterator[Tuple[int, int, str]]:
    """(line number, offset of the line in ``text``, line without comment) for non-blank lines."""
    offset = 0
    for number, raw in enumerate(text.splitlines(keepends=True), start=1):
        line = strip_comment(raw)
        if line:
            yield number, offset + raw.index(line[0]), line
        offset += len(raw)


def parse_rule_line(text: str, offset: int, line: str, allow_bot: bool) -> Rule:
    """Parse a rule found at ``offset`` of ``text``, reporting errors against the whole text."""
    try:
        return parse_rule(line, allow_bot=allow_bot)
    except RuleSyntaxError as e:
        raise type(e)(e.message, text, offset + e.position) from e


def parse_base(text: str) -> Base:
    """
    Parse base file contents.

    Raises:
        SystemFileError: On unknown or misplaced header lines
        RuleSyntaxError: On malformed rules (BotConclusionError without the header)
    """
    headers: Set[str] = set()
    rules: List[Rule] = []
    for _, offset, line in numbered_lines(text):
        if line.startswith("!"):
            if rules:
                raise SystemFileError("header after the first rule", text, offset)
            if line not in KNOWN_HEADERS:
                raise SystemFileError(f"unknown header {line!r}", text, offset)
            headers.add(line)
            continue
        rules.append(parse_rule_line(text, offset, line, ALLOW_BOT in headers))
    return Base(frozenset(rules))


def load_base(path: Union[str, Path]) -> Base:
    base = parse_base(Path(path).read_text(encoding="utf-8"))
    logger.info(f"Loaded base with {len(base)} rule(s) from {path}")
    return base


def dump_base(base: Base) -> str:
    lines = [ALLOW_BOT] if any(r.conclusion == FALSUM for r in base.rules) else []
    lines += [r.key for r in base.sorted_rules()]
    return "\n".join(lines) + "\n"


def save_base(path: Union[str, Path], base: Base) -> None:
    Path(path).write_text(dump_base(base), encoding="utf-8")
