"""Argument files: one S-expression argument per file, ``#`` comments allowed."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Union

from ptvalidity.arguments import Argument, parse_argument, print_argument

logger = logging.getLogger(__name__)


def load_argument(path: Union[str, Path]) -> Argument:
    a = parse_argument(Path(path).read_text(encoding="utf-8"))
    logger.info(f"Loaded argument from {path}")
    return a


def save_argument(path: Union[str, Path], a: Argument) -> None:
    Path(path).write_text(print_argument(a, indent="  ") + "\n", encoding="utf-8")
