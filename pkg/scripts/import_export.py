"""
Utilities for loading and saving group files.

Two JSON object formats are accepted:
    Cayley table file:      {"name": ..., "order": t, "table": [[...], ...]}
    Permutation generators: {"name": ..., "points": k, "generators": [[...], ...]}

Malformed files raise GroupFileError carrying the path and, where the
problem has one, the line and column.
"""

from typing import List, Optional, Union
import json
import logging
import os
import tempfile

from pydantic import BaseModel, ValidationError

from group_core import (
    Group,
    GroupError,
    NoInverse,
    NotAPermutation,
    NotAssociative,
    NotLatinSquare,
    from_cayley_table,
    from_permutation_generators,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]


class GroupFileError(ValueError):
    def __init__(self, message: str, path: PathLike, line: Optional[int] = None, column: Optional[int] = None):
        where = f"{path}:{line}:{column}" if line is not None else f"{path}"
        super().__init__(f"{where}: {message}")
        self.path = str(path)
        self.line = line
        self.column = column


class CayleyTableFile(BaseModel):
    name: str
    order: int
    table: List[List[int]]


class PermutationFile(BaseModel):
    name: str
    points: int
    generators: List[List[int]]


def _line_of_row(text: str, row: int) -> Optional[int]:
    """Line holding the start of table row `row`, when rows sit on their own lines."""
    depth = 0
    seen = -1
    for line_no, line in enumerate(text.splitlines(), start=1):
        for ch in line:
            if ch == "[":
                depth += 1
                if depth == 2:
                    seen += 1
                    if seen == row:
                        return line_no
            elif ch == "]":
                depth -= 1
    return None


def _line_of_key(text: str, key: str) -> Optional[int]:
    needle = json.dumps(key)
    for line_no, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return line_no
    return None


def _witness_row(e: GroupError) -> Optional[int]:
    if isinstance(e, NotLatinSquare):
        return e.row
    if isinstance(e, NotAPermutation):
        return e.generator
    if isinstance(e, NoInverse):
        return e.element
    if isinstance(e, NotAssociative):
        return e.triple[0]
    return None


def _positioned(e: GroupError, text: str, path: PathLike, key: str) -> GroupFileError:
    """Point at the row holding the witness, else at the line of `key`."""
    row = _witness_row(e)
    line = _line_of_row(text, row) if row is not None else None
    if line is None:
        line = _line_of_key(text, key)
    return GroupFileError(str(e), path, line, 1 if line is not None else None)


def parse_group(text: str, path: PathLike = "<string>") -> Group:
    """Parse the text of a group file into a validated Group."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise GroupFileError(e.msg, path, e.lineno, e.colno)
    if not isinstance(payload, dict):
        raise GroupFileError("expected a JSON object", path, 1, 1)

    try:
        if "generators" in payload:
            parsed = PermutationFile.model_validate(payload)
        else:
            parsed = CayleyTableFile.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise GroupFileError(f"{location}: {first['msg']}", path)

    if isinstance(parsed, PermutationFile):
        try:
            return from_permutation_generators(parsed.generators, name=parsed.name, points=parsed.points)
        except GroupError as e:
            raise _positioned(e, text, path, "generators") from e

    if parsed.order != len(parsed.table):
        line = _line_of_key(text, "order")
        raise GroupFileError(
            f"order is {parsed.order} but the table has {len(parsed.table)} rows", path, line, 1 if line is not None else None
        )
    try:
        return from_cayley_table(parsed.table, name=parsed.name)
    except GroupError as e:
        raise _positioned(e, text, path, "table") from e


def load_group(path: PathLike) -> Group:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    group = parse_group(text, path)
    logger.info(f"Loaded {group.name} (order {group.order}) from {path}")
    return group


def atomic_write_text(path: PathLike, content: str) -> str:
    """Write through a temporary file in the target directory, then rename over the target."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return str(path)


def dump_group(group: Group) -> str:
    """Cayley table file text, one table row per line."""
    rows = ",\n".join(f"    {json.dumps(row)}" for row in group.table.tolist())
    return (
        "{\n"
        f'  "name": {json.dumps(group.name)},\n'
        f'  "order": {group.order},\n'
        '  "table": [\n'
        f"{rows}\n"
        "  ]\n"
        "}\n"
    )


def save_group(group: Group, path: PathLike) -> str:
    atomic_write_text(path, dump_group(group))
    logger.info(f"Saved {group.name} to {path}")
    return str(path)
