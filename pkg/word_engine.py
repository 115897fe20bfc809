"""
Words in the free group on two generators x and y.

Text grammar:
    x, y          generators
    X, Y          inverses (also x^-1, y^-1)
    w^k           integer powers, k may be negative or zero
    u v, u*v      concatenation
    ( ... )       grouping
    [u, v]        commutator u^-1 v^-1 u v
    [u, v, w]     left-normed: [[u, v], w]
    1             the empty word

Expansions longer than config.WORD_MAX_LENGTH letters are rejected while
parsing, at the offset of the offending exponent or bracket.

Words are kept freely reduced. Evaluation on a Group is a left-to-right
fold of Cayley table lookups; the block evaluator does the same fold on
whole arrays of assignments at once.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple
import logging
import re

import numpy as np

import config
from group_core import Group

logger = logging.getLogger(__name__)

X_GEN = 0
Y_GEN = 1
Letter = Tuple[int, int]

_SYMBOLS = {(X_GEN, 1): "x", (X_GEN, -1): "X", (Y_GEN, 1): "y", (Y_GEN, -1): "Y"}


# ----------------------------------------------------------------------
# Errors
# ----------------------------------------------------------------------
class WordError(ValueError):
    """Base class for word parsing and lookup errors."""


class WordSyntaxError(WordError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class UnknownVariable(WordError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown variable {name!r} at byte {offset} (only x and y are allowed)")
        self.name = name
        self.offset = offset


class UnknownName(WordError):
    pass


# ----------------------------------------------------------------------
# Values
# ----------------------------------------------------------------------
def reduce_letters(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    """Freely reduce a letter sequence with a single left-to-right stack pass."""
    stack: List[Letter] = []
    for gen, sign in letters:
        if stack and stack[-1] == (gen, -sign):
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; equality ignores the source text."""

    letters: Tuple[Letter, ...]
    source: str = field(default="", compare=False)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(_SYMBOLS[letter] for letter in self.letters) or "1"

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def inverse(self) -> "Word":
        return Word(tuple((gen, -sign) for gen, sign in reversed(self.letters)), source=f"({self.source})^-1")

    @property
    def label(self) -> str:
        return self.source or str(self)


@dataclass(frozen=True)
class Assignment:
    first: int
    second: int


def _invert(letters: Sequence[Letter]) -> List[Letter]:
    return [(gen, -sign) for gen, sign in reversed(letters)]


def _power(letters: Sequence[Letter], k: int) -> List[Letter]:
    if not letters or k == 0:
        return []
    base = list(letters) if k >= 0 else _invert(letters)
    return list(reduce_letters(base * abs(k)))


def _commutator(u: Sequence[Letter], v: Sequence[Letter]) -> List[Letter]:
    return list(reduce_letters(_invert(u) + _invert(v) + list(u) + list(v)))


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------
class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _offset(self, pos: Optional[int] = None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def error(self, message: str, pos: Optional[int] = None) -> WordSyntaxError:
        return WordSyntaxError(message, self._offset(pos))

    def peek(self) -> Optional[str]:
        self.skip_whitespace()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def skip_whitespace(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def check_length(self, length: int, pos: int) -> None:
        if length > config.WORD_MAX_LENGTH:
            raise self.error(f"word would expand to {length} letters, above the limit {config.WORD_MAX_LENGTH}", pos)

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek()
            raise self.error(f"expected {ch!r}, found {'end of input' if found is None else repr(found)}")
        self.pos += 1

    def parse(self) -> List[Letter]:
        if self.peek() is None:
            raise self.error("empty word")
        letters = self.sequence(stops=())
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()!r}")
        return letters

    def sequence(self, stops: Tuple[str, ...]) -> List[Letter]:
        letters: List[Letter] = []
        while True:
            ch = self.peek()
            if ch is None or ch in stops:
                return letters
            if ch == "*":
                self.pos += 1
                continue
            start = self.pos
            factor = self.factor()
            self.check_length(len(letters) + len(factor), start)
            letters = list(reduce_letters(letters + factor))

    def nonempty_sequence(self, stops: Tuple[str, ...], what: str) -> List[Letter]:
        start = self.pos
        self.skip_whitespace()
        if self.peek() in stops:
            raise self.error(f"empty {what}", start)
        return self.sequence(stops)

    def factor(self) -> List[Letter]:
        letters = self.atom()
        while self.peek() == "^":
            self.pos += 1
            self.skip_whitespace()
            start = self.pos
            k = self.integer()
            self.check_length(len(letters) * abs(k), start)
            letters = _power(letters, k)
        return letters

    def integer(self) -> int:
        self.skip_whitespace()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise self.error("expected an integer exponent", start)
        try:
            return int(self.text[start:self.pos])
        except ValueError:
            raise self.error("exponent has too many digits", start)

    def atom(self) -> List[Letter]:
        ch = self.peek()
        start = self.pos
        if ch is None:
            raise self.error("unexpected end of input")
        if ch in "xXyY":
            self.pos += 1
            gen = X_GEN if ch in "xX" else Y_GEN
            return [(gen, 1 if ch.islower() else -1)]
        if ch == "1":
            self.pos += 1
            return []
        if ch == "(":
            self.pos += 1
            inner = self.nonempty_sequence((")",), "parentheses")
            self.expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            parts = [self.nonempty_sequence((",", "]"), "commutator entry")]
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.nonempty_sequence((",", "]"), "commutator entry"))
            self.expect("]")
            if len(parts) < 2:
                raise self.error("a commutator needs at least two entries", start)
            result = parts[0]
            for part in parts[1:]:
                self.check_length(2 * (len(result) + len(part)), start)
                result = _commutator(result, part)
            return result
        if ch.isalpha():
            raise UnknownVariable(ch, self._offset(start))
        raise self.error(f"unexpected {ch!r}", start)


def parse(text: str) -> Word:
    """
    Parse a word and freely reduce it.

    Raises:
        WordSyntaxError: malformed text, with the byte offset of the problem
        UnknownVariable: any letter other than x, y, X, Y
    """
    letters = _Parser(text).parse()
    return Word(reduce_letters(letters), source=text.strip())


_ENGEL = re.compile(r"engel([1-9]\d*)")
_POWER = re.compile(r"power([1-9]\d*)")


def named_word(name: str) -> Word:
    """
    Built-in words: "commutator", "engelK" (K trailing y's), "powerK".
    """
    key = name.strip().lower()
    if key == "commutator":
        return parse("[x,y]")
    match = _ENGEL.fullmatch(key)
    if match:
        k = int(match.group(1))
        if k > config.WORD_MAX_LENGTH:
            raise WordError(f"{name!r} would expand past the limit of {config.WORD_MAX_LENGTH} letters")
        return parse("[x," + ",".join(["y"] * k) + "]")
    match = _POWER.fullmatch(key)
    if match:
        return parse(f"x^{int(match.group(1))}")
    raise UnknownName(f"unknown word name {name!r}; expected commutator, engelK or powerK")


# ----------------------------------------------------------------------
# Evaluation
# ----------------------------------------------------------------------
def evaluate(w: Word, g: Group, a: Assignment) -> int:
    """Substitute a.first for x and a.second for y and multiply out."""
    x = g.check_element(a.first)
    y = g.check_element(a.second)
    values = {
        (X_GEN, 1): x,
        (X_GEN, -1): int(g.inverse[x]),
        (Y_GEN, 1): y,
        (Y_GEN, -1): int(g.inverse[y]),
    }
    result = g.identity_index
    for letter in w.letters:
        result = int(g.table[result, values[letter]])
    return result


def evaluate_block(w: Word, g: Group, rows: Sequence[int]) -> np.ndarray:
    """
    Evaluate w on every assignment whose first entry lies in `rows`.

    Returns:
        array of shape (len(rows), order); entry [i, b] is w(rows[i], b)
    """
    x = np.asarray(rows, dtype=np.int64)[:, None]
    y = np.arange(g.order, dtype=np.int64)[None, :]
    operands = {
        (X_GEN, 1): x,
        (X_GEN, -1): g.inverse[x],
        (Y_GEN, 1): y,
        (Y_GEN, -1): g.inverse[y],
    }
    result = np.full((x.shape[0], g.order), g.identity_index, dtype=np.int64)
    for letter in w.letters:
        result = g.table[result, operands[letter]]
    return result


def iter_blocks(g: Group, chunk_rows: Optional[int] = None):
    """Yield consecutive row ranges covering the group."""
    chunk = chunk_rows or config.EVALUATION_CHUNK_ROWS
    for start in range(0, g.order, chunk):
        yield range(start, min(start + chunk, g.order))


def evaluate_all(w: Word, g: Group) -> np.ndarray:
    """Full order x order table of word values."""
    return np.vstack([evaluate_block(w, g, rows) for rows in iter_blocks(g)])


def is_identity_in(w: Word, g: Group) -> bool:
    """True iff w evaluates to the identity on all |G|^2 assignments."""
    if w.is_empty:
        return True
    for rows in iter_blocks(g):
        if (evaluate_block(w, g, rows) != g.identity_index).any():
            return False
    return True
