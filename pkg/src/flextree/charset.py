"""Typing alphabet and corpus ingestion.

The engine types from a fixed 72-symbol alphabet. ``CharacterSet`` pins a
canonical symbol order, which defines the alphabetical layout and breaks
every ranking tie, so two engines built from the same charset produce
byte-identical layouts. ``normalize`` maps arbitrary text onto the
alphabet and ``Corpus`` is the resulting normalized training text.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path

# Reserved end-of-document marker used by the context model. It is never a
# member of a CharacterSet and never appears in normalized text.
END_OF_TEXT = "$"

ALPHABET_SIZE = 72

_UPPER = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
_LOWER = "abcdefghijklmnopqrstuvwxyz"
_DIGITS = "0123456789"
_SPECIALS = ".,\"';?|_"

#: Canonical default roster: uppercase, lowercase, digits, the eight special
#: characters, space, hyphen -- 26 + 26 + 10 + 8 + 2 = 72 symbols.
DEFAULT_SYMBOLS = _UPPER + _LOWER + _DIGITS + _SPECIALS + " -"


class CharsetError(ValueError):
    """Invalid character set or corpus content."""


class DuplicateSymbolError(CharsetError):
    """A symbol appears more than once in a charset definition."""


class WrongCountError(CharsetError):
    """A charset definition does not contain exactly 72 symbols."""


@dataclass(frozen=True)
class CharacterSet:
    """Ordered 72-symbol typing alphabet.

    Symbols are distinct single characters; the end-of-document marker
    ``$`` is reserved and rejected. The tuple order is canonical and is
    exposed as a 0..71 index via :attr:`rank`.
    """

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.symbols) != ALPHABET_SIZE:
            raise WrongCountError(
                f"expected {ALPHABET_SIZE} symbols, got {len(self.symbols)}"
            )
        seen: set[str] = set()
        for sym in self.symbols:
            if not isinstance(sym, str) or len(sym) != 1:
                raise CharsetError(f"symbols must be single characters, got {sym!r}")
            if sym == END_OF_TEXT:
                raise CharsetError(f"{END_OF_TEXT!r} is reserved and cannot be a member")
            if sym in seen:
                raise DuplicateSymbolError(f"duplicate symbol {sym!r}")
            seen.add(sym)

    @cached_property
    def rank(self) -> dict[str, int]:
        """Symbol -> canonical index, a bijection onto 0..71."""
        return {sym: i for i, sym in enumerate(self.symbols)}

    def __contains__(self, ch: str) -> bool:
        return ch in self.rank

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class Corpus:
    """Normalized text: every character is a member of ``charset``."""

    text: str
    charset: CharacterSet

    def __post_init__(self) -> None:
        extra = set(self.text) - set(self.charset.symbols)
        if extra:
            shown = "".join(sorted(extra)[:10])
            raise CharsetError(f"corpus contains non-charset characters: {shown!r}")

    def __len__(self) -> int:
        return len(self.text)


@lru_cache(maxsize=1)
def default_charset() -> CharacterSet:
    """The canonical default alphabet (see :data:`DEFAULT_SYMBOLS`)."""
    return CharacterSet(tuple(DEFAULT_SYMBOLS))


def load_charset(path: str | Path) -> CharacterSet:
    """Load a charset file: UTF-8, one character per line, exactly 72 lines.

    Raises :class:`WrongCountError` on a wrong line count,
    :class:`DuplicateSymbolError` on repeats, :class:`CharsetError` on
    lines that are not a single character, and ``OSError`` on IO failure.
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # allow one trailing newline
    for i, line in enumerate(lines, start=1):
        if len(line) != 1:
            raise CharsetError(f"line {i}: expected exactly one character, got {line!r}")
    return CharacterSet(tuple(lines))


def normalize(raw_text: str, charset: CharacterSet | None = None) -> Corpus:
    """Map arbitrary text onto the charset.

    Characters in the charset pass through unchanged. Each maximal run of
    out-of-alphabet characters is replaced by a single space, preserving
    word boundaries without inflating gaps; if the charset itself has no
    space symbol the run is dropped instead. The operation is idempotent.
    """
    cs = charset if charset is not None else default_charset()
    members = cs.rank
    filler = " " if " " in members else ""
    out: list[str] = []
    in_gap = False
    for ch in raw_text:
        if ch in members:
            out.append(ch)
            in_gap = False
        else:
            if not in_gap and filler:
                out.append(filler)
            in_gap = True
    return Corpus("".join(out), cs)
