"""Confusable-codepoint tables: Latin letters and their Unicode homographs.

A :class:`ConfusableMap` pairs a forward table (Latin letter -> homograph
codepoints that imitate it) with its inverse skeleton table (homograph ->
the one Latin letter it restores to). The attack substitutes along the
forward table; the defense rewrites along the skeleton table.

Map files are UTF-8 text, one entry per line::

    <latin-letter><TAB><space-separated homograph list>

with each homograph written as ``U+XXXX`` (4-6 hex digits). Lines whose
first non-blank character is ``#`` are comments; blank lines are ignored.
The builtin table ships in this same format (``data/builtin_v1.map``) so
external tools can consume it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import MapFormatError

ASCII_LETTERS = frozenset(
    chr(c) for c in range(ord("a"), ord("z") + 1)
) | frozenset(chr(c) for c in range(ord("A"), ord("Z") + 1))

_LOWERCASE = [chr(c) for c in range(ord("a"), ord("z") + 1)]

_CODEPOINT_RE = re.compile(r"^U\+([0-9A-Fa-f]{4,6})$")

_BUILTIN_RESOURCE = "builtin_v1.map"
_builtin_cache: "ConfusableMap | None" = None


def format_codepoint(ch: str) -> str:
    """Render a single character as ``U+XXXX`` (4-6 uppercase hex digits)."""
    return f"U+{ord(ch):04X}"


def parse_codepoint(token: str) -> str:
    """Parse a ``U+XXXX`` token into the character it denotes."""
    m = _CODEPOINT_RE.match(token)
    if m is None:
        raise ValueError(f"not a U+XXXX codepoint token: {token!r}")
    value = int(m.group(1), 16)
    if value > 0x10FFFF:
        raise ValueError(f"codepoint out of Unicode range: {token}")
    return chr(value)


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by :func:`validate`."""

    severity: str  # "error" or "warning"
    message: str
    codepoint: str | None = None  # offending codepoint, "U+XXXX" form

    def __str__(self) -> str:
        return f"{self.severity}: {self.message}"


@dataclass(frozen=True)
class ConfusableMap:
    """Immutable bidirectional homograph table.

    ``forward`` maps a Basic Latin letter to an ordered tuple of homograph
    characters; ``skeleton`` maps each homograph back to exactly one Latin
    letter. Instances are safe to share across workers.
    """

    forward: dict[str, tuple[str, ...]]
    skeleton: dict[str, str]
    source_name: str = field(default="unnamed")

    @classmethod
    def from_forward(
        cls, forward: dict[str, tuple[str, ...]], source_name: str
    ) -> "ConfusableMap":
        """Build a map from the forward table, deriving the skeleton."""
        skeleton: dict[str, str] = {}
        for letter, homographs in forward.items():
            for h in homographs:
                skeleton[h] = letter
        return cls(
            forward={k: tuple(v) for k, v in forward.items()},
            skeleton=skeleton,
            source_name=source_name,
        )

    def homographs_for(self, letter: str) -> tuple[str, ...]:
        return self.forward.get(letter, ())

    def skeleton_of(self, ch: str) -> str | None:
        return self.skeleton.get(ch)

    def __contains__(self, ch: str) -> bool:
        return ch in self.skeleton

    @property
    def entry_count(self) -> int:
        return sum(len(v) for v in self.forward.values())


def validate(cmap: ConfusableMap) -> list[Violation]:
    """Check every map invariant; violations are data, not failures.

    Errors: non-letter key, ASCII or multi-scalar homograph, a homograph
    listed under two letters, skeleton out of sync with forward.
    Warnings: a lowercase letter a-z with no homograph entry.
    """
    violations: list[Violation] = []

    seen: dict[str, str] = {}
    for letter, homographs in cmap.forward.items():
        if letter not in ASCII_LETTERS:
            violations.append(
                Violation("error", f"key {letter!r} is not a Basic Latin letter")
            )
        for h in homographs:
            cp = format_codepoint(h) if len(h) == 1 else repr(h)
            if len(h) != 1:
                violations.append(
                    Violation("error", f"homograph {h!r} is not a single scalar", cp)
                )
                continue
            if ord(h) <= 0x7F:
                violations.append(
                    Violation(
                        "error", f"homograph {cp} inside ASCII range", cp
                    )
                )
            if h in seen and seen[h] != letter:
                violations.append(
                    Violation(
                        "error",
                        f"duplicate homograph {cp} under {seen[h]!r} and {letter!r}",
                        cp,
                    )
                )
            seen[h] = letter
            if cmap.skeleton.get(h) != letter:
                violations.append(
                    Violation(
                        "error",
                        f"skeleton of {cp} is {cmap.skeleton.get(h)!r}, "
                        f"expected {letter!r}",
                        cp,
                    )
                )

    forward_targets = {h for hs in cmap.forward.values() for h in hs}
    for h in cmap.skeleton:
        if h not in forward_targets:
            cp = format_codepoint(h)
            violations.append(
                Violation(
                    "error",
                    f"skeleton entry {cp} missing from forward table",
                    cp,
                )
            )

    for letter in _LOWERCASE:
        if not cmap.forward.get(letter):
            violations.append(
                Violation("warning", f"letter {letter!r} has no homograph")
            )

    return violations


def _parse_map_lines(lines, source_name: str) -> ConfusableMap:
    forward: dict[str, list[str]] = {}
    owner: dict[str, tuple[str, int]] = {}  # homograph -> (letter, line no)

    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise MapFormatError("missing TAB separator", lineno)
        letter, _, rest = line.partition("\t")
        if letter not in ASCII_LETTERS:
            raise MapFormatError(
                f"key {letter!r} is not a Basic Latin letter", lineno
            )
        if letter in forward:
            raise MapFormatError(f"duplicate entry for letter {letter!r}", lineno)
        tokens = rest.split()
        if not tokens:
            raise MapFormatError(f"no homographs listed for {letter!r}", lineno)
        homographs: list[str] = []
        for token in tokens:
            try:
                ch = parse_codepoint(token)
            except ValueError as exc:
                raise MapFormatError(str(exc), lineno) from exc
            if ord(ch) <= 0x7F:
                raise MapFormatError(
                    f"homograph {token} inside ASCII range", lineno
                )
            if ch in owner:
                raise MapFormatError(
                    f"duplicate homograph {format_codepoint(ch)} "
                    f"(already under {owner[ch][0]!r} at line {owner[ch][1]})",
                    lineno,
                )
            owner[ch] = (letter, lineno)
            homographs.append(ch)
        forward[letter] = homographs

    return ConfusableMap.from_forward(
        {k: tuple(v) for k, v in forward.items()}, source_name
    )


def load_map(path: str | Path) -> ConfusableMap:
    """Load a confusable map file, enforcing all map invariants.

    Partial a-z coverage is allowed for loaded maps (reported as warnings
    by :func:`validate`); format errors and invariant violations raise
    :class:`MapFormatError` with the offending line number.
    """
    path = Path(path)
    with path.open("r", encoding="utf-8") as f:
        return _parse_map_lines(f, source_name=str(path))


def builtin_map() -> ConfusableMap:
    """The embedded default map: full a-z and A-Z coverage, zero violations."""
    global _builtin_cache
    if _builtin_cache is None:
        text = (
            resources.files("hga.data")
            .joinpath(_BUILTIN_RESOURCE)
            .read_text(encoding="utf-8")
        )
        _builtin_cache = _parse_map_lines(
            text.splitlines(), source_name="builtin-v1"
        )
    return _builtin_cache
