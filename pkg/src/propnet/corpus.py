"""Numbered proposition corpora.

A corpus is a set of language versions of the same text, where every text
unit (a *proposition*) carries a decimal outline number such as ``2.0212``.
The leading digit (1..7) is the proposition's group; dropping the last
decimal digit yields the structural parent.  Because the numbering is shared
across translations, versions align at the proposition level by number alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Optional, Sequence, Union

from .textproc import tokenize

MAJOR_RANGE = range(1, 8)


class NumberParseError(ValueError):
    """Raised for a malformed proposition number; carries the bad position."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"invalid proposition number {text!r}: {message} (at position {position})")
        self.text = text
        self.position = position


class CorpusFormatError(ValueError):
    """Raised for a malformed proposition file; carries the line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, order=False)
class PropNumber:
    """A proposition number: a major digit 1..7 plus optional decimals."""

    raw: str
    major: int
    decimals: tuple[int, ...]

    def __str__(self) -> str:
        return self.raw

    @property
    def group(self) -> int:
        return self.major

    @property
    def sort_key(self) -> tuple[int, ...]:
        # Document order of the outline notation: 2.01 < 2.06 < 2.1 < 2.11.
        return (self.major, *self.decimals)

    def __lt__(self, other: "PropNumber") -> bool:
        return self.sort_key < other.sort_key

    def structural_parent(self) -> Optional["PropNumber"]:
        """Drop the last decimal digit; ``None`` for a root-level number."""
        if not self.decimals:
            return None
        decimals = self.decimals[:-1]
        raw = str(self.major)
        if decimals:
            raw += "." + "".join(str(d) for d in decimals)
        return PropNumber(raw, self.major, decimals)


def parse_prop_number(s: str) -> PropNumber:
    """Parse outline notation like ``"2.0212"`` or ``"7"``.

    Raises NumberParseError naming the offending character position for
    anything that is not ``major[.digits]`` with major in 1..7.
    """
    if not s:
        raise NumberParseError("empty string", s, 0)
    head = s[0]
    if not head.isdigit():
        raise NumberParseError(f"expected a digit, found {head!r}", s, 0)
    if int(head) not in MAJOR_RANGE:
        raise NumberParseError(f"major part must be in 1..7, found {head!r}", s, 0)
    if len(s) == 1:
        return PropNumber(s, int(head), ())
    if s[1] != ".":
        raise NumberParseError(f"expected '.', found {s[1]!r}", s, 1)
    digits = s[2:]
    if not digits:
        raise NumberParseError("expected a digit after '.'", s, 2)
    for offset, ch in enumerate(digits):
        if not ch.isdigit():
            reason = "second '.' not allowed" if ch == "." else f"expected a digit, found {ch!r}"
            raise NumberParseError(reason, s, 2 + offset)
    return PropNumber(s, int(head), tuple(int(d) for d in digits))


def format_prop_number(n: PropNumber) -> str:
    """Inverse of parse_prop_number; round-trips for every valid number."""
    if not n.decimals:
        return str(n.major)
    return f"{n.major}." + "".join(str(d) for d in n.decimals)


def is_prop_number(s: str) -> bool:
    try:
        parse_prop_number(s)
    except NumberParseError:
        return False
    return True


@dataclass(frozen=True)
class Proposition:
    """One numbered text unit of one language version."""

    number: PropNumber
    text: str
    language: str

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError(f"proposition {self.number} has empty text")

    @property
    def group(self) -> int:
        return self.number.major


@dataclass(frozen=True)
class Version:
    """One language version: an ordered, duplicate-free map of propositions."""

    language: str
    translator: str
    propositions: dict[PropNumber, Proposition]

    @property
    def key(self) -> tuple[str, str]:
        return (self.language, self.translator)

    def __len__(self) -> int:
        return len(self.propositions)

    def __iter__(self) -> Iterator[Proposition]:
        return iter(self.propositions.values())

    def numbers(self) -> set[PropNumber]:
        return set(self.propositions)

    def resolve_parent(self, number: PropNumber) -> Optional[Proposition]:
        """Closest structural ancestor present in this version.

        Printed editions skip some intermediate numbers, so climb until a
        present ancestor is found.
        """
        parent = number.structural_parent()
        while parent is not None and parent not in self.propositions:
            parent = parent.structural_parent()
        return self.propositions.get(parent) if parent is not None else None


def load_version(stream: Union[IO[str], Iterable[str]], language: str, translator: str = "") -> Version:
    """Read a proposition file: ``NUMBER<TAB>text`` records.

    Lines not starting with a valid number followed by a tab continue the
    previous record (joined by a single space).  Blank lines are skipped,
    ``#`` at column 0 starts a comment.
    """
    records: dict[PropNumber, list[str]] = {}
    order: list[PropNumber] = []
    current: Optional[PropNumber] = None
    for lineno, rawline in enumerate(stream, 1):
        line = rawline.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        if line.startswith("#"):
            continue
        head, tab, rest = line.partition("\t")
        if tab and is_prop_number(head):
            number = parse_prop_number(head)
            if number in records:
                raise CorpusFormatError(f"duplicate proposition number {number}", lineno)
            records[number] = [rest.strip()] if rest.strip() else []
            order.append(number)
            current = number
        else:
            if current is None:
                raise CorpusFormatError("text before any numbered record", lineno)
            records[current].append(line.strip())
    if not order:
        raise CorpusFormatError("no proposition records found")
    propositions: dict[PropNumber, Proposition] = {}
    for number in order:
        text = " ".join(records[number])
        propositions[number] = Proposition(number=number, text=text, language=language)
    return Version(language=language, translator=translator, propositions=propositions)


@dataclass(frozen=True)
class ParallelCorpus:
    """Versions aligned row-wise by proposition number."""

    versions: tuple[Version, ...]
    rows: dict[PropNumber, dict[tuple[str, str], Optional[Proposition]]]

    def version(self, language: str, translator: Optional[str] = None) -> Version:
        matches = [
            v
            for v in self.versions
            if v.language == language and (translator is None or v.translator == translator)
        ]
        if not matches:
            raise KeyError(f"no version for language {language!r}" + (f", translator {translator!r}" if translator else ""))
        if len(matches) > 1:
            options = ", ".join(repr(v.translator) for v in matches)
            raise KeyError(f"ambiguous language {language!r}: translators {options}")
        return matches[0]

    def absence_report(self) -> dict[PropNumber, tuple[tuple[str, str], ...]]:
        """Numbers that some version lacks, with the lacking version keys."""
        report = {}
        for number, row in self.rows.items():
            missing = tuple(key for key, prop in row.items() if prop is None)
            if missing:
                report[number] = missing
        return report


def align_corpus(versions: Sequence[Version]) -> ParallelCorpus:
    """Join versions on proposition number; rows in document order."""
    if not versions:
        raise ValueError("align_corpus needs at least one version")
    keys = [v.key for v in versions]
    if len(set(keys)) != len(keys):
        raise ValueError("duplicate (language, translator) among versions")
    all_numbers = sorted({n for v in versions for n in v.propositions}, key=lambda n: n.sort_key)
    by_key = {v.key: v for v in versions}
    rows: dict[PropNumber, dict[tuple[str, str], Optional[Proposition]]] = {}
    for number in all_numbers:
        rows[number] = {key: by_key[key].propositions.get(number) for key in sorted(by_key)}
    return ParallelCorpus(versions=tuple(versions), rows=rows)


@dataclass(frozen=True)
class CountReport:
    """Surface token and type counts of one version."""

    tokens: int
    types: int


def corpus_stats(version: Version) -> CountReport:
    """Count case-folded surface tokens and distinct types, no stopword removal."""
    total = 0
    seen: set[str] = set()
    for prop in version:
        toks = tokenize(prop.text, version.language)
        total += len(toks)
        seen.update(toks)
    return CountReport(tokens=total, types=len(seen))
