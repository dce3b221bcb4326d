"""Datasets of incomplete-ranking observations and their text format.

One observation per line, items separated by `>`, best first (`3>1>4`). Lines
starting with `#` are comments; blank lines are skipped. The observed subset is
the content of the ranking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .errors import ParseError
from .words import Subset, Word, content


@dataclass(frozen=True, slots=True)
class Dataset:
    """A sequence of (subset, ranking) observations.

    Invariant: each ranking has at least 2 items and its content equals the
    stored subset.
    """

    observations: tuple[tuple[Subset, Word], ...]

    def __post_init__(self) -> None:
        for a, word in self.observations:
            if len(a) < 2:
                raise ParseError(f"observation {word} ranks fewer than 2 items")
            if content(word) != a:
                raise ParseError(f"subset {a} does not match ranking {word}")

    @classmethod
    def from_words(cls, words: Iterable[Word]) -> "Dataset":
        return cls(tuple((content(w), w) for w in words))

    def __len__(self) -> int:
        return len(self.observations)

    def __iter__(self) -> Iterator[tuple[Subset, Word]]:
        return iter(self.observations)

    def words(self) -> list[Word]:
        return [w for _, w in self.observations]

    def design(self) -> set[Subset]:
        """The distinct observed subsets (the empirical observation design)."""
        return {a for a, _ in self.observations}


def parse_ranking_line(line: str, line_no: int) -> Word:
    """Parse one `a>b>c` ranking line into a word."""
    tokens = [t.strip() for t in line.split(">")]
    items = []
    for token in tokens:
        if not token:
            raise ParseError("empty item between separators", line_no)
        try:
            item = int(token)
        except ValueError:
            raise ParseError(f"item {token!r} is not an integer", line_no) from None
        if item < 0:
            raise ParseError(f"item {item} is negative", line_no)
        items.append(item)
    if len(items) < 2:
        raise ParseError("a ranking needs at least 2 items", line_no)
    if len(set(items)) != len(items):
        raise ParseError("duplicate item in ranking", line_no)
    return tuple(items)


def parse_dataset(stream: IO[str] | str) -> Dataset:
    """Parse the ranking text format; errors carry 1-based line numbers."""
    text = stream if isinstance(stream, str) else stream.read()
    observations = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        word = parse_ranking_line(line, line_no)
        observations.append((content(word), word))
    return Dataset(tuple(observations))


def serialize_dataset(dataset: Dataset) -> str:
    """Canonical text for a dataset: one `a>b>c` line per observation."""
    lines = [">".join(str(item) for item in word) for _, word in dataset]
    return "".join(line + "\n" for line in lines)
