"""Sparse real-valued functions on the set of all incomplete rankings.

A RankingFunction maps injective words to doubles; absent words are 0 and
entries that become exactly 0 are dropped, so the support is always the set of
stored keys.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import DomainError
from .words import Subset, Word, check_word, content, enumerate_rankings


class RankingFunction:
    """Sparse function on incomplete rankings with exact-zero compaction."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Word, float] | None = None):
        self._entries: dict[Word, float] = {}
        if entries:
            for word, value in entries.items():
                self[check_word(word)] = float(value)

    @classmethod
    def dirac(cls, word: Word) -> "RankingFunction":
        return cls({word: 1.0})

    @classmethod
    def uniform(cls, a: Subset) -> "RankingFunction":
        words = enumerate_rankings(a)
        return cls({w: 1.0 / len(words) for w in words})

    def __getitem__(self, word: Word) -> float:
        return self._entries.get(word, 0.0)

    def __setitem__(self, word: Word, value: float) -> None:
        if value == 0.0:
            self._entries.pop(word, None)
        else:
            self._entries[word] = value

    def __iter__(self) -> Iterator[Word]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankingFunction):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self) -> str:
        items = ", ".join(f"{w}: {v:g}" for w, v in sorted(self._entries.items()))
        return f"RankingFunction({{{items}}})"

    def items(self) -> Iterable[tuple[Word, float]]:
        return self._entries.items()

    def support(self) -> set[Word]:
        return set(self._entries)

    def global_support(self) -> set[Subset]:
        """Contents of the supported words (the subsets the function touches)."""
        return {content(w) for w in self._entries}

    def restrict_content(self, a: Subset) -> "RankingFunction":
        """The component supported on rankings whose content is exactly a."""
        return RankingFunction(
            {w: v for w, v in self._entries.items() if content(w) == a}
        )

    def total_mass(self) -> float:
        return sum(self._entries.values())

    def add_scaled(self, other: "RankingFunction", factor: float) -> None:
        for word, value in other.items():
            self[word] = self[word] + factor * value

    def scaled(self, factor: float) -> "RankingFunction":
        return RankingFunction({w: factor * v for w, v in self._entries.items()})

    def __add__(self, other: "RankingFunction") -> "RankingFunction":
        out = RankingFunction(self._entries)
        out.add_scaled(other, 1.0)
        return out

    def __sub__(self, other: "RankingFunction") -> "RankingFunction":
        out = RankingFunction(self._entries)
        out.add_scaled(other, -1.0)
        return out

    def max_abs_diff(self, other: "RankingFunction") -> float:
        words = self.support() | other.support()
        return max((abs(self[w] - other[w]) for w in words), default=0.0)

    def single_content(self) -> Subset:
        """The common content of all supported words.

        Raises DomainError if the function is empty or mixes contents.
        """
        contents = self.global_support()
        if len(contents) != 1:
            raise DomainError(
                f"expected support on a single subset, found {sorted(contents)}"
            )
        return next(iter(contents))
