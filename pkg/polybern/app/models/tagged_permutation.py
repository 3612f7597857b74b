from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence


class Side(str, Enum):
    LEFT = "L"
    RIGHT = "R"

    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


@dataclass(frozen=True)
class Symbol:
    side: Side
    value: int

    @classmethod
    def left(cls, value: int) -> "Symbol":
        return cls(Side.LEFT, value)

    @classmethod
    def right(cls, value: int) -> "Symbol":
        return cls(Side.RIGHT, value)

    @classmethod
    def parse(cls, token: str) -> "Symbol":
        token = token.strip()
        if token.endswith("'"):
            return cls(Side.RIGHT, int(token[:-1]))
        return cls(Side.LEFT, int(token))

    def __str__(self) -> str:
        return f"{self.value}'" if self.side is Side.RIGHT else str(self.value)


@dataclass(frozen=True)
class TaggedPermutation:
    """Word over left values 1..n and right values 1'..k', each used once.

    Text form lists the symbols separated by spaces, right values primed:
    ``"2 1' 1"`` is L2, R1, L1.
    """

    n: int
    k: int
    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        lefts = sorted(s.value for s in symbols if s.side is Side.LEFT)
        rights = sorted(s.value for s in symbols if s.side is Side.RIGHT)
        if lefts != list(range(1, self.n + 1)) or rights != list(range(1, self.k + 1)):
            raise ValueError(
                f"symbols {' '.join(map(str, symbols))!r} do not use 1..{self.n} and 1'..{self.k}' once each")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def of(cls, symbols: Sequence[Symbol]) -> "TaggedPermutation":
        """Build from symbols, inferring n and k."""
        n = sum(1 for s in symbols if s.side is Side.LEFT)
        return cls(n, len(symbols) - n, tuple(symbols))

    @classmethod
    def parse(cls, text: str) -> "TaggedPermutation":
        return cls.of([Symbol.parse(tok) for tok in text.split()])

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __getitem__(self, idx):
        return self.symbols[idx]

    @property
    def first_side(self) -> Side | None:
        return self.symbols[0].side if self.symbols else None

    @property
    def last_side(self) -> Side | None:
        return self.symbols[-1].side if self.symbols else None

    def blocks(self) -> list[tuple[Symbol, ...]]:
        """Maximal runs of same-sided symbols."""
        out: list[list[Symbol]] = []
        for s in self.symbols:
            if out and out[-1][-1].side is s.side:
                out[-1].append(s)
            else:
                out.append([s])
        return [tuple(b) for b in out]

    def index_of(self, symbol: Symbol) -> int:
        return self.symbols.index(symbol)

    @staticmethod
    def join(blocks: Iterable[Iterable[Symbol]]) -> tuple[Symbol, ...]:
        return tuple(s for block in blocks for s in block)
