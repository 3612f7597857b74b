from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BFile:
    """Terms of an OEIS sequence as listed in its b-file."""

    anum: str
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        terms = tuple((int(i), int(v)) for i, v in self.terms)
        for (a, _), (b, _) in zip(terms, terms[1:]):
            if b <= a:
                raise ValueError(f"{self.anum}: b-file indices must increase, got {a} then {b}")
        object.__setattr__(self, "terms", terms)

    @property
    def offset(self) -> int | None:
        return self.terms[0][0] if self.terms else None

    def values(self) -> list[int]:
        return [v for _, v in self.terms]

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def prefix(self, count: int) -> "BFile":
        return BFile(self.anum, self.terms[:count])

    def __len__(self) -> int:
        return len(self.terms)

    def to_dict(self):
        return {
            "anum": self.anum,
            "terms": [[i, str(v)] for i, v in self.terms],
        }
