"""Words in free groups on petal generators x_j or dual generators y_i."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

_TOKEN = re.compile(r"^([a-z])(\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[int, int], ...] = ()
    symbol: str = "x"

    @classmethod
    def parse(cls, text: str, symbol: str = "x") -> "Word":
        text = text.strip()
        if text in ("", "e", "1", "ε"):
            return cls((), symbol)
        letters = []
        for tok in text.replace("*", " ").split():
            m = _TOKEN.match(tok)
            if not m or m.group(1) != symbol:
                raise ValueError(f"bad letter {tok!r} (expected {symbol}<j> or {symbol}<j>^<k>)")
            j, k = int(m.group(2)), int(m.group(3) or 1)
            if j < 1:
                raise ValueError(f"generator index must be positive in {tok!r}")
            letters.extend([(j, 1 if k > 0 else -1)] * abs(k))
        return cls(tuple(letters), symbol)

    @classmethod
    def power(cls, j: int, k: int, symbol: str = "x") -> "Word":
        return cls(((j, 1 if k > 0 else -1),) * abs(k), symbol)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, self.symbol)

    def inverse(self) -> "Word":
        return Word(tuple((j, -s) for j, s in reversed(self.letters)), self.symbol)

    def reduce(self) -> "Word":
        return reduce(self)

    def __str__(self) -> str:
        if not self.letters:
            return "ε"
        return " ".join(f"{self.symbol}{j}" + ("" if s > 0 else "^-1") for j, s in self.letters)


def reduce(w: Word) -> Word:
    stack: list = []
    for j, s in w.letters:
        if stack and stack[-1] == (j, -s):
            stack.pop()
        else:
            stack.append((j, s))
    return Word(tuple(stack), w.symbol)


def alphabet(m: int) -> list[tuple[int, int]]:
    """Letters in a fixed order: positive letters first, then inverses."""
    return [(j, 1) for j in range(1, m + 1)] + [(j, -1) for j in range(1, m + 1)]


def ball(m: int, r: int) -> Iterator[Word]:
    """All reduced words of length <= r, shortest first."""
    layer = [()]
    yield Word(())
    for _ in range(r):
        nxt = []
        for w in layer:
            for a in alphabet(m):
                if w and w[-1] == (a[0], -a[1]):
                    continue
                nxt.append(w + (a,))
        for w in nxt:
            yield Word(w)
        layer = nxt


def ball_size(m: int, r: int) -> int:
    if r == 0:
        return 1
    return 1 + sum(2 * m * (2 * m - 1) ** (k - 1) for k in range(1, r + 1))
