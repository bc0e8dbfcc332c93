"""Partitions, colored semi-bipartitions and the words attached to them.

A colored semi-bipartition of ``n`` is a pair ``(lam, mu)``: ``lam`` is an
opposite (weakly increasing) partition whose rows carry colors in
``1..d-1``, non-increasing along equal rows, and ``mu`` is an ordinary
partition.  Concatenating ``lam`` then ``mu`` gives the composition
``bar_alpha``; the color sequence padded with zeros for the rows of ``mu``
is ``epsilon``; ``r`` holds the partial sums ``0 = r_1 <= ... <= r_{k+1} = n``.
Each such pair names an element of the wreath product G(d,1,n) through an
explicit word in ``s_0, s_1, ..., s_{n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, NamedTuple, Sequence

Partition = tuple  # weakly decreasing tuple of positive ints

PARTITION_FILTERS = ("all", "strict", "odd", "even")
INDEX_SETS = ("P0m", "Psm", "MP0m", "MPsm")


def _partitions(n: int, largest: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def is_strict(p: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(p, p[1:]))


def is_odd(p: Sequence[int]) -> bool:
    return all(a % 2 == 1 for a in p)


def is_even(p: Sequence[int]) -> bool:
    return all(a % 2 == 0 for a in p)


_FILTERS = {
    "all": lambda p: True,
    "strict": is_strict,
    "odd": is_odd,
    "even": is_even,
}


def enum_partitions(n: int, filter: str = "all") -> list[Partition]:
    """Partitions of n, largest first part first: (3), (2, 1), (1, 1, 1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    try:
        keep = _FILTERS[filter]
    except KeyError:
        raise ValueError(f"unknown partition filter {filter!r}") from None
    return [p for p in _partitions(n, n) if keep(p)]


@lru_cache(maxsize=None)
def count_partitions(n: int, filter: str = "all") -> int:
    return len(enum_partitions(n, filter))


def enum_multipartitions(n: int, m: int) -> list[tuple[Partition, ...]]:
    """All m-tuples of partitions with total size n (m = 0 allows only n = 0)."""
    if m == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(n, -1, -1):
        for head in enum_partitions(first):
            for tail in enum_multipartitions(n - first, m - 1):
                out.append((head,) + tail)
    return out


@lru_cache(maxsize=None)
def count_multipartitions(n: int, m: int) -> int:
    if m == 0:
        return 1 if n == 0 else 0
    return sum(count_partitions(a) * count_multipartitions(n - a, m - 1) for a in range(n + 1))


def count_index_set(n: int, d: int, which: str) -> int:
    """Sizes of the multipartition index sets attached to level d, m = d // 2.

    ``P0m``: m-multipartitions of n.  ``Psm``: pairs (strict partition of a,
    m-multipartition of n - a).  ``MPsm`` restricts the strict component to
    even length; ``MP0m`` equals ``P0m``.
    """
    if d < 1:
        raise ValueError("level must be >= 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    m = d // 2
    if which in ("P0m", "MP0m"):
        return count_multipartitions(n, m)
    if which == "Psm":
        return sum(count_partitions(a, "strict") * count_multipartitions(n - a, m)
                   for a in range(n + 1))
    if which == "MPsm":
        return sum(
            sum(1 for p in enum_partitions(a, "strict") if len(p) % 2 == 0)
            * count_multipartitions(n - a, m)
            for a in range(n + 1)
        )
    raise ValueError(f"unknown index set {which!r}")


@dataclass(frozen=True, order=True)
class ColoredSemiBipartition:
    lambda_parts: tuple = ()
    colors: tuple = ()
    mu: tuple = ()

    def __post_init__(self):
        lam, col = self.lambda_parts, self.colors
        if len(lam) != len(col):
            raise ValueError("one color per row of lambda")
        if any(a > b for a, b in zip(lam, lam[1:])):
            raise ValueError(f"lambda {lam} is not an opposite partition")
        for i in range(len(lam) - 1):
            if lam[i] == lam[i + 1] and col[i] < col[i + 1]:
                raise ValueError("colors must not increase along equal rows")
        if any(c < 1 for c in col):
            raise ValueError("lambda colors start at 1")
        if any(a < b for a, b in zip(self.mu, self.mu[1:])) or any(p <= 0 for p in lam + self.mu):
            raise ValueError(f"mu {self.mu} is not a partition")

    @property
    def n(self) -> int:
        return sum(self.lambda_parts) + sum(self.mu)

    @property
    def bar_alpha(self) -> tuple:
        return tuple(self.lambda_parts) + tuple(self.mu)

    @property
    def epsilon(self) -> tuple:
        return tuple(self.colors) + (0,) * len(self.mu)

    @property
    def r(self) -> tuple:
        """(r_1, ..., r_{k+1}) with r_1 = 0 and r_{k+1} = n."""
        out = [0]
        for part in self.bar_alpha:
            out.append(out[-1] + part)
        return tuple(out)

    def sort_key(self):
        # mu runs largest-first, the same order enum_partitions uses
        return (sum(self.lambda_parts), self.lambda_parts, self.colors, tuple(-p for p in self.mu))

    def to_json(self) -> dict:
        return {
            "lambda": [{"part": p, "color": c} for p, c in zip(self.lambda_parts, self.colors)],
            "mu": list(self.mu),
        }

    def __str__(self):
        lam = ",".join(f"{p}^{c}" for p, c in zip(self.lambda_parts, self.colors))
        return f"(({lam}),({','.join(map(str, self.mu))}))"


def _opposite_partitions(s: int) -> list[tuple]:
    return [tuple(reversed(p)) for p in enum_partitions(s)]


def _color_data(lam: tuple, d: int) -> Iterator[tuple]:
    ncol = d - 1
    if not lam:
        yield ()
        return
    if ncol < 1:
        return
    for colors in product(range(1, ncol + 1), repeat=len(lam)):
        if all(not (lam[i] == lam[i + 1] and colors[i] < colors[i + 1]) for i in range(len(lam) - 1)):
            yield colors


def enum_colored_semibipartitions(n: int, d: int) -> list[ColoredSemiBipartition]:
    """Every colored semi-bipartition of n at level d, ordered by (|lam|, lam, colors, mu largest first)."""
    if d < 1:
        raise ValueError("level must be >= 1")
    out = []
    # no colors exist at d = 1, which forces lam to be empty
    max_lam = n if d > 1 else 0
    for s in range(max_lam + 1):
        for lam in _opposite_partitions(s):
            for colors in _color_data(lam, d):
                for mu in enum_partitions(n - s):
                    out.append(ColoredSemiBipartition(lam, colors, mu))
    out.sort(key=ColoredSemiBipartition.sort_key)
    return out


def in_tilde(beta: ColoredSemiBipartition) -> bool:
    """Rows of lam have part + color odd, and mu has only odd parts."""
    return all((p + c) % 2 == 1 for p, c in zip(beta.lambda_parts, beta.colors)) and is_odd(beta.mu)


def in_hat(beta: ColoredSemiBipartition) -> bool:
    """Parts sharing an even color (mu counts as color 0) are distinct; evenly many such parts."""
    seen: dict[int, set] = {}
    count = 0
    for part, eps in zip(beta.bar_alpha, beta.epsilon):
        if eps % 2:
            continue
        count += 1
        parts = seen.setdefault(eps, set())
        if part in parts:
            return False
        parts.add(part)
    return count % 2 == 0


def filter_index_set(betas: Sequence[ColoredSemiBipartition], which: str) -> list[ColoredSemiBipartition]:
    if which == "tilde":
        return [b for b in betas if in_tilde(b)]
    if which == "hat":
        return [b for b in betas if in_hat(b)]
    raise ValueError(f"unknown index set {which!r}")


def theta_bijection(beta: ColoredSemiBipartition, d: int) -> tuple[Partition, ...]:
    """d-multipartition: mu first, then the rows of each color 1..d-1 sorted decreasingly."""
    comps = [tuple(beta.mu)]
    for color in range(1, d):
        rows = sorted((p for p, c in zip(beta.lambda_parts, beta.colors) if c == color), reverse=True)
        comps.append(tuple(rows))
    return tuple(comps)


class Token(NamedTuple):
    """One letter of a word: kind is 's', 'x', 'c' or 's0' (index = power for s0)."""

    kind: str
    index: int

    def __str__(self):
        if self.kind == "s0":
            return f"s0^{self.index}"
        return f"{self.kind}{self.index}"


def S(i: int) -> Token:
    return Token("s", i)


def S0(power: int = 1) -> Token:
    if power < 1:
        raise ValueError("s0 power must be >= 1")
    return Token("s0", power)


def X(k: int) -> Token:
    return Token("x", k)


def C(k: int) -> Token:
    return Token("c", k)


def word_length(word: Sequence[Token]) -> int:
    """Length with s0^l counted as l letters."""
    return sum(t.index if t.kind == "s0" else 1 for t in word)


def parse_word(text: str) -> list[Token]:
    """Parse whitespace-separated tokens ``s0^l s<i> x<k> c<k>``."""
    word = []
    for tok in text.split():
        try:
            if tok == "s0":
                word.append(S0(1))
            elif tok.startswith("s0^"):
                word.append(S0(int(tok[3:])))
            elif tok[0] in "sxc" and tok[1:].isdigit():
                word.append(Token(tok[0], int(tok[1:])))
            else:
                raise ValueError
        except (ValueError, IndexError):
            raise ValueError(f"bad token {tok!r}") from None
    return word


def format_word(word: Sequence[Token]) -> str:
    return " ".join(str(t) for t in word)


def _s_prime(k: int, power: int) -> list[Token]:
    # s'_{k,l} = s_k ... s_1 s_0^l s_1 ... s_k
    down = [S(j) for j in range(k, 0, -1)]
    return down + [S0(power)] + down[::-1]


def minimal_word(beta: ColoredSemiBipartition) -> list[Token]:
    r = beta.r
    word: list[Token] = []
    for i, eps in enumerate(beta.epsilon):
        lo, hi = r[i], r[i + 1]
        if eps:
            word += _s_prime(lo, eps)
        word += [S(j) for j in range(lo + 1, hi)]
    return word


def clifford_decorated_word(beta: ColoredSemiBipartition) -> tuple[list[Token], tuple[int, ...]]:
    """The word of beta plus the Clifford mask {r_{i+1} : epsilon_i even}."""
    if not in_hat(beta):
        raise ValueError(f"{beta} is not in the hat index set")
    r = beta.r
    mask = tuple(r[i + 1] for i, eps in enumerate(beta.epsilon) if eps % 2 == 0)
    return minimal_word(beta), mask


def partition_to_json(p: Sequence[int]) -> list[int]:
    return list(p)


def colored_from_json(obj: dict) -> ColoredSemiBipartition:
    lam = tuple(row["part"] for row in obj.get("lambda", []))
    colors = tuple(row["color"] for row in obj.get("lambda", []))
    return ColoredSemiBipartition(lam, colors, tuple(obj.get("mu", [])))
