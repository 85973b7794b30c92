"""Exact arithmetic helpers for odd prime moduli.

Residues live in {0, ..., p-1}; the canonical lift of a residue is the unique
representative in {1, ..., p}, so 0 lifts to p.  Parameters outside the prime
field are opaque Generic tokens: tokens with different names never coincide
and never cancel against field elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

__all__ = [
    "FpElem",
    "Generic",
    "Parameter",
    "is_odd_prime",
    "check_odd_prime",
    "lift",
    "sort_params",
]


@lru_cache(maxsize=None)
def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p: int) -> int:
    if not isinstance(p, int) or not is_odd_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p!r}")
    return p


@dataclass(frozen=True)
class FpElem:
    """A residue value in {0, ..., p-1} for an odd prime p."""

    value: int
    p: int

    def __post_init__(self) -> None:
        check_odd_prime(self.p)
        if not isinstance(self.value, int) or not 0 <= self.value < self.p:
            raise ValueError(f"residue {self.value!r} out of range for p={self.p}")

    @classmethod
    def reduce(cls, n: int, p: int) -> "FpElem":
        check_odd_prime(p)
        return cls(n % p, p)

    def lift(self) -> int:
        """Canonical lift: the congruent integer in {1, ..., p}."""
        return self.value if self.value != 0 else self.p


@dataclass(frozen=True)
class Generic:
    """Opaque scalar outside the prime field, identified by its token name."""

    name: str

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("Generic token needs a nonempty name")


Parameter = Union[FpElem, Generic]


def lift(x: FpElem) -> int:
    """Canonical lift of a residue, in {1, ..., p}."""
    return x.lift()


def sort_params(params: Iterable[Parameter], p: int) -> tuple[list[int], int]:
    """Split parameters into weakly decreasing canonical lifts plus a generic count.

    Every field element must carry modulus p.  Generic tokens are counted, not
    lifted.
    """
    check_odd_prime(p)
    lifts: list[int] = []
    generics = 0
    for q in params:
        if isinstance(q, Generic):
            generics += 1
        elif isinstance(q, FpElem):
            if q.p != p:
                raise ValueError(f"parameter modulus {q.p} does not match p={p}")
            lifts.append(q.lift())
        else:
            raise TypeError(f"not a parameter: {q!r}")
    lifts.sort(reverse=True)
    return lifts, generics
