"""Residue multisets modulo simultaneous translation, and their dualities.

A radius class is an n-element multiset of F_p taken up to adding a common
constant.  The canonical representative is the lexicographically least sorted
translate; it always contains 0.  Classes with distinct entries form the set
Xi_{p,n}, of size C(p,n)/p, which carries two involutions: entrywise negation
and the negated complement (the latter lands in Xi_{p,p-n}).

A tuple (alpha, beta) in F_p^n x F_p^{n-1} determines three exponent multisets

    e1 = {0, 1-beta_1, ..., 1-beta_{n-1}}
    e2 = {0, 1, ..., n-2, sum(beta) - sum(alpha)}
    e3 = {alpha_1, ..., alpha_n}

whose classes form the radii triple of the attached local system.  Tuples
whose canonical lifts satisfy the interleaving chain a_1 >= b_1 > a_2 >= ...
> b_{n-1} > a_n are exactly those with a full solution space; hyp_set collects
every permutation of every radii triple arising that way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .fp import check_odd_prime

__all__ = [
    "RadiusClass",
    "canonical",
    "xi",
    "xi_size",
    "neg_dual",
    "comp_dual",
    "exponents",
    "radii_triple",
    "is_hyp_type",
    "interleavings",
    "hyp_set",
]


@dataclass(frozen=True, order=True)
class RadiusClass:
    """Canonical form of a residue multiset modulo simultaneous translation.

    elems is weakly increasing, starts at 0, and is the lexicographically least
    among the sorted translates.  Entries may repeat; in_xi marks the
    distinct-entry classes.
    """

    p: int
    elems: tuple[int, ...]

    def __post_init__(self) -> None:
        check_odd_prime(self.p)
        n = len(self.elems)
        if not 1 <= n < self.p:
            raise ValueError(f"class size must satisfy 1 <= n < p, got n={n}, p={self.p}")
        if any(not isinstance(e, int) or not 0 <= e < self.p for e in self.elems):
            raise ValueError(f"entries out of range for p={self.p}: {self.elems}")
        if self.elems != _lexmin_translate(self.p, self.elems):
            raise ValueError(f"{self.elems} is not the canonical translate")

    @property
    def n(self) -> int:
        return len(self.elems)

    @property
    def in_xi(self) -> bool:
        return len(set(self.elems)) == len(self.elems)

    def to_json(self) -> dict:
        return {"p": self.p, "elems": list(self.elems)}

    @classmethod
    def from_json(cls, obj: dict) -> "RadiusClass":
        return canonical(obj["p"], obj["elems"])


def _lexmin_translate(p: int, elems: Sequence[int]) -> tuple[int, ...]:
    return min(tuple(sorted((e + c) % p for e in elems)) for c in range(p))


def canonical(p: int, elems: Iterable[int]) -> RadiusClass:
    """Canonical class of a multiset of residues (any representative accepted)."""
    check_odd_prime(p)
    es = [e % p for e in elems]
    if not 1 <= len(es) < p:
        raise ValueError(f"class size must satisfy 1 <= n < p, got n={len(es)}, p={p}")
    return RadiusClass(p, _lexmin_translate(p, es))


@lru_cache(maxsize=None)
def xi(p: int, n: int) -> tuple[RadiusClass, ...]:
    """All distinct-entry classes of size n, sorted; cardinality C(p,n)/p."""
    check_odd_prime(p)
    if not 1 <= n < p:
        raise ValueError(f"need 1 <= n < p, got n={n}, p={p}")
    seen = set()
    # every canonical representative contains 0
    for rest in itertools.combinations(range(1, p), n - 1):
        seen.add(_lexmin_translate(p, (0,) + rest))
    return tuple(RadiusClass(p, e) for e in sorted(seen))


def xi_size(p: int, n: int) -> int:
    """C(p,n)/p, the closed-form cardinality of xi(p, n)."""
    return factorial(p - 1) // (factorial(n) * factorial(p - n))


def neg_dual(c: RadiusClass) -> RadiusClass:
    """Entrywise negation, an involution on classes of every size."""
    return canonical(c.p, [-e % c.p for e in c.elems])


def comp_dual(c: RadiusClass) -> RadiusClass:
    """Negated complement, an involution Xi_{p,n} <-> Xi_{p,p-n}."""
    if not c.in_xi:
        raise ValueError(f"complement dual needs distinct entries, got {c.elems}")
    rest = set(range(c.p)) - set(c.elems)
    return canonical(c.p, [-e % c.p for e in rest])


def exponents(
    p: int, alpha: Sequence[int], beta: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Raw exponent multisets (mod p) of a parameter tuple with m = n-1."""
    check_odd_prime(p)
    n = len(alpha)
    if n < 2 or len(beta) != n - 1:
        raise ValueError(f"need len(alpha) >= 2 and len(beta) == len(alpha) - 1")
    a = [x % p for x in alpha]
    b = [x % p for x in beta]
    e1 = (0,) + tuple((1 - x) % p for x in b)
    e2 = tuple(range(n - 1)) + ((sum(b) - sum(a)) % p,)
    e3 = tuple(a)
    return e1, e2, e3


def radii_triple(
    p: int, alpha: Sequence[int], beta: Sequence[int]
) -> tuple[RadiusClass, RadiusClass, RadiusClass]:
    """Componentwise canonical classes of the three exponent multisets."""
    e1, e2, e3 = exponents(p, alpha, beta)
    return canonical(p, e1), canonical(p, e2), canonical(p, e3)


def is_hyp_type(c: RadiusClass) -> bool:
    """Whether some translate sorts to (0, 1, ..., n-2, d)."""
    n = c.n
    prefix = tuple(range(n - 1))
    for shift in range(c.p):
        t = tuple(sorted((e + shift) % c.p for e in c.elems))
        if t[: n - 1] == prefix:
            return True
    return False


def interleavings(p: int, n: int):
    """Yield (alpha_lifts, beta_lifts) chains p >= a1 >= b1 > a2 >= ... > b_{n-1} > a_n >= 1."""
    check_odd_prime(p)
    if not 1 < n < p:
        raise ValueError(f"need 1 < n < p, got n={n}, p={p}")

    def go(chain: list[int]):
        i = len(chain)
        if i == 2 * n - 1:
            yield tuple(chain[0::2]), tuple(chain[1::2])
            return
        if i == 0:
            hi = p
        elif i % 2 == 1:
            hi = chain[-1]  # next is b_k <= a_k
        else:
            hi = chain[-1] - 1  # next is a_{k+1} < b_k
        for v in range(hi, 0, -1):
            chain.append(v)
            yield from go(chain)
            chain.pop()

    yield from go([])


@lru_cache(maxsize=None)
def hyp_set(p: int, n: int) -> frozenset[tuple[RadiusClass, RadiusClass, RadiusClass]]:
    """Every permutation of every radii triple of a full-solution parameter tuple."""
    out = set()
    for alpha_l, beta_l in interleavings(p, n):
        triple = radii_triple(p, [a % p for a in alpha_l], [b % p for b in beta_l])
        # the chain forces distinct entries in all three exponent multisets
        for comp in triple:
            if not comp.in_xi:
                raise AssertionError(f"non-distinct exponent class {comp} from chain")
        for perm in itertools.permutations(triple):
            out.add(perm)
    return frozenset(out)
