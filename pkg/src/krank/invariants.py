"""Representation-theoretic counts of a finite group H, derived purely from
conjugacy data, and the resulting rank function n -> rank K_n(Z[H]).

The counts are
    k  conjugacy classes,
    m  classes equal to the class of their inverses,
    r  real conjugacy classes (classes fused with their inverse class),
    c  real classes of complex type (fused from two distinct classes),
    q  conjugacy classes of cyclic subgroups,
with r = m + (k - m)/2 and c = (k - m)/2.  r counts the real irreducible
representations and q the rational ones, which is all the rank function
needs; no characters are ever computed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingKMinus1Datum
from .groups import FiniteGroup, conjugacy_data, cyclic_subgroup_classes


@dataclass(frozen=True)
class RepInvariants:
    k: int
    m: int
    r: int
    c: int
    q: int


def rep_invariants(group: FiniteGroup) -> RepInvariants:
    """Compute (k, m, r, c, q) for a finite group from its Cayley table."""
    conj = conjugacy_data(group)
    cyc = cyclic_subgroup_classes(group)
    c = (conj.k - conj.m) // 2
    return RepInvariants(conj.k, conj.m, conj.m + c, c, cyc.q)


def rank_k_integers(n: int) -> int:
    """rank K_n(Z): 1 if n = 0 or (n ≡ 1 mod 4 and n > 1), else 0."""
    return 1 if n == 0 or (n > 1 and n % 4 == 1) else 0


@dataclass(frozen=True)
class KRankFunction:
    """The complete map n -> rank K_n(Z[H]) for a finite group H.

    rank K_-1 is an external datum: it is finite for every finite group
    but has no closed form here, so it is either supplied, defaulted to 0
    for the trivial group, or left unknown.  evaluate(-1) on an unknown
    datum raises MissingKMinus1Datum rather than silently returning 0.
    """

    invariants: RepInvariants
    rank_minus1: int | None
    label: str

    def evaluate(self, n: int) -> int:
        if n <= -2:
            return 0
        if n == -1:
            if self.rank_minus1 is None:
                raise MissingKMinus1Datum(self.label)
            return self.rank_minus1
        if n == 0:
            return 1
        if n == 1:
            return self.invariants.r - self.invariants.q
        if n % 2 == 0:
            return 0
        return self.invariants.r if n % 4 == 1 else self.invariants.c

    def pattern(self) -> str:
        """One-line summary of the rank values by degree."""
        inv = self.invariants
        minus1 = "unknown" if self.rank_minus1 is None else str(self.rank_minus1)
        return (
            f"n<=-2: 0; n=-1: {minus1}; n=0: 1; n=1: r-q={inv.r - inv.q}; "
            f"n>1: {inv.r} (n%4==1), {inv.c} (n%4==3), 0 (n even)"
        )


def k_rank_function(
    group: FiniteGroup, rank_minus1: int | None = None
) -> KRankFunction:
    """Build the rank function for a group, with an optional K_-1 datum.

    Without a datum, K_-1 defaults to 0 only for the trivial group and
    stays unknown otherwise.
    """
    if rank_minus1 is not None and rank_minus1 < 0:
        raise ValueError("rank_minus1 must be >= 0")
    if rank_minus1 is None and group.order == 1:
        rank_minus1 = 0
    return KRankFunction(rep_invariants(group), rank_minus1, group.label)


def partition_count(n: int) -> int:
    """Number of integer partitions of n, as an exact integer (p(0) = 1)."""
    if n < 0:
        raise ValueError("partition_count needs n >= 0")
    counts = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            counts[total] += counts[total - part]
    return counts[n]
