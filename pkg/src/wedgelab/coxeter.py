"""Exhaustive classification of covariant involution families on small index sets.

A family assigns to each index ``i`` an involution ``tau[i]`` of ``{0..n-1}`` and is
covariant when ``tau[i] tau[j] tau[i] == tau[tau[i][j]]`` for all ``i, j``.  Indices are
0-based internally; JSON and text output use 1-based cycle notation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Literal, Sequence

from .errors import SizeTooLarge, WedgeLabError
from .permutations import (
    Permutation,
    close_group,
    compose,
    cycle_notation,
    fixed_point_free_involutions,
    group_label,
    involutions,
    is_involution,
    is_transitive,
    minimal_block_systems,
    orbits,
)

MAX_ENUMERATION_SIZE = 6
Mode = Literal["all-fixed", "nonabelian-pairing", "unconstrained"]
MODES: tuple[str, ...] = ("all-fixed", "nonabelian-pairing", "unconstrained")


@dataclass(frozen=True)
class InvolutionFamily:
    tau: tuple[Permutation, ...]
    pairing: Permutation | None = None

    def __post_init__(self) -> None:
        n = len(self.tau)
        for t in self.tau:
            if len(t) != n or sorted(t) != list(range(n)) or not is_involution(t):
                raise ValueError(f"tau entries must be involutions of {n} points, got {t}")

    @property
    def n(self) -> int:
        return len(self.tau)

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[Sequence[int]]]) -> "InvolutionFamily":
        """Build from 1-based cycle lists, e.g. ``[[(2, 3)], [(1, 3)], [(1, 2)]]``."""
        tau = []
        for entry in cycles:
            p = list(range(n))
            for cyc in entry:
                a, b = cyc
                p[a - 1], p[b - 1] = b - 1, a - 1
            tau.append(tuple(p))
        return cls(tuple(tau))

    def fixed_indices(self) -> list[int]:
        return [i for i in range(self.n) if self.tau[i][i] == i]

    def to_json(self) -> dict:
        out: dict = {"n": self.n, "tau": [cycle_notation(t) for t in self.tau]}
        if self.pairing is not None:
            out["pairing"] = cycle_notation(self.pairing)
        return out


def covariance_failures(family: InvolutionFamily) -> list[tuple[int, int]]:
    tau = family.tau
    return [
        (i, j)
        for i in range(family.n)
        for j in range(family.n)
        if compose(compose(tau[i], tau[j]), tau[i]) != tau[tau[i][j]]
    ]


def check_covariance(family: InvolutionFamily) -> bool:
    return not covariance_failures(family)


@dataclass
class GroupSummary:
    elements: list[Permutation]
    label: str
    transitive: bool
    primitive: bool
    transitivity_degree: int
    abelian: bool
    orbits: list[list[int]]
    block_systems: list[tuple[tuple[int, ...], ...]] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "label": self.label,
            "abelian": self.abelian,
            "transitive": self.transitive,
            "primitive": self.primitive,
            "transitivity_degree": self.transitivity_degree,
            "orbits": [[k + 1 for k in o] for o in self.orbits],
            "blocks": [[[k + 1 for k in b] for b in system] for system in self.block_systems],
        }


def _transitivity_degree(group: Sequence[Permutation], n: int) -> int:
    degree = 0
    for k in range(1, n + 1):
        start = tuple(range(k))
        reached = {tuple(g[x] for x in start) for g in group}
        if len(reached) != len(list(itertools.permutations(range(n), k))):
            break
        degree = k
    return degree


def generate_group(family: InvolutionFamily) -> GroupSummary:
    """Close the generators and report orbit and block structure."""
    n = family.n
    gens = list(family.tau)
    group = sorted(close_group(gens, n=n))
    transitive = is_transitive(gens, n)
    systems = minimal_block_systems(gens, n) if transitive else []
    for system in systems:
        size = len(system[0])
        if n % size or any(len(b) != size for b in system):
            raise WedgeLabError(f"block system {system} violates the divisor constraint")
    abelian = all(compose(a, b) == compose(b, a) for a in gens for b in gens)
    return GroupSummary(
        elements=group,
        label=group_label(group, n),
        transitive=transitive,
        primitive=transitive and not systems,
        transitivity_degree=_transitivity_degree(group, n) if transitive else 0,
        abelian=abelian,
        orbits=orbits(gens, n),
        block_systems=systems,
    )


def fixedpoint_dichotomy_check(family: InvolutionFamily) -> bool:
    """For a transitive covariant family: some ``tau[i]`` fixes ``i`` iff all do."""
    fixed = family.fixed_indices()
    return not fixed or len(fixed) == family.n


def fixed_point_transport_holds(family: InvolutionFamily) -> bool:
    """If ``tau[i]`` fixes ``i`` then ``tau[g(i)]`` fixes ``g(i)`` for all ``g`` in the group."""
    group = close_group(list(family.tau), n=family.n)
    for i in family.fixed_indices():
        for g in group:
            k = g[i]
            if family.tau[k][k] != k:
                return False
    return True


# --- enumeration ----------------------------------------------------------------------------


def _allowed(mode: str, n: int, pairing: Permutation | None) -> list[list[Permutation]]:
    invs = involutions(n)
    if mode == "all-fixed":
        return [[t for t in invs if t[i] == i] for i in range(n)]
    if mode == "nonabelian-pairing":
        assert pairing is not None
        commuting = [t for t in invs if compose(t, pairing) == compose(pairing, t)]
        return [[t for t in commuting if t[i] == pairing[i]] for i in range(n)]
    return [list(invs) for _ in range(n)]


def _search(n: int, allowed: list[list[Permutation]]) -> Iterator[tuple[Permutation, ...]]:
    """Backtracking over assignments; each assignment forces ``tau[tau[a][b]]`` by covariance.

    Involutions are handled as integer ids with a precomputed conjugation table.
    """
    invs = involutions(n)
    ids = {t: k for k, t in enumerate(invs)}
    conj = [[ids[compose(compose(a, b), a)] for b in invs] for a in invs]
    allowed_ids = [[ids[t] for t in a] for a in allowed]
    allowed_sets = [set(a) for a in allowed_ids]
    tau: list[int] = [-1] * n

    def assign(index: int, value: int, trail: list[int]) -> bool:
        pending = [(index, value)]
        while pending:
            c, t = pending.pop()
            current = tau[c]
            if current >= 0:
                if current != t:
                    return False
                continue
            if t not in allowed_sets[c]:
                return False
            tau[c] = t
            trail.append(c)
            perm_t, row_t = invs[t], conj[t]
            for a in range(n):
                ta = tau[a]
                if ta < 0:
                    continue
                pending.append((invs[ta][c], conj[ta][t]))
                pending.append((perm_t[a], row_t[ta]))
        return True

    def recurse() -> Iterator[tuple[Permutation, ...]]:
        try:
            i = tau.index(-1)
        except ValueError:
            yield tuple(invs[k] for k in tau)
            return
        for t in allowed_ids[i]:
            trail: list[int] = []
            if assign(i, t, trail):
                yield from recurse()
            for k in trail:
                tau[k] = -1

    yield from recurse()


@dataclass
class EnumeratedFamily:
    family: InvolutionFamily
    group: GroupSummary

    def to_json(self) -> dict:
        return {"family": self.family.to_json(), "group": self.group.to_json()}


def enumerate_families(n: int, mode: str = "all-fixed", transitive_only: bool = True) -> list[EnumeratedFamily]:
    """Every covariant family on ``n ≤ 6`` indices meeting the mode constraint, in sorted order."""
    if n > MAX_ENUMERATION_SIZE:
        raise SizeTooLarge(f"enumeration is bounded to n <= {MAX_ENUMERATION_SIZE}, got {n}")
    if n < 1:
        raise ValueError("n must be positive")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    pairings: list[Permutation | None] = (
        list(fixed_point_free_involutions(n)) if mode == "nonabelian-pairing" else [None]
    )
    found: list[EnumeratedFamily] = []
    for pairing in pairings:
        for tau in _search(n, _allowed(mode, n, pairing)):
            family = InvolutionFamily(tau, pairing)
            if not check_covariance(family):
                raise WedgeLabError(f"search produced a non-covariant family {family.to_json()}")
            if transitive_only and not is_transitive(tau, n):
                continue
            found.append(EnumeratedFamily(family, generate_group(family)))
    found.sort(key=lambda e: (e.family.tau, e.family.pairing or ()))
    return found


def group_labels(results: Sequence[EnumeratedFamily]) -> list[str]:
    return sorted({r.group.label for r in results})


def describe_labels(labels: Sequence[str], exclusive: bool = False) -> str:
    """``"none"``, a comma list, or ``"<label> only"`` when a single group is claimed exclusive."""
    if not labels:
        return "none"
    if exclusive and len(labels) == 1:
        return f"{labels[0]} only"
    return ", ".join(labels)
