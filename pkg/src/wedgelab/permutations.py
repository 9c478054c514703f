"""Small permutation-group utilities: composition, closure, orbits, block systems and labels.

Permutations of ``{0, ..., n-1}`` are tuples of images.
"""

from __future__ import annotations

from collections import deque
from math import factorial
from typing import Iterable, Sequence

from .errors import ClosureCapExceeded

Permutation = tuple[int, ...]


def identity_perm(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p ∘ q``."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse_perm(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def conjugate_perm(g: Permutation, p: Permutation) -> Permutation:
    """``g p g⁻¹``."""
    return compose(compose(g, p), inverse_perm(g))


def is_involution(p: Permutation) -> bool:
    return all(p[p[i]] == i for i in range(len(p)))


def involutions(n: int) -> list[Permutation]:
    """All involutions of ``n`` points, identity included, in lexicographic order."""
    out: list[Permutation] = []

    def extend(images: list[int | None], start: int) -> None:
        while start < n and images[start] is not None:
            start += 1
        if start == n:
            out.append(tuple(images))  # type: ignore[arg-type]
            return
        images[start] = start
        extend(images, start + 1)
        for j in range(start + 1, n):
            if images[j] is None:
                images[start], images[j] = j, start
                extend(images, start + 1)
                images[j] = None
        images[start] = None

    extend([None] * n, 0)
    return sorted(out)


def fixed_point_free_involutions(n: int) -> list[Permutation]:
    return [p for p in involutions(n) if all(p[i] != i for i in range(n))]


def cycle_notation(p: Permutation) -> str:
    """1-based cycle notation; ``"()"`` for the identity."""
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, k = [], start
        while k not in seen:
            seen.add(k)
            cyc.append(k + 1)
            k = p[k]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def close_group(gens: Sequence[Permutation], cap: int = 10**6, n: int | None = None) -> set[Permutation]:
    """All products of ``gens`` (breadth first); raises ClosureCapExceeded past ``cap`` elements."""
    gens = [tuple(g) for g in gens]
    size = n if n is not None else (len(gens[0]) if gens else 0)
    ident = identity_perm(size)
    group = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose(s, g)
            if h not in group:
                group.add(h)
                if len(group) > cap:
                    raise ClosureCapExceeded(f"group exceeds {cap} elements")
                queue.append(h)
    return group


def orbits(gens: Sequence[Permutation], n: int) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in range(n):
        if s in seen:
            continue
        orbit, stack = [s], [s]
        seen.add(s)
        while stack:
            k = stack.pop()
            for g in gens:
                if g[k] not in seen:
                    seen.add(g[k])
                    orbit.append(g[k])
                    stack.append(g[k])
        out.append(sorted(orbit))
    return out


def is_transitive(gens: Sequence[Permutation], n: int) -> bool:
    return len(orbits(gens, n)) == 1


def _finest_block_system(gens: Sequence[Permutation], n: int, a: int, b: int) -> tuple[tuple[int, ...], ...]:
    """Smallest block system with ``a`` and ``b`` in one block (union-find pair fusion)."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque([(a, b)])
    while queue:
        x, y = queue.popleft()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        for g in gens:
            queue.append((g[x], g[y]))
    blocks: dict[int, list[int]] = {}
    for x in range(n):
        blocks.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(v) for v in blocks.values()))


def minimal_block_systems(gens: Sequence[Permutation], n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Distinct nontrivial block systems generated by a single pair ``{0, b}`` (transitive groups)."""
    systems = []
    for b in range(1, n):
        sys_ = _finest_block_system(gens, n, 0, b)
        if len(sys_) > 1 and sys_ not in systems:
            systems.append(sys_)
    return sorted(systems)


def is_primitive(gens: Sequence[Permutation], n: int) -> bool:
    return is_transitive(gens, n) and not minimal_block_systems(gens, n)


def element_order(p: Permutation) -> int:
    ident = identity_perm(len(p))
    h, m = p, 1
    while h != ident:
        h, m = compose(p, h), m + 1
    return m


# Element-order histograms of the small nonabelian groups that arise from involution families.
_NONABELIAN_SIGNATURES = {
    (6, ((1, 1), (2, 3), (3, 2))): "S3",
    (8, ((1, 1), (2, 5), (4, 2))): "D4",
    (10, ((1, 1), (2, 5), (5, 4))): "D5",
    (12, ((1, 1), (2, 7), (3, 2), (6, 2))): "D6",
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "S4",
    (36, ((1, 1), (2, 15), (3, 8), (6, 12))): "S3xS3",
    (120, ((1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20))): "S5",
}


def order_histogram(group: Iterable[Permutation]) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for g in group:
        e = element_order(g)
        counts[e] = counts.get(e, 0) + 1
    return tuple(sorted(counts.items()))


def group_label(group: Iterable[Permutation], n: int) -> str:
    """Name a permutation group by its abstract isomorphism type when its invariants pin it down.

    ``S_n`` when the group is the full symmetric group; cyclic and elementary abelian groups
    by name; a few small nonabelian groups by element-order histogram; otherwise a
    ``nonabelian-<order>`` signature.
    """
    elements = list(group)
    order = len(elements)
    if order == 1:
        return "trivial"
    if n > 1 and order == factorial(n):
        return f"S{n}"
    abelian = all(compose(a, b) == compose(b, a) for a in elements for b in elements)
    hist = order_histogram(elements)
    exponent = max(e for e, _ in hist)
    if abelian:
        if exponent == order:
            return f"Z{order}"
        if exponent == 2:
            return f"Z2^{order.bit_length() - 1}"
        return f"abelian-{order}"
    return _NONABELIAN_SIGNATURES.get((order, hist), f"nonabelian-{order}")
