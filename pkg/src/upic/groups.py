"""Finite groups given by multiplication tables.

Elements are indices 0..order-1.  Tables are validated on construction
(associativity, two-sided identity, inverses), which is affordable at the
intended scale (order <= ~48).
"""

from __future__ import annotations

from .errors import NotASubgroup, ValidationError


class FiniteGroup:
    __slots__ = ("order", "table", "identity", "inverse", "_element_orders")

    def __init__(self, table):
        table = [list(row) for row in table]
        n = len(table)
        for row in table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise ValidationError(["multiplication table is not a square array over element indices"])
        if n == 0:
            raise ValidationError(["a group must have at least the identity element"])
        identity = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise ValidationError(["no two-sided identity"])
        inverse = [None] * n
        for g in range(n):
            for h in range(n):
                if table[g][h] == identity and table[h][g] == identity:
                    inverse[g] = h
                    break
            if inverse[g] is None:
                raise ValidationError([f"element {g} has no inverse"])
        for a in range(n):
            ta = table[a]
            for b in range(n):
                tab = table[ta[b]]
                tb = table[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValidationError([f"associativity fails at ({a},{b},{c})"])
        self.order = n
        self.table = table
        self.identity = identity
        self.inverse = inverse
        self._element_orders = None

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]])

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise ValueError("order must be positive")
        return cls([[(i + j) % n for j in range(n)] for i in range(n)])

    @classmethod
    def from_permutations(cls, perms, cap: int = 48):
        """Close a list of permutations (on 0..deg-1) into a group.

        Returns (group, generator_indices).  Elements are indexed in
        breadth-first discovery order starting from the identity, so the
        result is deterministic for a fixed input.
        """
        perms = [tuple(p) for p in perms]
        if not perms:
            raise ValueError("need at least one permutation")
        deg = len(perms[0])
        for p in perms:
            if len(p) != deg or sorted(p) != list(range(deg)):
                raise ValidationError([f"not a permutation of 0..{deg - 1}: {p}"])
        ident = tuple(range(deg))
        elements = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for q in frontier:
                for p in perms:
                    pq = tuple(p[q[i]] for i in range(deg))
                    if pq not in index:
                        if len(elements) >= cap:
                            raise ValidationError([f"permutation closure exceeds the order cap {cap}"])
                        index[pq] = len(elements)
                        elements.append(pq)
                        nxt.append(pq)
            frontier = nxt
        table = [
            [index[tuple(a[b[i]] for i in range(deg))] for b in elements]
            for a in elements
        ]
        return cls(table), [index[p] for p in perms]

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise ValueError("n must be positive")
        if n == 1:
            return cls.trivial()
        transposition = tuple([1, 0] + list(range(2, n)))
        cycle = tuple(list(range(1, n)) + [0])
        group, _ = cls.from_permutations([transposition, cycle], cap=max(48, 1 << n))
        return group

    def direct_product(self, other: "FiniteGroup") -> "FiniteGroup":
        n, m = self.order, other.order
        table = [[0] * (n * m) for _ in range(n * m)]
        for a in range(n):
            for b in range(m):
                for c in range(n):
                    for d in range(m):
                        table[a * m + b][c * m + d] = self.table[a][c] * m + other.table[b][d]
        return FiniteGroup(table)

    @classmethod
    def klein_four(cls) -> "FiniteGroup":
        return cls.cyclic(2).direct_product(cls.cyclic(2))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[a], -k)
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        if self._element_orders is None:
            orders = []
            for g in range(self.order):
                x, k = g, 1
                while x != self.identity:
                    x = self.table[x][g]
                    k += 1
                orders.append(k)
            self._element_orders = orders
        return self._element_orders[a]

    def cyclic_generator(self):
        """Lowest-index element of full order, or None if not cyclic."""
        for g in range(self.order):
            if self.element_order(g) == self.order:
                return g
        return None

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        if not s or any(not (0 <= x < self.order) for x in s):
            return False
        if self.identity not in s:
            return False
        return all(self.table[a][b] in s for a in s for b in s) and all(self.inverse[a] in s for a in s)

    def require_subgroup(self, elems):
        if not self.is_subgroup(elems):
            raise NotASubgroup(f"{sorted(set(elems))} is not a subgroup")

    def left_cosets(self, subgroup_elems):
        """Partition into left cosets gH, each sorted, ordered by minimal element."""
        self.require_subgroup(subgroup_elems)
        h = sorted(set(subgroup_elems))
        seen = [False] * self.order
        cosets = []
        for g in range(self.order):
            if seen[g]:
                continue
            coset = sorted({self.table[g][x] for x in h})
            for x in coset:
                seen[x] = True
            cosets.append(coset)
        return cosets

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.table))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"
