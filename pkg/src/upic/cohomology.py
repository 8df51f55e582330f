"""Group cohomology and hypercohomology via normalized inhomogeneous cochains.

A p-cochain assigns an element of the coefficient module to every p-tuple
of non-identity group elements (normalized cochains vanish when any
argument is the identity, cutting the slot count from order^p to
(order-1)^p).  The differential is the usual inhomogeneous one; tuples
containing the identity are simply dropped.

For a bounded complex of coefficients the total complex carries
D = (-1)^q d_group + d_coefficient on the (p, q) summand, so for a
two-term complex [A -f-> B> this reads D(alpha, beta) =
(d alpha, f(alpha) - d beta).  D*D = 0 is machine-checked on every
instance before any invariant is reported.
"""

from __future__ import annotations

import itertools

from .complexes import BoundedComplex
from .errors import BudgetExceeded, DegreeTooLarge, ExactnessViolation, NotCyclic, ValidationError
from .groups import FiniteGroup
from .intmatrix import (
    AbelianInvariants,
    IntMatrix,
    Subquotient,
    kernel_basis,
    smith_normal_form,
    solve_integer,
    subquotient_invariants,
    unimodular_inverse,
)
from .modules import PresentedModule

DEFAULT_DEGREE_BOUND = 3
DEFAULT_ENUMERATION_BUDGET = 1 << 20


class _SparseCols:
    """Column-sparse integer matrix: per-column {row: value} dicts."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols
        self.entries = [dict() for _ in range(cols)]

    def add(self, r: int, c: int, v: int):
        if v:
            col = self.entries[c]
            nv = col.get(r, 0) + v
            if nv:
                col[r] = nv
            else:
                del col[r]

    def add_block(self, r0: int, c0: int, mat: IntMatrix, sign: int = 1):
        data = mat.data
        for i in range(mat.rows):
            row = data[i]
            for j in range(mat.cols):
                if row[j]:
                    self.add(r0 + i, c0 + j, sign * row[j])

    def compose(self, inner: "_SparseCols") -> "_SparseCols":
        if inner.rows != self.cols:
            raise ValueError("sparse shape mismatch")
        out = _SparseCols(self.rows, inner.cols)
        for c, col in enumerate(inner.entries):
            acc = out.entries[c]
            for mid, v in col.items():
                for r, w in self.entries[mid].items():
                    nv = acc.get(r, 0) + v * w
                    if nv:
                        acc[r] = nv
                    else:
                        acc.pop(r, None)
        return out

    def column(self, c: int) -> list:
        out = [0] * self.rows
        for r, v in self.entries[c].items():
            out[r] = v
        return out

    def to_dense(self) -> IntMatrix:
        data = [[0] * self.cols for _ in range(self.rows)]
        for c, col in enumerate(self.entries):
            for r, v in col.items():
                data[r][c] = v
        return IntMatrix(self.rows, self.cols, data)


def _nonidentity(group: FiniteGroup) -> list:
    return [g for g in range(group.order) if g != group.identity]


def _slots(group: FiniteGroup, p: int) -> dict:
    """Index of each p-tuple of non-identity elements, in lexicographic order."""
    return {t: i for i, t in enumerate(itertools.product(_nonidentity(group), repeat=p))}


def cochain_rank(group: FiniteGroup, m: PresentedModule, p: int) -> int:
    return m.gens * (group.order - 1) ** p


def cochain_relations(group: FiniteGroup, m: PresentedModule, p: int) -> IntMatrix:
    slots = (group.order - 1) ** p
    return IntMatrix.block_diagonal([m.relations] * slots) if slots else IntMatrix.zeros(0, 0)


def cochain_differential(group: FiniteGroup, m: PresentedModule, p: int) -> _SparseCols:
    """The degree-p inhomogeneous differential as a sparse matrix."""
    n = m.gens
    src = _slots(group, p)
    tgt = _slots(group, p + 1)
    out = _SparseCols(n * len(tgt), n * len(src))
    if n == 0:
        return out
    ident = IntMatrix.identity(n)
    e = group.identity
    for tup, ti in tgt.items():
        r0 = ti * n
        out.add_block(r0, src[tup[1:]] * n, m.action_of(tup[0]))
        for i in range(1, p + 1):
            h = group.mul(tup[i - 1], tup[i])
            if h != e:
                merged = tup[: i - 1] + (h,) + tup[i + 1 :]
                out.add_block(r0, src[merged] * n, ident, sign=(-1) ** i)
        out.add_block(r0, src[tup[:p]] * n, ident, sign=(-1) ** (p + 1))
    return out


class HyperTotal:
    """Total complex of group cochains valued in a bounded complex.

    Builds the summands Tot^n = (+)_q C^(n-q)(group, K^q) for the degrees
    n0-1, n0, n0+1 needed to read off H^n0, assembles D, and verifies
    D composed with D vanishes modulo the relation lattice.
    """

    __slots__ = ("group", "coeffs", "degree", "d_below", "d_at", "rel_below", "rel_at", "rel_above")

    def __init__(self, group: FiniteGroup, coeffs: BoundedComplex, degree: int, degree_bound: int = DEFAULT_DEGREE_BOUND):
        if degree > degree_bound:
            raise DegreeTooLarge(f"degree {degree} exceeds the configured bound {degree_bound}")
        self.group = group
        self.coeffs = coeffs
        self.degree = degree
        self.d_below = self._differential(degree - 1)
        self.d_at = self._differential(degree)
        self.rel_below = self._relations(degree - 1)
        self.rel_at = self._relations(degree)
        self.rel_above = self._relations(degree + 1)
        self._check_square_zero()

    def _summands(self, n: int) -> list:
        out = []
        for q in self.coeffs.degrees():
            p = n - q
            if p >= 0 and self.coeffs.term(q).gens > 0:
                out.append((q, p))
        return out

    def _offsets(self, n: int):
        offs = {}
        total = 0
        for q, p in self._summands(n):
            offs[(q, p)] = total
            total += cochain_rank(self.group, self.coeffs.term(q), p)
        return offs, total

    def _relations(self, n: int) -> IntMatrix:
        blocks = [cochain_relations(self.group, self.coeffs.term(q), p) for q, p in self._summands(n)]
        if not blocks:
            _, total = self._offsets(n)
            return IntMatrix.zeros(total, 0)
        return IntMatrix.block_diagonal(blocks)

    def _differential(self, n: int) -> _SparseCols:
        src_offs, src_total = self._offsets(n)
        tgt_offs, tgt_total = self._offsets(n + 1)
        out = _SparseCols(tgt_total, src_total)
        for (q, p), c0 in src_offs.items():
            m = self.coeffs.term(q)
            if (q, p + 1) in tgt_offs:
                d = cochain_differential(self.group, m, p)
                sign = -1 if q % 2 else 1
                r0 = tgt_offs[(q, p + 1)]
                for c, col in enumerate(d.entries):
                    for r, v in col.items():
                        out.add(r0 + r, c0 + c, sign * v)
            if (q + 1, p) in tgt_offs:
                f = self.coeffs.differential(q).matrix
                r0 = tgt_offs[(q + 1, p)]
                slots = (self.group.order - 1) ** p
                nt = self.coeffs.term(q + 1).gens
                for s in range(slots):
                    out.add_block(r0 + s * nt, c0 + s * m.gens, f)
        return out

    def _check_square_zero(self):
        square = self.d_at.compose(self.d_below)
        rel = self.rel_above
        for c in range(square.cols):
            if not square.entries[c]:
                continue
            if solve_integer(rel, square.column(c)) is None:
                raise ExactnessViolation("total differential does not square to zero")

    def cohomology(self):
        _, n_at = self._offsets(self.degree)
        if n_at == 0:
            empty = Subquotient(0, IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0))
            return empty, AbelianInvariants(0)
        stacked = self.d_at.to_dense().hstack(self.rel_above.neg())
        ker = kernel_basis(stacked)
        span = IntMatrix(n_at, ker.cols, ker.data[:n_at])
        h, _, pivots = span.hermite()
        cycles = IntMatrix.from_columns(n_at, [h.column(c) for _, c in pivots])
        boundaries = self.d_below.to_dense().hstack(self.rel_at)
        sq = Subquotient(n_at, cycles, boundaries)
        return sq, subquotient_invariants(sq)


def hypercohomology(
    group: FiniteGroup,
    coeffs: BoundedComplex,
    degree: int,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> AbelianInvariants:
    """H^degree of the group valued in a bounded complex of modules."""
    if degree < min(coeffs.degrees(), default=0):
        return AbelianInvariants(0)
    return HyperTotal(group, coeffs, degree, degree_bound).cohomology()[1]


def group_cohomology(
    group: FiniteGroup,
    m: PresentedModule,
    degree: int,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> AbelianInvariants:
    """H^degree(group, m) from the normalized cochain complex."""
    if degree < 0:
        raise ValueError("negative degree")
    if degree > degree_bound:
        raise DegreeTooLarge(f"degree {degree} exceeds the configured bound {degree_bound}")
    if m.gens == 0:
        return AbelianInvariants(0)
    n = m.gens
    d_at = cochain_differential(group, m, degree)
    rel_above = cochain_relations(group, m, degree + 1)
    n_at = cochain_rank(group, m, degree)
    stacked = d_at.to_dense().hstack(rel_above.neg())
    ker = kernel_basis(stacked)
    span = IntMatrix(n_at, ker.cols, ker.data[:n_at])
    h, _, pivots = span.hermite()
    cycles = IntMatrix.from_columns(n_at, [h.column(c) for _, c in pivots])
    if degree == 0:
        boundaries = m.relations
    else:
        boundaries = cochain_differential(group, m, degree - 1).to_dense().hstack(
            cochain_relations(group, m, degree)
        )
    return subquotient_invariants(Subquotient(n_at, cycles, boundaries))


def invariants_subquotient(m: PresentedModule) -> AbelianInvariants:
    """H^0: invariants of the module under the whole group action."""
    return group_cohomology(m.group, m, 0)


def _norm_and_shift(group: FiniteGroup, m: PresentedModule, generator: int):
    n = m.gens
    norm = IntMatrix.zeros(n, n)
    g = group.identity
    for _ in range(group.order):
        norm = norm.add(m.action_of(g))
        g = group.mul(g, generator)
    shift = m.action_of(generator).sub(IntMatrix.identity(n))
    return norm, shift


def cyclic_oracle(group: FiniteGroup, m: PresentedModule, degree: int) -> AbelianInvariants:
    """Period-two closed form for cyclic groups, computed with Smith forms only.

    H^0 is the invariants; for j >= 1, H^(2j) = fixed points modulo norm
    image and H^(2j-1) = norm kernel modulo the (generator - 1) image.  An
    independent check for the cochain machinery: no cochains appear here.
    """
    generator = group.cyclic_generator()
    if generator is None:
        raise NotCyclic("group has no generator of full order")
    if degree < 0:
        raise ValueError("negative degree")
    n = m.gens
    if n == 0:
        return AbelianInvariants(0)
    norm, shift = _norm_and_shift(group, m, generator)

    def lattice(of: IntMatrix) -> IntMatrix:
        stacked = of.hstack(m.relations.neg())
        ker = kernel_basis(stacked)
        span = IntMatrix(n, ker.cols, ker.data[:n])
        h, _, pivots = span.hermite()
        return IntMatrix.from_columns(n, [h.column(c) for _, c in pivots])

    if degree == 0:
        return subquotient_invariants(Subquotient(n, lattice(shift), m.relations))
    if degree % 2:
        cycles = lattice(norm)
        boundaries = shift.hstack(m.relations)
    else:
        cycles = lattice(shift)
        boundaries = norm.hstack(m.relations)
    return subquotient_invariants(Subquotient(n, cycles, boundaries))


class _FiniteModule:
    """Element table of a finite presented module, in Smith coordinates."""

    __slots__ = ("m", "diag", "u", "u_inv", "elements", "index", "action_tables", "size")

    def __init__(self, m: PresentedModule, budget: int):
        inv = m.underlying_invariants()
        if inv.free_rank:
            raise ValidationError(["module is infinite; the enumeration oracle needs finite coefficients"])
        s = smith_normal_form(m.relations)
        diag = s.diagonal()
        self.m = m
        self.diag = [diag[i] if i < len(diag) else 1 for i in range(m.gens)]
        self.u = s.u
        self.u_inv = unimodular_inverse(s.u)
        self.size = 1
        for d in self.diag:
            self.size *= max(d, 1)
        if self.size > budget:
            raise BudgetExceeded(f"module has {self.size} elements, budget {budget}")
        ranges = [range(d) if d > 1 else range(1) for d in self.diag]
        self.elements = [tuple(t) for t in itertools.product(*ranges)]
        self.index = {t: i for i, t in enumerate(self.elements)}
        self.action_tables = []
        for g in range(m.group.order):
            mat = self.u.mul(m.action_of(g)).mul(self.u_inv)
            table = []
            for t in self.elements:
                moved = mat.apply(list(t))
                table.append(self.index[self._reduce(moved)])
            self.action_tables.append(table)

    def _reduce(self, coords):
        return tuple(c % d if d > 1 else 0 for c, d in zip(coords, self.diag))

    def zero(self) -> int:
        return self.index[tuple(0 for _ in self.diag)]

    def add(self, i: int, j: int) -> int:
        a, b = self.elements[i], self.elements[j]
        return self.index[self._reduce([x + y for x, y in zip(a, b)])]

    def neg(self, i: int) -> int:
        return self.index[self._reduce([-x for x in self.elements[i]])]

    def scale(self, k: int, i: int) -> int:
        return self.index[self._reduce([k * x for x in self.elements[i]])]


def finite_coeff_bruteforce(
    group: FiniteGroup,
    m: PresentedModule,
    degree: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> AbelianInvariants:
    """H^degree by exhaustive enumeration of normalized cochains.

    Only for finite coefficient modules and degree <= 2; the number of
    cochains |M|^((order-1)^degree) must stay within the budget.  This is
    the second independent verification path next to the cyclic oracle.
    """
    if degree < 0 or degree > 2:
        raise ValueError("enumeration oracle supports degrees 0..2")
    fm = _FiniteModule(m, budget)
    tuples = list(itertools.product(_nonidentity(group), repeat=degree))
    n_slots = len(tuples)
    n_cochains = fm.size**n_slots
    if n_cochains > budget:
        raise BudgetExceeded(f"{n_cochains} cochains exceed the budget {budget}")
    slot_of = {t: i for i, t in enumerate(tuples)}
    e = group.identity

    def dvalue(cochain, tup):
        # (d c)(g_0..g_degree) with normalized-vanishing convention
        acc = fm.action_tables[tup[0]][cochain[slot_of[tup[1:]]]] if degree else fm.action_tables[tup[0]][cochain[0]]
        sign = -1
        for i in range(1, degree + 1):
            h = group.mul(tup[i - 1], tup[i])
            if h != e:
                merged = tup[: i - 1] + (h,) + tup[i + 1 :]
                v = cochain[slot_of[merged]]
                acc = fm.add(acc, v if sign > 0 else fm.neg(v))
            sign = -sign
        v = cochain[slot_of[tup[:degree]]]
        acc = fm.add(acc, v if sign > 0 else fm.neg(v))
        return acc

    up_tuples = list(itertools.product(_nonidentity(group), repeat=degree + 1))
    zero = fm.zero()
    cocycles = []
    for cochain in itertools.product(range(fm.size), repeat=n_slots):
        if all(dvalue(cochain, tup) == zero for tup in up_tuples):
            cocycles.append(cochain)

    if degree == 0:
        coboundaries = {tuple([zero] * n_slots)} if n_slots else {()}
    else:
        down_tuples = list(itertools.product(_nonidentity(group), repeat=degree - 1))
        down_slot = {t: i for i, t in enumerate(down_tuples)}
        coboundaries = set()
        for low in itertools.product(range(fm.size), repeat=len(down_tuples)):
            img = []
            for tup in tuples:
                acc = fm.action_tables[tup[0]][low[down_slot[tup[1:]]]]
                sign = -1
                for i in range(1, degree):
                    h = group.mul(tup[i - 1], tup[i])
                    if h != e:
                        merged = tup[: i - 1] + (h,) + tup[i + 1 :]
                        v = low[down_slot[merged]]
                        acc = fm.add(acc, v if sign > 0 else fm.neg(v))
                    sign = -sign
                v = low[down_slot[tup[: degree - 1]]]
                acc = fm.add(acc, v if sign > 0 else fm.neg(v))
                img.append(acc)
            coboundaries.add(tuple(img))

    def vec_scale(k, cochain):
        return tuple(fm.scale(k, x) for x in cochain)

    order = len(cocycles) // len(coboundaries)
    if order * len(coboundaries) != len(cocycles):
        raise ExactnessViolation("coboundaries do not divide cocycles")
    if order == 1:
        return AbelianInvariants(0)

    # invariants from the counting function N(k) = #{z : k*z is a coboundary}
    def count(k: int) -> int:
        c = sum(1 for z in cocycles if vec_scale(k, z) in coboundaries)
        if c % len(coboundaries):
            raise ExactnessViolation("order counting is inconsistent")
        return c // len(coboundaries)

    primes = []
    x = order
    p = 2
    while p * p <= x:
        if x % p == 0:
            primes.append(p)
            while x % p == 0:
                x //= p
        p += 1
    if x > 1:
        primes.append(x)

    # For H = (+) Z/e_i, count(p^s) = prod_i p^min(s, v_p(e_i)); hence
    # log_p(count(p^s)/count(p^(s-1))) counts the factors with v_p >= s.
    per_prime = {}
    for p in primes:
        at_least = []
        prev = 1
        s = 1
        while True:
            cur = count(p**s)
            num = cur // prev
            k = 0
            while num > 1:
                num //= p
                k += 1
            if k == 0:
                break
            at_least.append(k)
            prev = cur
            s += 1
        powers = []
        for s in range(len(at_least), 0, -1):
            exactly = at_least[s - 1] - (at_least[s] if s < len(at_least) else 0)
            powers.extend([p**s] * exactly)
        per_prime[p] = sorted(powers, reverse=True)

    length = max((len(v) for v in per_prime.values()), default=0)
    chain = []
    for pos in range(length):
        d = 1
        for vals in per_prime.values():
            if pos < len(vals):
                d *= vals[pos]
        chain.append(d)
    return AbelianInvariants(0, sorted(chain))
