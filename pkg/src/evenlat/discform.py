"""Finite quadratic modules (discriminant forms) and the overlattice map.

Elements are exponent vectors against invariant-factor generators; q takes
values in Q/2Z (reduced to [0, 2)) and b in Q/Z (reduced to [0, 1)).
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import IntMat, RatMat
from .lattice import DualVector, Lattice, discriminant_group, rational_span_basis

GroupElement = tuple[int, ...]

DEFAULT_GUARD_ORDER = 1 << 10


def _mod2(x: Fraction) -> Fraction:
    return x - 2 * math.floor(x / 2)


def _mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True)
class FiniteQuadraticModule:
    """Generators g_i of order d_i with q(g_i) in Q/2Z and b(g_i, g_j) in Q/Z."""

    orders: tuple[int, ...]
    q_diag: tuple[Fraction, ...]
    b_mat: tuple[tuple[Fraction, ...], ...]
    source: Lattice | None = None
    lifts: tuple[tuple[Fraction, ...], ...] | None = None
    dual_basis: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        k = len(self.orders)
        if any(d < 2 for d in self.orders):
            raise ValueError("generator orders must be at least 2")
        if len(self.q_diag) != k or len(self.b_mat) != k:
            raise ValueError("inconsistent generator data")
        for i in range(k):
            if not (0 <= self.q_diag[i] < 2):
                raise ValueError("q values must be reduced into [0, 2)")
            for j in range(k):
                if not (0 <= self.b_mat[i][j] < 1):
                    raise ValueError("b values must be reduced into [0, 1)")
                if self.b_mat[i][j] != self.b_mat[j][i]:
                    raise ValueError("b must be symmetric")
            if _mod1(self.q_diag[i]) != self.b_mat[i][i]:
                raise ValueError("b(g, g) must equal q(g) mod Z")
            if _mod2(self.orders[i] ** 2 * self.q_diag[i]) != 0:
                raise ValueError("q incompatible with the generator order")
            for j in range(k):
                if _mod1(self.orders[i] * self.b_mat[i][j]) != 0:
                    raise ValueError("b incompatible with the generator orders")

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        n = 1
        for d in self.orders:
            n *= d
        return n

    def zero(self) -> GroupElement:
        return (0,) * self.ngens

    def reduce(self, x) -> GroupElement:
        return tuple(int(e) % d for e, d in zip(x, self.orders))

    def add(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x: GroupElement) -> GroupElement:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def smul(self, n: int, x: GroupElement) -> GroupElement:
        return tuple((n * a) % d for a, d in zip(x, self.orders))

    def element_order(self, x: GroupElement) -> int:
        n = 1
        for a, d in zip(x, self.orders):
            if a:
                g = d // math.gcd(a, d)
                n = n * g // math.gcd(n, g)
        return n

    def elements(self):
        return itertools.product(*(range(d) for d in self.orders))

    def lift(self, x: GroupElement) -> tuple[Fraction, ...]:
        """A dual-lattice representative, available for lattice-backed modules."""
        if self.lifts is None:
            raise ValueError("module has no lattice back-reference")
        n = len(self.lifts[0])
        out = [Fraction(0)] * n
        for e, lift in zip(x, self.lifts):
            if e:
                for i in range(n):
                    out[i] += e * lift[i]
        return tuple(out)


def q_value(module: FiniteQuadraticModule, x) -> Fraction:
    """q(x) in Q/2Z, reduced into [0, 2)."""
    x = module.reduce(x)
    total = Fraction(0)
    for i, e in enumerate(x):
        if e:
            total += e * e * module.q_diag[i]
    for i in range(module.ngens):
        if x[i]:
            for j in range(i + 1, module.ngens):
                if x[j]:
                    total += 2 * x[i] * x[j] * module.b_mat[i][j]
    return _mod2(total)


def b_value(module: FiniteQuadraticModule, x, y) -> Fraction:
    """b(x, y) in Q/Z, reduced into [0, 1)."""
    x = module.reduce(x)
    y = module.reduce(y)
    total = Fraction(0)
    for i, a in enumerate(x):
        if a:
            for j, c in enumerate(y):
                if c:
                    total += a * c * module.b_mat[i][j]
    return _mod1(total)


def from_lattice(lattice: Lattice) -> FiniteQuadraticModule:
    """Discriminant quadratic module of an even nondegenerate lattice."""
    if not lattice.is_even:
        raise ValueError("discriminant form needs an even lattice (q is mod 2Z)")
    disc = discriminant_group(lattice)
    orders = disc.invariant_factors
    lifts = tuple(v.coords for v in disc.generator_lifts)
    k = len(orders)
    raw = [[lattice.pairing(lifts[i], lifts[j]) for j in range(k)] for i in range(k)]
    q_diag = tuple(_mod2(raw[i][i]) for i in range(k))
    b_mat = tuple(tuple(_mod1(raw[i][j]) for j in range(k)) for i in range(k))
    return FiniteQuadraticModule(orders, q_diag, b_mat, lattice, lifts, disc.dual_basis)


def class_of(module: FiniteQuadraticModule, vector: DualVector) -> GroupElement:
    """Class of a dual vector in A_L, for lattice-backed modules.

    The dual basis recorded at construction expresses the vector with
    integer coordinates; the non-integral rows are the generators.
    """
    if module.dual_basis is None or module.source is None:
        raise ValueError("module has no lattice back-reference")
    basis = RatMat.from_rows(module.dual_basis)
    coords = RatMat.from_rows([vector.coords]) * basis.inverse()
    if not coords.is_integral():
        raise ValueError("vector is not in the dual lattice")
    gen_rows = [i for i, row in enumerate(module.dual_basis)
                if any(c.denominator != 1 for c in row)]
    exps = [int(coords.entries[0][i]) for i in gen_rows]
    return module.reduce(exps)


def isotropic_elements(module: FiniteQuadraticModule) -> list[GroupElement]:
    """All nonzero x with q(x) = 0, in lexicographic exponent order."""
    out = []
    for x in module.elements():
        if any(x) and q_value(module, x) == 0:
            out.append(x)
    return out


@dataclass(frozen=True)
class IsotropicSubgroup:
    module: FiniteQuadraticModule
    gens: tuple[GroupElement, ...]
    elements: frozenset[GroupElement]

    @property
    def order(self) -> int:
        return len(self.elements)


def _span(module: FiniteQuadraticModule, gens) -> frozenset[GroupElement]:
    seen = {module.zero()}
    frontier = [module.zero()]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = module.add(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def _canonical_gens(module: FiniteQuadraticModule, elements) -> tuple[GroupElement, ...]:
    """Canonical generators: HNF of the preimage lattice in Z^k, reduced mod d."""
    k = module.ngens
    rows = [list(x) for x in sorted(elements)]
    for i in range(k):
        rows.append([module.orders[i] if j == i else 0 for j in range(k)])
    from .exactlinalg import lattice_rows_hnf

    h = lattice_rows_hnf(IntMat.from_rows(rows))
    gens = []
    for row in h.entries:
        red = module.reduce(row)
        if any(red):
            gens.append(red)
    return tuple(gens)


def isotropic_subgroups(module: FiniteQuadraticModule) -> list[IsotropicSubgroup]:
    """All subgroups on which q vanishes identically, the trivial one included.

    Grown by closing isotropic elements under addition; a subgroup generated
    by isotropic elements is isotropic iff b also vanishes pairwise, which
    the element-wise q check below enforces.
    """
    iso = isotropic_elements(module)
    trivial = frozenset({module.zero()})
    found: dict[frozenset, tuple] = {trivial: ()}
    frontier = [trivial]
    while frontier:
        new_frontier = []
        for sub in frontier:
            for x in iso:
                if x in sub:
                    continue
                cand = _span(module, list(sub) + [x])
                if cand in found:
                    continue
                if all(q_value(module, y) == 0 for y in cand):
                    found[cand] = ()
                    new_frontier.append(cand)
        frontier = new_frontier
    out = []
    for elems in found:
        gens = _canonical_gens(module, elems) if len(elems) > 1 else ()
        out.append(IsotropicSubgroup(module, gens, elems))
    out.sort(key=lambda s: (s.order, sorted(s.elements)))
    return out


def overlattice(lattice: Lattice, subgroup: IsotropicSubgroup) -> Lattice:
    """Even overlattice generated by L and the lifts of an isotropic subgroup.

    The result is presented on a basis extending the correspondence: its
    determinant is det(L) / |H|^2 and it contains L with index |H|.
    """
    module = subgroup.module
    if module.source is None or module.source.gram != lattice.gram:
        raise ValueError("subgroup does not belong to this lattice's discriminant form")
    for x in subgroup.elements:
        if q_value(module, x) != 0:
            raise ValueError("subgroup is not isotropic")
    n = lattice.rank
    rows = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    for g in subgroup.gens:
        rows.append(module.lift(g))
    basis = rational_span_basis(rows)
    b = RatMat.from_rows(basis)
    gram = b * lattice.gram.to_rational() * b.transpose()
    if not gram.is_integral():
        raise ValueError("lift pairings are not integral; subgroup was not isotropic")
    g_int = gram.to_integer()
    if any(g_int.entries[i][i] % 2 for i in range(n)):
        raise ValueError("overlattice is odd; subgroup was not isotropic for q")
    return Lattice(g_int, None)


def negate(module: FiniteQuadraticModule) -> FiniteQuadraticModule:
    q = tuple(_mod2(-x) for x in module.q_diag)
    b = tuple(tuple(_mod1(-x) for x in row) for row in module.b_mat)
    return FiniteQuadraticModule(module.orders, q, b)


def direct_sum(m1: FiniteQuadraticModule, m2: FiniteQuadraticModule) -> FiniteQuadraticModule:
    orders = m1.orders + m2.orders
    q = m1.q_diag + m2.q_diag
    k1, k2 = m1.ngens, m2.ngens
    b = []
    for i in range(k1):
        b.append(tuple(m1.b_mat[i]) + (Fraction(0),) * k2)
    for i in range(k2):
        b.append((Fraction(0),) * k1 + tuple(m2.b_mat[i]))
    return FiniteQuadraticModule(orders, q, tuple(b))


def submodule_on(module: FiniteQuadraticModule, gens, orders) -> FiniteQuadraticModule:
    """The quadratic module presented on the given elements as generators.

    Used for change of generators: the elements must generate the whole
    group with the stated orders (checked).
    """
    gens = [module.reduce(g) for g in gens]
    k = len(gens)
    if _span(module, gens) != frozenset(module.elements()):
        raise ValueError("elements do not generate the module")
    for g, d in zip(gens, orders):
        if module.element_order(g) != d:
            raise ValueError("stated generator order is wrong")
    q = tuple(q_value(module, g) for g in gens)
    b = tuple(tuple(b_value(module, gens[i], gens[j]) for j in range(k)) for i in range(k))
    return FiniteQuadraticModule(tuple(orders), q, b)


def guard_order() -> int:
    env = os.environ.get("EVENLAT_GUARD_ORDER")
    if env:
        return int(env)
    return DEFAULT_GUARD_ORDER


def are_isomorphic(
    m1: FiniteQuadraticModule, m2: FiniteQuadraticModule, guard: int | None = None
) -> tuple[GroupElement, ...] | None:
    """Search for a group isomorphism preserving q (b follows from q).

    On success returns the images in m2 of m1's generators, in order;
    None when no isomorphism exists.  The search backtracks over
    candidate images filtered by element order, q value, and b pairings
    with the images already chosen, then checks surjectivity.
    """
    limit = guard if guard is not None else guard_order()
    if m1.order > limit or m2.order > limit:
        raise GuardExceeded(
            f"module order {max(m1.order, m2.order)} exceeds the search guard {limit}"
        )
    if m1.order != m2.order or m1.orders != m2.orders:
        return None
    fp1 = sorted((m1.element_order(x), q_value(m1, x)) for x in m1.elements())
    fp2 = sorted((m2.element_order(x), q_value(m2, x)) for x in m2.elements())
    if fp1 != fp2:
        return None
    by_order_q: dict[tuple, list[GroupElement]] = {}
    for y in m2.elements():
        by_order_q.setdefault((m2.element_order(y), q_value(m2, y)), []).append(y)
    k = m1.ngens
    gens1 = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    images: list[GroupElement] = []

    def extend(depth: int) -> bool:
        if depth == k:
            return len(_span(m2, images)) == m2.order
        g = gens1[depth]
        key = (m1.orders[depth], q_value(m1, g))
        for cand in by_order_q.get(key, ()):
            ok = True
            for prev_i in range(depth):
                if b_value(m2, images[prev_i], cand) != m1.b_mat[prev_i][depth]:
                    ok = False
                    break
            if not ok:
                continue
            images.append(cand)
            if extend(depth + 1):
                return True
            images.pop()
        return False

    if extend(0):
        return tuple(images)
    return None


class GuardExceeded(Exception):
    """Isomorphism search refused: module order above the configured guard."""
