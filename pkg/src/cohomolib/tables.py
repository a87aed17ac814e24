"""Finite groups given by multiplication tables.

The identity is always index 0.  Tables are immutable after validation and
safe to share between threads.
"""

import math

import numpy as np

from . import config
from .errors import NoIdentity, NoInverse, NotAssociative, NOutOfRange, TooLarge


class GroupTable:
    """A finite group as an n x n table of element indices, identity at 0."""

    def __init__(self, product: np.ndarray, inverse: np.ndarray, residues=None):
        self.order = int(product.shape[0])
        self.product = product
        self.inverse = inverse
        # optional index <-> residue map for units groups
        self.residues = residues
        self._abelian = None

    def mul(self, x: int, y: int) -> int:
        return int(self.product[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def elements(self):
        return range(self.order)

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(x), -k)
        acc, base = 0, x
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order(self, x: int) -> int:
        r, y = 1, x
        while y != 0:
            y = self.mul(y, x)
            r += 1
        return r

    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = bool(np.array_equal(self.product, self.product.T))
        return self._abelian

    def __eq__(self, other):
        return isinstance(other, GroupTable) and np.array_equal(self.product, other.product)

    def __hash__(self):
        return hash((self.order, self.product.tobytes()))

    def __repr__(self):
        return f"GroupTable(order={self.order})"


def validate_table(candidate) -> GroupTable:
    """Check the group axioms on a candidate table and fill in inverses.

    Index 0 must act as a two-sided identity.  Associativity is checked
    exhaustively (vectorized per row, so order a few hundred is fine).
    Raises NotAssociative / NoIdentity / NoInverse with a witness.
    """
    product = np.asarray(candidate, dtype=np.int64)
    if product.ndim != 2 or product.shape[0] != product.shape[1]:
        raise NOutOfRange("table must be square")
    n = product.shape[0]
    if n == 0:
        raise NOutOfRange("table must be nonempty")
    if product.min() < 0 or product.max() >= n:
        raise NOutOfRange("table entries must lie in [0, n)")

    idx = np.arange(n)
    if not np.array_equal(product[0], idx):
        bad = int(np.nonzero(product[0] != idx)[0][0])
        raise NoIdentity(bad)
    if not np.array_equal(product[:, 0], idx):
        bad = int(np.nonzero(product[:, 0] != idx)[0][0])
        raise NoIdentity(bad)

    inverse = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        hits = np.nonzero(product[x] == 0)[0]
        if hits.size == 0 or product[hits[0], x] != 0:
            raise NoInverse(x)
        inverse[x] = hits[0]

    # associativity: (x*y)*z == x*(y*z), one row of triples at a time
    for x in range(n):
        left = product[product[x], :]          # [y, z] -> (x*y)*z
        right = product[x][product]            # [y, z] -> x*(y*z)
        if not np.array_equal(left, right):
            y, z = np.argwhere(left != right)[0]
            raise NotAssociative((x, int(y), int(z)))

    return GroupTable(product, inverse)


def cyclic_table(n: int) -> GroupTable:
    """The cyclic group Z_n with addition mod n."""
    if n < 1:
        raise NOutOfRange("order must be positive")
    idx = np.arange(n)
    product = (idx[:, None] + idx[None, :]) % n
    inverse = (-idx) % n
    return GroupTable(product.astype(np.int64), inverse.astype(np.int64))


def direct_product_table(*factors: GroupTable) -> GroupTable:
    """Direct product with lexicographic index layout, identity at 0."""
    if not factors:
        return cyclic_table(1)
    table = factors[0]
    for other in factors[1:]:
        n1, n2 = table.order, other.order
        i = np.arange(n1 * n2)
        a1, a2 = i // n2, i % n2
        product = (table.product[np.ix_(a1, a1)] * n2 + other.product[np.ix_(a2, a2)])
        inverse = table.inverse[a1] * n2 + other.inverse[a2]
        table = GroupTable(product.astype(np.int64), inverse.astype(np.int64))
    return table


def units_mod_n(n: int, max_order: int | None = None) -> GroupTable:
    """The multiplicative units Z_n^*, with index 0 <-> residue 1.

    The index <-> residue map is recorded on the returned table.  The full
    table needs phi(n)^2 entries, so materialization is capped; use
    oracles.units_oracle for larger moduli.
    """
    if n < 2:
        raise NOutOfRange("modulus must be at least 2")
    residues = [r for r in range(1, n) if math.gcd(r, n) == 1]
    cap = max_order if max_order is not None else config.table_cap()
    if len(residues) > cap:
        raise TooLarge(
            f"units group mod {n} has order {len(residues)} > cap {cap}; "
            "use oracles.units_oracle for large moduli"
        )
    res = np.array(residues, dtype=np.int64)
    index_of = {int(r): i for i, r in enumerate(res)}
    product = np.empty((len(res), len(res)), dtype=np.int64)
    for i, r in enumerate(res):
        product[i] = [index_of[int(r * s % n)] for s in res]
    inverse = np.array([index_of[pow(int(r), -1, n)] for r in res], dtype=np.int64)
    table = GroupTable(product, inverse, residues=res)
    table.modulus = n
    return table


def table_generating_set(table: GroupTable) -> list[int]:
    """A small deterministic generating set, greedily chosen by index order."""
    known = np.zeros(table.order, dtype=bool)
    known[0] = True
    gens: list[int] = []
    for x in range(1, table.order):
        if known[x]:
            continue
        gens.append(x)
        frontier = list(np.nonzero(known)[0])
        known[x] = True
        frontier.append(x)
        while frontier:
            y = frontier.pop()
            for g in gens:
                for z in (table.mul(y, g), table.mul(g, y)):
                    if not known[z]:
                        known[z] = True
                        frontier.append(z)
        if known.all():
            break
    return gens


def subgroup_closure(table: GroupTable, elements) -> set[int]:
    """Closure of a set of elements inside a table group."""
    known = {0}
    frontier = [0]
    gens = [int(x) for x in elements]
    for g in gens:
        if g not in known:
            known.add(g)
            frontier.append(g)
    while frontier:
        y = frontier.pop()
        for g in gens:
            for z in (table.mul(y, g), table.mul(g, y)):
                if z not in known:
                    known.add(z)
                    frontier.append(z)
    return known
