"""Normalized cochains, the coboundary maps, and factor-set extraction.

Coefficients live in an abelian group A that is either a multiplication
table (values are A-indices) or a black-box oracle (values are handles).
The G-action on A enters through an ActionSpec; with act trivial all
formulas reduce to the central case.

Conventions, written additively in A with act(x, .) the automorphism for x:

    coboundary       (ds)(x, y)     = act(x, s(y)) + s(x) - s(xy)
    cocycle identity  act(x, f(y,z)) - f(xy, z) + f(x, yz) - f(x, y) = 0
    degree-2 map     (d2 f)(x,y,z)  = act(x, f(y,z)) - f(xy,z) + f(x,yz) - f(x,y)

so that d2 of any coboundary vanishes and extraction from an extension,
f(x, y) = s(x) s(y) s(xy)^-1 with act the conjugation x a x^-1 through any
representative, always yields a cocycle.
"""

import math
import random

import numpy as np

from . import config
from .errors import (
    BudgetExhausted,
    NOutOfRange,
    ProjectionIncomplete,
    ValueOutsideA,
)
from .oracles import GroupOracle
from .tables import GroupTable


# ---------------------------------------------------------------------------
# coefficient arithmetic over tables or oracles


class TableCoeffs:
    """Additive arithmetic in a table-backed abelian coefficient group."""

    def __init__(self, table: GroupTable):
        self.table = table
        self.zero = 0

    def add(self, a, b):
        return int(self.table.product[a, b])

    def neg(self, a):
        return int(self.table.inverse[a])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == 0


class OracleCoeffs:
    """Additive arithmetic in a black-box abelian coefficient group."""

    def __init__(self, oracle: GroupOracle):
        self.oracle = oracle
        self.zero = oracle.identity()

    def add(self, a, b):
        return self.oracle.compose(a, b)

    def neg(self, a):
        return self.oracle.invert(a)

    def sub(self, a, b):
        return self.oracle.compose(a, self.oracle.invert(b))

    def eq(self, a, b):
        return self.oracle.equal(a, b)

    def is_zero(self, a):
        return self.oracle.is_identity(a)


def coeff_ops(a_group):
    if isinstance(a_group, GroupTable):
        return TableCoeffs(a_group)
    return OracleCoeffs(a_group)


# ---------------------------------------------------------------------------
# actions


class ActionSpec:
    """A homomorphism from G into Aut(A), or the trivial marker.

    Table form stores one automorphism permutation of the A-indices per
    element of G; callable form wraps conjugation inside a black-box
    extension.
    """

    def __init__(self, kind, images=None, fn=None):
        self.kind = kind
        self.images = images
        self.fn = fn

    @classmethod
    def trivial(cls):
        return cls("trivial")

    @classmethod
    def from_tables(cls, images):
        return cls("table", images=np.asarray(images, dtype=np.int64))

    @classmethod
    def from_callable(cls, fn):
        return cls("callable", fn=fn)

    def is_trivial(self) -> bool:
        return self.kind == "trivial"

    def apply(self, g, a):
        if self.kind == "trivial":
            return a
        if self.kind == "table":
            return int(self.images[g, a])
        return self.fn(g, a)

    def validate(self, g_table: GroupTable, a_table: GroupTable):
        """Check each image is an automorphism and g -> phi(g) a homomorphism."""
        if self.kind == "trivial":
            return
        if self.kind != "table":
            raise NOutOfRange("only table actions can be validated exhaustively")
        imgs = self.images
        if imgs.shape != (g_table.order, a_table.order):
            raise NOutOfRange("action table has wrong shape")
        idx = np.arange(a_table.order)
        for g in range(g_table.order):
            img = imgs[g]
            if img[0] != 0 or not np.array_equal(np.sort(img), idx):
                raise NOutOfRange(f"action of {g} is not a bijection fixing 0")
            if not np.array_equal(img[a_table.product], a_table.product[np.ix_(img, img)]):
                raise NOutOfRange(f"action of {g} is not an automorphism")
        if not np.array_equal(imgs[0], idx):
            raise NOutOfRange("identity must act trivially")
        for x in range(g_table.order):
            for y in range(g_table.order):
                composed = imgs[x][imgs[y]]
                if not np.array_equal(imgs[g_table.mul(x, y)], composed):
                    raise NOutOfRange(f"action is not a homomorphism at ({x}, {y})")


def trivial_action() -> ActionSpec:
    return ActionSpec.trivial()


def inversion_action(g_table: GroupTable, a_table: GroupTable) -> ActionSpec:
    """Every non-identity element of G inverts A; valid for G of order 2."""
    images = np.tile(np.arange(a_table.order, dtype=np.int64), (g_table.order, 1))
    for g in range(1, g_table.order):
        images[g] = a_table.inverse
    act = ActionSpec.from_tables(images)
    act.validate(g_table, a_table)
    return act


# ---------------------------------------------------------------------------
# cochains


class Cochain1:
    """Normalized map G -> A: value at the identity is the identity."""

    def __init__(self, values, ops=None):
        self.values = list(values)
        if ops is not None and not ops.is_zero(self.values[0]):
            raise NOutOfRange("1-cochains must send the identity to the identity")

    @classmethod
    def zero(cls, n, ops):
        return cls([ops.zero] * n)

    @classmethod
    def delta(cls, n, g, a, ops):
        """The indicator cochain sending g to a and everything else to 0."""
        values = [ops.zero] * n
        values[g] = a
        return cls(values)

    def __len__(self):
        return len(self.values)

    def value(self, x):
        return self.values[x]


class Cochain2:
    """Normalized map G x G -> A: rows and columns through the identity vanish."""

    def __init__(self, values, ops=None):
        self.values = [list(row) for row in values]
        if ops is not None:
            n = len(self.values)
            for i in range(n):
                if not ops.is_zero(self.values[0][i]) or not ops.is_zero(self.values[i][0]):
                    raise NOutOfRange("2-cochains must be normalized")

    @classmethod
    def zero(cls, n, ops):
        return cls([[ops.zero] * n for _ in range(n)])

    def __len__(self):
        return len(self.values)

    def value(self, x, y):
        return self.values[x][y]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)


def cochain1_add(s1: Cochain1, s2: Cochain1, ops) -> Cochain1:
    return Cochain1([ops.add(a, b) for a, b in zip(s1.values, s2.values)])


def cochain2_add(f1: Cochain2, f2: Cochain2, ops) -> Cochain2:
    return Cochain2([[ops.add(a, b) for a, b in zip(r1, r2)]
                     for r1, r2 in zip(f1.values, f2.values)])


def cochain2_sub(f1: Cochain2, f2: Cochain2, ops) -> Cochain2:
    return Cochain2([[ops.sub(a, b) for a, b in zip(r1, r2)]
                     for r1, r2 in zip(f1.values, f2.values)])


def cochain2_neg(f: Cochain2, ops) -> Cochain2:
    return Cochain2([[ops.neg(a) for a in row] for row in f.values])


def cochain2_eq(f1: Cochain2, f2: Cochain2, ops) -> bool:
    return all(ops.eq(a, b) for r1, r2 in zip(f1.values, f2.values)
               for a, b in zip(r1, r2))


def cochain2_is_zero(f: Cochain2, ops) -> bool:
    return all(ops.is_zero(a) for row in f.values for a in row)


def is_normalized(f: Cochain2, ops) -> bool:
    n = len(f)
    return all(ops.is_zero(f.value(0, i)) and ops.is_zero(f.value(i, 0)) for i in range(n))


# ---------------------------------------------------------------------------
# the differentials


def is_cocycle(f: Cochain2, g_table: GroupTable, a_group, act: ActionSpec) -> bool:
    """Exhaustively test the (twisted) cocycle identity over all of G^3."""
    ops = coeff_ops(a_group)
    n = g_table.order
    mul = g_table.mul
    for x in range(n):
        for y in range(n):
            xy = mul(x, y)
            for z in range(n):
                lhs = ops.add(act.apply(x, f.value(y, z)), f.value(x, mul(y, z)))
                rhs = ops.add(f.value(xy, z), f.value(x, y))
                if not ops.eq(lhs, rhs):
                    return False
    return True


def cocycle_violation(f: Cochain2, g_table: GroupTable, a_group, act: ActionSpec):
    """First triple breaking the cocycle identity, or None."""
    ops = coeff_ops(a_group)
    n = g_table.order
    mul = g_table.mul
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = ops.add(act.apply(x, f.value(y, z)), f.value(x, mul(y, z)))
                rhs = ops.add(f.value(mul(x, y), z), f.value(x, y))
                if not ops.eq(lhs, rhs):
                    return (x, y, z)
    return None


def coboundary(s: Cochain1, g_table: GroupTable, a_group, act: ActionSpec) -> Cochain2:
    """The 2-coboundary of a 1-cochain: act(x, s(y)) + s(x) - s(xy)."""
    ops = coeff_ops(a_group)
    n = g_table.order
    values = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            term = ops.add(act.apply(x, s.value(y)), s.value(x))
            values[x][y] = ops.sub(term, s.value(g_table.mul(x, y)))
    return Cochain2(values, ops)


def coboundary2(f: Cochain2, g_table: GroupTable, a_group, act: ActionSpec):
    """The degree-2 differential as a dense G^3 array of A-values.

    f is a cocycle iff the result is identically zero; consistency with
    is_cocycle is by construction since both evaluate the same expression.
    """
    ops = coeff_ops(a_group)
    n = g_table.order
    mul = g_table.mul
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            xy = mul(x, y)
            for z in range(n):
                lhs = ops.add(act.apply(x, f.value(y, z)), f.value(x, mul(y, z)))
                rhs = ops.add(f.value(xy, z), f.value(x, y))
                out[x][y][z] = ops.sub(lhs, rhs)
    return out


def cochain3_is_zero(values, ops) -> bool:
    return all(ops.is_zero(v) for plane in values for row in plane for v in row)


# ---------------------------------------------------------------------------
# sections and factor sets


class Section:
    """Coset representatives s: G -> E with s(identity) = identity."""

    def __init__(self, values, mode):
        self.values = list(values)
        self.mode = mode  # "table" (E-indices) or "bbox" (handles)

    def __len__(self):
        return len(self.values)

    def value(self, g):
        return self.values[g]


def choose_representatives_table(instance, seed: int) -> Section:
    """Pick one preimage per G-element from a table-backed instance.

    Deterministic given the seed; the identity represents itself.  Raises
    ProjectionIncomplete when some G-element has no preimage.
    """
    g_table = instance.g
    n = g_table.order
    rng = random.Random(config.derive_seed(seed, "section-table"))
    preimages = [[] for _ in range(n)]
    for e_idx, g_idx in enumerate(instance.proj):
        preimages[int(g_idx)].append(e_idx)
    values = [0] * n
    for g in range(n):
        if not preimages[g]:
            raise ProjectionIncomplete(g)
        values[g] = 0 if g == 0 else rng.choice(preimages[g])
    return Section(values, "table")


def choose_representatives_sampled(instance, seed: int, budget: int | None = None) -> Section:
    """Sample the extension oracle until every coset of A has a representative.

    The default budget is the coupon-collector scale c * |G| * ln |G|.
    Raises BudgetExhausted listing the cosets never hit.
    """
    g_table = instance.g
    if not isinstance(g_table, GroupTable):
        raise NOutOfRange("sampled sections need G as a table")
    n = g_table.order
    if budget is None:
        budget = max(16, math.ceil(config.SAMPLE_MULTIPLIER * n * (math.log(n) + 1.0)))
    rng = random.Random(config.derive_seed(seed, "section-sampled"))
    oracle = instance.e
    values = [None] * n
    values[0] = oracle.identity()
    found = 1
    for _ in range(budget):
        if found == n:
            break
        h = oracle.sample(rng)
        g = int(instance.project(h))
        if values[g] is None:
            values[g] = h
            found += 1
    if found < n:
        missing = [g for g in range(n) if values[g] is None]
        raise BudgetExhausted(
            f"no representative found for {len(missing)} cosets within budget {budget}",
            missing=missing,
        )
    return Section(values, "bbox")


def extract_factor_set(instance, section: Section) -> Cochain2:
    """The factor set f(x, y) = s(x) s(y) s(xy)^-1 of a section, valued in A.

    Every value is checked to lie in the embedded copy of A (for tables via
    the embedding inverse, for oracles via the projection kernel) before
    being translated to the abstract coefficient group.
    """
    g_table = instance.g
    n = g_table.order
    if section.mode == "table":
        lookup = instance.embed_inverse()
        values = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                u = instance.e_mul(section.value(x), section.value(y))
                u = instance.e_mul(u, instance.e_inv(section.value(g_table.mul(x, y))))
                a_idx = lookup.get(u)
                if a_idx is None:
                    raise ValueOutsideA(f"factor-set value at ({x},{y}) is not in A")
                values[x][y] = a_idx
        return Cochain2(values)
    oracle = instance.e
    values = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            u = oracle.compose(section.value(x), section.value(y))
            u = oracle.compose(u, oracle.invert(section.value(g_table.mul(x, y))))
            values[x][y] = instance.restrict_a(u)
    return Cochain2(values)


def action_from_section(instance, section: Section) -> ActionSpec:
    """Conjugation action of G on A through a section, as an ActionSpec.

    Independent of the section choice because A is abelian; trivial exactly
    when A is central.
    """
    g_table = instance.g
    n = g_table.order
    if section.mode == "table":
        a_order = instance.a.order
        lookup = instance.embed_inverse()
        images = np.empty((n, a_order), dtype=np.int64)
        for g in range(n):
            sg = section.value(g)
            sg_inv = instance.e_inv(sg)
            for a in range(a_order):
                u = instance.e_mul(instance.e_mul(sg, int(instance.embed[a])), sg_inv)
                images[g, a] = lookup[u]
        return ActionSpec.from_tables(images)

    oracle = instance.e

    def fn(g, a_handle):
        sg = section.value(g)
        u = oracle.compose(oracle.compose(sg, instance.embed_a(a_handle)), oracle.invert(sg))
        return instance.restrict_a(u)

    return ActionSpec.from_callable(fn)


def b2_generators(g_table: GroupTable, a_group, a_gens, act: ActionSpec,
                  include_identity: bool = False) -> list[Cochain2]:
    """Push a generating set of the 1-cochains forward through the coboundary.

    One generator per (non-identity g, a in a_gens): the coboundary of the
    indicator cochain sending g to a.  The list generates B^2.  With
    include_identity the identity-indexed copies are added as well, which
    generates the coboundaries of unnormalized 1-cochains (used only by the
    counting identities).
    """
    ops = coeff_ops(a_group)
    n = g_table.order
    out = []
    start = 0 if include_identity else 1
    for g in range(start, n):
        for a in a_gens:
            values = [[ops.zero] * n for _ in range(n)]
            neg_a = ops.neg(a)
            for x in range(n):
                for y in range(n):
                    v = ops.zero
                    if y == g:
                        v = ops.add(v, act.apply(x, a))
                    if x == g:
                        v = ops.add(v, a)
                    if g_table.mul(x, y) == g:
                        v = ops.add(v, neg_a)
                    values[x][y] = v
            out.append(Cochain2(values))
    return out
