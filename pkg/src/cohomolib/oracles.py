"""Black-box group oracles over opaque 16-byte handles.

An oracle exposes compose / invert / is_identity plus generators and seeded
sampling.  Handles need not be unique per element in the abstract model, so
every element comparison goes through ``equal`` (an is_identity call on
x * y^-1); the oracles constructed here do produce canonical unique handles,
which internal hash tables rely on.  All oracles are immutable after
construction and safe for concurrent readers.
"""

import math
import random

from . import config
from .encoding import HandleCodec
from .errors import NotAUnit, NOutOfRange
from .tables import GroupTable, table_generating_set


class GroupOracle:
    """Abstract black-box group capability."""

    def compose(self, x: bytes, y: bytes) -> bytes:
        raise NotImplementedError

    def invert(self, x: bytes) -> bytes:
        raise NotImplementedError

    def is_identity(self, x: bytes) -> bool:
        raise NotImplementedError

    def generators(self) -> list[bytes]:
        raise NotImplementedError

    def identity(self) -> bytes:
        raise NotImplementedError

    def sample(self, rng: random.Random) -> bytes:
        raise NotImplementedError

    def order_bound(self) -> int | None:
        """An upper bound on element orders, when one is publicly known."""
        return None

    def equal(self, x: bytes, y: bytes) -> bool:
        return self.is_identity(self.compose(x, self.invert(y)))

    def power(self, x: bytes, k: int) -> bytes:
        if k < 0:
            return self.power(self.invert(x), -k)
        acc = self.identity()
        base = x
        while k:
            if k & 1:
                acc = self.compose(acc, base)
            base = self.compose(base, base)
            k >>= 1
        return acc

    def product(self, handles) -> bytes:
        acc = self.identity()
        for h in handles:
            acc = self.compose(acc, h)
        return acc


class EncodedOracle(GroupOracle):
    """A table group behind a seeded relabeling of its element indices.

    encode/decode are instrumentation for the simulation and for tests;
    algorithms must not call them.
    """

    def __init__(self, table: GroupTable, seed: int):
        self.table = table
        self.seed = seed
        self._codec = HandleCodec(seed, tag=b"encoded-oracle")
        self._gens = [self.encode(g) for g in table_generating_set(table)]

    def encode(self, index: int) -> bytes:
        if not 0 <= index < self.table.order:
            raise NOutOfRange(f"element index {index} out of range")
        return self._codec.encode(index)

    def decode(self, handle: bytes) -> int:
        index = self._codec.decode(handle)
        if index >= self.table.order:
            raise NOutOfRange("handle does not decode to a group element")
        return index

    def compose(self, x, y):
        return self.encode(self.table.mul(self.decode(x), self.decode(y)))

    def invert(self, x):
        return self.encode(self.table.inv(self.decode(x)))

    def is_identity(self, x):
        return self.decode(x) == 0

    def generators(self):
        return list(self._gens)

    def identity(self):
        return self.encode(0)

    def sample(self, rng):
        return self.encode(rng.randrange(self.table.order))

    def order_bound(self):
        return self.table.order


def wrap_as_oracle(table: GroupTable, seed: int) -> EncodedOracle:
    """Wrap a multiplication table as a black-box oracle with seeded handles."""
    return EncodedOracle(table, seed)


class UnitsOracle(GroupOracle):
    """Z_N^* as a black-box group, for moduli too large to tabulate.

    Generators are random units, found by sampling Z_N and keeping residues
    coprime to N; the count defaults to the sample multiplier times the bit
    length of N.
    """

    def __init__(self, modulus: int, seed: int, gen_count: int | None = None):
        if modulus < 2:
            raise NOutOfRange("modulus must be at least 2")
        self.modulus = modulus
        self.seed = seed
        self._codec = HandleCodec(seed, tag=b"units-oracle")
        rng = random.Random(config.derive_seed(seed, "units-gens"))
        if gen_count is None:
            gen_count = config.SAMPLE_MULTIPLIER * max(1, modulus.bit_length())
        self._gens = [self.sample(rng) for _ in range(gen_count)]

    def encode(self, residue: int) -> bytes:
        residue %= self.modulus
        if math.gcd(residue, self.modulus) != 1:
            raise NotAUnit(f"{residue} is not a unit mod {self.modulus}")
        return self._codec.encode(residue)

    def decode(self, handle: bytes) -> int:
        residue = self._codec.decode(handle)
        if residue >= self.modulus or math.gcd(residue, self.modulus) != 1:
            raise NotAUnit("handle does not decode to a unit")
        return residue

    def compose(self, x, y):
        return self._codec.encode(self.decode(x) * self.decode(y) % self.modulus)

    def invert(self, x):
        return self._codec.encode(pow(self.decode(x), -1, self.modulus))

    def is_identity(self, x):
        return self.decode(x) == 1 % self.modulus

    def generators(self):
        return list(self._gens)

    def identity(self):
        return self._codec.encode(1 % self.modulus)

    def sample(self, rng):
        while True:
            r = rng.randrange(1, self.modulus)
            if math.gcd(r, self.modulus) == 1:
                return self._codec.encode(r)

    def order_bound(self):
        return self.modulus


def units_oracle(modulus: int, seed: int, gen_count: int | None = None) -> UnitsOracle:
    return UnitsOracle(modulus, seed, gen_count)


class ProductOracle(GroupOracle):
    """The k-fold componentwise product of a coefficient group.

    Elements are concatenations of k component handles; multiplication,
    inversion and the identity test all act pointwise.
    """

    def __init__(self, component: GroupOracle, k: int):
        if k < 1:
            raise NOutOfRange("product arity must be positive")
        self.component = component
        self.k = k
        self._id = component.identity() * k

    def split(self, x: bytes) -> list[bytes]:
        if len(x) != 16 * self.k:
            raise NOutOfRange("handle has wrong width for this product")
        return [x[16 * i: 16 * (i + 1)] for i in range(self.k)]

    def join(self, parts) -> bytes:
        parts = list(parts)
        if len(parts) != self.k:
            raise NOutOfRange("wrong number of components")
        return b"".join(parts)

    def compose(self, x, y):
        return b"".join(
            self.component.compose(a, b) for a, b in zip(self.split(x), self.split(y))
        )

    def invert(self, x):
        return b"".join(self.component.invert(a) for a in self.split(x))

    def is_identity(self, x):
        return all(self.component.is_identity(a) for a in self.split(x))

    def generators(self):
        return []

    def identity(self):
        return self._id

    def sample(self, rng):
        return b"".join(self.component.sample(rng) for _ in range(self.k))

    def order_bound(self):
        return self.component.order_bound()


def random_generating_set(oracle: GroupOracle, seed: int, count: int) -> list[bytes]:
    """Draw `count` near-uniform samples as a would-be generating set.

    Failure to generate the whole group is not detected here; downstream
    order computations expose it.
    """
    rng = random.Random(config.derive_seed(seed, "random-gens"))
    return [oracle.sample(rng) for _ in range(count)]


def default_generator_count(order_bound: int, multiplier: int | None = None) -> int:
    c = config.SAMPLE_MULTIPLIER if multiplier is None else multiplier
    return c * max(1, math.ceil(math.log2(max(2, order_bound))))
