"""Extensions built from factor sets, and quadratic-residuosity instances.

Elements of the built extension are pairs (a, x) in A x G behind an opaque
encoding, multiplied by (a, x)(b, y) = (a + act_x(b) + f(x, y), xy).  The
quadratic-residuosity generator produces two central extensions of Z_2 by
the units mod N whose equivalence encodes whether y is a square.
"""

import math
import random
from dataclasses import dataclass

import numpy as np

from . import config
from .cohomology import ActionSpec, Cochain2, cocycle_violation
from .encoding import HandleCodec
from .errors import NotACocycle, NotAUnit, NOutOfRange, TooLarge, ValueOutsideA
from .extensions import ExtensionInstance, table_extension
from .oracles import EncodedOracle, GroupOracle, UnitsOracle, units_oracle, wrap_as_oracle
from .tables import GroupTable, validate_table


class _TableValues:
    """Coefficient values are indices into an abelian GroupTable."""

    def __init__(self, table: GroupTable):
        self.table = table
        self.space = table.order
        self.size = table.order

    def mul(self, a, b):
        return self.table.mul(a, b)

    def inv(self, a):
        return self.table.inv(a)

    ident = 0

    def sample(self, rng):
        return rng.randrange(self.table.order)

    def enumerate(self):
        return range(self.table.order)


class _UnitsValues:
    """Coefficient values are residues in Z_N^*; identity is residue 1."""

    def __init__(self, modulus: int):
        self.modulus = modulus
        self.space = modulus
        self.size = None  # phi(N), not computed

    def mul(self, a, b):
        return a * b % self.modulus

    def inv(self, a):
        return pow(a, -1, self.modulus)

    @property
    def ident(self):
        return 1 % self.modulus

    def sample(self, rng):
        while True:
            r = rng.randrange(1, self.modulus)
            if math.gcd(r, self.modulus) == 1:
                return r

    def enumerate(self):
        return (r for r in range(1, self.modulus) if math.gcd(r, self.modulus) == 1)


class FactorSetOracle(GroupOracle):
    """Black-box oracle for the extension defined by a factor set.

    Pairs (a, x) are packed as value * |G| + x and hidden behind a seeded
    keyed permutation.  The inverse of (a, x) is
    (act_inv(x)(-a - f(x, x^-1)), x^-1); the identity is (0, 0).
    """

    def __init__(self, values, g_table: GroupTable, f_vals, act_vals, seed: int,
                 gens=None):
        self.values = values
        self.g_table = g_table
        self.f_vals = f_vals            # n x n nested list of coefficient values
        self.act_vals = act_vals        # callable (g, value) -> value, or None
        self._codec = HandleCodec(seed, tag=b"factor-set-oracle")
        self._gen_values = gens or []

    # pair packing -------------------------------------------------------

    def encode(self, a_val, x: int) -> bytes:
        return self._codec.encode(int(a_val) * self.g_table.order + x)

    def decode(self, handle: bytes):
        packed = self._codec.decode(handle)
        a_val, x = divmod(packed, self.g_table.order)
        if a_val >= self.values.space:
            raise NOutOfRange("handle does not decode to an extension element")
        return a_val, x

    def _act(self, x, b):
        if self.act_vals is None:
            return b
        return self.act_vals(x, b)

    # oracle surface -----------------------------------------------------

    def compose(self, h1, h2):
        a, x = self.decode(h1)
        b, y = self.decode(h2)
        val = self.values.mul(self.values.mul(a, self._act(x, b)), self.f_vals[x][y])
        return self.encode(val, self.g_table.mul(x, y))

    def invert(self, h):
        a, x = self.decode(h)
        xi = self.g_table.inv(x)
        val = self.values.inv(self.values.mul(a, self.f_vals[x][xi]))
        return self.encode(self._act(xi, val), xi)

    def is_identity(self, h):
        a, x = self.decode(h)
        return x == 0 and a == self.values.ident

    def generators(self):
        return list(self._gen_values)

    def identity(self):
        return self.encode(self.values.ident, 0)

    def sample(self, rng):
        return self.encode(self.values.sample(rng), rng.randrange(self.g_table.order))

    def order_bound(self):
        return self.values.space * self.g_table.order


def build_extension(a_group, g_table: GroupTable, f: Cochain2,
                    act: ActionSpec | None, seed: int) -> ExtensionInstance:
    """Realize the extension of G by A with factor set f as a black box.

    a_group may be an abelian GroupTable (f valued in indices; a wrapped
    oracle becomes the instance's abstract A) or an EncodedOracle /
    UnitsOracle (f valued in its handles).  Raises NotACocycle with the
    witnessing triple when f fails the cocycle identity under act.
    """
    act = act if act is not None and not act.is_trivial() else None
    if isinstance(a_group, GroupTable):
        a_table = a_group
        abstract = wrap_as_oracle(a_table, config.derive_seed(seed, "abstract-a"))
        values = _TableValues(a_table)
        f_vals = [[int(v) for v in row] for row in f.values]
        to_abstract = abstract.encode
        from_abstract = abstract.decode
        act_vals = None
        if act is not None:
            act.validate(g_table, a_table)
            images = act.images
            act_vals = lambda g, v: int(images[g, v])
        ref_table = a_table
    elif isinstance(a_group, EncodedOracle):
        abstract = a_group
        values = _TableValues(a_group.table)
        f_vals = [[a_group.decode(v) for v in row] for row in f.values]
        to_abstract = a_group.encode
        from_abstract = a_group.decode
        act_vals = None
        if act is not None:
            if act.kind == "table":
                act.validate(g_table, a_group.table)
                images = act.images
                act_vals = lambda g, v: int(images[g, v])
            else:
                act_vals = lambda g, v: a_group.decode(act.apply(g, a_group.encode(v)))
        ref_table = a_group.table
    elif isinstance(a_group, UnitsOracle):
        abstract = a_group
        values = _UnitsValues(a_group.modulus)
        f_vals = [[a_group.decode(v) for v in row] for row in f.values]
        to_abstract = a_group.encode
        from_abstract = a_group.decode
        if act is not None:
            raise NOutOfRange("units coefficients support only central extensions here")
        act_vals = None
        ref_table = None
    else:
        raise NOutOfRange("unsupported coefficient group for build_extension")

    f_abstract = Cochain2([[to_abstract(v) for v in row] for row in f_vals])
    bad = cocycle_violation(f_abstract, g_table, abstract, act or ActionSpec.trivial())
    if bad is not None:
        raise NotACocycle(bad)

    a_gen_handles = abstract.generators()
    gen_pairs = [ (from_abstract(h), 0) for h in a_gen_handles ]
    for x in range(1, g_table.order):
        gen_pairs.append((values.ident, x))
    oracle = FactorSetOracle(values, g_table, f_vals, act_vals,
                             config.derive_seed(seed, "ext-oracle"))
    oracle._gen_values = [oracle.encode(a, x) for a, x in gen_pairs]

    def project(h):
        return oracle.decode(h)[1]

    def embed_a(a_handle):
        return oracle.encode(from_abstract(a_handle), 0)

    def restrict_a(e_handle):
        a_val, x = oracle.decode(e_handle)
        if x != 0:
            raise ValueOutsideA("element is outside the embedded copy of A")
        return to_abstract(a_val)

    g_oracle = wrap_as_oracle(g_table, config.derive_seed(seed, "g-oracle"))

    def project_handle(h):
        return g_oracle.encode(oracle.decode(h)[1])

    inst = ExtensionInstance(
        g=g_table, a=abstract, action=act,
        e=oracle, a_gens=[oracle.encode(a, 0) for a, _ in gen_pairs[: len(a_gen_handles)]],
        project=project, project_handle=project_handle,
        embed_a=embed_a, restrict_a=restrict_a, g_oracle=g_oracle,
    )
    inst._ref_a_table = ref_table
    return inst


def realize_table(inst: ExtensionInstance, cap: int | None = None,
                  validate: bool = True) -> ExtensionInstance:
    """Materialize a built extension as a table-mode instance (desk scale)."""
    oracle = inst.e
    if not isinstance(oracle, FactorSetOracle):
        raise NOutOfRange("can only realize factor-set extensions")
    cap = cap or config.table_cap()
    g_table = inst.g
    values = oracle.values
    a_list = list(values.enumerate())
    n_e = len(a_list) * g_table.order
    if n_e > cap:
        raise TooLarge(f"|E| = {n_e} exceeds realization cap {cap}")
    index_of_a = {a: i for i, a in enumerate(a_list)}
    if a_list[0] != values.ident:
        raise NOutOfRange("coefficient enumeration must start at the identity")
    nG = g_table.order

    def pair_index(a_val, x):
        return index_of_a[a_val] * nG + x

    product = np.empty((n_e, n_e), dtype=np.int64)
    for i, a in enumerate(a_list):
        for x in range(nG):
            row = i * nG + x
            for j, b in enumerate(a_list):
                for y in range(nG):
                    val = values.mul(values.mul(a, oracle._act(x, b)), oracle.f_vals[x][y])
                    product[row, j * nG + y] = pair_index(val, g_table.mul(x, y))
    e_table = validate_table(product)
    proj = np.array([x for _ in a_list for x in range(nG)], dtype=np.int64)

    a_table = getattr(inst, "_ref_a_table", None)
    if a_table is None:
        # abstract A as a table over the enumerated values
        sz = len(a_list)
        a_prod = np.empty((sz, sz), dtype=np.int64)
        for i, a in enumerate(a_list):
            for j, b in enumerate(a_list):
                a_prod[i, j] = index_of_a[values.mul(a, b)]
        a_table = validate_table(a_prod)
        if isinstance(inst.a, UnitsOracle):
            a_table.residues = np.array(a_list, dtype=np.int64)
            a_table.modulus = inst.a.modulus

    action = inst.action
    if action is not None and action.kind == "callable":
        abstract = inst.a
        images = np.empty((nG, len(a_list)), dtype=np.int64)
        for g in range(nG):
            for idx in range(len(a_list)):
                img = abstract.decode(action.apply(g, abstract.encode(idx)))
                images[g, idx] = img
        action = ActionSpec.from_tables(images)

    embed = np.array([pair_index(a, 0) for a in a_list], dtype=np.int64)
    return table_extension(e_table, g_table, a_table, proj, embed=embed,
                           action=action, validate=validate)


# ---------------------------------------------------------------------------
# quadratic residuosity instances


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a | n) for odd n >= 1."""
    if n <= 0 or n % 2 == 0:
        raise NOutOfRange("Jacobi symbol needs odd positive n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


_EXHAUSTIVE_QR_CAP = 10 ** 6


def qr_ground_truth(n: int, y: int, factorization=None) -> bool:
    """Whether y is a quadratic residue mod n.

    Exhaustive enumeration of squares at desk scale; with the factorization
    of n supplied, an Euler-criterion test per prime power instead.
    """
    if n < 3:
        raise NOutOfRange("modulus must be at least 3")
    y %= n
    if math.gcd(y, n) != 1:
        raise NotAUnit(f"{y} is not a unit mod {n}")
    if factorization is None:
        if n > _EXHAUSTIVE_QR_CAP:
            raise NOutOfRange(
                f"exhaustive square enumeration capped at {_EXHAUSTIVE_QR_CAP}; "
                "supply the factorization"
            )
        for x in range(1, n):
            if x * x % n == y:
                return True
        return False
    pairs = factorization.pairs if hasattr(factorization, "pairs") else tuple(factorization)
    check = 1
    for p, e in pairs:
        check *= p ** e
    if check != n:
        raise NOutOfRange("supplied factorization does not multiply to n")
    for p, e in pairs:
        if p == 2:
            if e == 1:
                continue
            if e == 2 and y % 4 != 1:
                return False
            if e >= 3 and y % 8 != 1:
                return False
        else:
            if pow(y % p, (p - 1) // 2, p) != 1:
                return False
    return True


@dataclass
class QRInstance:
    """Two central extensions of Z_2 by Z_N^* encoding residuosity of y."""

    n: int
    y: int
    seed: int
    g_table: GroupTable
    a_oracle: UnitsOracle
    e1: ExtensionInstance
    e2: ExtensionInstance
    jacobi: int
    ground_truth: bool | None

    def serialize(self) -> str:
        return f"qr N={self.n} y={self.y} seed={self.seed:#018x}"


def make_qr_instance(n: int, y: int, seed: int, factorization=None,
                     gen_count: int | None = None) -> QRInstance:
    """Build the two extensions with f1(1,1) = y and f2(1,1) = 1.

    Ground truth is recorded only when it can be honestly computed: at desk
    scale by enumerating squares, or when the caller supplies the
    factorization of N.
    """
    if n < 3:
        raise NOutOfRange("modulus must be at least 3")
    y %= n
    if math.gcd(y, n) != 1:
        raise NotAUnit(f"{y} is not a unit mod {n}")
    g_table = GroupTable(np.array([[0, 1], [1, 0]], dtype=np.int64),
                         np.array([0, 1], dtype=np.int64))
    a = units_oracle(n, config.derive_seed(seed, "qr-a"), gen_count=gen_count)
    one = a.encode(1)
    f1 = Cochain2([[one, one], [one, a.encode(y)]])
    f2 = Cochain2([[one, one], [one, one]])
    e1 = build_extension(a, g_table, f1, None, config.derive_seed(seed, "qr-e1"))
    e2 = build_extension(a, g_table, f2, None, config.derive_seed(seed, "qr-e2"))
    truth = None
    if factorization is not None or n <= _EXHAUSTIVE_QR_CAP:
        truth = qr_ground_truth(n, y, factorization)
    return QRInstance(
        n=n, y=y, seed=seed, g_table=g_table, a_oracle=a,
        e1=e1, e2=e2,
        jacobi=jacobi_symbol(y, n) if n % 2 == 1 else 0,
        ground_truth=truth,
    )
