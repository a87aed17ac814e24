"""Extension instances: a group E with distinguished A and quotient map to G.

An instance packages the whole short exact sequence: the embedding of A
into E and the projection onto G are part of the data, which is what makes
factor sets from two independently encoded extensions comparable inside the
one abstract coefficient group A.

Two modes:
  table mode: elements of E are indices; carries a projection array, an
    embedding array for A, and index-level multiplication (a full table or
    a formula over pairs).
  black-box mode: E is a GroupOracle; projection, embedding and restriction
    are capabilities over handles.
"""

import random

import numpy as np

from . import config
from .cohomology import ActionSpec
from .errors import InstanceMismatch, NOutOfRange, TooLarge, ValueOutsideA
from .oracles import EncodedOracle, GroupOracle, wrap_as_oracle
from .tables import GroupTable


class ExtensionInstance:
    def __init__(self, *, g, a, action=None,
                 e=None, a_gens=None, project=None, project_handle=None,
                 embed_a=None, restrict_a=None, g_oracle=None,
                 e_order=None, e_mul=None, e_inv=None, proj=None, embed=None,
                 e_table=None):
        self.g = g
        self.a = a
        self.action = action
        # black-box fields
        self.e = e
        self.a_gens = list(a_gens) if a_gens is not None else None
        self.project = project
        self.project_handle = project_handle
        self.embed_a = embed_a
        self.restrict_a = restrict_a
        self.g_oracle = g_oracle
        # table fields
        self.e_order = e_order
        self.e_mul = e_mul
        self.e_inv = e_inv
        self.proj = proj
        self.embed = embed
        self.e_table = e_table
        self._embed_inv = None

    @property
    def is_table(self) -> bool:
        return self.proj is not None

    @property
    def is_central(self) -> bool:
        return self.action is None or self.action.is_trivial()

    def embed_inverse(self) -> dict:
        """E-index -> A-index over the embedded copy (table mode)."""
        if self._embed_inv is None:
            self._embed_inv = {int(e): a for a, e in enumerate(self.embed)}
        return self._embed_inv

    def g_as_oracle(self) -> GroupOracle:
        if self.g_oracle is not None:
            return self.g_oracle
        if isinstance(self.g, GroupOracle):
            return self.g
        raise NOutOfRange("instance has no oracle presentation of G")


def table_extension(e_table: GroupTable, g_table: GroupTable, a_table: GroupTable,
                    proj, embed=None, action: ActionSpec | None = None,
                    validate: bool = True) -> ExtensionInstance:
    """Build a table-mode instance from an explicit E table and projection.

    proj[e] is the G-element of the coset of e.  embed[a] is the E-element
    representing a; when omitted, the kernel of proj sorted by E-index must
    match A index-by-index (the layout realized extensions use).
    """
    proj = np.asarray(proj, dtype=np.int64)
    if proj.shape != (e_table.order,):
        raise InstanceMismatch("projection array must cover E")
    if embed is None:
        kernel = sorted(int(x) for x in np.nonzero(proj == 0)[0])
        if len(kernel) != a_table.order:
            raise InstanceMismatch("kernel size differs from |A|")
        embed = np.asarray(kernel, dtype=np.int64)
    else:
        embed = np.asarray(embed, dtype=np.int64)
    inst = ExtensionInstance(
        g=g_table, a=a_table, action=action,
        e_order=e_table.order, e_mul=e_table.mul, e_inv=e_table.inv,
        proj=proj, embed=embed, e_table=e_table,
    )
    if validate:
        validate_instance(inst)
    return inst


def validate_instance(inst: ExtensionInstance, cap: int | None = None):
    """Exhaustive structural checks on a table-mode instance.

    Verifies that the projection is a surjective homomorphism, that the
    embedding is an injective homomorphism picturing A onto the kernel,
    that the central flag is sound, and that a declared action matches
    conjugation by representatives.
    """
    if not inst.is_table:
        raise NOutOfRange("only table-mode instances validate exhaustively")
    cap = cap or config.table_cap()
    n_e = inst.e_order
    if n_e > cap:
        raise TooLarge(f"|E| = {n_e} exceeds validation cap {cap}")
    g_table, a_table = inst.g, inst.a
    proj = inst.proj
    if set(int(x) for x in proj) != set(range(g_table.order)):
        raise InstanceMismatch("projection is not surjective")
    if int(proj[0]) != 0:
        raise InstanceMismatch("identity must project to the identity")
    for i in range(n_e):
        for j in range(n_e):
            if int(proj[inst.e_mul(i, j)]) != g_table.mul(int(proj[i]), int(proj[j])):
                raise InstanceMismatch(f"projection is not a homomorphism at ({i},{j})")
    embed = inst.embed
    if len(set(int(x) for x in embed)) != a_table.order:
        raise InstanceMismatch("embedding is not injective")
    kernel = set(int(x) for x in np.nonzero(proj == 0)[0])
    if set(int(x) for x in embed) != kernel:
        raise InstanceMismatch("embedded A differs from the projection kernel")
    if int(embed[0]) != 0:
        raise InstanceMismatch("embedding must send identity to identity")
    for x in range(a_table.order):
        for y in range(a_table.order):
            if inst.e_mul(int(embed[x]), int(embed[y])) != int(embed[a_table.mul(x, y)]):
                raise InstanceMismatch("embedding is not a homomorphism")
    if inst.is_central:
        for a in embed:
            a = int(a)
            for e_elt in range(n_e):
                if inst.e_mul(a, e_elt) != inst.e_mul(e_elt, a):
                    raise InstanceMismatch(
                        f"A is not central: [{a}, {e_elt}] is nontrivial"
                    )
    else:
        act = inst.action
        inv_embed = inst.embed_inverse()
        for e_elt in range(n_e):
            gval = int(proj[e_elt])
            e_inv = inst.e_inv(e_elt)
            for a in range(a_table.order):
                conj = inst.e_mul(inst.e_mul(e_elt, int(embed[a])), e_inv)
                got = inv_embed.get(conj)
                if got is None or got != act.apply(gval, a):
                    raise InstanceMismatch(
                        f"declared action disagrees with conjugation at g={gval}, a={a}"
                    )


def check_projection_multiplicative(inst: ExtensionInstance, seed: int, trials: int = 64) -> bool:
    """Sampled check that project(e1 e2) = project(e1) project(e2) (bbox mode)."""
    rng = random.Random(config.derive_seed(seed, "proj-check"))
    oracle = inst.e
    g_table = inst.g
    for _ in range(trials):
        x, y = oracle.sample(rng), oracle.sample(rng)
        lhs = inst.project(oracle.compose(x, y))
        rhs = g_table.mul(int(inst.project(x)), int(inst.project(y)))
        if int(lhs) != rhs:
            return False
    return True


def check_centrality(inst: ExtensionInstance, seed: int, trials: int = 32) -> bool:
    """Sampled commutator test of the embedded A against E (bbox mode)."""
    rng = random.Random(config.derive_seed(seed, "central-check"))
    oracle = inst.e
    for a in inst.a_gens[: max(4, trials // 8)]:
        for _ in range(8):
            x = oracle.sample(rng)
            lhs = oracle.compose(a, x)
            rhs = oracle.compose(x, a)
            if not oracle.equal(lhs, rhs):
                return False
    return True


def oracle_extension_of_table_instance(inst: ExtensionInstance, seed: int,
                                       a_oracle: GroupOracle | None = None,
                                       g_oracle: GroupOracle | None = None) -> ExtensionInstance:
    """Re-present a table-mode instance as a black-box one (fresh encoding).

    Pass a shared a_oracle (and g_oracle) when re-presenting two instances
    of the same extension problem, so their factor sets stay comparable.
    """
    if not inst.is_table:
        raise NOutOfRange("expected a table-mode instance")
    if inst.e_table is None:
        raise NOutOfRange("instance carries no materialized E table")
    e_oracle = wrap_as_oracle(inst.e_table, config.derive_seed(seed, "e-wrap"))
    if a_oracle is None:
        a_oracle = inst.a if isinstance(inst.a, GroupOracle) else wrap_as_oracle(
            inst.a, config.derive_seed(seed, "a-wrap"))
    embed = inst.embed

    def project(h):
        return int(inst.proj[e_oracle.decode(h)])

    def embed_a(a_handle):
        return e_oracle.encode(int(embed[a_oracle.decode(a_handle)]))

    def restrict_a(e_handle):
        idx = e_oracle.decode(e_handle)
        a_idx = inst.embed_inverse().get(idx)
        if a_idx is None:
            raise ValueOutsideA("element is outside the embedded copy of A")
        return a_oracle.encode(a_idx)

    a_gens = [e_oracle.encode(int(embed[a_oracle.decode(h)])) for h in a_oracle.generators()]
    if g_oracle is None and isinstance(inst.g, GroupTable):
        g_oracle = wrap_as_oracle(inst.g, config.derive_seed(seed, "g-wrap"))

    action = inst.action
    if action is not None and action.kind == "table":
        images = action.images

        def act_fn(g, a_handle):
            return a_oracle.encode(int(images[g, a_oracle.decode(a_handle)]))

        action = ActionSpec.from_callable(act_fn)

    def project_handle(h):
        return g_oracle.encode(project(h))

    return ExtensionInstance(
        g=inst.g, a=a_oracle, action=action,
        e=e_oracle, a_gens=a_gens, project=project,
        project_handle=project_handle if g_oracle is not None else None,
        embed_a=embed_a, restrict_a=restrict_a, g_oracle=g_oracle,
    )
