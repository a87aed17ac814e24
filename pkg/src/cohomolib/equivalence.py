"""The three extension-equivalence testers.

All reduce to deciding whether the difference of two extracted factor sets
is a coboundary:

  * table path: map everything into the regular permutation representation
    of the coefficient group, one copy per pair of G-elements, and answer
    by strong-generating-set membership;
  * black-box path for table G: compare the sizes of the coboundary
    subgroup with and without the difference adjoined, sizes coming from
    the abelian decomposition engine;
  * black-box path for abelian G: compare the power/commutator invariants
    of sections assembled over a fixed decomposition of G, with the d-th
    root test settling the power part.

Verdicts carry re-verifiable witnesses (a 1-cochain whose coboundary is the
difference, or the root witnesses) or a failing certificate.
"""

import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import config
from .abelian import (
    AbelianDecomposition,
    coordinates,
    decompose_abelian,
    has_dth_root,
    solve_congruence,
)
from .cohomology import (
    ActionSpec,
    Cochain1,
    Cochain2,
    OracleCoeffs,
    action_from_section,
    b2_generators,
    choose_representatives_sampled,
    choose_representatives_table,
    cochain2_eq,
    cochain2_is_zero,
    cochain2_sub,
    coboundary,
    coeff_ops,
    extract_factor_set,
    is_cocycle,
)
from .errors import (
    BudgetExhausted,
    CohomolibError,
    InstanceMismatch,
    NotAbelian,
    NotCentral,
    TooLarge,
)
from .extensions import ExtensionInstance
from .oracles import GroupOracle, ProductOracle
from .permgroup import Permutation, membership, schreier_sims, sgs_order
from .tables import GroupTable, table_generating_set


@dataclass
class EquivalenceVerdict:
    equivalent: bool
    witness: dict | None = None
    certificate: dict | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.equivalent

    def serialize(self) -> str:
        return "verdict: " + ("equivalent" if self.equivalent else "inequivalent")


@dataclass
class StructuralInvariants:
    """Power and commutator data of a section over a fixed basis of G.

    alpha[i] = s_i^{d_i} and beta[(i, j)] = [s_i, s_j^{-1}] for i < j, all
    translated into the abstract coefficient group.
    """

    rank: int
    factors: tuple
    alpha: list
    beta: dict
    reps: list


def _require_same_problem(e1: ExtensionInstance, e2: ExtensionInstance):
    if isinstance(e1.g, GroupTable) and isinstance(e2.g, GroupTable):
        if e1.g != e2.g:
            raise InstanceMismatch("instances have different quotient groups")
    elif e1.g is not e2.g:
        raise InstanceMismatch("instances have different quotient groups")
    if isinstance(e1.a, GroupTable) and isinstance(e2.a, GroupTable):
        if e1.a != e2.a:
            raise InstanceMismatch("instances have different coefficient groups")
    elif e1.a is not e2.a:
        raise InstanceMismatch("instances must share one coefficient oracle")
    if e1.is_central != e2.is_central:
        raise InstanceMismatch("central and non-central instances cannot be compared")
    a1, a2 = e1.action, e2.action
    if a1 is not None and a2 is not None and a1.kind == "table" and a2.kind == "table":
        if not np.array_equal(a1.images, a2.images):
            raise InstanceMismatch("instances declare different actions")


# ---------------------------------------------------------------------------
# table path (multiplication tables, permutation membership)


def cochain_to_perm(a_table: GroupTable, f: Cochain2) -> Permutation:
    """Regular-representation image of a 2-cochain on |A| * |G|^2 points.

    Point (pair p, a) at index p * |A| + a is sent to p * |A| + f_p + a, a
    left translation of each labelled copy of A.
    """
    arr = f.as_array().reshape(-1)
    n_a = a_table.order
    blocks = a_table.product[arr]  # (|G|^2, |A|)
    offsets = (np.arange(arr.shape[0], dtype=np.int64) * n_a)[:, None]
    return Permutation((blocks + offsets).reshape(-1))


class TableEquivalenceTester:
    """Membership tester for one (G, A, action) triple, reusable across pairs.

    The strong generating set for the coboundary group is built once; each
    test then extracts factor sets, subtracts, and sifts one permutation.
    By default the full deterministic generating set of A is used, so the
    answer is exact; pass gen_count to sample instead (one-sided error).
    """

    def __init__(self, g_table: GroupTable, a_table: GroupTable,
                 act: ActionSpec | None = None, seed: int = 0,
                 gen_count: int | None = None):
        if not a_table.is_abelian():
            raise NotAbelian((0, 1))
        self.g = g_table
        self.a = a_table
        self.act = act if act is not None else ActionSpec.trivial()
        degree = a_table.order * g_table.order ** 2
        if degree > config.points_cap():
            raise TooLarge(
                f"permutation degree {degree} exceeds cap {config.points_cap()}")
        if gen_count is None:
            a_gens = table_generating_set(a_table)
        else:
            rng = random.Random(config.derive_seed(seed, "table-tester-gens"))
            a_gens = [rng.randrange(1, a_table.order) for _ in range(gen_count)]
        self.labels = []
        cochains = b2_generators(g_table, a_table, a_gens, self.act)
        for g in range(1, g_table.order):
            for a in a_gens:
                self.labels.append((g, a))
        perms = [cochain_to_perm(a_table, f) for f in cochains]
        self.sgs = schreier_sims(perms, degree)
        self.size_b2 = sgs_order(self.sgs)

    def _check_instance(self, inst: ExtensionInstance):
        if not inst.is_table:
            raise InstanceMismatch("the table path needs table-backed instances")
        if inst.g != self.g or not isinstance(inst.a, GroupTable) or inst.a != self.a:
            raise InstanceMismatch("instance groups differ from the tester's")
        inst_act = inst.action if inst.action is not None else ActionSpec.trivial()
        if inst_act.is_trivial() != self.act.is_trivial():
            raise InstanceMismatch("instance action differs from the tester's")
        if not self.act.is_trivial() and not np.array_equal(inst_act.images, self.act.images):
            raise InstanceMismatch("instance action differs from the tester's")

    def test(self, e1: ExtensionInstance, e2: ExtensionInstance, seed: int = 0) -> EquivalenceVerdict:
        self._check_instance(e1)
        self._check_instance(e2)
        _require_same_problem(e1, e2)
        ops = coeff_ops(self.a)
        s1 = choose_representatives_table(e1, config.derive_seed(seed, "t1"))
        s2 = choose_representatives_table(e2, config.derive_seed(seed, "t2"))
        f1 = extract_factor_set(e1, s1)
        f2 = extract_factor_set(e2, s2)
        diff = cochain2_sub(f1, f2, ops)
        result = membership(self.sgs, cochain_to_perm(self.a, diff))
        details = {"seed": seed, "size_b2": self.size_b2, "path": "table"}
        if result:
            witness = self._witness_from_word(result.word)
            check = coboundary(witness["cochain"], self.g, self.a, self.act)
            if not cochain2_eq(check, diff, ops):
                raise CohomolibError("membership word did not re-verify as a witness")
            return EquivalenceVerdict(True, witness=witness, details=details)
        certificate = {"kind": "sift-residue", "residue": result.residue}
        return EquivalenceVerdict(False, certificate=certificate, details=details)

    def _witness_from_word(self, word) -> dict:
        ops = coeff_ops(self.a)
        values = [ops.zero] * self.g.order
        for idx, sign in word:
            g, a = self.labels[idx]
            values[g] = ops.add(values[g], a if sign > 0 else ops.neg(a))
        return {"kind": "coboundary", "cochain": Cochain1(values)}


def test_equiv_table(e1: ExtensionInstance, e2: ExtensionInstance,
                     g_table: GroupTable, a_table: GroupTable,
                     act: ActionSpec | None = None, seed: int = 0) -> EquivalenceVerdict:
    """One-shot table-path equivalence test (builds the tester afresh)."""
    tester = TableEquivalenceTester(g_table, a_table, act, seed)
    return tester.test(e1, e2, seed)


# ---------------------------------------------------------------------------
# black-box path, G by table


def _free_pairs(n: int):
    return [(x, y) for x in range(1, n) for y in range(1, n)]


def _cochain_to_product_handle(f: Cochain2, pairs) -> bytes:
    return b"".join(f.value(x, y) for x, y in pairs)


def test_equiv_bbox_smallG(e1: ExtensionInstance, e2: ExtensionInstance,
                           seed: int = 0, order_bound: int | None = None,
                           section_budget: int | None = None) -> EquivalenceVerdict:
    """Equivalence via subgroup sizes in the componentwise product of A.

    Sections are sampled, factor sets extracted, and the coboundary group's
    generating set is adjoined the difference; the extensions are
    equivalent iff the two subgroup sizes agree.  Works for non-central
    instances too, where the action (conjugation through a section) enters
    the pushed-forward generating set.
    """
    _require_same_problem(e1, e2)
    g_table = e1.g
    if not isinstance(g_table, GroupTable):
        raise InstanceMismatch("this path needs G as a multiplication table")
    a_oracle = e1.a
    if not isinstance(a_oracle, GroupOracle):
        raise InstanceMismatch("this path needs A as a black-box oracle")
    n = g_table.order
    details = {"seed": seed, "path": "bbox-small-g"}
    if n == 1:
        return EquivalenceVerdict(
            True, witness={"kind": "coboundary", "cochain": Cochain1([a_oracle.identity()])},
            details=details)
    a_gens = a_oracle.generators()
    for i in range(len(a_gens)):
        for j in range(i + 1, len(a_gens)):
            xy = a_oracle.compose(a_gens[i], a_gens[j])
            yx = a_oracle.compose(a_gens[j], a_gens[i])
            if not a_oracle.equal(xy, yx):
                raise NotAbelian((a_gens[i], a_gens[j]))
    bound = order_bound or a_oracle.order_bound() or config.order_cap()

    s1 = choose_representatives_sampled(e1, config.derive_seed(seed, "b1"), section_budget)
    s2 = choose_representatives_sampled(e2, config.derive_seed(seed, "b2"), section_budget)
    f1 = extract_factor_set(e1, s1)
    f2 = extract_factor_set(e2, s2)
    ops = OracleCoeffs(a_oracle)
    diff = cochain2_sub(f1, f2, ops)
    act = ActionSpec.trivial() if e1.is_central else action_from_section(e1, s1)

    pairs = _free_pairs(n)
    c2 = ProductOracle(a_oracle, len(pairs))
    cochains = b2_generators(g_table, a_oracle, a_gens, act)
    labels = [(g, a) for g in range(1, n) for a in a_gens]
    gen_handles = [_cochain_to_product_handle(f, pairs) for f in cochains]
    h = _cochain_to_product_handle(diff, pairs)

    dec_b = decompose_abelian(gen_handles, c2, order_bound=bound, commuting_checked=True)
    dec_bh = decompose_abelian(gen_handles + [h], c2, order_bound=bound, commuting_checked=True)
    details.update(size_b2=dec_b.order, size_with_diff=dec_bh.order,
                   generators=len(gen_handles))
    if dec_b.order != dec_bh.order:
        return EquivalenceVerdict(
            False,
            certificate={"kind": "subgroup-size", "size_b2": dec_b.order,
                         "size_with_diff": dec_bh.order},
            details=details)

    coords = coordinates(h, dec_b)
    exps = [sum(dec_b.from_basis[i][j] * coords[j] for j in range(dec_b.rank))
            for i in range(len(gen_handles))]
    values = [ops.zero] * n
    for (g, a), k in zip(labels, exps):
        if k:
            values[g] = ops.add(values[g], a_oracle.power(a, k))
    witness_cochain = Cochain1(values)
    check = coboundary(witness_cochain, g_table, a_oracle, act)
    if not cochain2_eq(check, diff, ops):
        raise CohomolibError("coordinate word did not re-verify as a witness")
    return EquivalenceVerdict(
        True, witness={"kind": "coboundary", "cochain": witness_cochain}, details=details)


# ---------------------------------------------------------------------------
# black-box path, abelian G


def structural_invariants(inst: ExtensionInstance, dec_g: AbelianDecomposition,
                          seed: int, budget: int | None = None) -> StructuralInvariants:
    """Compute alpha_i = s_i^{d_i} and beta_{ij} = [s_i, s_j^{-1}].

    Representatives s_i of the decomposition basis of G are assembled from
    random E-samples: the sampled projections are expressed in basis
    coordinates and an integer congruence solve yields exponents whose
    E-product projects onto each basis element.
    """
    if not inst.is_central:
        raise NotCentral("structural invariants require a central instance")
    oracle = inst.e
    rng = random.Random(config.derive_seed(seed, "invariants"))
    # sampled centrality check
    for a in inst.a_gens[:4]:
        for _ in range(4):
            x = oracle.sample(rng)
            if not oracle.equal(oracle.compose(a, x), oracle.compose(x, a)):
                raise NotCentral("embedded A fails to commute with a sample")
    m = dec_g.rank
    if m == 0:
        return StructuralInvariants(0, (), [], {}, [])
    factors = dec_g.factors
    exponent = dec_g.exponent
    order_g = dec_g.order
    if budget is None:
        budget = config.SAMPLE_MULTIPLIER * max(1, math.ceil(math.log2(max(2, order_g)))) + m

    reps = None
    for attempt in range(5):
        k = budget * (attempt + 1)
        samples = [oracle.sample(rng) for _ in range(k)]
        cols = [coordinates(inst.project_handle(t), dec_g) for t in samples]
        matrix = [[cols[j][i] for j in range(k)] for i in range(m)]
        solutions = []
        for i in range(m):
            target = [1 if r == i else 0 for r in range(m)]
            x = solve_congruence(matrix, list(factors), target)
            if x is None:
                solutions = None
                break
            solutions.append(x)
        if solutions is None:
            continue
        reps = []
        for x in solutions:
            parts = [oracle.power(t, int(e) % exponent)
                     for t, e in zip(samples, x) if int(e) % exponent]
            reps.append(oracle.product(parts))
        break
    if reps is None:
        raise BudgetExhausted(
            "sampled projections never generated G", missing=list(range(m)))

    alpha = [inst.restrict_a(oracle.power(s, d)) for s, d in zip(reps, factors)]
    beta = {}
    for i in range(m):
        for j in range(i + 1, m):
            si, sj = reps[i], reps[j]
            comm = oracle.compose(
                oracle.compose(si, oracle.invert(sj)),
                oracle.compose(oracle.invert(si), sj))
            beta[(i, j)] = inst.restrict_a(comm)
    return StructuralInvariants(m, factors, alpha, beta, reps)


def test_equiv_bbox_abelianG(e1: ExtensionInstance, e2: ExtensionInstance,
                             seed: int = 0, order_bound: int | None = None,
                             dec_g: AbelianDecomposition | None = None,
                             dec_a: AbelianDecomposition | None = None,
                             budget: int | None = None) -> EquivalenceVerdict:
    """Equivalence of central extensions with G abelian, via alpha/beta data.

    G is decomposed once and shared; the verdict is equivalent iff all
    commutator invariants agree and every alpha quotient has a d_i-th root,
    tested per component of the decomposition of A.
    """
    _require_same_problem(e1, e2)
    if not (e1.is_central and e2.is_central):
        raise NotCentral("this path is proved for central extensions only")
    g_oracle = e1.g_as_oracle()
    if e2.g_as_oracle() is not g_oracle:
        raise InstanceMismatch("instances must share one G oracle")
    a_oracle = e1.a
    details = {"seed": seed, "path": "bbox-abelian-g"}
    if dec_g is None:
        dec_g = decompose_abelian(g_oracle.generators(), g_oracle,
                                  order_bound=g_oracle.order_bound())
    inv1 = structural_invariants(e1, dec_g, config.derive_seed(seed, "inv1"), budget)
    inv2 = structural_invariants(e2, dec_g, config.derive_seed(seed, "inv2"), budget)
    details["rank"] = dec_g.rank
    ops = OracleCoeffs(a_oracle)
    for key in inv1.beta:
        if not ops.eq(inv1.beta[key], inv2.beta[key]):
            return EquivalenceVerdict(
                False, certificate={"kind": "beta-mismatch", "pair": key}, details=details)
    if dec_a is None:
        bound = order_bound or a_oracle.order_bound() or config.order_cap()
        dec_a = decompose_abelian(a_oracle.generators(), a_oracle, order_bound=bound)
    roots, quotients = [], []
    for i, d in enumerate(inv1.factors):
        q = ops.sub(inv2.alpha[i], inv1.alpha[i])
        found, witness = has_dth_root(q, d, dec_a)
        if not found:
            return EquivalenceVerdict(
                False, certificate={"kind": "alpha-no-root", "index": i, "degree": d},
                details=details)
        roots.append(witness)
        quotients.append(q)
    witness = {"kind": "roots", "roots": roots, "quotients": quotients,
               "degrees": list(inv1.factors)}
    return EquivalenceVerdict(True, witness=witness, details=details)


# ---------------------------------------------------------------------------
# witness re-verification


def verify_witness(verdict: EquivalenceVerdict, f_diff: Cochain2 | None,
                   g_table: GroupTable | None, a_group,
                   act: ActionSpec | None = None) -> bool:
    """Re-check a verdict's witness from scratch.

    Coboundary witnesses are re-differentiated and compared pointwise with
    the factor-set difference; root witnesses are re-powered against the
    recorded alpha quotients.
    """
    if verdict.witness is None:
        return False
    kind = verdict.witness.get("kind")
    if kind == "coboundary":
        ops = coeff_ops(a_group)
        act = act if act is not None else ActionSpec.trivial()
        check = coboundary(verdict.witness["cochain"], g_table, a_group, act)
        return cochain2_eq(check, f_diff, ops)
    if kind == "roots":
        oracle = a_group
        for root, q, d in zip(verdict.witness["roots"], verdict.witness["quotients"],
                              verdict.witness["degrees"]):
            if not oracle.equal(oracle.power(root, d), q):
                return False
        return True
    return False
