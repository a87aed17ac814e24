"""Classical abelian-group machinery behind the black-box algorithms.

Element order uses baby-step giant-step with an explicit bound; factoring is
trial division plus Pollard rho; discrete logs are per-prime-power with a
staggered digit lift so that every layer solves in the p-torsion subgroup.
Together these replace the period-finding, factoring and subgroup-size
subroutines that would otherwise need a quantum computer, at sqrt cost
instead of poly-log.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import config
from .errors import BoundExceeded, NotAbelian, NotInGroup, NOutOfRange, TooLarge
from .oracles import GroupOracle

# ---------------------------------------------------------------------------
# integer arithmetic: primality, factoring


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases, deterministic below 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, seed: int = 1) -> int:
    """A nontrivial factor of composite odd n."""
    while True:
        c = seed % n or 1
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        seed += 1


_TRIAL_LIMIT = 10 ** 6


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as sorted (prime, exponent) pairs."""

    pairs: tuple

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p ** e
        return out

    def primes(self):
        return [p for p, _ in self.pairs]

    def __iter__(self):
        return iter(self.pairs)


def factorize(n: int) -> Factorization:
    """Complete factorization; trial division to 10^6, then Pollard rho."""
    if n < 1:
        raise NOutOfRange("factorize needs n >= 1")
    counts: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    f = 5
    while f <= _TRIAL_LIMIT and f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                counts[p] = counts.get(p, 0) + 1
                n //= p
        f += 6
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return Factorization(tuple(sorted(counts.items())))


# ---------------------------------------------------------------------------
# order finding


def _key64(handle: bytes) -> int:
    out = 0
    for i in range(0, len(handle), 8):
        out ^= int.from_bytes(handle[i:i + 8], "big")
    return out


def element_order(g: bytes, oracle: GroupOracle, bound: int) -> int:
    """Least r >= 1 with g^r = identity, by baby-step giant-step up to bound.

    Cost is min(order, sqrt(bound)) group operations for the baby phase plus
    up to sqrt(bound) for the giant phase.  Raises BoundExceeded when the
    order exceeds the bound.
    """
    if bound < 1:
        raise BoundExceeded("order bound must be at least 1", bound=bound)
    if oracle.is_identity(g):
        return 1
    m = math.isqrt(bound - 1) + 1
    keys = np.empty(m, dtype=np.uint64)
    keys[0] = _key64(oracle.identity())
    x = oracle.identity()
    for j in range(1, m):
        x = oracle.compose(x, g)
        if oracle.is_identity(x):
            return j
        keys[j] = _key64(x)
    order_idx = np.argsort(keys, kind="stable")
    sorted_keys = keys[order_idx]
    gm = oracle.compose(x, g)  # g^m
    z = oracle.identity()
    for i in range(1, bound // m + 2):
        z = oracle.compose(z, gm)
        k = np.uint64(_key64(z))
        lo = int(np.searchsorted(sorted_keys, k, side="left"))
        hi = int(np.searchsorted(sorted_keys, k, side="right"))
        if hi > lo:
            js = sorted(int(order_idx[t]) for t in range(lo, hi))
            for j in reversed(js):
                r = i * m - j
                if r >= 1 and oracle.is_identity(oracle.power(g, r)):
                    return r
    raise BoundExceeded(f"element order exceeds bound {bound}", bound=bound)


def order_from_multiple(g: bytes, multiple: int, oracle: GroupOracle) -> int:
    """Exact order of g given a known multiple of it (g^multiple = identity)."""
    r = multiple
    for p, _ in factorize(multiple):
        while r % p == 0 and oracle.is_identity(oracle.power(g, r // p)):
            r //= p
    return r


def _orders_with_refinement(gens, oracle, bound):
    """Orders of each generator, sharing an accumulated exponent multiple.

    Only elements whose order survives division by the running lcm pay the
    sqrt(bound) baby-step giant-step price; in a fixed ambient group that is
    typically just the first generator.
    """
    orders = []
    lcm = 1
    for g in gens:
        if oracle.is_identity(g):
            orders.append(1)
            continue
        if lcm > 1:
            h = oracle.power(g, lcm)
            if oracle.is_identity(h):
                r = order_from_multiple(g, lcm, oracle)
            else:
                extra = element_order(h, oracle, bound)
                r = order_from_multiple(g, lcm * extra, oracle)
        else:
            r = element_order(g, oracle, bound)
        orders.append(r)
        lcm = math.lcm(lcm, r)
    return orders


def p_primary_split(gens, oracle: GroupOracle, bound: int | None = None):
    """Split generators into p-primary parts.

    For g of order r = prod p^j, the power g^(r / p^j) has order p^j and goes
    into bucket p; by the Chinese remainder theorem the union of the buckets
    generates the same group.
    """
    if bound is None:
        bound = oracle.order_bound() or config.order_cap()
    gens = list(gens)
    orders = _orders_with_refinement(gens, oracle, bound)
    buckets: dict[int, list[bytes]] = {}
    for g, r in zip(gens, orders):
        for p, j in factorize(r):
            q = r // p ** j
            buckets.setdefault(p, []).append(oracle.power(g, q))
    return buckets


# ---------------------------------------------------------------------------
# Smith normal form


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(mat):
    """Exact Smith normal form with transforms: U * M * V = S.

    S is diagonal with s1 | s2 | ..., U and V are unimodular.  The pivot is
    always the smallest-magnitude nonzero entry of the remaining submatrix,
    rows are cleared before columns, and ties break toward the lowest index,
    so the output is deterministic.
    """
    A = [[int(x) for x in row] for row in mat]
    r = len(A)
    c = len(A[0]) if r else 0
    U = _eye(r)
    V = _eye(c)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row_i += q * row_j
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, q):
        # col_i += q * col_j
        for row in A:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    t = 0
    limit = min(r, c)
    while t < limit:
        pivot = None
        for i in range(t, r):
            for j in range(t, c):
                a = A[i][j]
                if a and (pivot is None or abs(a) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            moved = False
            for i in range(r):
                if i != t and A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(i, t)
                        moved = True
                        break
            if moved:
                continue
            for j in range(c):
                if j != t and A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(j, t)
                        moved = True
                        break
            if moved:
                continue
            # pivot must divide the rest of the submatrix for the chain
            fix = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if A[i][j] % A[t][t]:
                        fix = j
                        break
                if fix is not None:
                    break
            if fix is None:
                break
            add_col(t, fix, 1)

        if A[t][t] < 0:
            add_row(t, t, -2)  # negate row t
        t += 1

    return A, U, V


def integer_determinant(mat) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    A = [[int(x) for x in row] for row in mat]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def invert_unimodular(U):
    """Inverse of a unimodular integer matrix (integral by assumption)."""
    n = len(U)
    M = [[Fraction(U[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[pivot] = M[pivot], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = M[i][j + n]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(x))
        out.append(row)
    return out


def solve_congruence(coeffs, moduli, target):
    """Solve sum_j x_j * coeffs[:, j] = target (mod moduli) over the integers.

    coeffs is an m x k integer matrix, moduli and target length-m vectors.
    Returns a length-k solution or None.
    """
    m = len(moduli)
    if m == 0:
        return []
    k = len(coeffs[0])
    full = [[int(coeffs[i][j]) for j in range(k)] + [moduli[i] if j == i else 0 for j in range(m)]
            for i in range(m)]
    S, U, V = smith_normal_form(full)
    rhs = [sum(U[i][j] * int(target[j]) for j in range(m)) for i in range(m)]
    w = [0] * (k + m)
    for i in range(m):
        s = S[i][i] if i < len(S) and i < len(S[i]) else 0
        if s == 0:
            if rhs[i] != 0:
                return None
        else:
            if rhs[i] % s:
                return None
            w[i] = rhs[i] // s
    z = [sum(V[i][j] * w[j] for j in range(k + m)) for i in range(k + m)]
    return z[:k]


# ---------------------------------------------------------------------------
# black-box abelian decomposition


class _TorsionSolver:
    """Discrete logs in the elementary abelian p-torsion of a basis.

    Solves w = sum y_j v_j with v_j independent of order p, by full table
    when p^t is small and by a meet-in-the-middle split otherwise.
    """

    def __init__(self, oracle, torsion_gens, p):
        self.oracle = oracle
        self.v = torsion_gens
        self.p = p
        t = len(torsion_gens)
        self.t = t
        self._table = None
        self._split = None
        if p ** t <= 65536:
            self._table = {}
            self._enumerate(0, oracle.identity(), [0] * t, self._table)
        else:
            s = 0
            size = 1
            while s < t and size * p <= math.isqrt(p ** t) + 1:
                size *= p
                s += 1
            s = max(s, 1)
            baby = {}
            self._enumerate_dims(range(s), oracle.identity(), [0] * t, baby)
            self._split = (s, baby)

    def _enumerate(self, j, acc, vec, table):
        if j == self.t:
            table.setdefault(acc, tuple(vec))
            return
        cur = acc
        for y in range(self.p):
            vec[j] = y
            self._enumerate(j + 1, cur, vec, table)
            if y + 1 < self.p:
                cur = self.oracle.compose(cur, self.v[j])
        vec[j] = 0

    def _enumerate_dims(self, dims, acc, vec, table):
        dims = list(dims)
        if not dims:
            table.setdefault(acc, tuple(vec))
            return
        j, rest = dims[0], dims[1:]
        cur = acc
        for y in range(self.p):
            vec[j] = y
            self._enumerate_dims(rest, cur, vec, table)
            if y + 1 < self.p:
                cur = self.oracle.compose(cur, self.v[j])
        vec[j] = 0

    def solve(self, w):
        if self.t == 0:
            return [] if self.oracle.is_identity(w) else None
        if self._table is not None:
            hit = self._table.get(w)
            return list(hit) if hit is not None else None
        s, baby = self._split
        # enumerate the complement dims, looking up w * (tail)^-1
        t = self.t
        tail_dims = list(range(s, t))
        result = [None]

        def walk(idx, acc, vec):
            if result[0] is not None:
                return
            if idx == len(tail_dims):
                probe = self.oracle.compose(w, self.oracle.invert(acc))
                hit = baby.get(probe)
                if hit is not None:
                    out = list(hit)
                    for d, y in zip(tail_dims, vec):
                        out[d] = y
                    result[0] = out
                return
            j = tail_dims[idx]
            cur = acc
            for y in range(self.p):
                walk(idx + 1, cur, vec + [y])
                if result[0] is not None:
                    return
                if y + 1 < self.p:
                    cur = self.oracle.compose(cur, self.v[j])

        walk(0, self.oracle.identity(), [])
        return result[0]


class _PBasis:
    """Independent basis of a p-subgroup, refined by SNF merges."""

    def __init__(self, p, oracle):
        self.p = p
        self.oracle = oracle
        self.elements: list[bytes] = []
        self.exps: list[int] = []       # orders p^exp
        self.exprs: list[list[int]] = []  # rows over the original generators
        self._solver = None

    def _torsion(self):
        if self._solver is None:
            p = self.p
            gens = [self.oracle.power(u, p ** (c - 1)) for u, c in zip(self.elements, self.exps)]
            self._solver = _TorsionSolver(self.oracle, gens, p)
        return self._solver

    def plog(self, h):
        """Exponent vector of h over the basis, or None if h is outside it.

        Staggered digit lift: component j starts contributing at layer
        e - c_j, so every layer's unknown lands in the p-torsion subgroup.
        """
        oracle, p = self.oracle, self.p
        t = len(self.elements)
        if t == 0:
            return [] if oracle.is_identity(h) else None
        if oracle.is_identity(h):
            return [0] * t
        e = max(self.exps)
        solver = self._torsion()
        x = [0] * t
        res = h
        for d in range(e):
            if oracle.is_identity(res):
                break
            w = oracle.power(res, p ** (e - 1 - d))
            y = solver.solve(w)
            if y is None:
                return None
            for j in range(t):
                active = self.exps[j] >= e - d
                if not active:
                    if y[j]:
                        return None
                    continue
                if y[j]:
                    shift = d - (e - self.exps[j])
                    x[j] += y[j] * p ** shift
                    res = oracle.compose(
                        res, oracle.invert(oracle.power(self.elements[j], y[j] * p ** shift))
                    )
        if not oracle.is_identity(res):
            return None
        return x

    def insert(self, h, c, expr):
        """Add an element of order p^c with its expression over the inputs."""
        oracle, p = self.oracle, self.p
        # minimal t with h^(p^t) inside the current span
        for t in range(c + 1):
            y = oracle.power(h, p ** t)
            x = self.plog(y)
            if x is not None:
                break
        if t == 0:
            return
        # relations over the tuple (basis..., h), as columns
        r = len(self.elements)
        cols = []
        for j in range(r):
            col = [0] * (r + 1)
            col[j] = p ** self.exps[j]
            cols.append(col)
        col = [-x[j] for j in range(r)] + [p ** t]
        cols.append(col)
        M = [[cols[j][i] for j in range(len(cols))] for i in range(r + 1)]
        S, U, _V = smith_normal_form(M)
        Uinv = invert_unimodular(U)
        tuple_elems = self.elements + [h]
        tuple_orders = [p ** cc for cc in self.exps] + [p ** c]
        tuple_exprs = self.exprs + [expr]
        new_elems, new_exps, new_exprs = [], [], []
        for i in range(r + 1):
            d = S[i][i] if i < len(S) and i < len(S[i]) else 0
            if d <= 1:
                continue
            parts = []
            expr_acc = [0] * len(expr)
            for j in range(r + 1):
                k = Uinv[j][i] % tuple_orders[j]
                if k:
                    parts.append(self.oracle.power(tuple_elems[j], k))
                for idx, v in enumerate(tuple_exprs[j]):
                    expr_acc[idx] += Uinv[j][i] * v
            handle = self.oracle.product(parts)
            exp = 0
            dd = d
            while dd % p == 0:
                dd //= p
                exp += 1
            if dd != 1:
                raise NotInGroup("non p-power invariant factor in p-group merge")
            new_elems.append(handle)
            new_exps.append(exp)
            new_exprs.append(expr_acc)
        order = sorted(range(len(new_elems)), key=lambda i: -new_exps[i])
        self.elements = [new_elems[i] for i in order]
        self.exps = [new_exps[i] for i in order]
        self.exprs = [new_exprs[i] for i in order]
        self._solver = None
        # sanity: claimed orders are exact
        for u, cc in zip(self.elements, self.exps):
            if not self.oracle.is_identity(self.oracle.power(u, p ** cc)):
                raise NotInGroup("basis element order too small after merge")
            if cc and self.oracle.is_identity(self.oracle.power(u, p ** (cc - 1))):
                raise NotInGroup("basis element order too large after merge")


class AbelianDecomposition:
    """Invariant-factor form of a finitely generated abelian black-box group.

    factors is the chain d1 | d2 | ... | dm; basis[i] has order factors[i];
    from_basis expresses each basis element over the input generators and
    to_basis (computed lazily) the input generators over the basis.
    """

    def __init__(self, oracle, gens, factors, basis, from_basis, prime_data):
        self.oracle = oracle
        self.gens = tuple(gens)
        self.factors = tuple(factors)
        self.basis = tuple(basis)
        self.from_basis = from_basis  # k x m matrix, column j for basis[j]
        self._prime_data = prime_data
        self._to_basis = None

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def to_basis(self):
        """m x k matrix: column i holds the coordinates of gens[i]."""
        if self._to_basis is None:
            cols = [coordinates(g, self) for g in self.gens]
            self._to_basis = [[cols[i][j] for i in range(len(cols))]
                              for j in range(len(self.factors))]
        return self._to_basis

    def serialize(self) -> str:
        head = "decomp: " + " ".join(str(d) for d in self.factors)
        lines = [head]
        for b in self.basis:
            lines.append("basis " + b.hex())
        return "\n".join(lines)


def decompose_abelian(gens, oracle: GroupOracle, order_bound: int | None = None,
                      commuting_checked: bool = False) -> AbelianDecomposition:
    """Decompose the subgroup generated by gens into invariant factors.

    The relation lattice of the generators is built per prime via order
    finding and discrete logs, refined by Smith normal form merges, and the
    p-primary pieces are recombined by CRT.  Raises NotAbelian (with the
    witness pair) if two generators fail to commute.
    """
    bound = order_bound or oracle.order_bound() or config.order_cap()
    gens = [g for g in gens]
    if not commuting_checked:
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                ab = oracle.compose(gens[i], gens[j])
                ba = oracle.compose(gens[j], gens[i])
                if not oracle.equal(ab, ba):
                    raise NotAbelian((gens[i], gens[j]))
    live = [(i, g) for i, g in enumerate(gens) if not oracle.is_identity(g)]
    k = len(gens)
    if not live:
        return AbelianDecomposition(oracle, gens, (), (), [[] for _ in range(k)], {})
    orders = _orders_with_refinement([g for _, g in live], oracle, bound)

    pbases: dict[int, _PBasis] = {}
    for (i, g), r in zip(live, orders):
        for p, j in factorize(r):
            q = r // p ** j
            h = oracle.power(g, q)
            expr = [0] * k
            expr[i] = q
            pbases.setdefault(p, _PBasis(p, oracle)).insert(h, j, expr)

    primes = sorted(pbases)
    m = max((len(pbases[p].elements) for p in primes), default=0)
    factors = []
    basis = []
    from_cols = []
    for slot in range(m):
        d = 1
        parts = []
        expr = [0] * k
        for p in primes:
            pb = pbases[p]
            if slot < len(pb.elements):
                d *= p ** pb.exps[slot]
                parts.append(pb.elements[slot])
                for idx, v in enumerate(pb.exprs[slot]):
                    expr[idx] += v
        factors.append(d)
        basis.append(oracle.product(parts))
        from_cols.append(expr)
    # slots were built largest-first; expose the ascending divisibility chain
    factors.reverse()
    basis.reverse()
    from_cols.reverse()
    from_basis = [[from_cols[j][i] for j in range(m)] for i in range(k)]

    prime_data = _build_prime_data(oracle, factors, basis)
    return AbelianDecomposition(oracle, gens, factors, basis, from_basis, prime_data)


def _build_prime_data(oracle, factors, basis):
    """Per-prime projections of the basis, used by coordinate solves."""
    if not factors:
        return {}
    exponent = factors[-1]
    data = {}
    for p, big_e in factorize(exponent):
        q = exponent // p ** big_e
        unit = pow(q, -1, p ** big_e) * q  # = 1 mod p^E, = 0 mod cofactor
        slots = []
        units = []
        exps = []
        for j, d in enumerate(factors):
            e = 0
            dd = d
            while dd % p == 0:
                dd //= p
                e += 1
            if e:
                slots.append(j)
                exps.append(e)
                units.append(oracle.power(basis[j], unit % exponent or exponent))
        pb = _PBasis(p, oracle)
        pb.elements = units
        pb.exps = exps
        pb.exprs = [[0]] * len(units)
        data[p] = (slots, pb, unit)
    return data


def coordinates(x: bytes, dec: AbelianDecomposition) -> list[int]:
    """Coordinates of x over the decomposition basis; unique in prod Z_di.

    Raises NotInGroup when x is not in the decomposed subgroup.
    """
    oracle = dec.oracle
    m = len(dec.factors)
    if m == 0:
        if oracle.is_identity(x):
            return []
        raise NotInGroup("element outside the trivial group")
    exponent = dec.exponent
    coords = [0] * m
    for p, (slots, pb, unit) in dec._prime_data.items():
        xp = oracle.power(x, unit % exponent or exponent)
        digits = pb.plog(xp)
        if digits is None:
            raise NotInGroup("element has no expression over the basis")
        for slot, e, val in zip(slots, pb.exps, digits):
            d = dec.factors[slot]
            pe = p ** e
            # CRT: coords[slot] = val mod p^e, 0 mod d / p^e
            q = d // pe
            coords[slot] = (coords[slot] + val * q * pow(q, -1, pe)) % d
    check = oracle.product(
        oracle.power(b, c) for b, c in zip(dec.basis, coords) if c
    )
    if not oracle.equal(check, x):
        raise NotInGroup("element has no expression over the basis")
    return coords


def from_coordinates(dec: AbelianDecomposition, vector) -> bytes:
    """Product of basis powers; entries are reduced mod the factor sizes."""
    parts = []
    for b, d, v in zip(dec.basis, dec.factors, vector):
        v = int(v) % d
        if v:
            parts.append(dec.oracle.power(b, v))
    return dec.oracle.product(parts)


def has_dth_root(a: bytes, d: int, dec: AbelianDecomposition):
    """Whether x^d = a is solvable; returns (found, witness handle or None).

    Per component the equation d*x = a_j mod n_j is solvable iff
    gcd(d, n_j) divides a_j; the witness is assembled by extended gcd.
    """
    if d < 1:
        raise NOutOfRange("root degree must be >= 1")
    coords = coordinates(a, dec)
    witness = []
    for a_j, n_j in zip(coords, dec.factors):
        g = math.gcd(d, n_j)
        if a_j % g:
            return False, None
        nj_red = n_j // g
        x = (a_j // g) * pow(d // g, -1, nj_red) % nj_red
        witness.append(x)
    return True, from_coordinates(dec, witness)


def subgroup_order(gens, oracle: GroupOracle, order_bound: int | None = None,
                   commuting_checked: bool = False) -> int:
    """Exact order of the abelian subgroup generated by gens."""
    return decompose_abelian(gens, oracle, order_bound, commuting_checked).order
