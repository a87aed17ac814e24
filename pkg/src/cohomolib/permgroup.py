"""Permutation groups: strong generating sets, order, membership.

Deterministic Schreier-Sims with explicitly stored transversals.  Products
compose left to right: (p * q)(x) = q[p[x]].  Membership sifts also report a
word over the original generators, which callers use to reconstruct
preimages under homomorphisms (e.g. a coboundary witness).
"""

import numpy as np

from .errors import DegreeMismatch


class Permutation:
    """A bijection of [0, n), stored as its image array."""

    __slots__ = ("image",)

    def __init__(self, image):
        self.image = np.asarray(image, dtype=np.int64)

    @property
    def degree(self) -> int:
        return int(self.image.shape[0])

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int64))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        image = np.arange(n, dtype=np.int64)
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                image[a] = b
            if cycle:
                image[cycle[-1]] = cycle[0]
        return cls(image)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeMismatch("cannot compose permutations of different degree")
        return Permutation(other.image[self.image])

    def inv(self) -> "Permutation":
        out = np.empty_like(self.image)
        out[self.image] = np.arange(self.degree, dtype=np.int64)
        return Permutation(out)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.image, np.arange(self.degree)))

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self.image, other.image)

    def __hash__(self):
        return hash(self.image.tobytes())

    def __call__(self, point: int) -> int:
        return int(self.image[point])

    def __repr__(self):
        return f"Permutation({list(self.image)})"


def _is_id(img: np.ndarray) -> bool:
    return bool(np.array_equal(img, np.arange(img.shape[0])))


def _inv(img: np.ndarray) -> np.ndarray:
    out = np.empty_like(img)
    out[img] = np.arange(img.shape[0], dtype=np.int64)
    return out


def _invert_word(word):
    return tuple((idx, -sign) for idx, sign in reversed(word))


class _Level:
    """One stabilizer level: a base point, level generators, a transversal.

    transversal[b] = (rep image with rep(base) = b, parent point, gen slot,
    sign); words over the original input generators are reconstructed by
    walking parent links.
    """

    __slots__ = ("base", "gens", "transversal", "done")

    def __init__(self, base: int, degree: int):
        self.base = base
        self.gens = []  # list of (image, inverse image, word over original gens)
        self.transversal = {base: (np.arange(degree, dtype=np.int64), None, None, 0)}
        self.done = set()  # processed (gen slot, orbit point) pairs

    def extend_orbit(self):
        queue = list(self.transversal.keys())
        while queue:
            a = queue.pop(0)
            rep = self.transversal[a][0]
            for slot, (img, inv_img, _w) in enumerate(self.gens):
                for sign, action in ((1, img), (-1, inv_img)):
                    b = int(action[a])
                    if b not in self.transversal:
                        self.transversal[b] = (action[rep], a, slot, sign)
                        queue.append(b)

    def rep_word(self, point: int):
        parts = []
        while True:
            _, parent, slot, sign = self.transversal[point]
            if parent is None:
                break
            word = self.gens[slot][2]
            parts.append(word if sign > 0 else _invert_word(word))
            point = parent
        parts.reverse()
        out = []
        for p in parts:
            out.extend(p)
        return tuple(out)


class StrongGeneratingSet:
    """Base-and-chain data produced by schreier_sims; immutable once built."""

    def __init__(self, degree: int):
        self.degree = degree
        self.levels: list[_Level] = []

    @property
    def base(self):
        return [level.base for level in self.levels]

    def order(self) -> int:
        n = 1
        for level in self.levels:
            n *= len(level.transversal)
        return n

    def sift(self, img: np.ndarray, want_word: bool = False):
        """Reduce img through the chain.

        Returns (residue image, level reached, word) where word is the
        factorization of img over the original generators when the residue
        is the identity and want_word is set, else None.
        """
        r = img
        used = []
        for i, level in enumerate(self.levels):
            b = int(r[level.base])
            if b == level.base:
                continue
            if b not in level.transversal:
                return r, i, None
            rep = level.transversal[b][0]
            if want_word:
                used.append((level, b))
            r = _inv(rep)[r]
        word = None
        if want_word and _is_id(r):
            parts = [level.rep_word(b) for level, b in reversed(used)]
            word = tuple(x for p in parts for x in p)
        return r, len(self.levels), word

    def contains(self, img: np.ndarray) -> bool:
        r, _, _ = self.sift(img)
        return _is_id(r)

    # -- construction ------------------------------------------------------

    def _close(self, i: int):
        """Sift every unprocessed Schreier generator of level i into the tail.

        Insertions land strictly below level i, so this level's orbit and
        representatives stay fixed while closing.
        """
        level = self.levels[i]
        while True:
            todo = [
                (slot, pt)
                for slot in range(len(level.gens))
                for pt in sorted(level.transversal)
                if (slot, pt) not in level.done
            ]
            if not todo:
                return
            for slot, pt in todo:
                level.done.add((slot, pt))
                g_img, _, g_word = level.gens[slot]
                rep = level.transversal[pt][0]
                target = int(g_img[pt])
                rep2 = level.transversal[target][0]
                # Schreier generator rep * g * rep2^{-1} fixes the base point
                s_img = _inv(rep2)[g_img[rep]]
                if _is_id(s_img):
                    continue
                s_word = (
                    level.rep_word(pt)
                    + g_word
                    + _invert_word(level.rep_word(target))
                )
                _Chain(self, i + 1).insert(s_img, s_word)


class _Chain:
    """View of the chain starting at a given level, for recursive insertion."""

    def __init__(self, sgs: StrongGeneratingSet, start: int):
        self.sgs = sgs
        self.start = start

    def insert(self, img, word):
        sgs = self.sgs
        r = img
        rword = list(word)
        i = self.start
        while i < len(sgs.levels):
            level = sgs.levels[i]
            b = int(r[level.base])
            if b == level.base:
                i += 1
                continue
            if b not in level.transversal:
                break
            rep = level.transversal[b][0]
            rword.extend(_invert_word(level.rep_word(b)))
            r = _inv(rep)[r]
            i += 1
        if _is_id(r):
            return
        if i == len(sgs.levels):
            moved = int(np.nonzero(r != np.arange(sgs.degree))[0][0])
            sgs.levels.append(_Level(moved, sgs.degree))
        level = sgs.levels[i]
        level.gens.append((r, _inv(r), tuple(rword)))
        level.extend_orbit()
        sgs._close(i)


def schreier_sims(gens, degree: int) -> StrongGeneratingSet:
    """Build a strong generating set; deterministic given the input order."""
    sgs = StrongGeneratingSet(degree)
    for idx, g in enumerate(gens):
        img = g.image if isinstance(g, Permutation) else np.asarray(g, dtype=np.int64)
        if img.shape[0] != degree:
            raise DegreeMismatch(f"generator {idx} has degree {img.shape[0]}, expected {degree}")
        if _is_id(img):
            continue
        _Chain(sgs, 0).insert(img, ((idx, 1),))
    return sgs


def sgs_order(sgs: StrongGeneratingSet) -> int:
    return sgs.order()


class MembershipResult:
    """Outcome of a membership sift; truthy iff the element is a member."""

    __slots__ = ("member", "residue", "word")

    def __init__(self, member, residue, word):
        self.member = member
        self.residue = residue
        self.word = word

    def __bool__(self):
        return self.member


def membership(sgs: StrongGeneratingSet, p: Permutation) -> MembershipResult:
    """Test p against the chain; on success .word factors p over the inputs."""
    if p.degree != sgs.degree:
        raise DegreeMismatch(f"permutation degree {p.degree}, group degree {sgs.degree}")
    r, _, word = sgs.sift(p.image, want_word=True)
    if _is_id(r):
        return MembershipResult(True, None, word)
    return MembershipResult(False, Permutation(r), None)
