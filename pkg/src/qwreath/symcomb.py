"""Symmetric-group combinatorics: permutations, compositions, inversion
regions, parahoric double cosets and their matrix bookkeeping.

Permutations are tuples of images on 0-indexed positions.  Composition of
permutations is function composition, ``mul(u, v)[i] = u[v[i]]``, so the
right factor acts first.  The one-line string form ``|1 3 4 2|`` is
1-indexed.

Generator conventions, with ``s_i`` swapping positions ``i`` and ``i+1``
(0-indexed ``i``):

* right multiplication ``w*s_i`` swaps the entries at positions i, i+1 and
  raises the length iff ``w[i] < w[i+1]``;
* left multiplication ``s_i*w`` swaps the values i, i+1.

``inv_set(w)`` is the set of position pairs ``(i, j)`` with ``i < j`` and
``w[i] > w[j]``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class LengthAdditivityViolation(ValueError):
    """A product expected to be length-additive was not."""


class NotARefinement(ValueError):
    """The finer composition does not refine the coarser one."""


Perm = tuple[int, ...]
Composition = tuple[int, ...]


# permutations ---------------------------------------------------------------

def identity(d: int) -> Perm:
    return tuple(range(d))


def mul(u: Perm, v: Perm) -> Perm:
    return tuple(u[v[k]] for k in range(len(u)))


def mul_many(*ws: Perm) -> Perm:
    out = ws[0]
    for w in ws[1:]:
        out = mul(out, w)
    return out


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for k, img in enumerate(w):
        out[img] = k
    return tuple(out)


def simple(d: int, i: int) -> Perm:
    w = list(range(d))
    w[i], w[i + 1] = w[i + 1], w[i]
    return tuple(w)


def inv_set(w: Perm) -> frozenset[tuple[int, int]]:
    d = len(w)
    return frozenset(
        (i, j) for i in range(d) for j in range(i + 1, d) if w[i] > w[j]
    )


def length(w: Perm) -> int:
    return len(inv_set(w))


def right_descents(w: Perm) -> list[int]:
    return [i for i in range(len(w) - 1) if w[i] > w[i + 1]]


@lru_cache(maxsize=None)
def reduced_word(w: Perm) -> tuple[int, ...]:
    """A reduced word, reading left to right in product order."""
    letters = []
    w = list(w)
    while True:
        desc = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not desc:
            break
        i = desc[0]
        letters.append(i)
        w[i], w[i + 1] = w[i + 1], w[i]
    return tuple(reversed(letters))


def from_word(d: int, letters) -> Perm:
    w = identity(d)
    for i in letters:
        w = mul(w, simple(d, i))
    return w


def all_perms(d: int):
    return itertools.permutations(range(d))


def longest_element(d: int) -> Perm:
    return tuple(reversed(range(d)))


def from_one_line(text: str) -> Perm:
    # accepts "|1 3 4 2|" as well as bare "1 3 4 2"
    body = text.strip().strip("|").split()
    return tuple(int(x) - 1 for x in body)


def to_one_line(w: Perm) -> str:
    return "|" + " ".join(str(x + 1) for x in w) + "|"


def act_on_pairs(w: Perm, pairs) -> frozenset[tuple[int, int]]:
    """Image of a set of unordered position pairs, stored sorted."""
    out = set()
    for i, j in pairs:
        a, b = w[i], w[j]
        out.add((a, b) if a < b else (b, a))
    return frozenset(out)


# compositions ---------------------------------------------------------------

def strip_zeros(lam) -> Composition:
    return tuple(p for p in lam if p)


def compositions(d: int) -> list[Composition]:
    """All compositions of d with positive parts."""
    if d == 0:
        return [()]
    out = []
    for first in range(1, d + 1):
        for rest in compositions(d - first):
            out.append((first,) + rest)
    return out


def weak_compositions(d: int, n: int) -> list[Composition]:
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d + 1):
        for rest in weak_compositions(d - first, n - 1):
            out.append((first,) + rest)
    return out


def blocks(lam: Composition) -> list[range]:
    out = []
    start = 0
    for part in lam:
        out.append(range(start, start + part))
        start += part
    return out


def block_of(lam: Composition) -> tuple[int, ...]:
    out = []
    for b, part in enumerate(lam):
        out.extend([b] * part)
    return tuple(out)


def refines(nu: Composition, lam: Composition) -> bool:
    """True when nu is a refinement of lam (concatenated compositions)."""
    it = iter(nu)
    for part in lam:
        total = 0
        while total < part:
            try:
                total += next(it)
            except StopIteration:
                return False
        if total != part:
            return False
    return next(it, None) is None


def check_refines(nu: Composition, lam: Composition) -> None:
    if not refines(nu, lam):
        raise NotARefinement(f"{nu} does not refine {lam}")


@lru_cache(maxsize=None)
def young_subgroup(lam: Composition) -> tuple[Perm, ...]:
    d = sum(lam)
    pieces = []
    for blk in blocks(lam):
        base = blk.start
        pieces.append([tuple(base + p for p in perm)
                       for perm in itertools.permutations(range(len(blk)))])
    out = []
    for choice in itertools.product(*pieces):
        w = []
        for piece in choice:
            w.extend(piece)
        out.append(tuple(w))
    return tuple(out)


def longest_in_young(lam: Composition) -> Perm:
    w = []
    for blk in blocks(lam):
        w.extend(reversed(blk))
    return tuple(w)


def increasing_on_blocks(w: Perm, lam: Composition) -> bool:
    for blk in blocks(lam):
        for a, b in zip(blk, blk[1:]):
            if w[a] > w[b]:
                return False
    return True


@lru_cache(maxsize=None)
def coset_reps(lam: Composition, side: str = "right") -> tuple[Perm, ...]:
    """Shortest coset representatives for the Young subgroup of lam.

    ``side='right'``: representatives of the cosets w*S_lam (the subgroup on
    the right); these are the permutations increasing on each position
    block.  ``side='left'``: their inverses, representing S_lam*w.
    """
    d = sum(lam)
    if side == "right":
        return tuple(w for w in all_perms(d) if increasing_on_blocks(w, lam))
    if side == "left":
        return tuple(w for w in all_perms(d)
                     if increasing_on_blocks(inverse(w), lam))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def double_coset_reps(lam: Composition, mu: Composition) -> tuple[Perm, ...]:
    """Elements minimal in S_lam * w * S_mu, i.e. both-sided shortest."""
    return tuple(w for w in coset_reps(mu, "right")
                 if increasing_on_blocks(inverse(w), lam))


def left_reps_in_young(delta: Composition, mu: Composition) -> tuple[Perm, ...]:
    """Shortest representatives of S_delta \\ S_mu inside S_mu."""
    check_refines(delta, mu)
    return tuple(w for w in young_subgroup(mu)
                 if increasing_on_blocks(inverse(w), delta))


# inversion regions ----------------------------------------------------------

def region_N(lam: Composition) -> frozenset[tuple[int, int]]:
    """Pairs i < j in different blocks."""
    bo = block_of(lam)
    d = sum(lam)
    return frozenset((i, j) for i in range(d) for j in range(i + 1, d)
                     if bo[i] != bo[j])


def region_L(lam: Composition) -> frozenset[tuple[int, int]]:
    """Pairs i < j in the same block."""
    bo = block_of(lam)
    d = sum(lam)
    return frozenset((i, j) for i in range(d) for j in range(i + 1, d)
                     if bo[i] == bo[j])


def region_P(lam: Composition) -> frozenset[tuple[int, int]]:
    """All ordered pairs i != j except the upper different-block ones:
    every reversed pair plus the upper same-block pairs."""
    d = sum(lam)
    lower = {(i, j) for i in range(d) for j in range(d) if i > j}
    return frozenset(lower | region_L(lam))


# double-coset matrices ------------------------------------------------------

class ThetaMatrix:
    """Nonnegative integer matrix encoding a Young double coset.

    Row sums give lam, column sums give mu, and the minimal-length element
    g of the double coset satisfies ``a[i][j] = #(I_i^lam & g(I_j^mu))``
    where the I's are the position blocks.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(int(x) for x in r) for r in rows)
        if any(x < 0 for r in self.rows for x in r):
            raise ValueError("negative entry")

    @property
    def lam(self) -> Composition:
        return tuple(sum(r) for r in self.rows)

    @property
    def mu(self) -> Composition:
        if not self.rows:
            return ()
        return tuple(sum(r[j] for r in self.rows) for j in range(len(self.rows[0])))

    @property
    def d(self) -> int:
        return sum(self.lam)

    def __eq__(self, other):
        return isinstance(other, ThetaMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ThetaMatrix({list(map(list, self.rows))})"

    def stripped(self) -> "ThetaMatrix":
        rows = [r for r in self.rows if any(r)]
        if not rows:
            return ThetaMatrix([])
        cols = [j for j in range(len(rows[0])) if any(r[j] for r in rows)]
        return ThetaMatrix([[r[j] for j in cols] for r in rows])


def theta_matrices(n: int, d: int) -> list[ThetaMatrix]:
    """All n-by-n nonnegative integer matrices with entry sum d."""
    cells = n * n
    out = []
    for flat in weak_compositions(d, cells):
        out.append(ThetaMatrix([flat[i * n:(i + 1) * n] for i in range(n)]))
    return out


def matrix_to_perm(A: ThetaMatrix) -> Perm:
    """The minimal-length permutation of the double coset encoded by A.

    Scanning columns left to right and rows top to bottom, the next
    ``a[i][j]`` positions of the j-th column block are sent, in increasing
    order, to the next free slots of the i-th row block.
    """
    lam, mu = A.lam, A.mu
    row_blocks = blocks(lam)
    col_blocks = blocks(mu)
    cursor = [blk.start for blk in row_blocks]
    g = [None] * A.d
    for j, cblk in enumerate(col_blocks):
        pos = cblk.start
        for i in range(len(lam)):
            for _ in range(A.rows[i][j]):
                g[pos] = cursor[i]
                cursor[i] += 1
                pos += 1
    return tuple(g)


def matrix_from_triple(lam: Composition, g: Perm, mu: Composition) -> ThetaMatrix:
    row_blocks = blocks(lam)
    col_blocks = blocks(mu)
    rows = []
    for rblk in row_blocks:
        rset = set(rblk)
        rows.append([sum(1 for p in cblk if g[p] in rset) for cblk in col_blocks])
    return ThetaMatrix(rows)


def double_coset_data(A: ThetaMatrix):
    """Unpack a matrix into (lam, g, mu, delta_c, delta_r, w0A).

    delta_c / delta_r read the nonzero entries down columns / along rows;
    they are the shapes of the two Young subgroups conjugate through g:
    ``S_{delta_c} = g^{-1} S_lam g  &  S_mu`` and
    ``S_{delta_r} = g S_mu g^{-1}  &  S_lam``.
    w0A is the longest element of the double coset.
    """
    lam, mu = A.lam, A.mu
    g = matrix_to_perm(A)
    delta_c = tuple(A.rows[i][j] for j in range(len(mu)) for i in range(len(lam))
                    if A.rows[i][j])
    delta_r = tuple(A.rows[i][j] for i in range(len(lam)) for j in range(len(mu))
                    if A.rows[i][j])
    w0A = mul_many(longest_in_young(lam), g,
                   longest_in_young(delta_c), longest_in_young(mu))
    return lam, g, mu, delta_c, delta_r, w0A


def bijection_kappa(lam: Composition, g: Perm, mu: Composition) -> dict:
    """The length-additive product map (x, y) -> x*g*y on S_lam x reps.

    y runs over the shortest representatives of S_{delta_c} \\ S_mu.  The
    images enumerate the double coset S_lam*g*S_mu without repetition.
    """
    A = matrix_from_triple(lam, g, mu)
    delta_c = tuple(A.rows[i][j] for j in range(len(mu)) for i in range(len(lam))
                    if A.rows[i][j])
    lg = length(g)
    out = {}
    for x in young_subgroup(lam):
        lx = length(x)
        for y in left_reps_in_young(delta_c, mu):
            z = mul_many(x, g, y)
            if length(z) != lx + lg + length(y):
                raise LengthAdditivityViolation(
                    f"l({to_one_line(x)}*{to_one_line(g)}*{to_one_line(y)}) "
                    f"!= {lx}+{lg}+{length(y)}")
            out[(x, y)] = z
    if len(set(out.values())) != len(out):
        raise LengthAdditivityViolation("product map is not injective")
    return out


def double_coset_decompose(z: Perm, lam: Composition, mu: Composition):
    """Write z = x * g0 * y with x in S_lam, g0 minimal, y in S_mu."""
    d = len(z)
    bo_l = block_of(lam)
    bo_m = block_of(mu)
    x = identity(d)
    y = identity(d)
    cur = z
    changed = True
    while changed:
        changed = False
        zi = inverse(cur)
        for i in range(d - 1):
            # left factor s_i lies in S_lam and lowers the length
            if bo_l[i] == bo_l[i + 1] and zi[i] > zi[i + 1]:
                s = simple(d, i)
                cur = mul(s, cur)
                x = mul(x, s)
                changed = True
                break
        if changed:
            continue
        for j in range(d - 1):
            if bo_m[j] == bo_m[j + 1] and cur[j] > cur[j + 1]:
                s = simple(d, j)
                cur = mul(cur, s)
                y = mul(s, y)
                changed = True
                break
    return x, cur, y
