"""Twisted convolution algebra on products of partial flag varieties of the
symmetric group, with the wreath Hecke algebra embedded as the full-flag block.

The underlying sets are Y_lam = S_d / S_lam.  A block element is a G-equivariant
function on Y_lam x Y_mu with values in the fraction field of F^{(x) d}[x], and
the product twists the middle sum by the inverse of

    e_lam = prod_{(i,j) in N_lam} (x_i - x_j) * prod_{(i,j) in P_lam} P_ij,

the value of the twist function at the base point.  Equivariance reduces every
function to its values at pairs ([1], [g]) with g a minimal double coset
representative, and we store the normalized value r_g = f([1],[g]) / e_lam, so
that on the full-flag block the map g -> r_g lists the coefficients of f in the
basis of point-supported functions.  In these coordinates the twist cancels out
of the product entirely:

    r_{f*h}(y) = sum_z u_z(r_f(g_z)) * z(u'_z(r_h(g'_z))),

where z runs over cosets of the middle subgroup, z = u_z g_z v_z and
z^{-1} y = u'_z g'_z v'_z are the double coset decompositions.

Splits, merges and invariant multiplications generate the Schur algebra of
interest; the polynomial representation on direct sums of invariant rings
R^{S_lam} is faithful and serves as the zero-testing oracle.
"""

from collections import Counter
from functools import lru_cache
from itertools import combinations, product as iproduct

from .pqwp import IdentityFailed, PqwpElement, pqwp_mul
from .symcomb import (NotARefinement, block_of, check_refines, coset_reps,
                      double_coset_decompose, double_coset_reps, identity,
                      inverse, length, matrix_from_triple, matrix_to_perm, mul,
                      region_L, region_N, region_P, ThetaMatrix,
                      young_subgroup, increasing_on_blocks)
from .tensor_poly import (LocalizedElement, TensorPoly, alpha_ij, beta_ij,
                          monomial, p_ij, unit_poly, x_var, zero_poly)


class BlockMismatch(ValueError):
    """Raised when block rows/columns or vector components do not line up."""


class CharacteristicTooSmall(ValueError):
    """Raised when the ground field cannot support the detecting family."""


class InvarianceViolation(ValueError):
    """Raised when a stored value fails its required symmetry."""


Composition = tuple


def strip_comp(lam) -> Composition:
    """Drop zero parts; compositions differing by zeros name the same block."""
    out = tuple(int(x) for x in lam if x)
    if any(x < 0 for x in lam):
        raise ValueError(f"negative part in {lam!r}")
    return out


def _check_comp(d: int, lam) -> Composition:
    lam = strip_comp(lam)
    if sum(lam) != d:
        raise ValueError(f"{lam!r} is not a composition of {d}")
    return lam


# twists ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def twist_e(params, d: int, lam) -> TensorPoly:
    """Value of the twist at the base point of Y_lam: linear factors over the
    cross-block pairs N_lam, P factors over the complementary ordered pairs."""
    lam = _check_comp(d, lam)
    out = unit_poly(params, d)
    for (i, j) in sorted(region_N(lam)):
        out = out * (x_var(params, d, i) - x_var(params, d, j))
    for (i, j) in sorted(region_P(lam)):
        out = out * p_ij(params, d, i, j)
    return out


@lru_cache(maxsize=None)
def _e_factors(d: int, lam) -> tuple:
    """The twist at the base point as a factor list: lin tags and P tags."""
    fac = []
    for (i, j) in sorted(region_N(lam)):
        fac.append(("lin", i, j))
    for (i, j) in sorted(region_P(lam)):
        fac.append(("P", i, j))
    return tuple(fac)


def _e_localized(params, d: int, lam, invert: bool, w=None) -> LocalizedElement:
    """e_lam, or its inverse, optionally moved by the place permutation w,
    kept entirely in factored form so that products cancel syntactically."""
    sign = 1
    tags = []
    for (kind, i, j) in _e_factors(d, _check_comp(d, lam)):
        if w is not None:
            i, j = w[i], w[j]
        if kind == "lin" and i > j:
            i, j = j, i
            sign = -sign
        tags.append((kind, i, j))
    core = unit_poly(params, d) if sign > 0 else -unit_poly(params, d)
    if invert:
        return LocalizedElement(core, None, Counter(tags))
    return LocalizedElement(core, Counter(tags), None)


# coset bookkeeping -----------------------------------------------------------

@lru_cache(maxsize=None)
def _decompose(z, lam, mu):
    x, g, y = double_coset_decompose(z, lam, mu)
    return x, g, y


@lru_cache(maxsize=None)
def _quotient_reps(d: int, mu) -> tuple:
    """Minimal representatives of the left cosets w S_mu."""
    return coset_reps(mu, "right")


@lru_cache(maxsize=None)
def _young_over_young(lam, nu) -> tuple:
    """Minimal representatives of w S_nu inside S_lam, for nu refining lam."""
    check_refines(nu, lam)
    return tuple(w for w in young_subgroup(lam) if increasing_on_blocks(w, nu))


@lru_cache(maxsize=None)
def _stabilizer(d: int, lam, mu, g) -> tuple:
    gi = inverse(g)
    inner = set(young_subgroup(mu))
    return tuple(u for u in young_subgroup(lam)
                 if mul(gi, mul(u, g)) in inner)


# blocks ----------------------------------------------------------------------

class ConvBlock:
    """One block of the convolution algebra: rows indexed by Y_lam, columns by
    Y_mu.  ``xi[g]`` holds the normalized value at ([1],[g]) for each minimal
    double coset representative g; missing keys mean zero.  Composition pairs
    the column composition of the left factor with the row composition of the
    right factor."""

    __slots__ = ("params", "d", "lam", "mu", "xi")

    def __init__(self, params, d, lam, mu, xi=None, check=True):
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "lam", _check_comp(d, lam))
        object.__setattr__(self, "mu", _check_comp(d, mu))
        reps = set(double_coset_reps(self.lam, self.mu))
        clean = {}
        for g, r in (xi or {}).items():
            g = tuple(g)
            if g not in reps:
                raise ValueError(f"{g} is not a minimal representative for "
                                 f"({self.lam}, {self.mu})")
            if isinstance(r, TensorPoly):
                r = LocalizedElement(r)
            if not r.is_zero():
                clean[g] = r
        object.__setattr__(self, "xi", clean)
        if check:
            self.check_invariance()

    def __setattr__(self, *a):
        raise AttributeError("ConvBlock is immutable")

    def check_invariance(self):
        """Stored values must be fixed by the stabilizer of the base pair."""
        for g, r in self.xi.items():
            for u in _stabilizer(self.d, self.lam, self.mu, g):
                if u == identity(self.d):
                    continue
                if r.place_permute(u) != r:
                    raise InvarianceViolation(
                        f"value at {g} moves under {u}: {r}")

    @staticmethod
    def zero(params, d, lam, mu) -> "ConvBlock":
        return ConvBlock(params, d, lam, mu, {}, check=False)

    def is_zero(self) -> bool:
        return not self.xi

    def _same_block(self, other):
        if (self.params, self.d) != (other.params, other.d):
            raise BlockMismatch("mixed parameter sets")
        if (self.lam, self.mu) != (other.lam, other.mu):
            raise BlockMismatch(f"({self.lam},{self.mu}) vs "
                                f"({other.lam},{other.mu})")

    def __add__(self, other):
        if not isinstance(other, ConvBlock):
            return NotImplemented
        self._same_block(other)
        xi = dict(self.xi)
        for g, r in other.xi.items():
            cur = xi.get(g)
            xi[g] = r if cur is None else cur + r
        return ConvBlock(self.params, self.d, self.lam, self.mu, xi,
                         check=False)

    def __neg__(self):
        return ConvBlock(self.params, self.d, self.lam, self.mu,
                         {g: -r for g, r in self.xi.items()}, check=False)

    def __sub__(self, other):
        if not isinstance(other, ConvBlock):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "ConvBlock":
        return ConvBlock(self.params, self.d, self.lam, self.mu,
                         {g: r.scale(c) for g, r in self.xi.items()},
                         check=False)

    def value_at(self, z) -> LocalizedElement:
        """Normalized value at ([1],[z]) for an arbitrary group element z."""
        u, g, _ = _decompose(tuple(z), self.lam, self.mu)
        r = self.xi.get(g)
        if r is None:
            return LocalizedElement.zero(self.params, self.d)
        return r.place_permute(u)

    def mul(self, other: "ConvBlock") -> "ConvBlock":
        if (self.params, self.d) != (other.params, other.d):
            raise BlockMismatch("mixed parameter sets")
        if self.mu != other.lam:
            raise BlockMismatch(f"cannot compose ({self.lam},{self.mu}) with "
                                f"({other.lam},{other.mu})")
        d = self.d
        out = {}
        omega = (1,) * d
        if self.lam == self.mu == other.mu == omega:
            # point-supported coordinates compose pairwise
            for z, rf in self.xi.items():
                for y1, rh in other.xi.items():
                    y = mul(z, y1)
                    term = rf * rh.place_permute(z)
                    cur = out.get(y)
                    out[y] = term if cur is None else cur + term
        else:
            for z in _quotient_reps(d, self.mu):
                u, g, _ = _decompose(z, self.lam, self.mu)
                rf = self.xi.get(g)
                if rf is None:
                    continue
                left = rf.place_permute(u)
                zi = inverse(z)
                for y in double_coset_reps(self.lam, other.mu):
                    u2, g2, _ = _decompose(mul(zi, y), other.lam, other.mu)
                    rh = other.xi.get(g2)
                    if rh is None:
                        continue
                    term = left * rh.place_permute(mul(z, u2))
                    cur = out.get(y)
                    out[y] = term if cur is None else cur + term
        return ConvBlock(self.params, d, self.lam, other.mu, out, check=False)

    def leading(self):
        """(g, value) with g of maximal length in the support."""
        if not self.xi:
            return None
        g = max(self.xi, key=lambda w: (length(w), w))
        return g, self.xi[g]

    def __eq__(self, other):
        if not isinstance(other, ConvBlock):
            return NotImplemented
        self._same_block(other)
        keys = set(self.xi) | set(other.xi)
        zero = LocalizedElement.zero(self.params, self.d)
        return all(self.xi.get(g, zero) == other.xi.get(g, zero)
                   for g in keys)

    def __str__(self):
        if not self.xi:
            return f"0[{self.lam}|{self.mu}]"
        bits = []
        for g in sorted(self.xi, key=lambda w: (length(w), w)):
            one_line = " ".join(str(i + 1) for i in g)
            bits.append(f"|{one_line}| -> {self.xi[g]}")
        return f"[{self.lam}|{self.mu}] " + "; ".join(bits)

    def __repr__(self):
        return f"ConvBlock({self})"


class SchurElement:
    """Sparse sum of blocks, keyed by (row composition, column composition)."""

    __slots__ = ("params", "d", "blocks")

    def __init__(self, params, d, blocks=None):
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "d", int(d))
        clean = {}
        for key, blk in (blocks or {}).items():
            if (blk.lam, blk.mu) != tuple(map(tuple, key)):
                raise ValueError(f"block filed under {key} is ({blk.lam},{blk.mu})")
            if not blk.is_zero():
                clean[(blk.lam, blk.mu)] = blk
        object.__setattr__(self, "blocks", clean)

    def __setattr__(self, *a):
        raise AttributeError("SchurElement is immutable")

    @staticmethod
    def zero(params, d) -> "SchurElement":
        return SchurElement(params, d, {})

    @staticmethod
    def from_block(blk: ConvBlock) -> "SchurElement":
        return SchurElement(blk.params, blk.d, {(blk.lam, blk.mu): blk})

    @staticmethod
    def idempotent(params, d, lam) -> "SchurElement":
        lam = _check_comp(d, lam)
        blk = ConvBlock(params, d, lam, lam,
                        {identity(d): LocalizedElement.one(params, d)},
                        check=False)
        return SchurElement.from_block(blk)

    def is_zero(self) -> bool:
        return not self.blocks

    def block(self, lam, mu) -> ConvBlock:
        lam = _check_comp(self.d, lam)
        mu = _check_comp(self.d, mu)
        blk = self.blocks.get((lam, mu))
        if blk is None:
            return ConvBlock.zero(self.params, self.d, lam, mu)
        return blk

    def _same_space(self, other):
        if (self.params, self.d) != (other.params, other.d):
            raise BlockMismatch("mixed parameter sets")

    def __add__(self, other):
        if not isinstance(other, SchurElement):
            return NotImplemented
        self._same_space(other)
        out = dict(self.blocks)
        for key, blk in other.blocks.items():
            cur = out.get(key)
            out[key] = blk if cur is None else cur + blk
        return SchurElement(self.params, self.d, out)

    def __neg__(self):
        return SchurElement(self.params, self.d,
                            {k: -b for k, b in self.blocks.items()})

    def __sub__(self, other):
        if not isinstance(other, SchurElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "SchurElement":
        return SchurElement(self.params, self.d,
                            {k: b.scale(c) for k, b in self.blocks.items()})

    def __mul__(self, other):
        """Convolution product, extended bilinearly over the block direct
        sum: pairs whose inner compositions differ contribute zero, which is
        what makes the idempotents 1_lam mutually orthogonal."""
        if not isinstance(other, SchurElement):
            return NotImplemented
        self._same_space(other)
        out = {}
        for (lam, mu), blk in self.blocks.items():
            for (mu2, kap), blk2 in other.blocks.items():
                if mu != mu2:
                    continue
                piece = blk.mul(blk2)
                if piece.is_zero():
                    continue
                cur = out.get((lam, kap))
                out[(lam, kap)] = piece if cur is None else cur + piece
        return SchurElement(self.params, self.d, out)

    def __eq__(self, other):
        if not isinstance(other, SchurElement):
            return NotImplemented
        self._same_space(other)
        keys = set(self.blocks) | set(other.blocks)
        for lam, mu in keys:
            if self.block(lam, mu) != other.block(lam, mu):
                return False
        return True

    def __str__(self):
        if not self.blocks:
            return "0"
        return " + ".join(str(self.blocks[k]) for k in sorted(self.blocks))

    def __repr__(self):
        return f"SchurElement({self})"


def conv_mul(f: SchurElement, g: SchurElement) -> SchurElement:
    return f * g


# generators ------------------------------------------------------------------

def split_merge(params, d, lam, nu=None, kind="split") -> SchurElement:
    """The four splitting and merging generators.

    split:          rows (1^d), columns lam; value e_lam at the base point.
    merge:          rows lam, columns (1^d); value e_lam at the base point.
    partial_split:  rows nu, columns lam, for nu refining lam.
    partial_merge:  rows lam, columns nu, for nu refining lam.
    """
    lam = _check_comp(d, lam)
    omega = (1,) * d
    e = identity(d)
    one = LocalizedElement.one(params, d)
    if kind in ("split", "merge"):
        if nu is not None and _check_comp(d, nu) != omega:
            raise ValueError("full split/merge take no refinement")
        nu = omega
    elif kind in ("partial_split", "partial_merge"):
        if nu is None:
            raise ValueError(f"{kind} needs a refinement")
        nu = _check_comp(d, nu)
        check_refines(nu, lam)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    ratio = one
    for (i, j) in sorted(region_L(lam) - region_L(nu)):
        ratio = ratio.times_p(i, j).over_lin(i, j)
    if kind in ("split", "partial_split"):
        blk = ConvBlock(params, d, nu, lam, {e: ratio}, check=False)
    else:
        blk = ConvBlock(params, d, lam, nu, {e: one}, check=False)
    return SchurElement.from_block(blk)


def diagonal_element(params, d, lam, t) -> SchurElement:
    """Multiplication by an S_lam-invariant t on the lam component."""
    lam = _check_comp(d, lam)
    if isinstance(t, TensorPoly):
        t = LocalizedElement(t)
    for u in young_subgroup(lam):
        if t.place_permute(u) != t:
            raise InvarianceViolation(f"{t} is not S_{lam}-invariant")
    blk = ConvBlock(params, d, lam, lam, {identity(d): t}, check=False)
    return SchurElement.from_block(blk)


def k_block(params, d, lam) -> SchurElement:
    """The full-flag block of merge-then-split: value e_lam on all of S_lam."""
    lam = _check_comp(d, lam)
    one = LocalizedElement.one(params, d)
    ratio = one
    for (i, j) in sorted(region_L(lam)):
        ratio = ratio.times_p(i, j).over_lin(i, j)
    omega = (1,) * d
    xi = {w: ratio for w in young_subgroup(lam)}
    blk = ConvBlock(params, d, omega, omega, xi, check=False)
    return SchurElement.from_block(blk)


# the embedding of the wreath Hecke algebra -----------------------------------

@lru_cache(maxsize=None)
def _phi_gen(params, d, i) -> ConvBlock:
    """Image of the i-th braid generator on the full-flag block."""
    omega = (1,) * d
    e = identity(d)
    si = tuple(e[:i]) + (i + 1, i) + tuple(e[i + 2:])
    lower = LocalizedElement(beta_ij(params, d, i, i + 1)).over_lin(i, i + 1)
    upper = LocalizedElement.one(params, d).times_p(i, i + 1).over_lin(i, i + 1)
    return ConvBlock(params, d, omega, omega, {e: lower, si: upper},
                     check=False)


@lru_cache(maxsize=None)
def _phi_word(params, d, w) -> ConvBlock:
    omega = (1,) * d
    if w == identity(d):
        return ConvBlock(params, d, omega, omega,
                         {identity(d): LocalizedElement.one(params, d)},
                         check=False)
    wi = inverse(w)
    for i in range(d - 1):
        if wi[i] > wi[i + 1]:
            si = tuple(identity(d)[:i]) + (i + 1, i) + tuple(identity(d)[i + 2:])
            return _phi_gen(params, d, i).mul(_phi_word(params, d, mul(si, w)))
    raise AssertionError("unreachable")


def phi_embed(a: PqwpElement) -> SchurElement:
    """Algebra embedding into the full-flag block: coefficients become
    point-supported functions, braid generators become the two-term kernels
    with first-order poles."""
    params, d = a.params, a.d
    omega = (1,) * d
    out = None
    for w, b in a.terms.items():
        blk = _phi_word(params, d, w)
        piece = ConvBlock(params, d, omega, omega,
                          {g: LocalizedElement(b * r.core, r.nfac, r.dfac)
                           for g, r in blk.xi.items()}, check=False)
        out = piece if out is None else out + piece
    if out is None:
        out = ConvBlock.zero(params, d, omega, omega)
    return SchurElement.from_block(out)


# polynomial representation ---------------------------------------------------

class PolyRepVector:
    """Element of the lam component of the polynomial representation: an
    S_lam-invariant value, polynomial in practice but allowed to carry
    denominators transiently."""

    __slots__ = ("params", "d", "lam", "value")

    def __init__(self, params, d, lam, value, check=True):
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "lam", _check_comp(d, lam))
        if isinstance(value, TensorPoly):
            value = LocalizedElement(value)
        object.__setattr__(self, "value", value)
        if check:
            for u in young_subgroup(self.lam):
                if value.place_permute(u) != value:
                    raise InvarianceViolation(
                        f"{value} moves under {u}, not invariant for {self.lam}")

    def __setattr__(self, *a):
        raise AttributeError("PolyRepVector is immutable")

    @staticmethod
    def of_poly(params, d, lam, p: TensorPoly, check=True) -> "PolyRepVector":
        return PolyRepVector(params, d, lam, p, check=check)

    @staticmethod
    def one(params, d, lam) -> "PolyRepVector":
        return PolyRepVector(params, d, lam, unit_poly(params, d), check=False)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def as_polynomial(self) -> TensorPoly:
        return self.value.as_tensor_poly()

    def __add__(self, other):
        if not isinstance(other, PolyRepVector):
            return NotImplemented
        if (self.params, self.d, self.lam) != (other.params, other.d, other.lam):
            raise BlockMismatch("cannot add vectors of different components")
        return PolyRepVector(self.params, self.d, self.lam,
                             self.value + other.value, check=False)

    def __eq__(self, other):
        if not isinstance(other, PolyRepVector):
            return NotImplemented
        return (self.lam, self.d) == (other.lam, other.d) and \
            self.value == other.value

    def __str__(self):
        return f"[{self.lam}] {self.value}"

    def __repr__(self):
        return f"PolyRepVector({self})"


def _block_apply(blk: ConvBlock, v: PolyRepVector) -> PolyRepVector:
    """Action of one block on a column vector:

        (f v)([1]) = sum_h f([1],[h]) h(e_mu)^{-1} h(v)

    over coset representatives h; the merge-shaped blocks short-circuit to the
    fraction-free symmetrization."""
    params, d = blk.params, blk.d
    if blk.mu != v.lam:
        raise BlockMismatch(f"block columns {blk.mu} vs vector {v.lam}")
    e = identity(d)
    one = LocalizedElement.one(params, d)
    if set(blk.xi) == {e} and blk.xi[e] == one and \
            region_L(blk.mu) <= region_L(blk.lam):
        return PolyRepVector(params, d, blk.lam,
                             merge_apply(params, d, blk.lam, blk.mu, v.value),
                             check=False)
    acc = LocalizedElement.zero(params, d)
    for h in _quotient_reps(d, blk.mu):
        u, g, _ = _decompose(h, blk.lam, blk.mu)
        r = blk.xi.get(g)
        if r is None:
            continue
        term = r.place_permute(u) * v.value.place_permute(h)
        acc = acc + term * _e_localized(params, d, blk.mu, True, w=h)
    result = acc * _e_localized(params, d, blk.lam, False)
    return PolyRepVector(params, d, blk.lam, result, check=False)


def merge_apply(params, d, lam, nu, value) -> LocalizedElement:
    """Fraction-free action of the merge from nu-invariants to lam-invariants,
    one pairwise block fusion at a time; each fusion is the symmetrized sum

        sum_w w( value * prod P_ij / (x_i - x_j) )

    over shuffles of the two sub-blocks, which always collapses to a
    polynomial."""
    lam = _check_comp(d, lam)
    nu = _check_comp(d, nu)
    check_refines(nu, lam)
    if isinstance(value, TensorPoly):
        value = LocalizedElement(value)
    if lam == nu:
        return value
    # fuse the first two nu-parts inside a common lam-block
    bo = block_of(lam)
    cuts = [0]
    for part in nu:
        cuts.append(cuts[-1] + part)
    step = None
    for k in range(len(nu) - 1):
        if bo[cuts[k]] == bo[cuts[k + 1]]:
            step = k
            break
    assert step is not None
    fused = nu[:step] + (nu[step] + nu[step + 1],) + nu[step + 2:]
    a = list(range(cuts[step], cuts[step + 1]))
    b = list(range(cuts[step + 1], cuts[step + 2]))
    arg = value
    for i in a:
        for j in b:
            arg = arg.times_p(i, j).over_lin(i, j)
    acc = None
    for w in _two_block_shuffles(d, tuple(a), tuple(b)):
        term = arg.place_permute(w)
        acc = term if acc is None else acc + term
    assert not acc.dfac, "pairwise fusion did not collapse"
    return merge_apply(params, d, lam, fused, acc)


@lru_cache(maxsize=None)
def _two_block_shuffles(d, a, b) -> tuple:
    """Permutations of a+b (contiguous, adjacent) increasing on both halves,
    fixing everything else."""
    span = a + b
    out = []
    for picks in combinations(range(len(span)), len(a)):
        w = list(range(d))
        rest = [k for k in range(len(span)) if k not in picks]
        for src, dst in zip(a, picks):
            w[src] = span[dst]
        for src, dst in zip(b, rest):
            w[src] = span[dst]
        out.append(tuple(w))
    return tuple(out)


def poly_rep_apply(s: SchurElement, v: PolyRepVector) -> PolyRepVector:
    """Apply a Schur element to a vector in the v.lam component.  The element
    must carry the result into a single component; a zero result stays in the
    component of v."""
    if (s.params, s.d) != (v.params, v.d):
        raise BlockMismatch("mixed parameter sets")
    results = {}
    for (lam, mu), blk in s.blocks.items():
        if mu != v.lam:
            continue
        piece = _block_apply(blk, v)
        cur = results.get(lam)
        results[lam] = piece if cur is None else cur + piece
    results = {lam: r for lam, r in results.items() if not r.is_zero()}
    if not results:
        return PolyRepVector(v.params, v.d, v.lam,
                             LocalizedElement.zero(v.params, v.d), check=False)
    if len(results) > 1:
        raise BlockMismatch(
            f"result spans components {sorted(results)}; apply blockwise")
    return next(iter(results.values()))


# the faithfulness oracle -----------------------------------------------------

@lru_cache(maxsize=None)
def _detecting_family(params, d, mu) -> tuple:
    """Symmetrized products (staircase monomial) x (basis tensor), enough to
    separate every block with column composition mu."""
    alg = params.algebra
    family = []
    exp_ranges = [range(d - j) for j in range(1, d)]
    for fkey in iproduct(range(alg.dim), repeat=d):
        for exps in iproduct(*exp_ranges):
            base = monomial(params, d, fkey, tuple(exps) + (0,))
            acc = zero_poly(params, d)
            for u in young_subgroup(mu):
                acc = acc + base.place_permute(u)
            if not acc.is_zero():
                family.append(acc)
    return tuple(family)


def zero_test_via_poly_rep(s: SchurElement) -> bool:
    """True iff the element annihilates the detecting family of every column
    component it touches; sound because the staircase monomials realize the
    regular representation of S_d when the characteristic is zero or > d."""
    field = s.params.algebra.field
    if field.kind == field.PRIME and field.p <= s.d:
        raise CharacteristicTooSmall(
            f"characteristic {field.p} <= d = {s.d}: the staircase matrix "
            "is singular, the detecting family proves nothing")
    for (lam, mu), blk in s.blocks.items():
        if blk.is_zero():
            continue
        for b in _detecting_family(s.params, s.d, mu):
            v = PolyRepVector(s.params, s.d, mu, b, check=False)
            if not _block_apply(blk, v).is_zero():
                return False
    return True


def elements_equal(a: SchurElement, b: SchurElement) -> bool:
    """Equality through the polynomial representation."""
    return zero_test_via_poly_rep(a - b)


# crossings -------------------------------------------------------------------

def _coset_data(lam, g, mu):
    A = matrix_from_triple(lam, g, mu)
    nu = tuple(x for row in A.rows for x in row if x)
    nparts = len(A.rows[0]) if A.rows else 0
    delta = tuple(A.rows[i][j] for j in range(nparts) for i in range(len(A.rows))
                  if A.rows[i][j])
    return nu, delta


def h_tilde(params, d, lam, mu, g, check=True) -> SchurElement:
    """Thick crossing attached to a double coset: the unique block element x
    with rows nu, columns delta such that x followed by the full merge equals
    the merge of nu followed by the braid word of g on the full-flag block."""
    lam = _check_comp(d, lam)
    mu = _check_comp(d, mu)
    g = tuple(g)
    if g not in double_coset_reps(lam, mu):
        raise ValueError(f"{g} is not minimal for ({lam}, {mu})")
    nu, delta = _coset_data(lam, g, mu)
    merged = split_merge(params, d, nu, kind="merge") * \
        phi_embed(PqwpElement.h_of_perm(params, d, g))
    cblk = merged.block(nu, (1,) * d)
    xi = {}
    for rep in double_coset_reps(nu, delta):
        val = cblk.xi.get(rep)
        if val is not None:
            xi[rep] = val
        if check:
            base = cblk.value_at(rep)
            for u in young_subgroup(delta):
                if cblk.value_at(mul(rep, u)) != base:
                    raise InvarianceViolation(
                        f"values not constant on columns at {rep}")
    blk = ConvBlock(params, d, nu, delta, xi, check=False)
    return SchurElement.from_block(blk)


def crossing(params, d, lam) -> SchurElement:
    """Sum of thick-crossing sandwiches dual to merging through the full
    block: for a two-part shape this rewrites split-after-merge as crossings
    of the two sub-blocks with explicit coefficients."""
    lam = _check_comp(d, lam)
    if len(lam) != 2:
        raise ValueError(f"need a two-part composition, got {lam}")
    d1, d2 = lam
    mu = (d2, d1)
    total = None
    for i in range(min(d1, d2) + 1):
        A = ThetaMatrix([[i, d1 - i], [d2 - i, i]])
        w = matrix_to_perm(A)
        nu = strip_comp((i, d1 - i, d2 - i, i))
        delta = strip_comp((i, d2 - i, d1 - i, i))
        c = unit_poly(params, d)
        for i2 in range(i):
            for j2 in range(i):
                c = c * alpha_ij(params, d, i2, d - i + j2)
        term = split_merge(params, d, lam, nu, kind="partial_merge")
        term = term * diagonal_element(params, d, nu, c)
        term = term * h_tilde(params, d, lam, mu, w)
        term = term * split_merge(params, d, mu, delta, kind="partial_split")
        total = term if total is None else total + term
    return total


def dumb_vs_smart_identity(params, d, lam, oracle="values") -> dict:
    """Check that splitting out of the full merge equals the crossing sum for
    a two-part shape and its reversal.  oracle='values' compares stored block
    values; oracle='family' additionally runs the polynomial representation.
    Returns a summary dict; raises IdentityFailed on mismatch."""
    lam = _check_comp(d, lam)
    if len(lam) != 2:
        raise ValueError(f"need a two-part composition, got {lam}")
    d1, d2 = lam
    mu = (d2, d1)
    full = (d,)
    left = split_merge(params, d, full, lam, kind="partial_split") * \
        split_merge(params, d, full, mu, kind="partial_merge")
    right = crossing(params, d, lam)
    terms = min(d1, d2) + 1
    if oracle not in ("values", "family", "both"):
        raise ValueError(f"unknown oracle {oracle!r}")
    if oracle in ("values", "both"):
        if left != right:
            raise IdentityFailed(
                f"crossing decomposition failed for {lam}: {left} != {right}")
    if oracle in ("family", "both"):
        if not elements_equal(left, right):
            raise IdentityFailed(
                f"crossing decomposition failed on the detecting family for {lam}")
    return {"lam": lam, "mu": mu, "terms": terms, "oracle": oracle}


# coil and laurel elements ----------------------------------------------------

def _require_invariant(params, d, nu, b):
    if isinstance(b, TensorPoly):
        bb = LocalizedElement(b)
    else:
        bb = b
    for u in young_subgroup(nu):
        if bb.place_permute(u) != bb:
            raise InvarianceViolation(f"{b} is not S_{nu}-invariant")
    return bb


def coil_basis_element(params, d, lam, mu, g, b) -> SchurElement:
    """Merge, braid word with invariant coefficient, split: the spanning
    elements of the block with the given rows and columns."""
    lam = _check_comp(d, lam)
    mu = _check_comp(d, mu)
    g = tuple(g)
    if g not in double_coset_reps(lam, mu):
        raise ValueError(f"{g} is not minimal for ({lam}, {mu})")
    nu, _ = _coset_data(lam, g, mu)
    if isinstance(b, TensorPoly):
        _require_invariant(params, d, nu, b)
        elt = PqwpElement.of_poly(b)
    else:
        elt = b
    word = pqwp_mul(elt, PqwpElement.h_of_perm(params, d, g))
    return split_merge(params, d, lam, kind="merge") * phi_embed(word) * \
        split_merge(params, d, mu, kind="split")


def laurel_basis_element(params, d, lam, mu, g, b) -> SchurElement:
    """Partial merge, invariant diagonal, thick crossing, partial split."""
    lam = _check_comp(d, lam)
    mu = _check_comp(d, mu)
    g = tuple(g)
    if g not in double_coset_reps(lam, mu):
        raise ValueError(f"{g} is not minimal for ({lam}, {mu})")
    nu, delta = _coset_data(lam, g, mu)
    bb = _require_invariant(params, d, nu, b)
    out = split_merge(params, d, lam, nu, kind="partial_merge")
    out = out * diagonal_element(params, d, nu, bb)
    out = out * h_tilde(params, d, lam, mu, g)
    out = out * split_merge(params, d, mu, delta, kind="partial_split")
    return out
