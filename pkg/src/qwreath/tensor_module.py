"""Tensor powers of the free rank-n module with the Hecke-generator
action, their weight-slice submodules, and the block maps between slices
indexed by integer matrices with a partially symmetric coefficient."""

from itertools import product

from .coeff_ring import is_zero
from .pqwp import IdentityFailed, PqwpElement, k_lambda, pqwp_mul
from .symcomb import (ThetaMatrix, blocks, coset_reps, double_coset_data,
                      double_coset_reps, inverse, length, longest_in_young,
                      matrix_from_triple, mul, reduced_word, strip_zeros,
                      to_one_line, weak_compositions, young_subgroup)
from .tensor_poly import (TensorPoly, abar_ij, monomial, r_ij, s_ij,
                          unit_poly, zero_poly)


class ModuleMismatch(ValueError):
    """Operands attached to different slices, sizes, or parameter packs."""


class SpanViolation(ValueError):
    """Element does not lie in the expected free module."""


# tensor vectors ---------------------------------------------------------------


class TensorVector:
    """Sum of v_i * b over index tuples i with entries in 1..n; the
    coefficients b live in the d-fold tensor polynomial ring.  No zero
    coefficients stored."""

    __slots__ = ("params", "n", "d", "terms")

    def __init__(self, params, n, d, terms=None):
        self.params = params
        self.n = n
        self.d = d
        clean = {}
        for idx, b in (terms or {}).items():
            if b.is_zero():
                continue
            if len(idx) != d or any(not 1 <= v <= n for v in idx):
                raise ModuleMismatch(f"index tuple {idx} not in [1..{n}]^{d}")
            clean[tuple(idx)] = b
        self.terms = clean

    @staticmethod
    def zero(params, n, d) -> "TensorVector":
        return TensorVector(params, n, d, {})

    @staticmethod
    def basis(params, n, d, idx, b=None) -> "TensorVector":
        if b is None:
            b = unit_poly(params, d)
        return TensorVector(params, n, d, {tuple(idx): b})

    def is_zero(self) -> bool:
        return not self.terms

    def _same_space(self, other):
        if (self.params is not other.params or self.n != other.n
                or self.d != other.d):
            raise ModuleMismatch("vectors live in different tensor powers")

    def __add__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        self._same_space(other)
        out = dict(self.terms)
        for idx, b in other.terms.items():
            v = out.get(idx)
            out[idx] = b if v is None else v + b
        return TensorVector(self.params, self.n, self.d, out)

    def __neg__(self):
        return TensorVector(self.params, self.n, self.d,
                            {idx: -b for idx, b in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TensorVector":
        return TensorVector(self.params, self.n, self.d,
                            {idx: b.scale(c) for idx, b in self.terms.items()})

    def times_poly(self, q: TensorPoly) -> "TensorVector":
        """Right action of the coefficient ring, factor by factor."""
        return TensorVector(self.params, self.n, self.d,
                            {idx: b * q for idx, b in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, TensorVector)
                and self.params is other.params and self.n == other.n
                and self.d == other.d and self.terms == other.terms)

    def support(self):
        return sorted(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for idx in self.support():
            tag = "v[" + ",".join(map(str, idx)) + "]"
            c = self.terms[idx]
            cs = str(c)
            if c == unit_poly(self.params, self.d):
                chunks.append(tag)
            else:
                if " + " in cs or " - " in cs:
                    cs = "(" + cs + ")"
                chunks.append(f"{tag}*{cs}")
        return " + ".join(chunks)

    def __repr__(self):
        return f"TensorVector({self})"


def _swap(idx, k):
    out = list(idx)
    out[k], out[k + 1] = out[k + 1], out[k]
    return tuple(out)


def act_H(v: TensorVector, k: int) -> TensorVector:
    """Right action of the k-th Hecke generator, by the three-way case
    split on the neighbouring index entries."""
    if not 0 <= k < v.d - 1:
        raise ValueError(f"generator index {k} out of range for d={v.d}")
    params, d = v.params, v.d
    abar = abar_ij(params, d, k, k + 1)
    rr = r_ij(params, d, k, k + 1)
    ss = s_ij(params, d, k, k + 1)
    out = {}

    def bump(idx, b):
        if b.is_zero():
            return
        cur = out.get(idx)
        out[idx] = b if cur is None else cur + b

    for idx, b in v.terms.items():
        swapped = b.place_permute_simple(k)
        rho = b.twisted_demazure(k)
        if idx[k] < idx[k + 1]:
            bump(_swap(idx, k), swapped)
            bump(idx, rho)
        elif idx[k] == idx[k + 1]:
            bump(idx, abar * swapped + rho)
        else:
            bump(_swap(idx, k), rr * swapped)
            bump(idx, rho + ss * swapped)
    return TensorVector(params, v.n, d, out)


def act_word(v: TensorVector, letters) -> TensorVector:
    for k in letters:
        v = act_H(v, k)
    return v


def act_pqwp(v: TensorVector, a: PqwpElement) -> TensorVector:
    """Right action of a full algebra element: each normal-form term b*H_w
    acts as multiplication by b followed by the generator word of w."""
    if a.params is not v.params or a.d != v.d:
        raise ModuleMismatch("element and vector live over different data")
    out = TensorVector.zero(v.params, v.n, v.d)
    for w, b in a.terms.items():
        out = out + act_word(v.times_poly(b), reduced_word(w))
    return out


# well-definedness of the action ------------------------------------------------


def _random_poly(params, d, rng, degree=3, terms=3):
    labels = range(len(params.algebra.labels))
    out = zero_poly(params, d)
    for _ in range(terms):
        exps = tuple(rng.randrange(degree + 1) for _ in range(d))
        fkey = tuple(rng.choice(list(labels)) for _ in range(d))
        out = out + monomial(params, d, fkey, exps, rng.randrange(1, 5))
    return out


def tensor_relations_check(params, n, d, rng=None, extra=20, degree=3) -> int:
    """Act with both sides of every defining relation on all pure basis
    vectors and on a batch of random coefficients; the sides must agree
    exactly.  Returns the number of identities compared."""
    import random
    rng = rng or random.Random(0)
    polys = [_random_poly(params, d, rng, degree) for _ in range(extra)]
    pure = [TensorVector.basis(params, n, d, idx)
            for idx in product(range(1, n + 1), repeat=d)]
    samples = list(pure)
    for q in polys:
        idx = tuple(rng.randrange(1, n + 1) for _ in range(d))
        samples.append(TensorVector.basis(params, n, d, idx, q))

    def demand(lhs, rhs, label):
        if lhs != rhs:
            raise IdentityFailed(f"tensor action breaks {label}",
                                 witness={"relation": label,
                                          "left": str(lhs), "right": str(rhs)})

    count = 0
    for v in samples:
        for k in range(d - 1):
            lhs = act_H(act_H(v, k), k)
            rhs = act_H(v.times_poly(s_ij(params, d, k, k + 1)), k)
            rhs = rhs + v.times_poly(r_ij(params, d, k, k + 1))
            demand(lhs, rhs, f"quadratic k={k + 1}")
            count += 1
        for k in range(d - 2):
            demand(act_word(v, (k, k + 1, k)), act_word(v, (k + 1, k, k + 1)),
                   f"braid k={k + 1}")
            count += 1
        for k in range(d - 1):
            for m in range(k + 2, d - 1):
                demand(act_word(v, (k, m)), act_word(v, (m, k)),
                       f"commuting k={k + 1} m={m + 1}")
                count += 1
    for v in pure:
        for k in range(d - 1):
            for q in polys:
                lhs = act_H(v, k).times_poly(q)
                rhs = act_H(v.times_poly(q.place_permute_simple(k)), k)
                rhs = rhs + v.times_poly(q.twisted_demazure(k))
                demand(lhs, rhs, f"coefficient pass-through k={k + 1}")
                count += 1
    return count


# weight slices -----------------------------------------------------------------


def sort_index(idx):
    """Nondecreasing rearrangement of an index tuple and the shortest
    permutation w with rearranged . w = idx (stable sort resolves ties)."""
    d = len(idx)
    order = sorted(range(d), key=lambda j: (idx[j], j))
    w = [0] * d
    for r, j in enumerate(order):
        w[j] = r
    plus = tuple(idx[j] for j in order)
    return plus, tuple(w)


def weight_of(idx, n):
    lam = [0] * n
    for v in idx:
        lam[v - 1] += 1
    return tuple(lam)


def module_expand(params, d, lam, elt: PqwpElement) -> dict:
    """Coordinates of an element of the free right module spanned by
    y_lam b H_g over shortest representatives g: returns {g: b_g} with
    elt = sum of y_lam * b_g * H_g.  Raises SpanViolation otherwise."""
    lam = strip_zeros(lam)
    w0 = longest_in_young(lam)
    y = k_lambda(params, d, lam)
    by_coset = {}
    for w, c in elt.terms.items():
        by_coset.setdefault(_coset_floor(w, lam), {})[w] = c
    out = {}
    recon = PqwpElement.zero(params, d)
    for g, part in sorted(by_coset.items(), key=lambda kv: (length(kv[0]), kv[0])):
        top = part.get(mul(w0, g))
        if top is None:
            raise SpanViolation(
                f"no leading term over the coset of {to_one_line(g)}")
        b = top.place_permute(w0)
        out[g] = b
        recon = recon + pqwp_mul(pqwp_mul(y, PqwpElement.of_poly(b)),
                                 PqwpElement.h_of_perm(params, d, g))
    if recon != elt:
        raise SpanViolation("element is not in the span of the y-translates")
    return out


def _coset_floor(w, lam):
    """Shortest element of the left Young-subgroup translate containing w."""
    wi = inverse(w)
    gi = [0] * len(w)
    for blk in blocks(lam):
        vals = sorted(wi[a] for a in blk)
        for a, v in zip(blk, vals):
            gi[a] = v
    return inverse(tuple(gi))


class PermutationModule:
    """Free right module on the translates y_lam H_g of one quasi-idempotent,
    identified with the span of tensor vectors whose index tuple has a given
    content.  Elements are dicts {g: coefficient} meaning the sum of
    y_lam * coefficient * H_g."""

    def __init__(self, params, lam):
        self.params = params
        self.lam = tuple(int(x) for x in lam)
        if any(x < 0 for x in self.lam):
            raise ValueError(f"negative part in {lam}")
        self.n = len(self.lam)
        self.d = sum(self.lam)
        self.strict = strip_zeros(self.lam)
        self.y = k_lambda(params, self.d, self.strict)
        self.reps = coset_reps(self.strict, "left")
        plus = []
        for v, part in enumerate(self.lam):
            plus.extend([v + 1] * part)
        self.i_plus = tuple(plus)
        self._structure = {}

    def structure(self, eta, k) -> dict:
        """Coordinates of y * H_eta * H_k; cached."""
        key = (eta, k)
        hit = self._structure.get(key)
        if hit is None:
            prod = pqwp_mul(PqwpElement.h_of_perm(self.params, self.d, eta),
                            PqwpElement.h_gen(self.params, self.d, k))
            hit = module_expand(self.params, self.d, self.strict,
                                pqwp_mul(self.y, prod))
            self._structure[key] = hit
        return hit

    def check_coords(self, coords):
        reps = set(self.reps)
        for g in coords:
            if g not in reps:
                raise ModuleMismatch(
                    f"{to_one_line(g)} is not a shortest representative "
                    f"for {self.strict}")

    def act_poly(self, coords, q: TensorPoly) -> dict:
        out = {}
        for g, b in coords.items():
            bq = b * q
            if not bq.is_zero():
                out[g] = bq
        return out

    def act_H(self, coords, k: int) -> dict:
        """One Hecke generator on module coordinates: the twisted-derivation
        part keeps the translate, the structure part redistributes the
        flipped coefficient."""
        self.check_coords(coords)
        out = {}

        def bump(g, b):
            if b.is_zero():
                return
            cur = out.get(g)
            total = b if cur is None else cur + b
            if total.is_zero():
                out.pop(g, None)
            else:
                out[g] = total

        for eta, p in coords.items():
            bump(eta, p.twisted_demazure(k))
            flipped = p.place_permute_simple(k)
            for g, b in self.structure(eta, k).items():
                bump(g, b * flipped)
        return out

    def to_tensor(self, coords, n=None) -> TensorVector:
        """The slice embedding: the g-translate with coefficient b becomes
        the vector indexed by the sorted tuple shuffled through g."""
        self.check_coords(coords)
        n = n or self.n
        terms = {}
        for g, b in coords.items():
            idx = tuple(self.i_plus[g[j]] for j in range(self.d))
            terms[idx] = b
        return TensorVector(self.params, n, self.d, terms)


def permutation_module(params, lam) -> PermutationModule:
    return PermutationModule(params, lam)


def tensor_components(v: TensorVector) -> dict:
    """Split a vector over weight slices: {weight: module coordinates}."""
    out = {}
    for idx, b in v.terms.items():
        plus, w = sort_index(idx)
        lam = weight_of(idx, v.n)
        slot = out.setdefault(lam, {})
        cur = slot.get(w)
        slot[w] = b if cur is None else cur + b
    return out


# block maps between slices -----------------------------------------------------


class ThetaMap:
    """Right-linear map between two weight slices, indexed by an integer
    matrix A (row sums: target weight, column sums: source weight) and a
    coefficient P invariant under the column-reading Young subgroup.

    The map sends the source generator to y_lam * P * H_g * y_mu^delta and
    extends by right linearity; the cached expansion holds the normal-form
    coefficients of P * H_g * y_mu^delta, all supported on shortest
    representatives."""

    def __init__(self, params, A: ThetaMatrix, P: TensorPoly = None):
        self.params = params
        self.A = A
        lam_w, g, mu_w, delta_c, _, _ = double_coset_data(A)
        self.g = g
        self.delta = delta_c
        self.n = len(A.rows)
        self.d = A.d
        self.source = PermutationModule(params, mu_w)
        self.target = PermutationModule(params, lam_w)
        if P is None:
            P = unit_poly(params, self.d)
        if P.params is not params or P.d != self.d:
            raise ModuleMismatch("coefficient lives over different data")
        for blk in blocks(self.delta):
            for a in range(blk.start, blk.stop - 1):
                if P.place_permute_simple(a) != P:
                    raise ModuleMismatch(
                        f"coefficient is not invariant under the column "
                        f"reading {self.delta} of {A!r}")
        self.P = P
        self.core = self._expand()
        bad = [w for w in self.core.terms if w not in set(self.target.reps)]
        if bad:
            raise IdentityFailed(
                "block map expansion leaves the shortest representatives",
                witness={"matrix": repr(A),
                         "perms": [to_one_line(w) for w in bad]})

    def _expand(self) -> PqwpElement:
        rest = pqwp_mul(PqwpElement.h_of_perm(self.params, self.d, self.g),
                        k_lambda(self.params, self.d,
                                 strip_zeros(self.source.lam),
                                 "upper", self.delta))
        return pqwp_mul(PqwpElement.of_poly(self.P), rest)

    def coefficients(self) -> dict:
        """The cached expansion {w: b_w}, also the target coordinates of
        the image of the source generator."""
        return dict(self.core.terms)


def theta_apply(theta: ThetaMap, coords) -> dict:
    """Apply a block map to source-slice coordinates; the result is in
    target-slice coordinates."""
    theta.source.check_coords(coords)
    for b in coords.values():
        if b.params is not theta.params:
            raise ModuleMismatch("coordinates live over different data")
    w_elt = PqwpElement(theta.params, theta.d, dict(coords))
    total = pqwp_mul(theta.target.y, pqwp_mul(theta.core, w_elt))
    return module_expand(theta.params, theta.d, theta.target.strict, total)


def theta_on_tensor(theta: ThetaMap, v: TensorVector) -> TensorVector:
    """The block map as an operator on the whole tensor power: it kills
    every slice except its source weight."""
    if v.params is not theta.params or v.d != theta.d or v.n != theta.n:
        raise ModuleMismatch("vector and block map live over different data")
    parts = tensor_components(v)
    coords = parts.get(tuple(theta.source.lam))
    if not coords:
        return TensorVector.zero(v.params, v.n, v.d)
    image = theta_apply(theta, coords)
    return theta.target.to_tensor(image, n=v.n)


def commutant_check(theta: ThetaMap, samples, gens=None) -> bool:
    """Whether the block map commutes with the generator action on every
    sample vector."""
    gens = range(theta.d - 1) if gens is None else gens
    for v in samples:
        for k in gens:
            if theta_on_tensor(theta, act_H(v, k)) != act_H(
                    theta_on_tensor(theta, v), k):
                return False
    return True


# degree-bounded invariant coefficients ------------------------------------------


def invariant_basis(params, d, delta, degree) -> list:
    """Monomial orbit sums under the Young subgroup of delta, with
    nonnegative exponents of total degree at most the bound.  For Laurent
    rings this is the polynomial slice of the invariants."""
    group = young_subgroup(strip_zeros(delta))
    nf = len(params.algebra.labels)
    seen = set()
    out = []
    for t in range(degree + 1):
        for exps in weak_compositions(t, d):
            for fkey in product(range(nf), repeat=d):
                if (exps, fkey) in seen:
                    continue
                orbit = set()
                for w in group:
                    pe = [0] * d
                    pf = [0] * d
                    for i in range(d):
                        pe[w[i]] = exps[i]
                        pf[w[i]] = fkey[i]
                    orbit.add((tuple(pe), tuple(pf)))
                seen.update(orbit)
                total = zero_poly(params, d)
                for oe, of in sorted(orbit):
                    total = total + monomial(params, d, of, oe)
                out.append(total)
    return out


def _rank(rows) -> int:
    """Row rank of sparse vectors {key: field scalar} by exact elimination."""
    pivots = []
    rank = 0
    for row in rows:
        row = {k: c for k, c in row.items() if not is_zero(c)}
        for key, piv in pivots:
            c = row.get(key)
            if c is None:
                continue
            factor = c / piv[key]
            for k2, v2 in piv.items():
                cur = row.pop(k2, None)
                nxt = (cur - factor * v2) if cur is not None else -(factor * v2)
                if not is_zero(nxt):
                    row[k2] = nxt
        if row:
            key = sorted(row)[0]
            pivots.append((key, row))
            rank += 1
    return rank


def theta_family_rank(params, lam, mu, degree) -> dict:
    """Linear independence of the block maps with fixed source and target
    weights, over the degree-bounded invariant coefficients: returns the
    number of maps and the rank of their expansion matrix."""
    lam, mu = tuple(lam), tuple(mu)
    d = sum(lam)
    if sum(mu) != d:
        raise ValueError("weights must have equal size")
    rows = []
    count = 0
    for g in double_coset_reps(strip_zeros(lam), strip_zeros(mu)):
        A = matrix_from_triple(lam, g, mu)
        delta = tuple(A.rows[i][j] for j in range(len(mu))
                      for i in range(len(lam)) if A.rows[i][j])
        for P in invariant_basis(params, d, delta, degree):
            theta = ThetaMap(params, A, P)
            vec = {}
            for w, b in theta.core.terms.items():
                for key, c in b.terms.items():
                    vec[(w, key)] = c
            rows.append(vec)
            count += 1
    return {"count": count, "rank": _rank(rows)}
