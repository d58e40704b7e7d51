"""The wreath Hecke-type product algebra in normal form.

Elements are stored as sparse sums sum_w b_w H_w with coefficients b_w on
the left, w running over permutations, and H_w the word generators.  All
products are rewritten back into this normal form using the defining
moves: the quadratic rule H_i^2 = S_i H_i + R_i, the braid moves, and the
straightening rule H_i b = sigma_i(b) H_i + rho_i(b).
"""

from functools import lru_cache

from .symcomb import (
    Perm, all_perms, blocks, check_refines, coset_reps, double_coset_reps,
    identity, increasing_on_blocks, inv_set, inverse, left_reps_in_young,
    length, longest_in_young, matrix_from_triple, mul, reduced_word, region_L,
    region_N, simple, to_one_line, young_subgroup,
)
from .tensor_poly import (
    TensorPoly, abar_ij, alpha_ij, r_ij, s_ij, unit_poly, zero_poly,
)

import json


class ParamMismatch(ValueError):
    pass


class FormulaMismatch(ArithmeticError):
    """Two routes to the same product-of-alphas element disagree."""


class IdentityFailed(ValueError):
    """A certified identity check found a counterexample; see .witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _is_xfree(p: TensorPoly) -> bool:
    zero = (0,) * p.d
    return all(exps == zero for exps, _ in p.terms)


class PqwpElement:
    """Sparse normal form sum_w b_w H_w; no zero coefficients stored."""

    __slots__ = ("params", "d", "terms")

    def __init__(self, params, d, terms=None):
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "d", d)
        clean = {}
        for w, c in (terms or {}).items():
            if not c.is_zero():
                clean[w] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PqwpElement is immutable")

    # constructors --------------------------------------------------------

    @staticmethod
    def zero(params, d) -> "PqwpElement":
        return PqwpElement(params, d, {})

    @staticmethod
    def one(params, d) -> "PqwpElement":
        return PqwpElement(params, d, {identity(d): unit_poly(params, d)})

    @staticmethod
    def of_poly(p: TensorPoly) -> "PqwpElement":
        return PqwpElement(p.params, p.d, {identity(p.d): p})

    @staticmethod
    def h_gen(params, d, i) -> "PqwpElement":
        if not 0 <= i < d - 1:
            raise ValueError(f"generator index {i} out of range for d={d}")
        return PqwpElement(params, d, {simple(d, i): unit_poly(params, d)})

    @staticmethod
    def h_of_perm(params, d, w: Perm) -> "PqwpElement":
        return PqwpElement(params, d, {w: unit_poly(params, d)})

    @staticmethod
    def of_word(params, d, letters) -> "PqwpElement":
        """Product of generators H_{i_1} ... H_{i_N}; the word need not be
        reduced (non-reduced steps expand through the quadratic rule)."""
        out = PqwpElement.one(params, d)
        for i in letters:
            out = pqwp_mul(out, PqwpElement.h_gen(params, d, i))
        return out

    # ring structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def _same_space(self, other):
        if self.params is not other.params or self.d != other.d:
            raise ParamMismatch("elements live over different data")

    def __add__(self, other):
        if not isinstance(other, PqwpElement):
            return NotImplemented
        self._same_space(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            acc = terms.get(w)
            terms[w] = c if acc is None else acc + c
        return PqwpElement(self.params, self.d, terms)

    def __neg__(self):
        return PqwpElement(self.params, self.d,
                           {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PqwpElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "PqwpElement":
        return PqwpElement(self.params, self.d,
                           {w: p.scale(c) for w, p in self.terms.items()})

    def poly_left(self, p: TensorPoly) -> "PqwpElement":
        """Multiply by a coefficient on the left: p * (sum b_w H_w)."""
        return PqwpElement(self.params, self.d,
                           {w: p * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PqwpElement):
            return pqwp_mul(self, other)
        if isinstance(other, TensorPoly):
            return pqwp_mul(self, PqwpElement.of_poly(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, TensorPoly):
            return self.poly_left(other)
        return NotImplemented

    def __eq__(self, other):
        return (isinstance(other, PqwpElement) and self.params is other.params
                and self.d == other.d and self.terms == other.terms)

    def coefficient(self, w: Perm) -> TensorPoly:
        return self.terms.get(w, zero_poly(self.params, self.d))

    def support(self):
        return sorted(self.terms, key=lambda w: (length(w), w))

    # rendering -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        order = sorted(self.terms, key=lambda w: (-length(w), w))
        for w in order:
            c = self.terms[w]
            word = reduced_word(w)
            if not word:
                chunks.append(str(c))
                continue
            hname = "H[" + ",".join(str(i + 1) for i in word) + "]"
            cs = str(c)
            if c == unit_poly(self.params, self.d):
                chunks.append(hname)
            else:
                if " + " in cs or " - " in cs:
                    cs = "(" + cs + ")"
                chunks.append(f"{cs}*{hname}")
        return " + ".join(chunks)

    def __repr__(self):
        return f"PqwpElement({self})"

    def to_json(self) -> str:
        rows = []
        for w in self.support():
            rows.append({
                "word": [i + 1 for i in reduced_word(w)],
                "one_line": to_one_line(w),
                "coeff": json.loads(self.terms[w].to_json()),
            })
        return json.dumps({"d": self.d, "terms": rows})


# rewriting core ------------------------------------------------------------


@lru_cache(maxsize=None)
def _right_step(params, d, z: Perm, i: int):
    """H_z * H_i in normal form, as a tuple of (perm, coeff) pairs."""
    zi = mul(z, simple(d, i))
    if length(zi) > length(z):
        return ((zi, unit_poly(params, d)),)
    s_emb = s_ij(params, d, i, i + 1).place_permute(zi)
    r_emb = r_ij(params, d, i, i + 1).place_permute(zi)
    return ((z, s_emb), (zi, r_emb))


@lru_cache(maxsize=None)
def _left_step(params, d, i: int, z: Perm):
    """H_i * H_z in normal form, as a tuple of (perm, coeff) pairs."""
    iz = mul(simple(d, i), z)
    if length(iz) > length(z):
        return ((iz, unit_poly(params, d)),)
    return ((z, s_ij(params, d, i, i + 1)), (iz, r_ij(params, d, i, i + 1)))


def _add_term(acc, w, c):
    cur = acc.get(w)
    acc[w] = c if cur is None else cur + c


def _h_times_h(params, d, w: Perm, v: Perm):
    """H_w * H_v as a dict perm -> left coefficient."""
    cur = {w: unit_poly(params, d)}
    for i in reduced_word(v):
        nxt = {}
        for z, c in cur.items():
            for y, e in _right_step(params, d, z, i):
                _add_term(nxt, y, c * e)
        cur = {y: c for y, c in nxt.items() if not c.is_zero()}
    return cur


def _push_left(params, d, w: Perm, q: TensorPoly):
    """H_w * q as a dict perm -> left coefficient."""
    if _is_xfree(q):
        return {w: q.place_permute(w)}
    cur = {identity(d): q}
    for i in reversed(reduced_word(w)):
        nxt = {}
        for z, c in cur.items():
            rho = c.twisted_demazure(i)
            if not rho.is_zero():
                _add_term(nxt, z, rho)
            sig = c.place_permute_simple(i)
            if not sig.is_zero():
                for y, e in _left_step(params, d, i, z):
                    _add_term(nxt, y, sig * e)
        cur = {y: c for y, c in nxt.items() if not c.is_zero()}
    return cur


def pqwp_mul(a: PqwpElement, b: PqwpElement) -> PqwpElement:
    """Product in normal form."""
    if not isinstance(a, PqwpElement) or not isinstance(b, PqwpElement):
        raise ParamMismatch("pqwp_mul needs two algebra elements")
    a._same_space(b)
    params, d = a.params, a.d
    acc = {}
    for u, p in a.terms.items():
        for v, q in b.terms.items():
            mid = _push_left(params, d, u, q)
            for z, c in mid.items():
                pc = p * c
                if pc.is_zero():
                    continue
                if v == identity(d):
                    _add_term(acc, z, pc)
                    continue
                for y, e in _h_times_h(params, d, z, v).items():
                    _add_term(acc, y, pc * e)
    return PqwpElement(params, d, acc)


def right_coefficient_form(elt: PqwpElement) -> dict:
    """Rewrite sum b_w H_w as sum H_w c_w; returns {perm: right coeff}.

    Exact for any element: corrections from straightening past the H's are
    strictly length-decreasing, so elimination from the top terminates.
    """
    params, d = elt.params, elt.d
    work = dict(elt.terms)
    out = {}
    while work:
        w = max(work, key=lambda u: (length(u), u))
        b = work.pop(w)
        c = b.place_permute(inverse(w))
        out[w] = out.get(w, zero_poly(params, d)) + c
        expand = _push_left(params, d, w, c)
        expand.pop(w, None)
        for z, e in expand.items():
            cur = work.get(z, zero_poly(params, d)) - e
            if cur.is_zero():
                work.pop(z, None)
            else:
                work[z] = cur
    return {w: c for w, c in out.items() if not c.is_zero()}


def from_right_coefficients(params, d, rights: dict) -> PqwpElement:
    """Assemble sum H_w c_w from a {perm: coefficient} map."""
    acc = {}
    for w, c in rights.items():
        for z, e in _push_left(params, d, w, c).items():
            _add_term(acc, z, e)
    return PqwpElement(params, d, acc)


# products of alphas over inversion sets -------------------------------------


def _base_factor(params, d, which, a, b) -> TensorPoly:
    if which == "alpha":
        return alpha_ij(params, d, a, b)
    if which == "abar":
        return abar_ij(params, d, a, b)
    raise ValueError(f"unknown family {which!r}")


def alpha_family(params, d, w: Perm, which: str = "alpha") -> TensorPoly:
    """Product of alpha factors over the inversions of w.

    which = 'alpha' or 'abar' multiplies over Inv(w); 'alpha_star' is the
    same alpha product over Inv(w^{-1}).  The result is computed both as a
    raw inversion-set product and through the twisted reduced-word product,
    and the two must agree (they do exactly when the factors are central).
    """
    star = which == "alpha_star"
    base = "alpha" if star else which
    target = inverse(w) if star else w
    out = unit_poly(params, d)
    for (i, j) in sorted(inv_set(target)):
        out = out * _base_factor(params, d, base, i, j)
    check = _alpha_by_word(params, d, w, base, star)
    if out != check:
        raise FormulaMismatch(
            f"inversion product and word product differ for w={to_one_line(w)}"
            f" family={which}")
    return out


def _alpha_by_word(params, d, w: Perm, base: str, star: bool) -> TensorPoly:
    """Twisted product along a reduced word.

    For the plain family the factors are read from the right end of the
    word inward, each twisted by the simple flips consumed so far; the
    starred family reads from the left end.
    """
    word = reduced_word(w)
    out = unit_poly(params, d)
    prefix = identity(d)
    letters = word if star else tuple(reversed(word))
    for i in letters:
        factor = _base_factor(params, d, base, i, i + 1).place_permute(prefix)
        out = out * factor
        prefix = mul(prefix, simple(d, i))
    return out


def _alpha_over_pairs(params, d, pairs, which="alpha") -> TensorPoly:
    out = unit_poly(params, d)
    for (i, j) in sorted(pairs):
        out = out * _base_factor(params, d, which, i, j)
    return out


# quasi-idempotents -----------------------------------------------------------


def k_lambda(params, d, lam, flavor: str = "full", nu=None) -> PqwpElement:
    """The K element of a composition, or a one-sided partial version.

    full:  sum over w in the Young subgroup of alpha_{w0 w^{-1}} H_w.
    upper: sum over shortest representatives of S_nu \\ S_lam of
           H_w alpha_{w0'^{-1} w}  (coefficients straightened to the left).
    tilde: sum over shortest representatives of S_lam / S_nu of
           alpha_{w0'' w^{-1}} H_w.
    """
    lam = tuple(lam)
    if sum(lam) != d:
        raise ValueError(f"composition {lam} does not sum to {d}")
    if flavor == "full":
        w0 = longest_in_young(lam)
        terms = {}
        for w in young_subgroup(lam):
            terms[w] = alpha_family(params, d, mul(w0, inverse(w)))
        return PqwpElement(params, d, terms)
    if nu is None:
        raise ValueError("partial flavors need the refinement nu")
    nu = tuple(nu)
    check_refines(nu, lam)
    if flavor == "upper":
        reps = left_reps_in_young(nu, lam)
        w0p = max(reps, key=length)
        terms = {}
        for w in reps:
            right = alpha_family(params, d, mul(inverse(w0p), w))
            terms[w] = right.place_permute(w)
        return PqwpElement(params, d, terms)
    if flavor == "tilde":
        reps = tuple(w for w in young_subgroup(lam)
                     if increasing_on_blocks(w, nu))
        w0pp = max(reps, key=length)
        terms = {}
        for w in reps:
            terms[w] = alpha_family(params, d, mul(w0pp, inverse(w)))
        return PqwpElement(params, d, terms)
    raise ValueError(f"unknown flavor {flavor!r}")


def m_lambda(params, d, lam) -> TensorPoly:
    """Symmetric scalar with K_lam^2 = m_lam K_lam: sum over the Young
    subgroup of alpha products over missed inversions times abar products
    over taken ones, inside the same-block region."""
    lam = tuple(lam)
    if sum(lam) != d:
        raise ValueError(f"composition {lam} does not sum to {d}")
    ell = region_L(lam)
    out = zero_poly(params, d)
    for w in young_subgroup(lam):
        iw = inv_set(w)
        term = _alpha_over_pairs(params, d, ell - iw, "alpha")
        term = term * _alpha_over_pairs(params, d, ell & iw, "abar")
        out = out + term
    return out


def multinomial(params, d, lam) -> TensorPoly:
    """Generalized binomial sum over shortest coset representatives, with
    alpha over missed cross-block pairs and abar over inverted ones."""
    lam = tuple(lam)
    if sum(lam) != d:
        raise ValueError(f"composition {lam} does not sum to {d}")
    enn = region_N(lam)
    out = zero_poly(params, d)
    for w in coset_reps(lam, "right"):
        iw = inv_set(w)
        term = _alpha_over_pairs(params, d, enn - iw, "alpha")
        term = term * _alpha_over_pairs(params, d, enn & iw, "abar")
        out = out + term
    return out


# certified identities --------------------------------------------------------


def _first_difference(a: PqwpElement, b: PqwpElement):
    for w in sorted(set(a.terms) | set(b.terms), key=lambda u: (length(u), u)):
        ca, cb = a.coefficient(w), b.coefficient(w)
        if ca != cb:
            return w, ca, cb
    return None


def _require_equal(a: PqwpElement, b: PqwpElement, label: str):
    diff = _first_difference(a, b)
    if diff is not None:
        w, ca, cb = diff
        raise IdentityFailed(
            f"{label}: coefficient of H_{to_one_line(w)} differs: {ca} vs {cb}",
            witness={"identity": label, "perm": to_one_line(w),
                     "left": str(ca), "right": str(cb)})


def eigenvector_check(params, d, lam, extra_left=()) -> None:
    """K_lam H_i = K_lam abar_i for simple reflections inside the blocks,
    also after multiplying K_lam by each given element on the left."""
    lam = tuple(lam)
    k = k_lambda(params, d, lam)
    tests = [k]
    for f in extra_left:
        tests.append(pqwp_mul(f, k))
    for blk in blocks(lam):
        for i in range(blk.start, blk.stop - 1):
            hi = PqwpElement.h_gen(params, d, i)
            bar = PqwpElement.of_poly(abar_ij(params, d, i, i + 1))
            for t, f in enumerate(tests):
                _require_equal(pqwp_mul(f, hi), pqwp_mul(f, bar),
                               f"eigenvector lam={lam} i={i + 1} elt#{t}")


def decompose_k(params, d, lam, g, mu) -> dict:
    """Certify the two coset factorizations attached to a double coset
    datum (lam, g, mu), plus the eigenvector property of K_lam.

    Returns the computed pieces; raises IdentityFailed on any mismatch.
    """
    lam, mu = tuple(lam), tuple(mu)
    A = matrix_from_triple(lam, g, mu)
    delta_r = tuple(x for row in A.rows for x in row if x)
    delta_c = tuple(A.rows[i][j] for j in range(len(mu))
                    for i in range(len(lam)) if A.rows[i][j])
    k_mu = k_lambda(params, d, mu)
    k_delta = k_lambda(params, d, delta_c)
    k_mu_delta = k_lambda(params, d, mu, "upper", delta_c)
    _require_equal(k_mu, pqwp_mul(k_delta, k_mu_delta),
                   f"K_mu = K_delta K_mu^delta (mu={mu}, delta={delta_c})")
    k_lam = k_lambda(params, d, lam)
    k_nu = k_lambda(params, d, delta_r)
    k_lam_tilde = k_lambda(params, d, lam, "tilde", delta_r)
    _require_equal(k_lam, pqwp_mul(k_lam_tilde, k_nu),
                   f"K_lam = tilde-K_lam^nu K_nu (lam={lam}, nu={delta_r})")
    eigenvector_check(params, d, lam)
    return {"matrix": A, "nu": delta_r, "delta": delta_c,
            "k_lam": k_lam, "k_mu": k_mu}


def h_of_perm_element(params, d, w: Perm) -> PqwpElement:
    return PqwpElement.h_of_perm(params, d, w)


def mackey_expansion(params, d, lam, mu) -> PqwpElement:
    """Expand the double-coset sum for the full-group K element:
    sum over minimal representatives g of
    K~_lam^{nu(g)} * alpha_A * H_g * K_{delta(g)} * K_mu^{delta(g)},
    where alpha_A is the product of alpha over cross-block pairs shared by
    both sides and not inverted by g inverse.  Certifies equality with
    K_{(d)} and returns it.
    """
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != d or sum(mu) != d:
        raise ValueError("both compositions must sum to d")
    n_lam = region_N(lam)
    n_mu = region_N(mu)
    total = PqwpElement.zero(params, d)
    for g in double_coset_reps(lam, mu):
        A = matrix_from_triple(lam, g, mu)
        nu_g = tuple(x for row in A.rows for x in row if x)
        delta_g = tuple(A.rows[i][j] for j in range(len(mu))
                        for i in range(len(lam)) if A.rows[i][j])
        g_n_mu = frozenset((min(g[a], g[b]), max(g[a], g[b]))
                           for (a, b) in n_mu)
        pairs = (n_lam & g_n_mu) - inv_set(inverse(g))
        alpha_a = _alpha_over_pairs(params, d, pairs)
        piece = k_lambda(params, d, lam, "tilde", nu_g)
        piece = pqwp_mul(piece, PqwpElement.of_poly(alpha_a))
        piece = pqwp_mul(piece, PqwpElement.h_of_perm(params, d, g))
        piece = pqwp_mul(piece, k_lambda(params, d, delta_g))
        piece = pqwp_mul(piece, k_lambda(params, d, mu, "upper", delta_g))
        total = total + piece
    _require_equal(k_lambda(params, d, (d,)), total,
                   f"double-coset expansion lam={lam} mu={mu}")
    return total
