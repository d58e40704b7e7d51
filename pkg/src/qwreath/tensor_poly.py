"""Polynomials and Laurent polynomials over tensor powers of F: the ring
B^{tensor d} = F^{tensor d}[x_1..x_d], the place permutation action, plain
and twisted divided differences, and a localized wrapper whose denominators
are products of (x_i - x_j) and P_{ij} factors."""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache

from .coeff_ring import is_zero, scalar_str
from .base_algebra import FTensor


class SizeMismatch(ValueError):
    pass


class TensorPoly:
    """Sparse element of F^{tensor d}[x_1..x_d]; keys are pairs
    (exponent vector, F-basis index vector).  Laurent variant admits
    negative exponents, polynomial variant rejects them."""

    __slots__ = ("params", "d", "terms")

    def __init__(self, params, d, terms=None):
        self.params = params
        self.d = d
        clean = {}
        if terms:
            laurent = params.variant == "laurent"
            for (exps, fkey), c in terms.items():
                if is_zero(c):
                    continue
                if len(exps) != d or len(fkey) != d:
                    raise SizeMismatch(f"term arity differs from d={d}")
                if not laurent and any(e < 0 for e in exps):
                    raise ValueError("negative exponent in polynomial variant")
                clean[(tuple(exps), tuple(fkey))] = c
        self.terms = clean

    # construction helpers

    def _like(self, terms):
        return TensorPoly(self.params, self.d, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _same_space(self, other):
        if self.params is not other.params or self.d != other.d:
            raise SizeMismatch("operands live in different rings")

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        self._same_space(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key)
            out[key] = c if v is None else v + c
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TensorPoly":
        return self._like({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TensorPoly):
            return self.scale(other)
        self._same_space(other)
        alg = self.params.algebra
        out = {}
        for (e1, f1), c1 in self.terms.items():
            for (e2, f2), c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                partial = {(): c1 * c2}
                for s in range(self.d):
                    nxt = {}
                    for pk, pc in partial.items():
                        for (bidx, sc) in alg.table[f1[s]][f2[s]]:
                            key = pk + (bidx,)
                            v = nxt.get(key)
                            nxt[key] = pc * sc if v is None else v + pc * sc
                    partial = nxt
                for fkey, c in partial.items():
                    k = (exps, fkey)
                    v = out.get(k)
                    out[k] = c if v is None else v + c
        return self._like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a TensorPoly")
        out = unit_poly(self.params, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, TensorPoly) and self.params is other.params
                and self.d == other.d and self.terms == other.terms)

    # structure maps

    def place_permute(self, w) -> "TensorPoly":
        """Slot i moves to slot w[i], both x's and F-legs; a ring map."""
        if len(w) != self.d:
            raise SizeMismatch("permutation size differs from d")
        out = {}
        for (exps, fkey), c in self.terms.items():
            ne = [0] * self.d
            nf = [0] * self.d
            for i in range(self.d):
                ne[w[i]] = exps[i]
                nf[w[i]] = fkey[i]
            out[(tuple(ne), tuple(nf))] = c
        return self._like(out)

    def place_permute_simple(self, i) -> "TensorPoly":
        """Swap adjacent slots i, i+1."""
        j = i + 1
        out = {}
        for (exps, fkey), c in self.terms.items():
            ne = list(exps)
            nf = list(fkey)
            ne[i], ne[j] = ne[j], ne[i]
            nf[i], nf[j] = nf[j], nf[i]
            out[(tuple(ne), tuple(nf))] = c
        return self._like(out)

    def demazure(self, i) -> "TensorPoly":
        """Divided difference in x_i, x_{i+1}; F-legs ride along unchanged.
        Valid for negative exponents: the signed geometric sum form."""
        j = i + 1
        out = {}
        for (exps, fkey), c in self.terms.items():
            k, l = exps[i], exps[j]
            if k == l:
                continue
            base = list(exps)
            if k > l:
                for step in range(k - l):
                    base[i] = k - 1 - step
                    base[j] = l + step
                    key = (tuple(base), fkey)
                    v = out.get(key)
                    out[key] = c if v is None else v + c
            else:
                for step in range(l - k):
                    base[i] = k + step
                    base[j] = l - 1 - step
                    key = (tuple(base), fkey)
                    v = out.get(key)
                    out[key] = -c if v is None else v - c
        return self._like(out)

    def twisted_demazure(self, i) -> "TensorPoly":
        """rho_i: monomial f*x^e goes to sigma_i(f) * (divided difference of
        x^e) * beta_{i,i+1}.  Only the F-legs are flipped before the
        difference; flipping the x-part too would negate it."""
        j = i + 1
        out = {}
        for (exps, fkey), c in self.terms.items():
            k, l = exps[i], exps[j]
            if k == l:
                continue
            nf = list(fkey)
            nf[i], nf[j] = nf[j], nf[i]
            nf = tuple(nf)
            base = list(exps)
            if k > l:
                for step in range(k - l):
                    base[i] = k - 1 - step
                    base[j] = l + step
                    key = (tuple(base), nf)
                    v = out.get(key)
                    out[key] = c if v is None else v + c
            else:
                for step in range(l - k):
                    base[i] = k + step
                    base[j] = l - 1 - step
                    key = (tuple(base), nf)
                    v = out.get(key)
                    out[key] = -c if v is None else v - c
        core = self._like(out)
        return core * beta_ij(self.params, self.d, i, j)

    # rendering

    def _term_str(self, key) -> str:
        (exps, fkey), c = key, self.terms[key]
        labels = self.params.algebra.labels
        fpart = "(" + "⊗".join(labels[i] for i in fkey) + ")"
        xs = []
        for i, e in enumerate(exps):
            if e == 1:
                xs.append(f"x{i + 1}")
            elif e != 0:
                xs.append(f"x{i + 1}^{e}")
        body = "*".join([fpart] + xs)
        cs = scalar_str(c)
        if cs == "1":
            return body
        if cs == "-1":
            return f"-{body}"
        if any(ch in cs[1:] for ch in "+-") or "/" in cs:
            cs = f"({cs})"
        return f"{cs}*{body}"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [self._term_str(k) for k in sorted(self.terms, reverse=True)]
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"TensorPoly({self})"

    def to_json(self) -> str:
        rows = []
        for (exps, fkey) in sorted(self.terms, reverse=True):
            rows.append({"exps": list(exps), "fslots": list(fkey),
                         "coeff": scalar_str(self.terms[(exps, fkey)])})
        return json.dumps({"terms": rows})


# constructors ------------------------------------------------------------------

def zero_poly(params, d) -> TensorPoly:
    return TensorPoly(params, d)


def unit_poly(params, d) -> TensorPoly:
    key = ((0,) * d, (params.algebra.unit_index,) * d)
    return TensorPoly(params, d, {key: params.field.one()})


def x_var(params, d, i) -> TensorPoly:
    exps = tuple(1 if k == i else 0 for k in range(d))
    key = (exps, (params.algebra.unit_index,) * d)
    return TensorPoly(params, d, {key: params.field.one()})


def monomial(params, d, fkey, exps, coeff=None) -> TensorPoly:
    c = params.field.one() if coeff is None else coeff
    return TensorPoly(params, d, {(tuple(exps), tuple(fkey)): c})


def of_ftensor(params, d, ft: FTensor) -> TensorPoly:
    if ft.arity != d:
        raise SizeMismatch("tensor arity differs from d")
    zero_exps = (0,) * d
    return TensorPoly(params, d, {(zero_exps, key): c for key, c in ft.terms.items()})


# named elements, cached per (params, d, i, j) ------------------------------------

@lru_cache(maxsize=None)
def alpha_ij(params, d, a, b) -> TensorPoly:
    return of_ftensor(params, d, params.alpha.embed((a, b), d))


@lru_cache(maxsize=None)
def abar_ij(params, d, a, b) -> TensorPoly:
    return of_ftensor(params, d, params.alpha_bar.embed((a, b), d))


@lru_cache(maxsize=None)
def s_ij(params, d, a, b) -> TensorPoly:
    return of_ftensor(params, d, params.s_elt.embed((a, b), d))


@lru_cache(maxsize=None)
def r_ij(params, d, a, b) -> TensorPoly:
    return of_ftensor(params, d, params.r_elt.embed((a, b), d))


@lru_cache(maxsize=None)
def beta_ij(params, d, a, b) -> TensorPoly:
    out = zero_poly(params, d)
    for (r, s), delta in params.deltas.items():
        if delta.is_zero():
            continue
        exps = [0] * d
        exps[a] = r
        exps[b] = s
        part = {(tuple(exps), key): c for key, c in delta.embed((a, b), d).terms.items()}
        out = out + TensorPoly(params, d, part)
    return out


@lru_cache(maxsize=None)
def p_ij(params, d, a, b) -> TensorPoly:
    lin = x_var(params, d, a) - x_var(params, d, b)
    return alpha_ij(params, d, a, b) * lin + beta_ij(params, d, a, b)


# exact division ------------------------------------------------------------------

def divide_exact_linear(p: TensorPoly, i: int, j: int):
    """Quotient p / (x_i - x_j) if the division is exact, else None.
    Works for Laurent content by shifting into nonnegative exponents."""
    if p.is_zero():
        return p
    shift_i = min(0, min(exps[i] for (exps, _) in p.terms))
    shift_j = min(0, min(exps[j] for (exps, _) in p.terms))
    work = {}
    for (exps, fkey), c in p.terms.items():
        e = list(exps)
        e[i] -= shift_i
        e[j] -= shift_j
        work[(tuple(e), fkey)] = c
    quot = {}
    while work:
        # peel the term with the highest x_i exponent
        key = max(work, key=lambda k: (k[0][i], k[0], k[1]))
        (exps, fkey) = key
        c = work.pop(key)
        if exps[i] == 0:
            return None
        qe = list(exps)
        qe[i] -= 1
        qkey = (tuple(qe), fkey)
        v = quot.get(qkey)
        quot[qkey] = c if v is None else v + c
        # subtract quotient-term * (x_i - x_j): the x_i part cancels exactly
        re = list(qe)
        re[j] += 1
        rkey = (tuple(re), fkey)
        v = work.get(rkey)
        v = c if v is None else v + c
        if is_zero(v):
            work.pop(rkey, None)
        else:
            work[rkey] = v
    out = {}
    for (exps, fkey), c in quot.items():
        if is_zero(c):
            continue
        e = list(exps)
        e[i] += shift_i
        e[j] += shift_j
        out[(tuple(e), fkey)] = c
    return TensorPoly(p.params, p.d, out)


# localized elements ---------------------------------------------------------------

def factor_value(params, d, tag) -> TensorPoly:
    kind, a, b = tag
    if kind == "lin":
        return x_var(params, d, a) - x_var(params, d, b)
    if kind == "P":
        return p_ij(params, d, a, b)
    raise ValueError(f"unknown factor tag {tag!r}")


class LocalizedElement:
    """core * (product of nfac factors) / (product of dfac factors), the
    factors drawn from (x_i - x_j) and P_{ij}.  Numerator factors are kept
    unexpanded so that identical factors cancel syntactically; leftover
    linear denominators are removed by exact division when possible.
    Equality is decided by cross-multiplication, which is sound because
    the factor set contains no zero divisors."""

    __slots__ = ("core", "nfac", "dfac")

    def __init__(self, core: TensorPoly, nfac=None, dfac=None):
        self.core = core
        self.nfac = Counter(nfac) if nfac else Counter()
        self.dfac = Counter(dfac) if dfac else Counter()
        self._reduce()

    @staticmethod
    def from_poly(p: TensorPoly) -> "LocalizedElement":
        return LocalizedElement(p)

    @staticmethod
    def zero(params, d) -> "LocalizedElement":
        return LocalizedElement(zero_poly(params, d))

    @staticmethod
    def one(params, d) -> "LocalizedElement":
        return LocalizedElement(unit_poly(params, d))

    @property
    def params(self):
        return self.core.params

    @property
    def d(self):
        return self.core.d

    def is_zero(self) -> bool:
        return self.core.is_zero()

    def _reduce(self):
        if self.core.is_zero():
            self.nfac.clear()
            self.dfac.clear()
            return
        common = self.nfac & self.dfac
        if common:
            self.nfac -= common
            self.dfac -= common
        # exact division clears linear denominators when the core allows it
        progress = True
        while progress and self.dfac:
            progress = False
            for tag in list(self.dfac):
                if tag[0] != "lin":
                    continue
                q = divide_exact_linear(self.core, tag[1], tag[2])
                if q is not None:
                    self.core = q
                    self.dfac[tag] -= 1
                    if self.dfac[tag] == 0:
                        del self.dfac[tag]
                    progress = True

    # factor-aware constructors

    def times_poly(self, p: TensorPoly) -> "LocalizedElement":
        return LocalizedElement(self.core * p, self.nfac, self.dfac)

    def scale(self, c) -> "LocalizedElement":
        return LocalizedElement(self.core.scale(c), self.nfac, self.dfac)

    def times_lin(self, i, j) -> "LocalizedElement":
        core = self.core if i < j else -self.core
        tag = ("lin", min(i, j), max(i, j))
        return LocalizedElement(core, self.nfac + Counter([tag]), self.dfac)

    def over_lin(self, i, j) -> "LocalizedElement":
        core = self.core if i < j else -self.core
        tag = ("lin", min(i, j), max(i, j))
        return LocalizedElement(core, self.nfac, self.dfac + Counter([tag]))

    def times_p(self, a, b) -> "LocalizedElement":
        return LocalizedElement(self.core, self.nfac + Counter([("P", a, b)]), self.dfac)

    def over_p(self, a, b) -> "LocalizedElement":
        return LocalizedElement(self.core, self.nfac, self.dfac + Counter([("P", a, b)]))

    # arithmetic

    def __neg__(self):
        return LocalizedElement(-self.core, self.nfac, self.dfac)

    def __add__(self, other):
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        self.core._same_space(other.core)
        shared_n = self.nfac & other.nfac
        lhs_extra = self.nfac - shared_n
        rhs_extra = other.nfac - shared_n
        den = self.dfac | other.dfac
        lc = self.core
        for tag, k in (lhs_extra + (den - self.dfac)).items():
            v = factor_value(self.params, self.d, tag)
            for _ in range(k):
                lc = lc * v
        rc = other.core
        for tag, k in (rhs_extra + (den - other.dfac)).items():
            v = factor_value(self.params, self.d, tag)
            for _ in range(k):
                rc = rc * v
        return LocalizedElement(lc + rc, shared_n, den)

    def __sub__(self, other):
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LocalizedElement):
            self.core._same_space(other.core)
            return LocalizedElement(self.core * other.core,
                                    self.nfac + other.nfac,
                                    self.dfac + other.dfac)
        if isinstance(other, TensorPoly):
            return self.times_poly(other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, TensorPoly):
            return LocalizedElement(other * self.core, self.nfac, self.dfac)
        return self.scale(other)

    def numerator(self) -> TensorPoly:
        out = self.core
        for tag, k in sorted(self.nfac.items()):
            v = factor_value(self.params, self.d, tag)
            for _ in range(k):
                out = out * v
        return out

    def denominator(self) -> TensorPoly:
        out = unit_poly(self.params, self.d)
        for tag, k in sorted(self.dfac.items()):
            v = factor_value(self.params, self.d, tag)
            for _ in range(k):
                out = out * v
        return out

    def as_tensor_poly(self) -> TensorPoly:
        if self.dfac:
            raise ValueError(f"denominator factors remain: {sorted(self.dfac)}")
        return self.numerator()

    def place_permute(self, w) -> "LocalizedElement":
        core = self.core.place_permute(w)
        nfac = Counter()
        sign = 1
        for (kind, a, b), k in self.nfac.items():
            na, nb = w[a], w[b]
            if kind == "lin" and na > nb:
                na, nb = nb, na
                if k % 2:
                    sign = -sign
            nfac[(kind, na, nb)] += k
        dfac = Counter()
        for (kind, a, b), k in self.dfac.items():
            na, nb = w[a], w[b]
            if kind == "lin" and na > nb:
                na, nb = nb, na
                if k % 2:
                    sign = -sign
            dfac[(kind, na, nb)] += k
        if sign < 0:
            core = -core
        return LocalizedElement(core, nfac, dfac)

    def __eq__(self, other):
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        self.core._same_space(other.core)
        lhs = self.numerator()
        for tag, k in sorted(other.dfac.items()):
            v = factor_value(self.params, self.d, tag)
            for _ in range(k):
                lhs = lhs * v
        rhs = other.numerator()
        for tag, k in sorted(self.dfac.items()):
            v = factor_value(self.params, self.d, tag)
            for _ in range(k):
                rhs = rhs * v
        return lhs == rhs

    def __str__(self):
        def fac_str(fac):
            bits = []
            for (kind, a, b), k in sorted(fac.items()):
                s = f"(x{a + 1}-x{b + 1})" if kind == "lin" else f"P{a + 1}{b + 1}"
                bits.append(s if k == 1 else f"{s}^{k}")
            return "*".join(bits)

        out = f"[{self.core}]"
        if self.nfac:
            out += "*" + fac_str(self.nfac)
        if self.dfac:
            out += "/" + fac_str(self.dfac)
        return out

    def __repr__(self):
        return f"LocalizedElement({self})"


# annihilator certificate for the C3 condition --------------------------------------

def annihilator_certificate(params, degree_bound: int = 3):
    """Look for a nonzero zeta of x-degree at most degree_bound with
    zeta*P = 0 or P*zeta = 0 where P = alpha*(x1-x2) + beta.  Returns
    (True, rank note) if none exists in the window, else (False, witness)."""
    d = 2
    P = p_ij(params, d, 0, 1)
    if P.is_zero():
        return False, "P = alpha*(x1-x2) + beta is itself zero"
    alg = params.algebra
    from itertools import product as iproduct
    unknowns = [(fkey, exps)
                for fkey in iproduct(range(alg.dim), repeat=d)
                for exps in iproduct(range(degree_bound + 1), repeat=d)]
    for side in ("left", "right"):
        columns = []
        for (fkey, exps) in unknowns:
            zeta = monomial(params, d, fkey, exps)
            prod = zeta * P if side == "left" else P * zeta
            columns.append(prod.terms)
        row_keys = sorted({k for col in columns for k in col})
        row_index = {k: r for r, k in enumerate(row_keys)}
        # sparse Gaussian elimination on the transpose: solve A z = 0
        rows = [dict() for _ in row_keys]
        for cidx, col in enumerate(columns):
            for k, c in col.items():
                rows[row_index[k]][cidx] = c
        pivots = {}
        for row in rows:
            live = {c: v for c, v in row.items() if not is_zero(v)}
            while live:
                lead = min(live)
                if lead in pivots:
                    prow = pivots[lead]
                    factor = live[lead] / prow[lead]
                    for c, v in prow.items():
                        nv = live.get(c, 0) - factor * v
                        if is_zero(nv):
                            live.pop(c, None)
                        else:
                            live[c] = nv
                else:
                    pivots[lead] = live
                    break
        if len(pivots) < len(unknowns):
            free = next(c for c in range(len(unknowns)) if c not in pivots)
            sol = {free: params.field.one()}
            for lead in sorted(pivots, reverse=True):
                prow = pivots[lead]
                acc = params.field.zero()
                for c, v in prow.items():
                    if c != lead and c in sol:
                        acc = acc + v * sol[c]
                sol[lead] = -acc / prow[lead]
            zeta = zero_poly(params, d)
            for cidx, coeff in sol.items():
                if is_zero(coeff):
                    continue
                fkey, exps = unknowns[cidx]
                zeta = zeta + monomial(params, d, fkey, exps, coeff)
            return False, f"{side} annihilator of P found: {zeta}"
    return True, f"no annihilator up to x-degree {degree_bound} (both sides full rank)"
