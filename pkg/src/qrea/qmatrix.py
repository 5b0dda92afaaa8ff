"""The quantum matrix algebra: relations, normal forms, minors, functionals.

Everything is derived mechanically from the braid operator so that the
deformation convention is single-sourced: the quadratic relations come from
row-reducing the N^4 scalar equations of the exchange relation, the
straightening rules re-orient each pivot at its greatest word, and normal
forms are sorted words in the row-major generator order.

Quantum minors are the matrix coefficients of the wedge coaction.  The
bicharacter functional and its two convolution inverses are evaluated
recursively from generator tables; the generator tables for the inverses are
obtained by solving the convolution definitions as finite linear systems.
Every identity family (Laplace, the common-submatrix expansion, braided
commutativity) is verified by exact normal-form equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .braiding import braid_pair_action, wedge_braiding
from .coeff import RF_ONE, RF_QDIFF, RF_ZERO, RatFunc, rf_q_int
from .indexsets import inversions
from .linalg import SingularMatrix, invert_matrix, sparse_row_reduce


class NonOrientable(Exception):
    """A derived relation has a sorted leading word; the order convention
    cannot orient it into a terminating rule."""


class SingularConvolutionSystem(Exception):
    """A convolution-inverse linear system is singular, which contradicts
    the defining relations."""


class IllFormedInstance(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# Words over the generator alphabet
# ---------------------------------------------------------------------------
# Generator (i, j), 1-based, is encoded as (i-1)*N + (j-1); row-major order.

def gen_id(i, j, N):
    return (i - 1) * N + (j - 1)


def gen_row(g, N):
    return g // N + 1


def gen_col(g, N):
    return g % N + 1


def word_rows(word, N):
    return tuple(g // N + 1 for g in word)


def word_cols(word, N):
    return tuple(g % N + 1 for g in word)


def word_from_rc(rows, cols, N):
    return tuple((r - 1) * N + (c - 1) for r, c in zip(rows, cols))


def word_str(word, N, tag="X"):
    return "*".join(f"{tag}{g // N + 1}{g % N + 1}" for g in word) if word else "1"


class NCPoly:
    """Noncommutative polynomial: coefficient map from words to RatFunc."""

    __slots__ = ("tag", "N", "coeffs")

    def __init__(self, N, coeffs=None, tag="X"):
        self.N = N
        self.tag = tag
        self.coeffs = {}
        if coeffs:
            for w, c in coeffs.items():
                if not c.is_zero():
                    self.coeffs[tuple(w)] = c

    @staticmethod
    def zero(N, tag="X"):
        return NCPoly(N, None, tag)

    @staticmethod
    def unit(N, tag="X"):
        return NCPoly(N, {(): RF_ONE}, tag)

    @staticmethod
    def generator(N, i, j, tag="X"):
        return NCPoly(N, {(gen_id(i, j, N),): RF_ONE}, tag)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, NCPoly) and self.tag == other.tag
                and self.N == other.N and self.coeffs == other.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w, RF_ZERO) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        p = NCPoly(self.N, None, self.tag)
        p.coeffs = out
        return p

    def __sub__(self, other):
        return self + other.scale(RF_ZERO - RF_ONE)

    def scale(self, c):
        if c.is_zero():
            return NCPoly(self.N, None, self.tag)
        p = NCPoly(self.N, None, self.tag)
        p.coeffs = {w: co * c for w, co in self.coeffs.items()}
        return p

    def __mul__(self, other):
        p = NCPoly(self.N, None, self.tag)
        out = {}
        for wa, ca in self.coeffs.items():
            for wb, cb in other.coeffs.items():
                w = wa + wb
                s = out.get(w, RF_ZERO) + ca * cb
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        p.coeffs = out
        return p

    def adjoint(self):
        """Formal *-structure: reverse words, transpose each generator."""
        N = self.N
        p = NCPoly(self.N, None, self.tag)
        out = {}
        for w, c in self.coeffs.items():
            w2 = tuple(gen_id(g % N + 1, g // N + 1, N) for g in reversed(w))
            out[w2] = out.get(w2, RF_ZERO) + c
        p.coeffs = {w: c for w, c in out.items() if not c.is_zero()}
        return p

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"({c!r})*{word_str(w, self.N, self.tag)}"
                 for w, c in sorted(self.coeffs.items())]
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Relation derivation and rewriting
# ---------------------------------------------------------------------------

def exchange_relations(N):
    """The N^4 scalar consequences of the braid exchange relation, as sparse
    degree-2 word vectors over the X alphabet."""
    rhat = {}
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            for (x, y), c in braid_pair_action(a, b):
                rhat[((x, y), (a, b))] = c
    vectors = []
    for k in range(1, N + 1):
        for l in range(1, N + 1):
            for i in range(1, N + 1):
                for j in range(1, N + 1):
                    v = {}
                    for ((x, y), (a, b)), c in rhat.items():
                        if (x, y) == (k, l):
                            w = (gen_id(a, i, N), gen_id(b, j, N))
                            s = v.get(w, RF_ZERO) + c
                            v[w] = s
                        if (a, b) == (i, j):
                            w = (gen_id(k, x, N), gen_id(l, y, N))
                            s = v.get(w, RF_ZERO) - c
                            v[w] = s
                    v = {w: c for w, c in v.items() if not c.is_zero()}
                    if v:
                        vectors.append(v)
    return vectors


def _word_greater(a, b):
    return (len(a), a) > (len(b), b)


class RewriteSystem:
    """Oriented quadratic straightening rules with memoised insertion."""

    def __init__(self, N, tag, rules):
        self.N = N
        self.tag = tag
        self.rules = rules            # (g1, g2) with g1 > g2 -> dict word -> RatFunc
        self._insert_memo = {}

    # -- normal forms ---------------------------------------------------------

    def _insert(self, g, mono):
        """Normal form of g * (sorted word mono) as dict sorted-word -> coeff."""
        key = (g, mono)
        memo = self._insert_memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not mono or g <= mono[0]:
            res = {(g,) + mono: RF_ONE}
        else:
            rest = mono[1:]
            acc = {}
            for (a, b), c in self.rules[(g, mono[0])].items():
                for m2, c2 in self._insert(b, rest).items():
                    cc = c * c2
                    for m3, c3 in self._insert(a, m2).items():
                        s = acc.get(m3, RF_ZERO) + cc * c3
                        if s.is_zero():
                            acc.pop(m3, None)
                        else:
                            acc[m3] = s
            res = acc
        memo[key] = res
        return res

    def nf_word(self, word):
        """Normal form of a word as dict sorted-word -> RatFunc."""
        if len(word) <= 1:
            return {tuple(word): RF_ONE}
        acc = {word[-1:]: RF_ONE}
        for g in reversed(word[:-1]):
            nxt = {}
            for mono, c in acc.items():
                for m2, c2 in self._insert(g, mono).items():
                    s = nxt.get(m2, RF_ZERO) + c * c2
                    if s.is_zero():
                        nxt.pop(m2, None)
                    else:
                        nxt[m2] = s
            acc = nxt
        return acc

    def normal_form(self, p):
        out = {}
        for w, c in p.coeffs.items():
            if all(w[i] <= w[i + 1] for i in range(len(w) - 1)):
                s = out.get(w, RF_ZERO) + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
                continue
            for m, c2 in self.nf_word(w).items():
                s = out.get(m, RF_ZERO) + c * c2
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        q = NCPoly(p.N, None, p.tag)
        q.coeffs = out
        return q

    # -- independent rewriting oracle ------------------------------------------

    def naive_normal_form(self, p, rng):
        """Rewrite at randomly chosen descents until none remain.

        Order-independence against normal_form is a confluence spot check.
        """
        work = dict(p.coeffs)
        done = {}
        while work:
            w, c = work.popitem()
            descents = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
            if not descents:
                s = done.get(w, RF_ZERO) + c
                if s.is_zero():
                    done.pop(w, None)
                else:
                    done[w] = s
                continue
            i = rng.choice(descents)
            for (a, b), c2 in self.rules[(w[i], w[i + 1])].items():
                w2 = w[:i] + (a, b) + w[i + 2:]
                s = work.get(w2, RF_ZERO) + c * c2
                if s.is_zero():
                    work.pop(w2, None)
                else:
                    work[w2] = s
        q = NCPoly(p.N, None, p.tag)
        q.coeffs = done
        return q

    # -- confluence -------------------------------------------------------------

    def critical_pairs_ok(self):
        """Resolve every overlap g1 g2 g3 (g1 > g2 > g3) both ways."""
        gens = sorted({g for (g, _) in self.rules} | {h for (_, h) in self.rules})
        for g1 in gens:
            for g2 in gens:
                if g2 >= g1 or (g1, g2) not in self.rules:
                    continue
                for g3 in gens:
                    if g3 >= g2 or (g2, g3) not in self.rules:
                        continue
                    left = {}
                    for (a, b), c in self.rules[(g1, g2)].items():
                        for m, c2 in self.nf_word((a, b, g3)).items():
                            s = left.get(m, RF_ZERO) + c * c2
                            if s.is_zero():
                                left.pop(m, None)
                            else:
                                left[m] = s
                    right = {}
                    for (a, b), c in self.rules[(g2, g3)].items():
                        for m, c2 in self.nf_word((g1, a, b)).items():
                            s = right.get(m, RF_ZERO) + c * c2
                            if s.is_zero():
                                right.pop(m, None)
                            else:
                                right[m] = s
                    if left != right:
                        return False
        return True


def derive_rewrite_system(N, tag, relation_vectors):
    """Row-reduce relation vectors and orient each pivot at its lead word."""
    pivots = sparse_row_reduce(relation_vectors, _word_greater)
    rules = {}
    for lead, vec in pivots.items():
        if len(lead) != 2 or lead[0] <= lead[1]:
            raise NonOrientable(f"sorted leading word {lead}")
        rhs = {w: (RF_ZERO - c) for w, c in vec.items() if w != lead}
        rules[lead] = rhs
    return RewriteSystem(N, tag, rules)


def derive_rewrite_rules(N):
    """Straightening rules of the quantum matrix algebra for size N."""
    rw = derive_rewrite_system(N, "X", exchange_relations(N))
    expected = N * N * (N * N - 1) // 2
    if len(rw.rules) != expected:
        raise NonOrientable(
            f"{len(rw.rules)} rules, expected {expected}: relation rank is off")
    return rw


def degree_dimension(N, rw, d):
    """Dimension of the degree-d component, by rank of the relation span.

    Independent of the rewriting engine: spans u * rel * v over all
    positions and takes a sparse rank.
    """
    gens = list(range(N * N))
    words = [()]
    for _ in range(d):
        words = [w + (g,) for w in words for g in gens]
    vectors = []
    for lead, rhs in rw.rules.items():
        rel = {lead: RF_ONE}
        for w, c in rhs.items():
            rel[w] = rel.get(w, RF_ZERO) - c
        for pre_len in range(d - 1):
            post_len = d - 2 - pre_len
            pres = [()]
            for _ in range(pre_len):
                pres = [w + (g,) for w in pres for g in gens]
            posts = [()]
            for _ in range(post_len):
                posts = [w + (g,) for w in posts for g in gens]
            for u in pres:
                for v in posts:
                    vectors.append({u + w + v: c for w, c in rel.items()})
    rank = len(sparse_row_reduce(vectors, _word_greater))
    return len(words) - rank


# ---------------------------------------------------------------------------
# Bialgebra structure
# ---------------------------------------------------------------------------

def _mid_tuples(N, length):
    out = [()]
    for _ in range(length):
        out = [t + (m,) for t in out for m in range(1, N + 1)]
    return out


def coproduct_word(word, N):
    """Delta of a word: list of (left word, right word) pairs, coefficient 1."""
    rows = word_rows(word, N)
    cols = word_cols(word, N)
    out = []
    for mid in _mid_tuples(N, len(word)):
        out.append((word_from_rc(rows, mid, N), word_from_rc(mid, cols, N)))
    return out


def coproduct(p):
    """Delta on an NCPoly, as a dict (word, word) -> RatFunc."""
    out = {}
    for w, c in p.coeffs.items():
        for pair in coproduct_word(w, p.N):
            s = out.get(pair, RF_ZERO) + c
            if s.is_zero():
                out.pop(pair, None)
            else:
                out[pair] = s
    return out


def counit_word(word, N):
    return all(g // N == g % N for g in word)


def counit(p):
    total = RF_ZERO
    for w, c in p.coeffs.items():
        if counit_word(w, p.N):
            total = total + c
    return total


def quantum_minor(N, rows, cols, tag="X"):
    """Wedge-coaction coefficient: the minor with the given row and column
    sets, as a signed sum over row arrangements."""
    rows = tuple(sorted(rows))
    cols = tuple(sorted(cols))
    if len(rows) != len(cols):
        raise SizeMismatch(f"|{rows}| != |{cols}|")
    if not rows:
        return NCPoly.unit(N, tag)
    coeffs = {}
    for perm in permutations(rows):
        w = word_from_rc(perm, cols, N)
        coeffs[w] = rf_q_int(inversions(perm))
    return NCPoly(N, coeffs, tag)


# ---------------------------------------------------------------------------
# The bicharacter and its convolution inverses
# ---------------------------------------------------------------------------

class Bicharacter:
    """Functional tables for the braiding bicharacter on monomial pairs.

    Generator values are read off the braid operator; values on longer
    words follow the multiplicative laws and are memoised.  The two
    convolution inverses carry reversed laws; their generator tables are
    solved from the defining identities and certified by re-substitution.
    """

    def __init__(self, N):
        self.N = N
        self._base_r = {}
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                # r(X_ii, X_jj) = q^{-delta_ij}
                self._base_r[(gen_id(i, i, N), gen_id(j, j, N))] = \
                    RatFunc.q_power(-1 if i == j else 0)
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if j < i:
                    # r(X_ji, X_ij) = q^{-1} - q
                    key = (gen_id(j, i, N), gen_id(i, j, N))
                    self._base_r[key] = self._base_r.get(key, RF_ZERO) + RF_QDIFF
        self._base_rinv = self._solve_base(cop=False)
        self._base_rpr = self._solve_base(cop=True)
        self._memo = {"r": {}, "rinv": {}, "rpr": {}}

    # -- generator-level solves -------------------------------------------------

    def _base_r_value(self, g, h):
        return self._base_r.get((g, h), RF_ZERO)

    def _solve_base(self, cop):
        """Invert the reshaped generator matrix of r.

        cop=False: rows (i,k), cols (m,n), entry r(X_im, X_kn)   -> r^{-1}
        cop=True : rows (i,l), cols (m,n), entry r(X_im, X_nl)   -> r'
        """
        N = self.N
        rows = []
        for a in range(1, N + 1):
            for b in range(1, N + 1):
                row = []
                for m in range(1, N + 1):
                    for n in range(1, N + 1):
                        if cop:
                            row.append(self._base_r_value(gen_id(a, m, N),
                                                          gen_id(n, b, N)))
                        else:
                            row.append(self._base_r_value(gen_id(a, m, N),
                                                          gen_id(b, n, N)))
                rows.append(row)
        try:
            inv = invert_matrix(rows)
        except SingularMatrix as exc:
            raise SingularConvolutionSystem(str(exc)) from exc
        table = {}
        for m in range(1, N + 1):
            for n in range(1, N + 1):
                for j in range(1, N + 1):
                    for k in range(1, N + 1):
                        val = inv[(m - 1) * N + (n - 1)][(j - 1) * N + (k - 1)]
                        if val.is_zero():
                            continue
                        if cop:
                            # r'(X_mj, X_kn)
                            table[(gen_id(m, j, N), gen_id(k, n, N))] = val
                        else:
                            # r^{-1}(X_mj, X_nk)
                            table[(gen_id(m, j, N), gen_id(n, k, N))] = val
        return table

    # -- recursive evaluation ------------------------------------------------------

    def _eval(self, wa, wb, base, peel_first, peel_second, memo):
        if not wa:
            return RF_ONE if counit_word(wb, self.N) else RF_ZERO
        if not wb:
            return RF_ONE if counit_word(wa, self.N) else RF_ZERO
        key = (wa, wb)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if len(wa) == 1 and len(wb) == 1:
            res = base.get((wa[0], wb[0]), RF_ZERO)
        elif len(wa) > 1:
            res = peel_first(wa, wb)
        else:
            res = peel_second(wa[0], wb)
        memo[key] = res
        return res

    def r(self, wa, wb):
        return self._eval(tuple(wa), tuple(wb), self._base_r,
                          self._r_peel_first, self._r_peel_second,
                          self._memo["r"])

    def _r_peel_first(self, wa, wb):
        # r(g a', b) = sum_mid r(g, b(K, mid)) r(a', b(mid, L))
        N = self.N
        g, rest = wa[:1], wa[1:]
        K, L = word_rows(wb, N), word_cols(wb, N)
        total = RF_ZERO
        for mid in _mid_tuples(N, len(wb)):
            c1 = self.r(g, word_from_rc(K, mid, N))
            if c1.is_zero():
                continue
            c2 = self.r(rest, word_from_rc(mid, L, N))
            if not c2.is_zero():
                total = total + c1 * c2
        return total

    def _r_peel_second(self, g, wb):
        # r(X_ij, h b') = sum_m r(X_mj, h) r(X_im, b')
        N = self.N
        i, j = gen_row(g, N), gen_col(g, N)
        h, rest = wb[0], wb[1:]
        total = RF_ZERO
        for m in range(1, N + 1):
            c1 = self._base_r.get((gen_id(m, j, N), h), RF_ZERO)
            if c1.is_zero():
                continue
            c2 = self.r((gen_id(i, m, N),), rest)
            if not c2.is_zero():
                total = total + c1 * c2
        return total

    def r_inv(self, wa, wb):
        return self._eval(tuple(wa), tuple(wb), self._base_rinv,
                          self._rinv_peel_first, self._rinv_peel_second,
                          self._memo["rinv"])

    def _rinv_peel_first(self, wa, wb):
        # r^{-1}(g a', b) = sum_mid r^{-1}(a', b(K, mid)) r^{-1}(g, b(mid, L))
        N = self.N
        g, rest = wa[:1], wa[1:]
        K, L = word_rows(wb, N), word_cols(wb, N)
        total = RF_ZERO
        for mid in _mid_tuples(N, len(wb)):
            c1 = self.r_inv(rest, word_from_rc(K, mid, N))
            if c1.is_zero():
                continue
            c2 = self.r_inv(g, word_from_rc(mid, L, N))
            if not c2.is_zero():
                total = total + c1 * c2
        return total

    def _rinv_peel_second(self, g, wb):
        # r^{-1}(X_ij, h b') = sum_m r^{-1}(X_im, h) r^{-1}(X_mj, b')
        N = self.N
        i, j = gen_row(g, N), gen_col(g, N)
        h, rest = wb[0], wb[1:]
        total = RF_ZERO
        for m in range(1, N + 1):
            c1 = self._base_rinv.get((gen_id(i, m, N), h), RF_ZERO)
            if c1.is_zero():
                continue
            c2 = self.r_inv((gen_id(m, j, N),), rest)
            if not c2.is_zero():
                total = total + c1 * c2
        return total

    def r_prime(self, wa, wb):
        return self._eval(tuple(wa), tuple(wb), self._base_rpr,
                          self._rpr_peel_first, self._rpr_peel_second,
                          self._memo["rpr"])

    def _rpr_peel_first(self, wa, wb):
        # r'(g a', b) = sum_mid r'(g, b(mid, L)) r'(a', b(K, mid))
        N = self.N
        g, rest = wa[:1], wa[1:]
        K, L = word_rows(wb, N), word_cols(wb, N)
        total = RF_ZERO
        for mid in _mid_tuples(N, len(wb)):
            c1 = self.r_prime(g, word_from_rc(mid, L, N))
            if c1.is_zero():
                continue
            c2 = self.r_prime(rest, word_from_rc(K, mid, N))
            if not c2.is_zero():
                total = total + c1 * c2
        return total

    def _rpr_peel_second(self, g, wb):
        # r'(X_ij, h b') = sum_m r'(X_im, h) r'(X_mj, b')
        N = self.N
        i, j = gen_row(g, N), gen_col(g, N)
        h, rest = wb[0], wb[1:]
        total = RF_ZERO
        for m in range(1, N + 1):
            c1 = self._base_rpr.get((gen_id(i, m, N), h), RF_ZERO)
            if c1.is_zero():
                continue
            c2 = self.r_prime((gen_id(m, j, N),), rest)
            if not c2.is_zero():
                total = total + c1 * c2
        return total

    # -- functional evaluation on polynomials ---------------------------------------

    def pair_functional(self, which, pa, pb):
        fn = {"r": self.r, "rinv": self.r_inv, "rpr": self.r_prime}[which]
        total = RF_ZERO
        for wa, ca in pa.coeffs.items():
            for wb, cb in pb.coeffs.items():
                v = fn(wa, wb)
                if not v.is_zero():
                    total = total + ca * cb * v
        return total

    # -- certification -----------------------------------------------------------------

    def certify_bidegree(self, s, t, which):
        """Re-substitute a convolution inverse at bidegree (s, t).

        which="rinv": sum over middles of r(a(i,m), b(k,n)) rinv(a(m,j), b(n,l))
        which="rpr" : sum over middles of r(a(i,m), b(n,l)) rpr(a(m,j), b(k,n))
        must equal the counit pairing for every word pair.
        """
        N = self.N
        tuples_s = _mid_tuples(N, s)
        tuples_t = _mid_tuples(N, t)
        for i_t in tuples_s:
            for j_t in tuples_s:
                for k_t in tuples_t:
                    for l_t in tuples_t:
                        total = RF_ZERO
                        for m_t in tuples_s:
                            wa1 = word_from_rc(i_t, m_t, N)
                            wa2 = word_from_rc(m_t, j_t, N)
                            for n_t in tuples_t:
                                if which == "rinv":
                                    c1 = self.r(wa1, word_from_rc(k_t, n_t, N))
                                    if c1.is_zero():
                                        continue
                                    c2 = self.r_inv(wa2, word_from_rc(n_t, l_t, N))
                                else:
                                    c1 = self.r(wa1, word_from_rc(n_t, l_t, N))
                                    if c1.is_zero():
                                        continue
                                    c2 = self.r_prime(wa2, word_from_rc(k_t, n_t, N))
                                if not c2.is_zero():
                                    total = total + c1 * c2
                        expected = RF_ONE if (i_t == j_t and k_t == l_t) else RF_ZERO
                        if total != expected:
                            return False
        return True


# ---------------------------------------------------------------------------
# Shared computation context
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    command: str
    instance: dict
    status: str
    witness: dict | None = None
    seed: int | None = None

    def to_json(self):
        out = {"command": self.command, "instance": self.instance,
               "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.seed is not None:
            out["seed"] = self.seed
        return out


class QContext:
    """Caches for one matrix size: rewriting, tables, minors, products."""

    def __init__(self, N):
        self.N = N
        self.rw = derive_rewrite_rules(N)
        self.bich = Bicharacter(N)
        self._tables = {}
        self._minors = {}
        self._minor_prod = {}
        self._rpr_minor = {}
        self._rinv_minor_solved = {}

    def table(self, k, l):
        key = (k, l)
        if key not in self._tables:
            self._tables[key] = wedge_braiding(self.N, k, l)
        return self._tables[key]

    def minor(self, rows, cols):
        key = (tuple(rows), tuple(cols))
        if key not in self._minors:
            self._minors[key] = quantum_minor(self.N, key[0], key[1])
        return self._minors[key]

    def minor_prod_nf(self, A, B, C, D):
        """Normal form of the product of two minors, memoised."""
        key = (tuple(A), tuple(B), tuple(C), tuple(D))
        hit = self._minor_prod.get(key)
        if hit is None:
            p = self.rw.normal_form(self.minor(key[0], key[1])
                                    * self.minor(key[2], key[3]))
            self._minor_prod[key] = p
            return p
        return hit

    # -- minor-level functional values ----------------------------------------

    def r_minor(self, A, B, C, D):
        """r on a pair of minors, via the wedge braiding table."""
        return self.table(len(A), len(C)).entry(tuple(B), tuple(A),
                                                tuple(C), tuple(D))

    def rinv_minor(self, A, B, C, D):
        """The (Delta, Delta) convolution inverse on a pair of minors."""
        return self.table(len(A), len(C)).inv_entry(tuple(B), tuple(A),
                                                    tuple(C), tuple(D))

    def rpr_minor(self, A, B, C, D):
        """The (Delta, Delta^op) convolution inverse on a pair of minors."""
        k, l = len(A), len(C)
        tab = self._rpr_minor.get((k, l))
        if tab is None:
            tab = self._solve_minor_inverse(k, l, cop=True)
            self._rpr_minor[(k, l)] = tab
        return tab.get((tuple(A), tuple(B), tuple(C), tuple(D)), RF_ZERO)

    def rinv_minor_solved(self, k, l):
        """Minor-level solve of the plain convolution inverse (cross-check)."""
        tab = self._rinv_minor_solved.get((k, l))
        if tab is None:
            tab = self._solve_minor_inverse(k, l, cop=False)
            self._rinv_minor_solved[(k, l)] = tab
        return tab

    def _solve_minor_inverse(self, k, l, cop):
        N = self.N
        ksets = [tuple(c) for c in combinations(range(1, N + 1), k)]
        lsets = [tuple(c) for c in combinations(range(1, N + 1), l)]
        idx = [(A, B) for A in ksets for B in lsets]
        rows = []
        for (A, D) in idx:
            row = []
            for (K, L) in idx:
                if cop:
                    row.append(self.r_minor(A, K, L, D))
                else:
                    row.append(self.r_minor(A, K, D, L))
            rows.append(row)
        try:
            inv = invert_matrix(rows)
        except SingularMatrix as exc:
            raise SingularConvolutionSystem(str(exc)) from exc
        table = {}
        for a, (K, L) in enumerate(idx):
            for b, (B, C) in enumerate(idx):
                val = inv[a][b]
                if not val.is_zero():
                    if cop:
                        table[(K, B, C, L)] = val
                    else:
                        table[(K, B, L, C)] = val
        return table


# ---------------------------------------------------------------------------
# Identity families
# ---------------------------------------------------------------------------

def _tsel(I, K):
    return tuple(I[p - 1] for p in K)


def _trest(I, K):
    return tuple(e for p, e in enumerate(I, start=1) if p not in K)


def _merge(A, B):
    return tuple(sorted(A + B))


def _nf_json(p):
    return {word_str(w, p.N, p.tag): c.to_json()
            for w, c in sorted(p.coeffs.items())}


def _identity_certificate(command, instance, lhs, rhs):
    if lhs == rhs:
        return Certificate(command, instance, "pass")
    return Certificate(command, instance, "fail",
                       witness={"lhs": _nf_json(lhs), "rhs": _nf_json(rhs)})


def verify_identity(ctx, family, instance):
    """Check one instance of a minor identity family by normal-form equality.

    Families: laplace-row, laplace-col, muir-row, muir-col,
    braidcomm-1, braidcomm-2.
    """
    if family in ("laplace-row", "laplace-col"):
        return _verify_laplace(ctx, family, instance)
    if family in ("muir-row", "muir-col"):
        return _verify_muir(ctx, family, instance)
    if family in ("braidcomm-1", "braidcomm-2"):
        return _verify_braidcomm(ctx, family, instance)
    raise IllFormedInstance(f"unknown family {family}")


def _verify_laplace(ctx, family, instance):
    I, J, K, Kp = (tuple(instance[n]) for n in ("I", "J", "K", "Kp"))
    k = len(I)
    if len(J) != k or len(K) != len(Kp):
        raise IllFormedInstance("sizes inconsistent")
    l = len(K)
    if any(p > k for p in K + Kp):
        raise IllFormedInstance("selection positions out of range")
    delta = K == Kp
    lhs = ctx.rw.normal_form(ctx.minor(I, J)) if delta else NCPoly.zero(ctx.N)
    rhs = NCPoly.zero(ctx.N)
    for P in combinations(range(1, k + 1), l):
        sign = rf_q_int(sum(P) - sum(K))
        if family == "laplace-row":
            t = ctx.minor_prod_nf(_tsel(I, K), _tsel(J, P),
                                  _trest(I, Kp), _trest(J, P))
        else:
            t = ctx.minor_prod_nf(_tsel(I, P), _tsel(J, K),
                                  _trest(I, P), _trest(J, Kp))
        rhs = rhs + t.scale(sign)
    inst = {"I": list(I), "J": list(J), "K": list(K), "K'": list(Kp)}
    return _identity_certificate(f"verify {family}", inst, lhs, rhs)


def _verify_muir(ctx, family, instance):
    I, J, F, G, K, Kp = (tuple(instance[n]) for n in ("I", "J", "F", "G", "K", "Kp"))
    k = len(I)
    if len(J) != k or len(F) != len(G) or len(K) != len(Kp):
        raise IllFormedInstance("sizes inconsistent")
    r = k - len(F)
    l = len(K)
    if any(p > k for p in F + G) or any(p > r for p in K + Kp):
        raise IllFormedInstance("selection positions out of range")
    IF, IFc = _tsel(I, F), _trest(I, F)
    JG, JGc = _tsel(J, G), _trest(J, G)
    delta = K == Kp
    if delta:
        lhs = ctx.minor_prod_nf(I, J, IF, JG)
    else:
        lhs = NCPoly.zero(ctx.N)
    rhs = NCPoly.zero(ctx.N)
    for P in combinations(range(1, r + 1), l):
        sign = rf_q_int(sum(P) - sum(K))
        if family == "muir-row":
            t = ctx.minor_prod_nf(_merge(IF, _tsel(IFc, K)),
                                  _merge(JG, _tsel(JGc, P)),
                                  _merge(IF, _trest(IFc, Kp)),
                                  _merge(JG, _trest(JGc, P)))
        else:
            t = ctx.minor_prod_nf(_merge(IF, _tsel(IFc, P)),
                                  _merge(JG, _tsel(JGc, K)),
                                  _merge(IF, _trest(IFc, P)),
                                  _merge(JG, _trest(JGc, Kp)))
        rhs = rhs + t.scale(sign)
    inst = {"I": list(I), "J": list(J), "F": list(F), "G": list(G),
            "K": list(K), "K'": list(Kp)}
    return _identity_certificate(f"verify {family}", inst, lhs, rhs)


def _verify_braidcomm(ctx, family, instance):
    I, J, Ip, Jp = (tuple(instance[n]) for n in ("I", "J", "Ip", "Jp"))
    k, l = len(I), len(Ip)
    if len(J) != k or len(Jp) != l:
        raise IllFormedInstance("sizes inconsistent")
    N = ctx.N
    lhs = ctx.minor_prod_nf(Ip, Jp, I, J)
    rhs = NCPoly.zero(N)
    ksets = [tuple(c) for c in combinations(range(1, N + 1), k)]
    lsets = [tuple(c) for c in combinations(range(1, N + 1), l)]
    if family == "braidcomm-1":
        for A in ksets:
            for B in lsets:
                c1 = ctx.table(k, l).entry(A, I, Ip, B)
                if c1.is_zero():
                    continue
                for C in ksets:
                    for D in lsets:
                        c2 = ctx.table(k, l).inv_entry(J, C, D, Jp)
                        if c2.is_zero():
                            continue
                        rhs = rhs + ctx.minor_prod_nf(A, C, B, D).scale(c1 * c2)
    else:
        for A in ksets:
            for B in lsets:
                c1 = ctx.table(l, k).inv_entry(B, Ip, I, A)
                if c1.is_zero():
                    continue
                for C in ksets:
                    for D in lsets:
                        c2 = ctx.table(l, k).entry(Jp, D, C, J)
                        if c2.is_zero():
                            continue
                        rhs = rhs + ctx.minor_prod_nf(A, C, B, D).scale(c1 * c2)
    inst = {"I": list(I), "J": list(J), "I'": list(Ip), "J'": list(Jp)}
    return _identity_certificate(f"verify {family}", inst, lhs, rhs)


# -- sweep generators -----------------------------------------------------------

def laplace_instances(N, kmax=None):
    kmax = N if kmax is None else kmax
    for k in range(1, kmax + 1):
        for I in combinations(range(1, N + 1), k):
            for J in combinations(range(1, N + 1), k):
                for l in range(0, k + 1):
                    for K in combinations(range(1, k + 1), l):
                        for Kp in combinations(range(1, k + 1), l):
                            yield {"I": I, "J": J, "K": K, "Kp": Kp}


def muir_instances(N, kmax=None, rmax=None):
    kmax = N if kmax is None else kmax
    for k in range(1, kmax + 1):
        for r in range(1, (k if rmax is None else min(k, rmax)) + 1):
            for I in combinations(range(1, N + 1), k):
                for J in combinations(range(1, N + 1), k):
                    for F in combinations(range(1, k + 1), k - r):
                        for G in combinations(range(1, k + 1), k - r):
                            for l in range(0, r + 1):
                                for K in combinations(range(1, r + 1), l):
                                    for Kp in combinations(range(1, r + 1), l):
                                        yield {"I": I, "J": J, "F": F, "G": G,
                                               "K": K, "Kp": Kp}


def braidcomm_instances(N, kmax=2, lmax=2):
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):
            for I in combinations(range(1, N + 1), k):
                for J in combinations(range(1, N + 1), k):
                    for Ip in combinations(range(1, N + 1), l):
                        for Jp in combinations(range(1, N + 1), l):
                            yield {"I": I, "J": J, "Ip": Ip, "Jp": Jp}
