"""The reflection equation algebra, realised through the twisted product.

The twisted (star) product on the quantum matrix coordinate ring contracts
the outer coproduct legs against the bicharacter and its second convolution
inverse.  Under it the coordinate matrix itself satisfies the reflection
equation, which certifies the algebra isomorphism onto the reflection
equation algebra at desk scale: reflection-algebra minors are the ordinary
quantum minors viewed inside the twisted product, and every reflection-side
identity is checked by exact normal-form equality in this model.

A second realisation derives quadratic straightening rules directly from the
reflection equation and cross-checks them against the twisted product.
"""

from __future__ import annotations

import random
from itertools import combinations

from .braiding import braid_pair_action
from .coeff import RF_ONE, RF_ZERO, RatFunc, rf_q_int
from .qmatrix import (Certificate, IllFormedInstance, NCPoly, QContext,
                      _mid_tuples, _nf_json, _tsel, _trest, _merge,
                      derive_rewrite_system, gen_id, word_cols, word_from_rc,
                      word_rows)


class BidegreeExceeded(Exception):
    pass


class FlatnessCheckFailed(Exception):
    pass


class StarAlgebra:
    """Twisted multiplication on the normal-form space of quantum matrices."""

    def __init__(self, N, ctx=None):
        self.N = N
        self.ctx = ctx if ctx is not None else QContext(N)
        self._star_word_memo = {}
        self._star_minor_memo = {}

    # -- word-level product ----------------------------------------------------

    def star_word(self, u, v):
        """Twisted product of two words, as a normal-form NCPoly."""
        u, v = tuple(u), tuple(v)
        key = (u, v)
        hit = self._star_word_memo.get(key)
        if hit is not None:
            return hit
        N = self.N
        bich = self.ctx.bich
        rows_u, cols_u = word_rows(u, N), word_cols(u, N)
        rows_v, cols_v = word_rows(v, N), word_cols(v, N)
        mids_u = _mid_tuples(N, len(u))
        mids_v = _mid_tuples(N, len(v))
        acc = NCPoly.zero(N)
        for c_t in mids_v:
            right_top = word_from_rc(rows_v, c_t, N)
            for d_t in mids_v:
                mid_v = word_from_rc(c_t, d_t, N)
                for a_t in mids_u:
                    c1 = bich.r(word_from_rc(rows_u, a_t, N), mid_v)
                    if c1.is_zero():
                        continue
                    for b_t in mids_u:
                        c2 = bich.r_prime(word_from_rc(b_t, cols_u, N),
                                          right_top)
                        if c2.is_zero():
                            continue
                        w = (word_from_rc(a_t, b_t, N)
                             + word_from_rc(d_t, cols_v, N))
                        p = NCPoly(N, {w: c1 * c2})
                        acc = acc + self.ctx.rw.normal_form(p)
        self._star_word_memo[key] = acc
        return acc

    def star(self, f, g):
        """Twisted product of two polynomials (bilinear over star_word)."""
        acc = NCPoly.zero(self.N)
        for wu, cu in f.coeffs.items():
            for wv, cv in g.coeffs.items():
                acc = acc + self.star_word(wu, wv).scale(cu * cv)
        return acc

    # -- minor-level product -----------------------------------------------------

    def star_minor(self, A, B, C, D):
        """Twisted product of the minors with labels (A, B) and (C, D)."""
        key = (tuple(A), tuple(B), tuple(C), tuple(D))
        hit = self._star_minor_memo.get(key)
        if hit is not None:
            return hit
        N = self.N
        ctx = self.ctx
        k, l = len(key[0]), len(key[2])
        ksets = [tuple(c) for c in combinations(range(1, N + 1), k)]
        lsets = [tuple(c) for c in combinations(range(1, N + 1), l)]
        A, B, C, D = key
        acc = NCPoly.zero(N)
        for K in ksets:
            for L in lsets:
                for E in lsets:
                    c1 = ctx.r_minor(A, K, L, E)
                    if c1.is_zero():
                        continue
                    for M in ksets:
                        c2 = ctx.rpr_minor(M, B, C, L)
                        if c2.is_zero():
                            continue
                        acc = acc + ctx.minor_prod_nf(K, M, E, D).scale(c1 * c2)
        self._star_minor_memo[key] = acc
        return acc

    # -- structural checks ----------------------------------------------------------

    def unit_check(self, polys):
        one = NCPoly.unit(self.N)
        for p in polys:
            nf = self.ctx.rw.normal_form(p)
            if self.star(one, p) != nf or self.star(p, one) != nf:
                return False
        return True

    def associativity_check(self, triples):
        for f, g, h in triples:
            left = self.star(self.star(f, g), h)
            right = self.star(f, self.star(g, h))
            if left != right:
                return False
        return True

    def reverse_braid_check(self, pairs):
        """Recover the plain product from the twisted one on generator pairs."""
        N = self.N
        bich = self.ctx.bich
        for (i, j), (k, l) in pairs:
            expected = self.ctx.rw.normal_form(
                NCPoly.generator(N, i, j) * NCPoly.generator(N, k, l))
            acc = NCPoly.zero(N)
            for a in range(1, N + 1):
                for c in range(1, N + 1):
                    c1 = bich.r_inv((gen_id(i, a, N),), (gen_id(k, c, N),))
                    if c1.is_zero():
                        continue
                    for b in range(1, N + 1):
                        for d in range(1, N + 1):
                            c2 = bich.r((gen_id(b, j, N),), (gen_id(c, d, N),))
                            if c2.is_zero():
                                continue
                            acc = acc + self.star_word(
                                (gen_id(a, b, N),), (gen_id(d, l, N),)
                            ).scale(c1 * c2)
            if acc != expected:
                return False
        return True


# ---------------------------------------------------------------------------
# Reflection equation
# ---------------------------------------------------------------------------

def _rhat_entries(N):
    out = {}
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            for (x, y), c in braid_pair_action(a, b):
                out[((x, y), (a, b))] = c
    return out


def reflection_slot_vectors(N):
    """Degree-2 word vectors (Z alphabet) of the reflection equation.

    Slot ((k, l), (i, j)) of R Z2 R Z2 - Z2 R Z2 R, with the letters kept
    formal; evaluating the words through any product tests that product.
    """
    rhat = _rhat_entries(N)
    slots = {}
    rng = range(1, N + 1)
    for k in rng:
        for l in rng:
            for i in rng:
                for j in rng:
                    v = {}
                    for b in rng:
                        for c in rng:
                            c1 = rhat.get(((k, l), (c, b)), RF_ZERO)
                            if c1.is_zero():
                                continue
                            for d in rng:
                                for f in rng:
                                    c2 = rhat.get(((c, d), (i, f)), RF_ZERO)
                                    if c2.is_zero():
                                        continue
                                    w = (gen_id(b, d, N), gen_id(f, j, N))
                                    s = v.get(w, RF_ZERO) + c1 * c2
                                    v[w] = s
                    for b in rng:
                        for d in rng:
                            for e in rng:
                                c1 = rhat.get(((k, b), (e, d)), RF_ZERO)
                                if c1.is_zero():
                                    continue
                                for f in rng:
                                    c2 = rhat.get(((e, f), (i, j)), RF_ZERO)
                                    if c2.is_zero():
                                        continue
                                    w = (gen_id(l, b, N), gen_id(d, f, N))
                                    s = v.get(w, RF_ZERO) - c1 * c2
                                    v[w] = s
                    v = {w: c for w, c in v.items() if not c.is_zero()}
                    if v:
                        slots[((k, l), (i, j))] = v
    return slots


def reflection_equation_check(star):
    """Evaluate the reflection residual under the twisted product, slotwise."""
    N = star.N
    failures = []
    for slot, vec in reflection_slot_vectors(N).items():
        acc = NCPoly.zero(N)
        for (g1, g2), c in vec.items():
            acc = acc + star.star_word((g1,), (g2,)).scale(c)
        if not acc.is_zero():
            failures.append({"slot": slot, "residual": _nf_json(acc)})
    return Certificate("rea reflection", {"N": N},
                       "pass" if not failures else "fail",
                       witness={"failures": failures} if failures else None)


def derive_rea_rewrite(star):
    """Quadratic straightening rules derived directly from the reflection
    equation, cross-checked against the twisted-product model."""
    N = star.N
    vectors = list(reflection_slot_vectors(N).values())
    rw = derive_rewrite_system(N, "Z", vectors)
    expected = N * N * (N * N - 1) // 2
    if len(rw.rules) != expected:
        raise FlatnessCheckFailed(
            f"{len(rw.rules)} rules, expected {expected}")
    if not rw.critical_pairs_ok():
        raise FlatnessCheckFailed("critical pair failed to resolve")
    # every rule must be a twisted-product identity under Z_ij -> X_ij
    for (g1, g2), rhs in rw.rules.items():
        acc = star.star_word((g1,), (g2,))
        for w, c in rhs.items():
            acc = acc - star.star_word((w[0],), (w[1],)).scale(c)
        if not acc.is_zero():
            raise FlatnessCheckFailed(f"rule at {(g1, g2)} fails in the model")
    return rw


# ---------------------------------------------------------------------------
# Identity families in the reflection algebra
# ---------------------------------------------------------------------------

def rea_verify(star, family, instance):
    """Verify one reflection-algebra identity instance in the twisted model.

    Families: gencomm, laplace1, laplace2, muir-left, muir-right.
    """
    if family == "gencomm":
        return _rea_gencomm(star, instance)
    if family in ("laplace1", "laplace2"):
        return _rea_laplace(star, family, instance)
    if family in ("muir-left", "muir-right"):
        return _rea_muir(star, family, instance)
    raise IllFormedInstance(f"unknown family {family}")


def _cert(command, instance, lhs, rhs):
    if lhs == rhs:
        return Certificate(command, instance, "pass")
    return Certificate(command, instance, "fail",
                       witness={"lhs": _nf_json(lhs), "rhs": _nf_json(rhs)})


def _rea_gencomm(star, instance):
    I, J, Ip, Jp = (tuple(instance[n]) for n in ("I", "J", "Ip", "Jp"))
    k, l = len(I), len(Ip)
    if len(J) != k or len(Jp) != l:
        raise IllFormedInstance("sizes inconsistent")
    N = star.N
    ctx = star.ctx
    ksets = [tuple(c) for c in combinations(range(1, N + 1), k)]
    lsets = [tuple(c) for c in combinations(range(1, N + 1), l)]
    lhs = NCPoly.zero(N)
    rhs = NCPoly.zero(N)
    for K in ksets:
        for L in ksets:
            for Lp in lsets:
                c_left = RF_ZERO
                c_right = RF_ZERO
                for Pp in lsets:
                    f1 = ctx.table(l, k).entry(Pp, Ip, J, K)
                    if not f1.is_zero():
                        f2 = ctx.table(k, l).entry(I, L, Pp, Lp)
                        if not f2.is_zero():
                            c_left = c_left + f1 * f2
                    g1 = ctx.table(l, k).entry(Pp, Lp, J, K)
                    if not g1.is_zero():
                        g2 = ctx.table(k, l).entry(I, L, Pp, Jp)
                        if not g2.is_zero():
                            c_right = c_right + g1 * g2
                if not c_left.is_zero():
                    lhs = lhs + star.star_minor(K, L, Lp, Jp).scale(c_left)
                if not c_right.is_zero():
                    rhs = rhs + star.star_minor(Ip, Lp, K, L).scale(c_right)
    inst = {"I": list(I), "J": list(J), "I'": list(Ip), "J'": list(Jp)}
    return _cert("rea gencomm", inst, lhs, rhs)


def _rea_laplace(star, family, instance):
    I, J, K = (tuple(instance[n]) for n in ("I", "J", "K"))
    k = len(I)
    if len(J) != k:
        raise IllFormedInstance("sizes inconsistent")
    m = len(K)
    if any(p > k for p in K):
        raise IllFormedInstance("selection positions out of range")
    N = star.N
    ctx = star.ctx
    lhs = ctx.rw.normal_form(ctx.minor(I, J))
    msets = [tuple(c) for c in combinations(range(1, N + 1), m)]
    csets = [tuple(c) for c in combinations(range(1, N + 1), k - m)]
    rhs = NCPoly.zero(N)
    for P in combinations(range(1, k + 1), m):
        sign = rf_q_int(sum(P) - sum(K))
        if family == "laplace1":
            IK, IKc = _tsel(I, K), _trest(I, K)
            JP, JPc = _tsel(J, P), _trest(J, P)
            for S in msets:
                for Tp in csets:
                    c1 = ctx.table(m, k - m).inv_entry(S, IK, IKc, Tp)
                    if c1.is_zero():
                        continue
                    for T in msets:
                        for Sp in csets:
                            c2 = ctx.table(m, k - m).entry(JP, T, Tp, Sp)
                            if c2.is_zero():
                                continue
                            rhs = rhs + star.star_minor(S, T, Sp, JPc).scale(
                                sign * c1 * c2)
        else:
            JK, JKc = _tsel(J, K), _trest(J, K)
            IP, IPc = _tsel(I, P), _trest(I, P)
            for T in msets:
                for Sp in csets:
                    c1 = ctx.table(m, k - m).inv_entry(T, JK, JKc, Sp)
                    if c1.is_zero():
                        continue
                    for S in msets:
                        for Tp in csets:
                            c2 = ctx.table(m, k - m).entry(IP, S, Sp, Tp)
                            if c2.is_zero():
                                continue
                            rhs = rhs + star.star_minor(IPc, Tp, S, T).scale(
                                sign * c1 * c2)
    inst = {"I": list(I), "J": list(J), "K": list(K)}
    return _cert(f"rea {family}", inst, lhs, rhs)


def _rea_muir(star, family, instance):
    I, J, F, G, K, Kp = (tuple(instance[n])
                         for n in ("I", "J", "F", "G", "K", "Kp"))
    k = len(I)
    if len(J) != k or len(F) != len(G) or len(K) != len(Kp):
        raise IllFormedInstance("sizes inconsistent")
    r = k - len(F)
    l = len(K)
    if any(p > k for p in F + G) or any(p > r for p in K + Kp):
        raise IllFormedInstance("selection positions out of range")
    N = star.N
    ctx = star.ctx
    IF, IFc = _tsel(I, F), _trest(I, F)
    JG, JGc = _tsel(J, G), _trest(J, G)
    ksets = [tuple(c) for c in combinations(range(1, N + 1), k)]
    csets = [tuple(c) for c in combinations(range(1, N + 1), k - r)]
    lhs = NCPoly.zero(N)
    if K == Kp:
        for S in ksets:
            for H in csets:
                c1 = ctx.table(k, k - r).inv_entry(S, I, IF, H)
                if c1.is_zero():
                    continue
                for T in ksets:
                    for L in csets:
                        c2 = ctx.table(k, k - r).entry(J, T, H, L)
                        if c2.is_zero():
                            continue
                        lhs = lhs + star.star_minor(S, T, L, JG).scale(c1 * c2)
    m1 = (k - r) + l
    m2 = k - l
    m1sets = [tuple(c) for c in combinations(range(1, N + 1), m1)]
    m2sets = [tuple(c) for c in combinations(range(1, N + 1), m2)]
    rhs = NCPoly.zero(N)
    for P in combinations(range(1, r + 1), l):
        sign = rf_q_int(sum(P) - sum(K))
        if family == "muir-left":
            up_inv = _merge(IF, _tsel(IFc, K))
            low_inv = _merge(IF, _trest(IFc, Kp))
            up_dir = _merge(JG, _tsel(JGc, P))
            last = _merge(JG, _trest(JGc, P))
        else:
            up_inv = _merge(IF, _tsel(IFc, P))
            low_inv = _merge(IF, _trest(IFc, P))
            up_dir = _merge(JG, _tsel(JGc, K))
            last = _merge(JG, _trest(JGc, Kp))
        for A in m1sets:
            for B in m2sets:
                c1 = ctx.table(m1, m2).inv_entry(A, up_inv, low_inv, B)
                if c1.is_zero():
                    continue
                for C in m1sets:
                    for D in m2sets:
                        c2 = ctx.table(m1, m2).entry(up_dir, C, B, D)
                        if c2.is_zero():
                            continue
                        rhs = rhs + star.star_minor(A, C, D, last).scale(
                            sign * c1 * c2)
    inst = {"I": list(I), "J": list(J), "F": list(F), "G": list(G),
            "K": list(K), "K'": list(Kp)}
    return _cert(f"rea {family}", inst, lhs, rhs)


# -- sweep generators --------------------------------------------------------------

def gencomm_instances(N, kmax=2, lmax=2):
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):
            for I in combinations(range(1, N + 1), k):
                for J in combinations(range(1, N + 1), k):
                    for Ip in combinations(range(1, N + 1), l):
                        for Jp in combinations(range(1, N + 1), l):
                            yield {"I": I, "J": J, "Ip": Ip, "Jp": Jp}


def rea_laplace_instances(N, kmax=3):
    for k in range(1, min(N, kmax) + 1):
        for I in combinations(range(1, N + 1), k):
            for J in combinations(range(1, N + 1), k):
                for m in range(0, k + 1):
                    for K in combinations(range(1, k + 1), m):
                        yield {"I": I, "J": J, "K": K}


def rea_muir_instances(N, kmax=3, rmax=2):
    for k in range(1, min(N, kmax) + 1):
        for r in range(1, min(k, rmax) + 1):
            for I in combinations(range(1, N + 1), k):
                for J in combinations(range(1, N + 1), k):
                    for F in combinations(range(1, k + 1), k - r):
                        for G in combinations(range(1, k + 1), k - r):
                            for l in range(0, r + 1):
                                for K in combinations(range(1, r + 1), l):
                                    for Kp in combinations(range(1, r + 1), l):
                                        yield {"I": I, "J": J, "F": F, "G": G,
                                               "K": K, "Kp": Kp}


# ---------------------------------------------------------------------------
# Semiclassical comparison
# ---------------------------------------------------------------------------

def star_commutator_first_order(star, ij, kl):
    """Constant and first-order data at q=1 of a twisted generator commutator.

    Returns (ok_constant, {sorted entry-pair monomial: Fraction}) where the
    dictionary collects d/dq at q=1 of each normal-form coefficient.
    """
    N = star.N
    i, j = ij
    k, l = kl
    comm = (star.star_word((gen_id(i, j, N),), (gen_id(k, l, N),))
            - star.star_word((gen_id(k, l, N),), (gen_id(i, j, N),)))
    ok_constant = True
    firsts = {}
    for w, c in comm.coeffs.items():
        c0, c1 = c.taylor1()
        if c0 != 0:
            ok_constant = False
        if c1 != 0:
            mono = tuple(sorted((g // N + 1, g % N + 1) for g in w))
            firsts[mono] = firsts.get(mono, 0) + c1
    firsts = {m: c for m, c in firsts.items() if c != 0}
    return ok_constant, firsts


def semiclassical_bracket_check(star, ij, kl, bracket_polys):
    """Match the first-order twisted commutator against the Poisson bracket.

    bracket_polys maps ((i,j),(k,l)) to the bracket of the two coordinate
    functions as a quadratic form {sorted entry-pair: GaussRat}; the
    comparison multiplies it by the imaginary unit.
    """
    ok_constant, firsts = star_commutator_first_order(star, ij, kl)
    classical = bracket_polys[(tuple(ij), tuple(kl))]
    expected = {}
    for mono, g in classical.items():
        # i * (a + bi) = -b + ai must be rational: bracket coefficients are
        # purely imaginary exactly when the commutator is defined over Q.
        val = -g.im
        if g.re != 0:
            return Certificate("rea semiclassical",
                               {"ij": list(ij), "kl": list(kl)}, "fail",
                               witness={"reason": "bracket not imaginary",
                                        "mono": str(mono)})
        if val != 0:
            expected[mono] = val
    status = "pass" if (ok_constant and firsts == expected) else "fail"
    witness = None
    if status == "fail":
        witness = {"constant_ok": ok_constant,
                   "quantum": {str(m): str(c) for m, c in sorted(firsts.items())},
                   "classical": {str(m): str(c) for m, c in sorted(expected.items())}}
    return Certificate("rea semiclassical", {"ij": list(ij), "kl": list(kl)},
                       status, witness=witness)


def random_word(N, degree, rng):
    return tuple(rng.randrange(N * N) for _ in range(degree))


def random_monomials(N, max_degree, count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.randint(1, max_degree)
        out.append(NCPoly(N, {random_word(N, d, rng): RF_ONE}))
    return out
