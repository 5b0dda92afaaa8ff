"""Braid operator on C^N (x) C^N and its lifts to q-wedge powers.

The operator sends e_a (x) e_b to q^{-delta_ab} e_b (x) e_a plus, when b < a,
(q^{-1} - q) e_a (x) e_b.  It is symmetric, satisfies the braid relation and
the quadratic Hecke identity (both verified, never assumed), and generates
every commutation coefficient used downstream.

Wedge powers are handled through the splitting pair iota/rho: iota embeds the
q-antisymmetric subspace into the tensor power with a q-factorial
normalisation, rho projects a tensor word onto the sorted wedge basis with a
(-q)^inversions sign.  The braiding between wedge powers is computed by
embedding, applying a fixed reduced product of elementary braid moves, and
projecting back; the resulting coefficient tables are the ones the quantum
matrix identities consume.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .coeff import (RF_ONE, RF_Q, RF_QDIFF, RF_QINV, RF_ZERO, RatFunc,
                    rf_q_int)
from .indexsets import IndexSet, index_sets, inversions


class DegreeOutOfRange(ValueError):
    pass


# ---------------------------------------------------------------------------
# Elementary braid action on tensor words
# ---------------------------------------------------------------------------

# q - q^{-1}, weight of the extra diagonal term of the inverse
_RF_QDIFF_NEG = RF_ZERO - RF_QDIFF


def braid_pair_action(a, b, inverse=False):
    """Image of e_a (x) e_b as a list of ((c, d), coeff)."""
    if a == b:
        return [((a, a), RF_Q if inverse else RF_QINV)]
    out = [((b, a), RF_ONE)]
    if inverse:
        if b > a:
            out.append(((a, b), _RF_QDIFF_NEG))
    else:
        if b < a:
            out.append(((a, b), RF_QDIFF))
    return out


def apply_elementary(tensor, pos, inverse=False):
    """Apply the braid move at 0-based position (pos, pos+1) of every word."""
    out = {}
    for word, c in tensor.items():
        for (x, y), f in braid_pair_action(word[pos], word[pos + 1], inverse):
            w2 = word[:pos] + (x, y) + word[pos + 2:]
            s = out.get(w2, RF_ZERO) + c * f
            if s.is_zero():
                out.pop(w2, None)
            else:
                out[w2] = s
    return out


def block_positions(k, l):
    """Reduced word carrying the first k tensor factors past the last l.

    1-based elementary positions, applied left to right: factor k first.
    """
    pos = []
    for f in range(k, 0, -1):
        pos.extend(range(f, f + l))
    return pos


def apply_block_lift(tensor, k, l, inverse=False):
    """Block braiding V^k (x) V^l -> V^l (x) V^k on tensor dictionaries.

    With inverse=True this is the inverse map V^l (x) V^k -> V^k (x) V^l
    of the (k, l) block braiding.
    """
    seq = block_positions(k, l)
    if inverse:
        seq = list(reversed(seq))
    for p in seq:
        tensor = apply_elementary(tensor, p - 1, inverse=inverse)
    return tensor


# ---------------------------------------------------------------------------
# Braid operator as a sparse matrix (pair basis), for the global identities
# ---------------------------------------------------------------------------

class BraidOperator:
    """Sparse matrix of the braid operator on the pair basis of C^N (x) C^N."""

    def __init__(self, N, entries):
        self.N = N
        # entries: dict[((k, l), (a, b))] -> RatFunc, column (a, b)
        self.entries = entries

    def entry(self, row, col):
        return self.entries.get((row, col), RF_ZERO)

    def columns(self):
        cols = {}
        for (row, col), c in self.entries.items():
            cols.setdefault(col, []).append((row, c))
        return cols

    def is_symmetric(self):
        return all(self.entry(col, row) == c
                   for (row, col), c in self.entries.items())

    def compose(self, other):
        by_col = self.columns()
        out = {}
        for (mid, col), c in other.entries.items():
            for row, c2 in by_col.get(mid, []):
                key = (row, col)
                s = out.get(key, RF_ZERO) + c2 * c
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return BraidOperator(self.N, out)

    def add_scalar_multiple_of_identity(self, scalar):
        out = dict(self.entries)
        for a in range(1, self.N + 1):
            for b in range(1, self.N + 1):
                key = ((a, b), (a, b))
                s = out.get(key, RF_ZERO) + scalar
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return BraidOperator(self.N, out)

    def hecke_check(self):
        """(R - q^{-1})(R + q) == 0, exactly."""
        left = self.add_scalar_multiple_of_identity(RF_ZERO - RF_QINV)
        right = self.add_scalar_multiple_of_identity(RF_Q)
        return not left.compose(right).entries

    def inverse(self):
        """Inverse via the Hecke identity: R^{-1} = R + (q - q^{-1}) id."""
        return self.add_scalar_multiple_of_identity(_RF_QDIFF_NEG)


def build_braid(N):
    if N < 1:
        raise ValueError("N must be >= 1")
    entries = {}
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            for (x, y), c in braid_pair_action(a, b):
                entries[((x, y), (a, b))] = c
    return BraidOperator(N, entries)


def braid_relation_check(N):
    """R12 R23 R12 == R23 R12 R23 on every basis word of length three."""
    for word in _all_words(N, 3):
        t = {word: RF_ONE}
        lhs = apply_elementary(apply_elementary(apply_elementary(t, 0), 1), 0)
        rhs = apply_elementary(apply_elementary(apply_elementary(t, 1), 0), 1)
        if lhs != rhs:
            return False
    return True


def _all_words(N, length):
    if length == 0:
        return [()]
    words = [()]
    for _ in range(length):
        words = [w + (x,) for w in words for x in range(1, N + 1)]
    return words


# ---------------------------------------------------------------------------
# q-wedge algebra
# ---------------------------------------------------------------------------

class WedgeVector:
    """Element of the k-th q-wedge power: sorted index tuples -> RatFunc."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree, coeffs=None):
        self.degree = degree
        self.coeffs = {}
        if coeffs:
            for key, c in coeffs.items():
                key = tuple(key)
                if len(key) != degree:
                    raise DegreeOutOfRange(f"{key} has wrong degree")
                if not c.is_zero():
                    self.coeffs[key] = c

    def __eq__(self, other):
        return (isinstance(other, WedgeVector)
                and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def is_zero(self):
        return not self.coeffs

    def scale(self, scalar):
        if scalar.is_zero():
            return WedgeVector(self.degree)
        return WedgeVector(self.degree,
                           {k: c * scalar for k, c in self.coeffs.items()})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, RF_ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        v = WedgeVector(self.degree)
        v.coeffs = out
        return v

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c!r})*e_{list(k)}"
                          for k, c in sorted(self.coeffs.items()))


def wedge_sign(word):
    """(coeff, sorted tuple) of a wedge word, or None when an index repeats."""
    if len(set(word)) != len(word):
        return None
    return rf_q_int(inversions(word)), tuple(sorted(word))


def wedge_reduce(word):
    """Straighten a wedge word onto the sorted basis."""
    word = tuple(word)
    sg = wedge_sign(word)
    if sg is None:
        return WedgeVector(len(word))
    coeff, key = sg
    return WedgeVector(len(word), {key: coeff})


def q2_factorial(l):
    """prod_{k=1..l} (1 - q^{2k}) / (1 - q^2) as a RatFunc."""
    out = RF_ONE
    for k in range(1, l + 1):
        num = RatFunc({0: 1, 2 * k: -1})
        den = RatFunc({0: 1, 2: -1})
        out = out * (num / den)
    return out


def embed_basis(key):
    """iota on one sorted basis element: tensor dict, q-factorial normalised."""
    key = tuple(key)
    norm = q2_factorial(len(key)).inv()
    out = {}
    for perm in permutations(key):
        out[perm] = rf_q_int(inversions(perm)) * norm
    return out


def wedge_embed(v):
    """iota on a WedgeVector; returns a tensor dictionary."""
    out = {}
    for key, c in v.coeffs.items():
        for word, f in embed_basis(key).items():
            s = out.get(word, RF_ZERO) + c * f
            if s.is_zero():
                out.pop(word, None)
            else:
                out[word] = s
    return out


def wedge_project(tensor, degree):
    """rho on a tensor dictionary of fixed word length."""
    v = WedgeVector(degree)
    acc = {}
    for word, c in tensor.items():
        sg = wedge_sign(word)
        if sg is None:
            continue
        coeff, key = sg
        s = acc.get(key, RF_ZERO) + c * coeff
        if s.is_zero():
            acc.pop(key, None)
        else:
            acc[key] = s
    v.coeffs = acc
    return v


# -- pairs of wedge factors ---------------------------------------------------

def embed_pair(pair_vec):
    """iota (x) iota on a dict[(keyA, keyB)] -> RatFunc."""
    out = {}
    for (ka, kb), c in pair_vec.items():
        ea = embed_basis(ka)
        eb = embed_basis(kb)
        for wa, ca in ea.items():
            cac = c * ca
            for wb, cb in eb.items():
                word = wa + wb
                s = out.get(word, RF_ZERO) + cac * cb
                if s.is_zero():
                    out.pop(word, None)
                else:
                    out[word] = s
    return out


def project_pair(tensor, first_len):
    """rho (x) rho, splitting each word after first_len letters."""
    out = {}
    for word, c in tensor.items():
        sa = wedge_sign(word[:first_len])
        if sa is None:
            continue
        sb = wedge_sign(word[first_len:])
        if sb is None:
            continue
        ca, ka = sa
        cb, kb = sb
        key = (ka, kb)
        s = out.get(key, RF_ZERO) + c * ca * cb
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return out


def braid_wedge_pair(pair_vec, k, l, inverse=False):
    """Braiding wedge^k (x) wedge^l -> wedge^l (x) wedge^k on pair vectors.

    inverse=True computes the inverse map wedge^l (x) wedge^k -> ...; the
    input pair vector is then expected to have degrees (l, k).
    """
    first = l if inverse else k
    t = embed_pair(pair_vec)
    t = apply_block_lift(t, k, l, inverse=inverse)
    return project_pair(t, k + l - first)


def embed_equivariance_check(N, k):
    """Every elementary braid move fixes iota-images up to the factor -q."""
    minus_q = rf_q_int(1)
    for key in combinations(range(1, N + 1), k):
        t = embed_basis(key)
        for p in range(k - 1):
            lifted = apply_elementary(t, p)
            expected = {w: c * minus_q for w, c in t.items()}
            if lifted != expected:
                return False
    return True


# ---------------------------------------------------------------------------
# Wedge braiding coefficient tables
# ---------------------------------------------------------------------------

class WedgeBraidTable:
    """Coefficients of the wedge braiding and of its inverse.

    entry(I, J, Ip, Jp) is the coefficient of e_Ip (x) e_J in the image of
    e_I (x) e_Jp under the (k, l) braiding; inv_entry(I, J, Ip, Jp) is the
    coefficient of e_J (x) e_Ip in the image of e_Jp (x) e_I under the
    inverse.  I, J run over k-subsets and Ip, Jp over l-subsets.
    """

    def __init__(self, N, k, l):
        if not (0 <= k <= N and 0 <= l <= N):
            raise DegreeOutOfRange(f"degrees ({k}, {l}) outside 0..{N}")
        self.N = N
        self.k = k
        self.l = l
        self.entries = {}
        self.inv_entries = {}
        ksets = [tuple(c) for c in combinations(range(1, N + 1), k)]
        lsets = [tuple(c) for c in combinations(range(1, N + 1), l)]
        for I in ksets:
            for Jp in lsets:
                image = braid_wedge_pair({(I, Jp): RF_ONE}, k, l)
                for (Ip, J), c in image.items():
                    self.entries[(I, J, Ip, Jp)] = c
                image = braid_wedge_pair({(Jp, I): RF_ONE}, k, l, inverse=True)
                for (J, Ip), c in image.items():
                    self.inv_entries[(I, J, Ip, Jp)] = c

    def entry(self, I, J, Ip, Jp):
        return self.entries.get((tuple(I), tuple(J), tuple(Ip), tuple(Jp)),
                                RF_ZERO)

    def inv_entry(self, I, J, Ip, Jp):
        return self.inv_entries.get((tuple(I), tuple(J), tuple(Ip), tuple(Jp)),
                                    RF_ZERO)

    # -- structural checks ---------------------------------------------------

    def support_condition_violations(self, table=None):
        """Keys with nonzero value violating the dominance/difference support.

        The support rule: the value at (I, J, Ip, Jp) vanishes unless
        J <= I and Jp <= Ip componentwise, J \\ I = Jp \\ Ip and
        I \\ J = Ip \\ Jp.
        """
        table = self.entries if table is None else table
        bad = []
        for (I, J, Ip, Jp), c in table.items():
            if c.is_zero():
                continue
            si, sj = IndexSet(I), IndexSet(J)
            sip, sjp = IndexSet(Ip), IndexSet(Jp)
            ok = (sj.dominated_by(si) and sjp.dominated_by(sip)
                  and sj.minus(si) == sjp.minus(sip)
                  and si.minus(sj) == sip.minus(sjp))
            if not ok:
                bad.append((I, J, Ip, Jp))
        return bad

    def diagonal_report(self):
        """Check entry(I,I,Ip,Ip) = q^-|I n Ip| and the inverse analogue."""
        bad = []
        for I in combinations(range(1, self.N + 1), self.k):
            for Ip in combinations(range(1, self.N + 1), self.l):
                m = len(set(I) & set(Ip))
                if self.entry(I, I, Ip, Ip) != RatFunc.q_power(-m):
                    bad.append(("direct", I, Ip))
                if self.inv_entry(I, I, Ip, Ip) != RatFunc.q_power(m):
                    bad.append(("inverse", I, Ip))
        return bad

    def composition_identity_check(self):
        """Inverse braiding composed with the braiding is the identity."""
        ksets = [tuple(c) for c in combinations(range(1, self.N + 1), self.k)]
        lsets = [tuple(c) for c in combinations(range(1, self.N + 1), self.l)]
        for I in ksets:
            for Jp in lsets:
                image = braid_wedge_pair({(I, Jp): RF_ONE}, self.k, self.l)
                back = braid_wedge_pair(image, self.k, self.l, inverse=True)
                if len(back) != 1 or back.get((I, Jp)) != RF_ONE:
                    return False
        return True

    def to_json(self):
        ent = []
        for (I, J, Ip, Jp) in sorted(self.entries):
            ent.append({"I": list(I), "J": list(J), "I'": list(Ip),
                        "J'": list(Jp),
                        "value": self.entries[(I, J, Ip, Jp)].to_json()})
        return {"N": self.N, "k": self.k, "l": self.l, "entries": ent}


def wedge_braiding(N, k, l):
    return WedgeBraidTable(N, k, l)


# ---------------------------------------------------------------------------
# Scalar lemma for the inverse braiding on antisymmetrised pairs
# ---------------------------------------------------------------------------

def _selected(T, positions):
    return tuple(T[p - 1] for p in positions)


def _antisym_pair_vector(S, T, l):
    """sum_P (-q)^{wt P} e_{S u T_P} (x) e_{S u T^P} over P in C([|T|], l)."""
    t = len(T)
    vec = {}
    for combo in combinations(range(1, t + 1), l):
        TP = _selected(T, combo)
        TPc = tuple(x for i, x in enumerate(T, start=1) if i not in combo)
        key = (tuple(sorted(S + TP)), tuple(sorted(S + TPc)))
        vec[key] = vec.get(key, RF_ZERO) + rf_q_int(sum(combo))
    return vec


def rmatrix_lemma_check(N, I, Ip):
    """Verify the closed-form scalar for the inverse braiding on xi.

    For subsets I, Ip of [N], builds the antisymmetrised pair vector xi,
    applies the inverse wedge braiding, and compares exactly with
    q^{|I n Ip|} (-q)^{l(l+1)/2 - l'(l'+1)/2 - l l'} xi'.
    Returns a report dict with a boolean "ok".
    """
    I = tuple(sorted(I))
    Ip = tuple(sorted(Ip))
    S = tuple(sorted(set(I) & set(Ip)))
    T = tuple(sorted(set(I) ^ set(Ip)))
    l = len([x for x in I if x not in Ip])
    lp = len([x for x in Ip if x not in I])
    xi = _antisym_pair_vector(S, T, l)
    xi_p = _antisym_pair_vector(S, T, lp)
    scalar = RatFunc.q_power(len(S)) * rf_q_int(
        l * (l + 1) // 2 - lp * (lp + 1) // 2 - l * lp)
    expected = {key: c * scalar for key, c in xi_p.items()}
    # inverse braiding wedge^{|I|} (x) wedge^{|Ip|} -> wedge^{|Ip|} (x) wedge^{|I|}
    got = braid_wedge_pair(xi, len(Ip), len(I), inverse=True)
    ok = got == expected
    return {"I": list(I), "Ip": list(Ip), "ok": ok,
            "scalar": scalar.to_json(),
            "mismatch": None if ok else {
                "got": {str(k): v.to_json() for k, v in got.items()},
                "expected": {str(k): v.to_json() for k, v in expected.items()}}}


def antisymmetrizer_swap_check(N, T, l):
    """Specialised eigen-identity: the inverse braiding permutes the
    antisymmetrised pair vectors of a fixed symmetric difference, with the
    stated (-q)-power."""
    T = tuple(sorted(T))
    t = len(T)
    lp = t - l
    xi = _antisym_pair_vector((), T, l)
    xi_p = _antisym_pair_vector((), T, lp)
    scalar = rf_q_int(l * (l + 1) // 2 - lp * (lp + 1) // 2 - l * lp)
    expected = {key: c * scalar for key, c in xi_p.items()}
    got = braid_wedge_pair(xi, lp, l, inverse=True)
    return got == expected
