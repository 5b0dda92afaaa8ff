"""Quantum shapes: symbolic families, shape ideals, q-commutation certificates.

A shape is an involution of [N] together with a unimodular-or-zero slot
function whose support the involution preserves.  Self-adjoint families are
carried symbolically: fixed support points hold sign slots, two-cycles hold
conjugate phase pairs.  Each family orders its support into a pivot chain and
attaches one minor label per chain level; the two-sided ideals below those
labels and the q-commutation certificate for the chain minors are pure
label/coefficient computations on top of the wedge braiding tables.

The chain convention lists two-cycles first (by smaller element, the partner
immediately after) and fixed points afterwards in increasing order, matching
the published family table at N = 3; the sorted-support chain is available
as an alternative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .coeff import RF_ZERO, RatFunc
from .indexsets import IndexSet, pair_dom_strictly_less, pair_lex_less
from .qmatrix import Certificate


class MalformedShape(ValueError):
    pass


def _conj_symbol(sym):
    if sym in ("0",) or sym.startswith("s"):
        return sym
    if sym.endswith("bar"):
        return sym[:-3]
    return sym + "bar"


class QuantumShape:
    """Symbolic self-adjoint shape: involution tau plus slot symbols u.

    Symbols: "0" for empty slots, "s1", "s2", ... for sign slots on fixed
    support points, "y"/"ybar" (then "y2"/"y2bar", ...) for conjugate phase
    pairs on two-cycles.
    """

    def __init__(self, tau, u, chain="blocks"):
        self.tau = tuple(int(t) for t in tau)
        self.u = tuple(str(s) for s in u)
        N = len(self.tau)
        if len(self.u) != N:
            raise MalformedShape("tau and u lengths differ")
        if sorted(self.tau) != list(range(1, N + 1)):
            raise MalformedShape("tau is not a permutation")
        for i in range(1, N + 1):
            if self.tau[self.tau[i - 1] - 1] != i:
                raise MalformedShape("tau is not an involution")
        for i in range(1, N + 1):
            ui = self.u[i - 1]
            if ui == "0":
                if self.tau[i - 1] != i:
                    raise MalformedShape(f"zero slot {i} must be a fixed point")
            else:
                if self.tau[i - 1] == i and not ui.startswith("s"):
                    raise MalformedShape(f"fixed point {i} needs a sign slot")
                if self.tau[i - 1] != i and _conj_symbol(ui) != self.u[self.tau[i - 1] - 1]:
                    raise MalformedShape(f"slots {i},{self.tau[i-1]} not conjugate")
        self.N = N
        self.support = tuple(i for i in range(1, N + 1) if self.u[i - 1] != "0")
        self.rank = len(self.support)
        self.chain = self._build_chain(chain)

    def _build_chain(self, convention):
        if convention == "sorted":
            return tuple(self.support)
        if convention != "blocks":
            raise MalformedShape(f"unknown chain convention {convention!r}")
        seq = []
        for i in self.support:
            t = self.tau[i - 1]
            if t > i:
                seq.append((i, (i, t)))
        pairs = [blk for _, blk in sorted(seq)]
        fixed = [i for i in self.support if self.tau[i - 1] == i]
        chain = []
        for blk in pairs:
            chain.extend(blk)
        chain.extend(sorted(fixed))
        return tuple(chain)

    # -- derived labels --------------------------------------------------------

    def support_prefix(self, k):
        """The k-th chain level as a sorted column set."""
        return tuple(sorted(self.chain[:k]))

    def tau_prefix(self, k):
        return tuple(sorted(self.tau[p - 1] for p in self.chain[:k]))

    def minor_labels(self):
        """(rows, cols) label of the chain minor at each level 1..rank."""
        return [(self.tau_prefix(k), self.support_prefix(k))
                for k in range(1, self.rank + 1)]

    def is_self_adjoint(self):
        return all(_conj_symbol(self.u[i - 1]) == self.u[self.tau[i - 1] - 1]
                   for i in range(1, self.N + 1))

    def restriction_inversions(self, k):
        """Inversions of tau restricted to the k-th chain level."""
        cols = self.support_prefix(k)
        images = [self.tau[p - 1] for p in cols]
        return sum(1 for a in range(len(images)) for b in range(a + 1, len(images))
                   if images[a] > images[b])

    def to_json(self):
        return {"tau": list(self.tau), "u": list(self.u)}

    @staticmethod
    def from_json(obj, chain="blocks"):
        return QuantumShape(obj["tau"], obj["u"], chain=chain)

    def __repr__(self):
        return f"QuantumShape(tau={self.tau}, u={self.u})"

    def __eq__(self, other):
        return (isinstance(other, QuantumShape)
                and self.tau == other.tau and self.u == other.u)

    def __hash__(self):
        return hash((self.tau, self.u))


def _involutions(points):
    """All involutions of a tuple of points, as dicts."""
    points = list(points)
    if not points:
        return [{}]
    first, rest = points[0], points[1:]
    out = []
    for sub in _involutions(rest):
        d = dict(sub)
        d[first] = first
        out.append(d)
    for idx, partner in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for sub in _involutions(remaining):
            d = dict(sub)
            d[first] = partner
            d[partner] = first
            out.append(d)
    return out


def enumerate_shapes(N):
    """All self-adjoint shape families on [N], grouped by rank then involution.

    Ranks descend; within a rank, families with fewer two-cycles come first,
    then support order, then cycle pattern.
    """
    if N > 5:
        raise MalformedShape("desk-scale enumeration is capped at N = 5")
    families = []
    for m in range(N, -1, -1):
        bucket = []
        for support in combinations(range(1, N + 1), m):
            for tau_map in _involutions(support):
                tau = tuple(tau_map.get(i, i) for i in range(1, N + 1))
                cycles = sorted((i, tau_map[i]) for i in support if tau_map[i] > i)
                u = ["0"] * N
                sign_count = 0
                for i in support:
                    if tau_map[i] == i:
                        sign_count += 1
                        u[i - 1] = f"s{sign_count}"
                for n, (i, j) in enumerate(cycles, start=1):
                    name = "y" if n == 1 else f"y{n}"
                    u[i - 1] = name
                    u[j - 1] = name + "bar"
                bucket.append((len(cycles), support, tuple(cycles),
                               QuantumShape(tau, u)))
        bucket.sort(key=lambda t: (t[0], t[1], t[2]))
        families.extend(s for *_junk, s in bucket)
    return families


# ---------------------------------------------------------------------------
# Shape ideals
# ---------------------------------------------------------------------------

@dataclass
class ShapeIdeal:
    """Generator-label pattern of the two-sided *-ideal attached to a shape."""

    shape: QuantumShape
    flavor: str                       # "dom" or "lex"
    generators: list = field(default_factory=list)  # (rows, cols), adjoint-closed

    def contains_label(self, rows, cols):
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) > self.shape.rank:
            return True
        return (rows, cols) in self._genset

    def __post_init__(self):
        self._genset = set(self.generators)


def build_shape_ideal(shape, flavor="dom"):
    """Oversized minors plus the labels strictly below each chain level,
    closed under the formal adjoint."""
    if flavor not in ("dom", "lex"):
        raise ValueError("flavor must be 'dom' or 'lex'")
    less = pair_dom_strictly_less if flavor == "dom" else pair_lex_less
    N = shape.N
    M = shape.rank
    gens = set()
    if M < N:
        for I in combinations(range(1, N + 1), M + 1):
            for J in combinations(range(1, N + 1), M + 1):
                gens.add((I, J))
    for k in range(1, M + 1):
        cols0 = IndexSet(shape.support_prefix(k))
        rows0 = IndexSet(shape.tau_prefix(k))
        for I in combinations(range(1, N + 1), k):
            for J in combinations(range(1, N + 1), k):
                if less((IndexSet(J), IndexSet(I)), (cols0, rows0)):
                    gens.add((I, J))
    closed = set(gens)
    for (I, J) in gens:
        closed.add((J, I))
    return ShapeIdeal(shape=shape, flavor=flavor,
                      generators=sorted(closed))


# ---------------------------------------------------------------------------
# q-commutation certificate for chain minors
# ---------------------------------------------------------------------------

def shape_qcomm_certificate(ctx, shape, k, I, J):
    """Certify the q-commutation of the k-th chain minor with the (I, J) minor
    modulo the dominance shape ideal.

    Specialises the general braided-commutation identity at the chain labels
    and checks that: the designated terms on both sides carry exactly the
    predicted q-powers, and every other contributing term has a minor factor
    whose label lies in the ideal's generator pattern.  Residual terms outside
    the pattern give an inconclusive (not failed) report.
    """
    I, J = tuple(sorted(I)), tuple(sorted(J))
    if len(I) != len(J):
        raise IllFormedQcomm("unequal argument sizes")
    if not (1 <= k <= shape.rank):
        raise IllFormedQcomm(f"level {k} outside 1..{shape.rank}")
    N = ctx.N
    A = shape.support_prefix(k)     # column label of the chain minor
    B = shape.tau_prefix(k)         # row label
    m = len(I)
    kk = len(A)
    ideal = build_shape_ideal(shape, "dom")
    khats = [tuple(c) for c in combinations(range(1, N + 1), kk)]
    msets = [tuple(c) for c in combinations(range(1, N + 1), m)]
    exp_left = -(len(set(I) & set(A)) + len(set(I) & set(B)))
    exp_right = -(len(set(J) & set(A)) + len(set(J) & set(B)))
    residual_bad = []
    found = {"left": None, "right": None}
    for K in khats:
        for L in khats:
            for Lp in msets:
                c_left = RF_ZERO
                c_right = RF_ZERO
                for Pp in msets:
                    f1 = ctx.table(m, kk).entry(Pp, I, B, K)
                    if not f1.is_zero():
                        f2 = ctx.table(kk, m).entry(A, L, Pp, Lp)
                        if not f2.is_zero():
                            c_left = c_left + f1 * f2
                    g1 = ctx.table(m, kk).entry(Pp, Lp, B, K)
                    if not g1.is_zero():
                        g2 = ctx.table(kk, m).entry(A, L, Pp, J)
                        if not g2.is_zero():
                            c_right = c_right + g1 * g2
                if not c_left.is_zero():
                    if (K, L) == (B, A) and Lp == I:
                        found["left"] = c_left
                    elif not ideal.contains_label(K, L):
                        residual_bad.append(("left", K, L, Lp))
                if not c_right.is_zero():
                    if (K, L) == (B, A) and Lp == J:
                        found["right"] = c_right
                    elif not ideal.contains_label(K, L):
                        residual_bad.append(("right", K, L, Lp))
    inst = {"shape": shape.to_json(), "k": k, "I": list(I), "J": list(J)}
    expected_left = RatFunc.q_power(exp_left)
    expected_right = RatFunc.q_power(exp_right)
    exponent = -exp_left + exp_right
    if found["left"] != expected_left or found["right"] != expected_right:
        return Certificate("rea qcomm", inst, "fail", witness={
            "reason": "designated coefficient mismatch",
            "left": found["left"].to_json() if found["left"] else None,
            "right": found["right"].to_json() if found["right"] else None,
            "expected_left": expected_left.to_json(),
            "expected_right": expected_right.to_json()})
    if residual_bad:
        return Certificate("rea qcomm", inst, "inconclusive", witness={
            "reason": "residual term outside the generator pattern",
            "terms": [{"side": s, "rows": list(K), "cols": list(L),
                       "other": list(Lp)} for (s, K, L, Lp) in residual_bad]})
    cert = Certificate("rea qcomm", inst, "pass")
    cert.instance["exponent"] = exponent
    return cert


class IllFormedQcomm(ValueError):
    pass
