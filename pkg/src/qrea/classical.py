"""Classical side: shapes of Hermitian matrices and the quadratic bracket.

Shape extraction is definition-faithful: for each size it scans minor labels
in the pair-lexicographic order (column set first) and takes the first
nonvanishing minor, all over exact complex rationals, so the discrete data
(the involution and the vanishing pattern) are decided exactly.  Slot phases
are recovered from the positivity normalisation; they stay exact whenever the
relevant square root is rational and drop to floating point otherwise.

The congruence decomposition z = t* S t is a separate elimination algorithm
and is cross-checked against the scanner.  The quadratic bracket on Hermitian
matrices is built symbolically with exact coefficients from the classical
r-matrix, then evaluated numerically for the bivector, orbit-tangency and
Jacobi checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from .coeff import GaussRat, rational_sqrt
from .indexsets import inversions


class RankZero(ValueError):
    pass


class InconsistentPivots(RuntimeError):
    """The minor scan produced pivots that do not assemble into a shape;
    cannot happen for genuinely Hermitian exact input."""


class NotTriangular(ValueError):
    pass


class SignMismatch(ValueError):
    pass


class IllConditioned(RuntimeError):
    pass


GR0 = GaussRat(0)
GR1 = GaussRat(1)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

class HermitianMatrix:
    """Self-adjoint matrix, exact (GaussRat entries) or numeric (complex)."""

    def __init__(self, entries, mode="exact", check=True):
        if mode == "exact":
            self.entries = [[e if isinstance(e, GaussRat) else GaussRat(e)
                             for e in row] for row in entries]
            self.N = len(self.entries)
            if check:
                for i in range(self.N):
                    for j in range(self.N):
                        if self.entries[i][j] != self.entries[j][i].conj():
                            raise ValueError("matrix is not self-adjoint")
        elif mode == "numeric":
            self.entries = np.array(entries, dtype=complex)
            self.N = self.entries.shape[0]
            if check and np.max(np.abs(self.entries - self.entries.conj().T)) > 1e-12:
                raise ValueError("matrix is not self-adjoint within 1e-12")
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode

    def to_numeric(self):
        if self.mode == "numeric":
            return self.entries
        return np.array([[e.to_complex() for e in row] for row in self.entries])

    def eigenvalues(self):
        return np.sort(np.linalg.eigvalsh(self.to_numeric()))

    def to_json(self):
        if self.mode == "exact":
            ent = [[e.to_json() for e in row] for row in self.entries]
        else:
            ent = [[{"re": float(e.real), "im": float(e.imag)} for e in row]
                   for row in self.entries]
        return {"N": self.N, "mode": self.mode, "entries": ent}

    @staticmethod
    def from_json(obj):
        if obj["mode"] == "exact":
            ent = [[GaussRat.from_json(e) for e in row] for row in obj["entries"]]
        else:
            ent = [[complex(e["re"], e["im"]) for e in row] for row in obj["entries"]]
        return HermitianMatrix(ent, mode=obj["mode"])


def gr_matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), GR0)
             for j in range(p)] for i in range(n)]


def gr_conj_t(a):
    return [[a[j][i].conj() for j in range(len(a))] for i in range(len(a[0]))]


def gr_identity(n):
    return [[GaussRat(1 if i == j else 0) for j in range(n)] for i in range(n)]


def exact_minor(z, rows, cols):
    """Determinant of the (rows, cols) submatrix over GaussRat."""
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise ValueError("minor needs equally many rows and columns")
    total = GR0
    for perm in permutations(range(len(rows))):
        term = GaussRat((-1) ** inversions(perm))
        for r, p in enumerate(perm):
            term = term * z[rows[r] - 1][cols[p] - 1]
        total = total + term
    return total


def exact_rank(z):
    """Rank of a GaussRat matrix by fraction-free-ish elimination."""
    m = [row[:] for row in z]
    n = len(m)
    rank = 0
    for col in range(n):
        piv = None
        for r in range(rank, n):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv_p = GR1 / m[rank][col]
        for r in range(n):
            if r != rank and not m[r][col].is_zero():
                f = m[r][col] * inv_p
                m[r] = [e - f * pe for e, pe in zip(m[r], m[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Shape matrices
# ---------------------------------------------------------------------------

class ShapeMatrix:
    """Involution plus slot phases; the matrix sends e_i to u_i e_{tau(i)}.

    Slot values: None for zero slots, GaussRat for exactly representable
    unimodular phases, complex for the rest.
    """

    def __init__(self, tau, u):
        self.tau = tuple(int(t) for t in tau)
        self.N = len(self.tau)
        self.u = list(u)
        if sorted(self.tau) != list(range(1, self.N + 1)):
            raise ValueError("tau is not a permutation")
        for i in range(1, self.N + 1):
            if self.tau[self.tau[i - 1] - 1] != i:
                raise ValueError("tau is not an involution")
            ui = self.u[i - 1]
            if ui is None:
                if self.tau[i - 1] != i:
                    raise ValueError(f"zero slot {i} must be a fixed point")
                continue
            if isinstance(ui, GaussRat):
                if ui.abs2() != 1:
                    raise ValueError(f"slot {i} is not unimodular")
            elif abs(abs(complex(ui)) - 1.0) > 1e-10:
                raise ValueError(f"slot {i} is not unimodular within 1e-10")
        for i in range(1, self.N + 1):
            ui, uj = self.u[i - 1], self.u[self.tau[i - 1] - 1]
            if (ui is None) != (uj is None):
                raise ValueError("support is not tau-invariant")
            if ui is None:
                continue
            if isinstance(ui, GaussRat) and isinstance(uj, GaussRat):
                if uj != ui.conj():
                    raise ValueError("slots are not conjugate-symmetric")
            else:
                a = complex(ui.to_complex() if isinstance(ui, GaussRat) else ui)
                b = complex(uj.to_complex() if isinstance(uj, GaussRat) else uj)
                if abs(b - a.conjugate()) > 1e-10:
                    raise ValueError("slots are not conjugate-symmetric")

    @property
    def support(self):
        return tuple(i for i in range(1, self.N + 1) if self.u[i - 1] is not None)

    @property
    def rank(self):
        return len(self.support)

    def is_exact(self):
        return all(ui is None or isinstance(ui, GaussRat) for ui in self.u)

    def slot_complex(self, i):
        ui = self.u[i - 1]
        if ui is None:
            return 0j
        return ui.to_complex() if isinstance(ui, GaussRat) else complex(ui)

    def matrix(self):
        """As a HermitianMatrix (exact when every slot is exact)."""
        if self.is_exact():
            ent = [[GR0 for _ in range(self.N)] for _ in range(self.N)]
            for i in range(1, self.N + 1):
                if self.u[i - 1] is not None:
                    ent[self.tau[i - 1] - 1][i - 1] = self.u[i - 1]
            return HermitianMatrix(ent, mode="exact")
        ent = np.zeros((self.N, self.N), dtype=complex)
        for i in range(1, self.N + 1):
            ent[self.tau[i - 1] - 1][i - 1] = self.slot_complex(i)
        return HermitianMatrix(ent, mode="numeric")

    def sign_multiset(self):
        """Counts (plus, minus, zero) of the eigenvalues, structurally."""
        plus = minus = zero = 0
        seen = set()
        for i in range(1, self.N + 1):
            if i in seen:
                continue
            t = self.tau[i - 1]
            ui = self.u[i - 1]
            if ui is None:
                zero += 1
            elif t == i:
                val = ui.re if isinstance(ui, GaussRat) else complex(ui).real
                if val > 0:
                    plus += 1
                else:
                    minus += 1
            else:
                seen.add(t)
                plus += 1
                minus += 1
        return plus, minus, zero

    def same_shape(self, other, tol=1e-10):
        """Equality with exact tau/pattern and tolerance on float phases."""
        if self.tau != other.tau:
            return False
        for i in range(1, self.N + 1):
            a, b = self.u[i - 1], other.u[i - 1]
            if (a is None) != (b is None):
                return False
            if a is None:
                continue
            if isinstance(a, GaussRat) and isinstance(b, GaussRat):
                if a != b:
                    return False
            elif abs(self.slot_complex(i) - other.slot_complex(i)) > tol:
                return False
        return True

    def to_json(self):
        slots = []
        for ui in self.u:
            if ui is None:
                slots.append(None)
            elif isinstance(ui, GaussRat):
                slots.append(ui.to_json())
            else:
                slots.append({"re": float(ui.real), "im": float(ui.imag),
                              "numeric": True})
        return {"tau": list(self.tau), "u": slots}

    def __repr__(self):
        return f"ShapeMatrix(tau={self.tau}, u={self.u})"


# ---------------------------------------------------------------------------
# Shape of a Hermitian matrix
# ---------------------------------------------------------------------------

def _phase_of(d):
    """Exact unimodular direction of a nonzero GaussRat when |d| is rational,
    else a complex phase."""
    a2 = d.abs2()
    root = rational_sqrt(a2)
    if root is not None:
        return d.scale(Fraction(1) / root)
    c = d.to_complex()
    return c / abs(c)


def _chain_tau_images(chain_pairs):
    """Map column -> row over accumulated pivot pairs [(p, tau_p), ...]."""
    return {p: tp for p, tp in chain_pairs}


def shape_of(z):
    """Shape of an exact Hermitian matrix via lex-first nonvanishing minors.

    For each size k up to the rank, scans label pairs (columns, rows) in the
    pair-lexicographic order and pivots on the first nonzero exact minor;
    the pivots assemble the involution, and slot phases come out of the
    positivity normalisation as ratios of consecutive pivot minors.
    """
    if z.mode != "exact":
        raise ValueError("shape_of needs exact entries")
    N = z.N
    rank = exact_rank(z.entries)
    tau = list(range(1, N + 1))
    u = [None] * N
    if rank == 0:
        return ShapeMatrix(tau, u)
    pairs = []           # chain of (column, row) pivots
    prev_dir = GR1
    prev_cols, prev_rows = (), ()
    for k in range(1, rank + 1):
        pivot = None
        for J in combinations(range(1, N + 1), k):
            for I in combinations(range(1, N + 1), k):
                val = exact_minor(z.entries, I, J)
                if not val.is_zero():
                    pivot = (J, I, val)
                    break
            if pivot:
                break
        if pivot is None:
            raise InconsistentPivots(f"no nonzero minor at size {k}")
        J, I, val = pivot
        new_cols = tuple(sorted(set(J) - set(prev_cols)))
        new_rows = tuple(sorted(set(I) - set(prev_rows)))
        if (len(new_cols) != 1 or len(new_rows) != 1
                or set(prev_cols) - set(J) or set(prev_rows) - set(I)
                or new_cols[0] < max(prev_cols, default=0)):
            raise InconsistentPivots(
                f"pivot chain broke at size {k}: {prev_cols} -> {J}")
        pairs.append((new_cols[0], new_rows[0]))
        tau_map = _chain_tau_images(pairs)
        images = [tau_map[p] for p in J]
        inv = sum(1 for a in range(k) for b in range(a + 1, k)
                  if images[a] > images[b])
        direction = GaussRat((-1) ** inv) * val
        ratio = direction / prev_dir
        phase = _phase_of(ratio)
        p, tp = pairs[-1]
        tau[p - 1], tau[tp - 1] = tp, p
        u[p - 1] = phase
        if tp != p:
            u[tp - 1] = phase.conj() if isinstance(phase, GaussRat) \
                else complex(phase).conjugate()
        prev_cols, prev_rows, prev_dir = J, I, direction
    try:
        return ShapeMatrix(tau, u)
    except ValueError as exc:
        raise InconsistentPivots(str(exc)) from exc


def _check_triangular_exact(t):
    n = len(t)
    for i in range(n):
        d = t[i][i]
        if not d.is_zero() and (not d.is_real() or d.re <= 0):
            raise NotTriangular("diagonal must be strictly positive")
        if d.is_zero():
            raise NotTriangular("diagonal must be strictly positive")
        for j in range(i):
            if not t[i][j].is_zero():
                raise NotTriangular("lower part must vanish")


def tn_invariance_check(z, t):
    """Shape equality of z and t* z t for exact triangular t."""
    _check_triangular_exact(t)
    s1 = shape_of(z)
    zt = gr_matmul(gr_conj_t(t), gr_matmul(z.entries, t))
    s2 = shape_of(HermitianMatrix(zt, mode="exact"))
    return s1.same_shape(s2)


# ---------------------------------------------------------------------------
# Congruence decomposition
# ---------------------------------------------------------------------------

def _inv_upper_exact(g):
    """Inverse of an upper-triangular GaussRat matrix (back substitution)."""
    n = len(g)
    inv = gr_identity(n)
    for col in range(n):
        x = [GR0] * n
        for i in range(n - 1, -1, -1):
            s = GR1 if i == col else GR0
            for j in range(i + 1, n):
                s = s - g[i][j] * x[j]
            x[i] = s / g[i][i]
        for i in range(n):
            inv[i][col] = x[i]
    return inv


class _ExactSqrtMiss(Exception):
    pass


def _decompose_exact(z):
    N = z.N
    m = [row[:] for row in z.entries]
    g = gr_identity(N)

    def congr(p, r, lam):
        # z <- (I + lam e_{p,r})* z (I + lam e_{p,r}); updates g too
        for x in range(N):
            m[x][r] = m[x][r] + lam * m[x][p]
        lc = lam.conj()
        for x in range(N):
            m[r][x] = m[r][x] + lc * m[p][x]
        for x in range(N):
            g[x][r] = g[x][r] + lam * g[x][p]

    def scale(p, d):
        for x in range(N):
            m[x][p] = m[x][p].scale(d)
        for x in range(N):
            m[p][x] = m[p][x].scale(d)
        for x in range(N):
            g[x][p] = g[x][p].scale(d)

    used = set()
    while True:
        pivot = None
        for c in range(N):
            if c in used:
                continue
            for r in range(N):
                if r not in used and not m[r][c].is_zero():
                    pivot = (c, r)
                    break
            if pivot:
                break
        if pivot is None:
            break
        p, i = pivot
        if i == p:
            for r in range(N):
                if r not in used and r != p and not m[r][p].is_zero():
                    congr(p, r, (GR0 - m[r][p] / m[p][p]).conj())
            val = m[p][p]
            root = rational_sqrt(abs(val.re))
            if root is None:
                raise _ExactSqrtMiss
            scale(p, Fraction(1) / root)
            used.add(p)
        else:
            beta = m[i][p]
            if not m[i][i].is_zero():
                congr(p, i, GR0 - m[i][i] / (beta + beta))
            for r in range(N):
                if r not in used and r not in (p, i) and not m[r][p].is_zero():
                    congr(i, r, (GR0 - m[r][p] / m[i][p]).conj())
            for r in range(N):
                if r not in used and r not in (p, i) and not m[r][i].is_zero():
                    congr(p, r, (GR0 - m[r][i] / m[p][i]).conj())
            root = rational_sqrt(m[i][p].abs2())
            if root is None:
                raise _ExactSqrtMiss
            root = rational_sqrt(root)
            if root is None:
                raise _ExactSqrtMiss
            f = Fraction(1) / root
            scale(p, f)
            scale(i, f)
            used.add(p)
            used.add(i)
    tau = list(range(1, N + 1))
    u = [None] * N
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if not m[j - 1][i - 1].is_zero():
                tau[i - 1] = j
                u[i - 1] = m[j - 1][i - 1]
    S = ShapeMatrix(tau, u)
    t = _inv_upper_exact(g)
    return HermitianMatrix([row[:] for row in t], mode="exact",
                           check=False), S


def _decompose_numeric(zn):
    N = zn.shape[0]
    m = zn.astype(complex).copy()
    g = np.eye(N, dtype=complex)
    tol = 1e-11 * max(1.0, np.max(np.abs(zn)))

    def congr(p, r, lam):
        m[:, r] += lam * m[:, p]
        m[r, :] += np.conj(lam) * m[p, :]
        g[:, r] += lam * g[:, p]

    def scale(p, d):
        m[:, p] *= d
        m[p, :] *= d
        g[:, p] *= d

    used = set()
    while True:
        pivot = None
        for c in range(N):
            if c in used:
                continue
            for r in range(N):
                if r not in used and abs(m[r, c]) > tol:
                    pivot = (c, r)
                    break
            if pivot:
                break
        if pivot is None:
            break
        p, i = pivot
        if i == p:
            for r in range(N):
                if r not in used and r != p and abs(m[r, p]) > tol:
                    congr(p, r, np.conj(-m[r, p] / m[p, p]))
            scale(p, 1.0 / np.sqrt(abs(m[p, p].real)))
            used.add(p)
        else:
            beta = m[i, p]
            congr(p, i, -m[i, i] / (2 * beta))
            for r in range(N):
                if r not in used and r not in (p, i) and abs(m[r, p]) > tol:
                    congr(i, r, np.conj(-m[r, p] / m[i, p]))
            for r in range(N):
                if r not in used and r not in (p, i) and abs(m[r, i]) > tol:
                    congr(p, r, np.conj(-m[r, i] / m[p, i]))
            f = 1.0 / np.sqrt(abs(m[i, p]))
            scale(p, f)
            scale(i, f)
            used.add(p)
            used.add(i)
    m[np.abs(m) < 10 * tol] = 0.0
    tau = list(range(1, N + 1))
    u = [None] * N
    for i in range(N):
        for j in range(N):
            if m[j, i] != 0:
                tau[i] = j + 1
                u[i] = complex(m[j, i] / abs(m[j, i]))
    S = ShapeMatrix(tau, u)
    t = np.linalg.inv(g)
    return HermitianMatrix(t, mode="numeric", check=False), S


def decompose(z):
    """Factor z = t* S t with t upper triangular, positive diagonal.

    Stays exact when every required square root is rational, otherwise
    falls back to floating point.  Returns (t, S).
    """
    if z.mode == "exact":
        try:
            return _decompose_exact(z)
        except _ExactSqrtMiss:
            pass
    return _decompose_numeric(z.to_numeric())


def decompose_residual(z, t, S):
    zn = z.to_numeric()
    tn = t.to_numeric() if isinstance(t, HermitianMatrix) else np.asarray(t, dtype=complex)
    sn = S.matrix().to_numeric()
    return float(np.max(np.abs(zn - tn.conj().T @ sn @ tn)))


# ---------------------------------------------------------------------------
# Leaf labels
# ---------------------------------------------------------------------------

@dataclass
class LeafLabel:
    shape: ShapeMatrix
    weight: list

    def to_json(self):
        return {"shape": self.shape.to_json(),
                "weight": [float(w) for w in self.weight]}


def weight_sign(lam, zero_tol=0.0):
    plus = minus = zero = 0
    for x in lam:
        if isinstance(x, (int, Fraction)):
            v = Fraction(x)
            if v > 0:
                plus += 1
            elif v < 0:
                minus += 1
            else:
                zero += 1
        else:
            if x > zero_tol:
                plus += 1
            elif x < -zero_tol:
                minus += 1
            else:
                zero += 1
    return plus, minus, zero


def leaf_label(z):
    """Pair the shape with the sorted spectrum."""
    if z.mode == "exact":
        s = shape_of(z)
    else:
        _, s = decompose(z)
    return LeafLabel(shape=s, weight=[float(w) for w in z.eigenvalues()])


def build_leaf_point(shape, lam):
    """Assemble an enhanced-shape representative with the given spectrum.

    Fixed support points receive matching-sign eigenvalues on the diagonal;
    each two-cycle receives one positive and one negative eigenvalue through
    the standard 2x2 congruence block.  Exact when the block square roots
    are rational and all phases exact.
    """
    lam = list(lam)
    if weight_sign(lam) != shape.sign_multiset():
        raise SignMismatch(f"{weight_sign(lam)} != {shape.sign_multiset()}")
    exactable = shape.is_exact() and all(isinstance(x, (int, Fraction))
                                         for x in lam)
    pos = sorted([Fraction(x) if exactable else float(x) for x in lam if x > 0],
                 reverse=True)
    neg = sorted([Fraction(x) if exactable else float(x) for x in lam if x < 0])
    N = shape.N
    blocks = []
    for i in range(1, N + 1):
        t = shape.tau[i - 1]
        if t == i and shape.u[i - 1] is not None:
            val = shape.u[i - 1]
            s = val.re > 0 if isinstance(val, GaussRat) else complex(val).real > 0
            blocks.append(("diag", i, pos.pop(0) if s else neg.pop(0)))
        elif t > i:
            blocks.append(("pair", i, pos.pop(0), neg.pop(0)))
    if exactable:
        roots = {}
        for blk in blocks:
            if blk[0] == "pair":
                _, i, l1, l2 = blk
                r = rational_sqrt(l1 * (-l2))
                if r is None:
                    exactable = False
                    break
                roots[i] = r
    if exactable:
        ent = [[GR0 for _ in range(N)] for _ in range(N)]
        for blk in blocks:
            if blk[0] == "diag":
                _, i, a = blk
                ent[i - 1][i - 1] = GaussRat(a)
            else:
                _, i, l1, l2 = blk
                t = shape.tau[i - 1]
                c = GaussRat(roots[i])
                ent[i - 1][t - 1] = c * shape.u[t - 1]
                ent[t - 1][i - 1] = c * shape.u[i - 1]
                ent[t - 1][t - 1] = GaussRat(l1 + l2)
        return HermitianMatrix(ent, mode="exact")
    ent = np.zeros((N, N), dtype=complex)
    for blk in blocks:
        if blk[0] == "diag":
            _, i, a = blk
            ent[i - 1, i - 1] = float(a)
        else:
            _, i, l1, l2 = blk
            t = shape.tau[i - 1]
            c = float(np.sqrt(float(l1) * (-float(l2))))
            ent[i - 1, t - 1] = c * shape.slot_complex(t)
            ent[t - 1, i - 1] = c * shape.slot_complex(i)
            ent[t - 1, t - 1] = float(l1) + float(l2)
    return HermitianMatrix(ent, mode="numeric")


# ---------------------------------------------------------------------------
# The quadratic bracket
# ---------------------------------------------------------------------------

def _classical_r(N):
    """The classical r-matrix on C^N (x) C^N as a dense integer array."""
    r = np.zeros((N * N, N * N))
    for i in range(N):
        r[i * N + i, i * N + i] = 1
    for i in range(N):
        for j in range(i + 1, N):
            # e_ij (x) e_ji
            r[i * N + j, j * N + i] = 2
    return r


def _classical_r21(N):
    r = np.zeros((N * N, N * N))
    for i in range(N):
        r[i * N + i, i * N + i] = 1
    for i in range(N):
        for j in range(i + 1, N):
            r[j * N + i, i * N + j] = 2
    return r


def bracket_matrix_at(z):
    """Complex bracket values {Z_ij, Z_kl}(z) as a 4-index array."""
    zn = np.asarray(z, dtype=complex)
    N = zn.shape[0]
    r = _classical_r(N).astype(complex)
    r21 = _classical_r21(N).astype(complex)
    eye = np.eye(N, dtype=complex)
    zz = np.kron(zn, zn)
    z1 = np.kron(zn, eye)
    oz = np.kron(eye, zn)
    M = r21 @ zz - zz @ r + z1 @ r @ oz - oz @ r21 @ z1
    out = np.empty((N, N, N, N), dtype=complex)
    for i in range(N):
        for j in range(N):
            for k in range(N):
                for l in range(N):
                    out[i, j, k, l] = -1j * M[i * N + k, j * N + l]
    return out


# -- symbolic version (quadratic forms with GaussRat coefficients) -------------

def _poly_mul(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(sorted(ma + mb))
            s = out.get(m, GR0) + ca * cb
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
    return out


def _poly_add(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, GR0) + c
        if s.is_zero():
            out.pop(m, None)
        else:
            out[m] = s
    return out


def _poly_scale(a, c):
    return {m: v * c for m, v in a.items()} if not c.is_zero() else {}


def _mat_mul_poly(A, B):
    n = len(A)
    return [[_sum_polys(_poly_mul(A[i][k], B[k][j]) for k in range(n))
             for j in range(n)] for i in range(n)]


def _sum_polys(gen):
    out = {}
    for p in gen:
        out = _poly_add(out, p)
    return out


def _kron_poly(A, B):
    n = len(A)
    m = len(B)
    out = [[{} for _ in range(n * m)] for _ in range(n * m)]
    for i in range(n):
        for j in range(n):
            for k in range(m):
                for l in range(m):
                    out[i * m + k][j * m + l] = _poly_mul(A[i][j], B[k][l])
    return out


def poisson_bracket_coeffs(N):
    """{Z_ij, Z_kl} as exact quadratic forms in the matrix entries.

    Returns a dict mapping ((i,j),(k,l)) to {sorted entry-pair: GaussRat};
    the coefficients are purely imaginary.
    """
    one = {(): GR1}

    def const(c):
        return {(): GaussRat(c)} if c else {}

    zvar = [[{((i + 1, j + 1),): GR1} for j in range(N)] for i in range(N)]
    rP = [[const(int(_classical_r(N)[a, b])) for b in range(N * N)]
          for a in range(N * N)]
    r21P = [[const(int(_classical_r21(N)[a, b])) for b in range(N * N)]
            for a in range(N * N)]
    eyeP = [[one if i == j else {} for j in range(N)] for i in range(N)]
    zz = _kron_poly(zvar, zvar)
    z1 = _kron_poly(zvar, eyeP)
    oz = _kron_poly(eyeP, zvar)
    t1 = _mat_mul_poly(r21P, zz)
    t2 = _mat_mul_poly(zz, rP)
    t3 = _mat_mul_poly(_mat_mul_poly(z1, rP), oz)
    t4 = _mat_mul_poly(_mat_mul_poly(oz, r21P), z1)
    neg = GaussRat(-1)
    M = [[_poly_add(_poly_add(t1[a][b], _poly_scale(t2[a][b], neg)),
                    _poly_add(t3[a][b], _poly_scale(t4[a][b], neg)))
          for b in range(N * N)] for a in range(N * N)]
    minus_i = GaussRat(0, -1)
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for k in range(1, N + 1):
                for l in range(1, N + 1):
                    entry = M[(i - 1) * N + (k - 1)][(j - 1) * N + (l - 1)]
                    out[((i, j), (k, l))] = _poly_scale(entry, minus_i)
    return out


# ---------------------------------------------------------------------------
# Bivector, tangency, Jacobi
# ---------------------------------------------------------------------------

def realification_basis(N):
    """Orthonormal Hermitian basis: diagonal units, then real and imaginary
    off-diagonal combinations."""
    basis = []
    for i in range(N):
        e = np.zeros((N, N), dtype=complex)
        e[i, i] = 1
        basis.append(e)
    s = 1 / np.sqrt(2)
    for i in range(N):
        for j in range(i + 1, N):
            e = np.zeros((N, N), dtype=complex)
            e[i, j] = s
            e[j, i] = s
            basis.append(e)
            e = np.zeros((N, N), dtype=complex)
            e[i, j] = 1j * s
            e[j, i] = -1j * s
            basis.append(e)
    return basis


def poisson_bivector(z):
    """Real antisymmetric bivector matrix in the realification coordinates."""
    zn = z.to_numeric() if isinstance(z, HermitianMatrix) else np.asarray(z, dtype=complex)
    N = zn.shape[0]
    B = bracket_matrix_at(zn)
    E = np.array(realification_basis(N))
    full = np.einsum("Aba,Bdc,abcd->AB", E, E, B)
    scale = max(1.0, float(np.max(np.abs(zn))) ** 2)
    if np.max(np.abs(full.imag)) > 1e-12 * scale:
        raise IllConditioned("bracket of real coordinates not real")
    pi = full.real
    asym = np.max(np.abs(pi + pi.T))
    if asym > 1e-12 * max(1.0, float(np.max(np.abs(pi)))):
        raise IllConditioned(f"bivector not antisymmetric: {asym}")
    return pi


def _coords(v, basis):
    return np.array([np.trace(E @ v).real for E in basis])


def _unitary_lie_basis(N):
    out = []
    for i in range(N):
        a = np.zeros((N, N), dtype=complex)
        a[i, i] = 1j
        out.append(a)
    for i in range(N):
        for j in range(i + 1, N):
            a = np.zeros((N, N), dtype=complex)
            a[i, j] = 1
            a[j, i] = -1
            out.append(a)
            a = np.zeros((N, N), dtype=complex)
            a[i, j] = 1j
            a[j, i] = 1j
            out.append(a)
    return out


def _triangular_lie_basis(N):
    out = []
    for i in range(N):
        a = np.zeros((N, N), dtype=complex)
        a[i, i] = 1
        out.append(a)
    for i in range(N):
        for j in range(i + 1, N):
            a = np.zeros((N, N), dtype=complex)
            a[i, j] = 1
            out.append(a)
            a = np.zeros((N, N), dtype=complex)
            a[i, j] = 1j
            out.append(a)
    return out


def _numeric_rank(mat, tol):
    if mat.size == 0:
        return 0
    sv = np.linalg.svd(mat, compute_uv=False)
    smax = sv[0] if len(sv) else 0.0
    if smax == 0.0:
        return 0
    band = [s for s in sv if tol * smax * 1e-2 < s < tol * smax * 1e2]
    if band:
        raise IllConditioned(f"singular values near the rank threshold: {band}")
    return int(np.sum(sv > tol * smax))


def leaf_tangency_check(z, tol=1e-8):
    """Compare the bivector range with the two orbit tangents at z.

    Returns dims of the bivector range, both tangents and their
    intersection, and whether range = intersection within tolerance.
    """
    zn = z.to_numeric() if isinstance(z, HermitianMatrix) else np.asarray(z, dtype=complex)
    N = zn.shape[0]
    basis = realification_basis(N)
    pi = poisson_bivector(zn)
    u_cols = [_coords(a.conj().T @ zn + zn @ a, basis)
              for a in _unitary_lie_basis(N)]
    t_cols = [_coords(a.conj().T @ zn + zn @ a, basis)
              for a in _triangular_lie_basis(N)]
    U = np.array(u_cols).T
    T = np.array(t_cols).T
    rank_pi = _numeric_rank(pi, tol)
    rank_u = _numeric_rank(U, tol)
    rank_t = _numeric_rank(T, tol)
    rank_union = _numeric_rank(np.hstack([U, T]), tol)
    inter_dim = rank_u + rank_t - rank_union
    # Range basis of the bivector
    contained = True
    if rank_pi:
        uu, sv, _ = np.linalg.svd(pi)
        rng = uu[:, :rank_pi]
        for span in (U, T):
            if span.size == 0:
                contained = rank_pi == 0
                continue
            sol, *_rest = np.linalg.lstsq(span, rng, rcond=None)
            resid = np.max(np.abs(span @ sol - rng))
            if resid > tol:
                contained = False
    equal = contained and (rank_pi == inter_dim)
    return {"bivector_rank": rank_pi, "unitary_dim": rank_u,
            "triangular_dim": rank_t, "intersection_dim": inter_dim,
            "equal": bool(equal)}


def jacobi_check(N, samples=100, seed=0, tol=1e-8):
    """Cyclic Jacobi residual of the quadratic bracket at random points."""
    table = poisson_bracket_coeffs(N)

    def bracket_with_poly(ij, poly):
        out = {}
        for mono, c in poly.items():
            for pos, var in enumerate(mono):
                rest = mono[:pos] + mono[pos + 1:]
                inner = table[(ij, var)]
                for m2, c2 in inner.items():
                    m = tuple(sorted(m2 + rest))
                    s = out.get(m, GR0) + c * c2
                    if s.is_zero():
                        out.pop(m, None)
                    else:
                        out[m] = s
        return out

    coords = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    cyclic = {}
    for f in coords:
        for g in coords:
            for h in coords:
                total = {}
                for a, b, c in ((f, g, h), (g, h, f), (h, f, g)):
                    total = _poly_add(total, bracket_with_poly(a, table[(b, c)]))
                if total:
                    cyclic[(f, g, h)] = total
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        zr = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        zn = (zr + zr.conj().T) / 2
        vals = {(i + 1, j + 1): zn[i, j] for i in range(N) for j in range(N)}
        for poly in cyclic.values():
            total = 0j
            for mono, c in poly.items():
                term = complex(c.to_complex())
                for var in mono:
                    term *= vals[var]
                total += term
            worst = max(worst, abs(total))
    return {"N": N, "samples": samples, "max_residual": worst,
            "ok": worst <= tol, "nonzero_cyclic_polys": len(cyclic)}


# ---------------------------------------------------------------------------
# Random exact test data
# ---------------------------------------------------------------------------

def random_exact_phase(rng):
    """Random exact unimodular GaussRat (fourth roots and Pythagorean)."""
    choices = [GaussRat(1), GaussRat(-1), GaussRat(0, 1), GaussRat(0, -1),
               GaussRat(Fraction(3, 5), Fraction(4, 5)),
               GaussRat(Fraction(-3, 5), Fraction(4, 5)),
               GaussRat(Fraction(5, 13), Fraction(-12, 13))]
    return rng.choice(choices)


def random_shape(N, rng, allow_float=False):
    """Random exact self-adjoint shape matrix."""
    items = list(range(1, N + 1))
    rng.shuffle(items)
    tau = list(range(1, N + 1))
    u = [None] * N
    while items:
        i = items.pop()
        kind = rng.random()
        if kind < 0.25:
            continue  # zero slot
        if kind < 0.6 or not items:
            u[i - 1] = GaussRat(rng.choice([1, -1]))
        else:
            j = items.pop()
            a, b = min(i, j), max(i, j)
            tau[a - 1], tau[b - 1] = b, a
            ph = random_exact_phase(rng)
            u[a - 1] = ph
            u[b - 1] = ph.conj()
    return ShapeMatrix(tau, u)


def random_rational(rng, small=6):
    num = rng.randint(-small, small)
    den = rng.randint(1, small)
    return Fraction(num, den)


def random_triangular(N, rng):
    """Random exact element of the positive triangular group."""
    t = gr_identity(N)
    for i in range(N):
        t[i][i] = GaussRat(Fraction(rng.randint(1, 5), rng.randint(1, 5)))
        for j in range(i + 1, N):
            t[i][j] = GaussRat(random_rational(rng), random_rational(rng))
    return t


def random_square_weights(shape, rng):
    """Compatible weights whose positive parts are rational squares.

    Any positive/negative pairing then has a rational square root, so the
    enhanced-shape construction stays exact."""
    plus, minus, zero = shape.sign_multiset()
    lam = [Fraction(rng.randint(1, 4), rng.randint(1, 3)) ** 2
           for _ in range(plus)]
    lam += [-Fraction(rng.randint(1, 4), rng.randint(1, 3)) ** 2
            for _ in range(minus)]
    lam += [Fraction(0)] * zero
    rng.shuffle(lam)
    return lam


def random_compatible_weights(shape, rng):
    plus, minus, zero = shape.sign_multiset()
    lam = []
    for _ in range(plus):
        lam.append(Fraction(rng.randint(1, 9), rng.randint(1, 4)))
    for _ in range(minus):
        lam.append(-Fraction(rng.randint(1, 9), rng.randint(1, 4)))
    lam.extend([Fraction(0)] * zero)
    rng.shuffle(lam)
    return lam


def random_exact_hermitian(N, rng):
    """t* E t for a random exact enhanced shape E and random triangular t."""
    shape = random_shape(N, rng)
    # enhanced: keep the diagonal/pair structure but free rational weights
    E = [[GR0 for _ in range(N)] for _ in range(N)]
    for i in range(1, N + 1):
        tu = shape.tau[i - 1]
        if shape.u[i - 1] is None:
            continue
        if tu == i:
            sgn = 1 if shape.u[i - 1].re > 0 else -1
            E[i - 1][i - 1] = GaussRat(sgn * abs(random_rational(rng)) + (1 if sgn > 0 else -1))
        elif tu > i:
            c = GaussRat(abs(random_rational(rng)) + 1)
            E[tu - 1][i - 1] = c * shape.u[i - 1]
            E[i - 1][tu - 1] = c * shape.u[tu - 1]
            E[tu - 1][tu - 1] = GaussRat(random_rational(rng))
    t = random_triangular(N, rng)
    z = gr_matmul(gr_conj_t(t), gr_matmul(E, t))
    return HermitianMatrix(z, mode="exact")
