"""Exact linear algebra kernels: Fraction row reduction, prime-field row
reduction, and integer-lattice computations (row HNF, kernels, saturation).

Everything here is deterministic: pivots are always the first usable entry,
never chosen by magnitude, so repeated runs produce identical output.
Matrices are plain lists of lists; rows are never mutated in place by public
functions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _copy(mat):
    return [list(row) for row in mat]


# ---------------------------------------------------------------------------
# Fraction (rational) elimination


def frac_rref(mat):
    """Reduced row echelon form over Fraction.

    Returns (rref_rows, pivot_columns). Zero rows are dropped.
    """
    rows = [[Fraction(x) for x in row] for row in mat]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def frac_solve(mat, rhs):
    """One solution x of mat @ x = rhs over Fraction, or None.

    Returns (particular, nullspace_basis); nullspace vectors span all other
    solutions.
    """
    if not mat:
        if any(Fraction(b) != 0 for b in rhs):
            return None
        return [], []
    ncols = len(mat[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    red, pivots = frac_rref(aug)
    # Inconsistent iff some pivot lands in the augmented column.
    if ncols in pivots:
        return None
    particular = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        particular[pc] = row[ncols]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[fc]
        basis.append(vec)
    return particular, basis


def frac_nullspace(mat):
    """Basis of {x : mat @ x = 0} over Fraction."""
    if not mat:
        return []
    sol = frac_solve(mat, [Fraction(0)] * len(mat))
    return sol[1]


def in_span(rows, vec):
    """Is vec in the Fraction row span of rows? Returns coefficients or None."""
    if not rows:
        return [] if all(Fraction(x) == 0 for x in vec) else None
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))]
    sol = frac_solve(cols, list(vec))
    return None if sol is None else sol[0]


# ---------------------------------------------------------------------------
# Prime-field elimination (dense, small moduli)


def gf_rref(mat, p):
    rows = [[x % p for x in row] for row in mat]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] % p != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p != 0:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def gf_in_span(rows, vec, p):
    """Membership of vec in the GF(p) row span; coefficients or None."""
    if not rows:
        return [] if all(x % p == 0 for x in vec) else None
    ncols = len(rows[0])
    # Solve the transpose system rows^T @ c = vec.
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    aug = [cols[j] + [vec[j] % p] for j in range(ncols)]
    red, piv = gf_rref(aug, p)
    if len(rows) in piv:
        return None
    coeffs = [0] * len(rows)
    for row, pc in zip(red, piv):
        coeffs[pc] = row[len(rows)]
    return coeffs


# ---------------------------------------------------------------------------
# Integer lattices


def hnf_rows(mat):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular, H = U @ mat, H in row echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    Zero rows of H are kept (they index U rows spanning the left kernel).
    """
    rows = _copy(mat)
    n = len(rows)
    ncols = len(rows[0]) if rows else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r = 0
    for c in range(ncols):
        # Euclidean elimination in column c below row r.
        while True:
            idx = [i for i in range(r, n) if rows[i][c] != 0]
            if not idx:
                break
            if len(idx) == 1:
                i = idx[0]
                rows[r], rows[i] = rows[i], rows[r]
                u[r], u[i] = u[i], u[r]
                break
            # Reduce the larger entries by the smallest nonzero one.
            piv = min(idx, key=lambda i: (abs(rows[i][c]), i))
            for i in idx:
                if i == piv:
                    continue
                q = rows[i][c] // rows[piv][c]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[piv])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[piv])]
        if r < n and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
            r += 1
            if r == n:
                break
    return rows, u


def lattice_basis(gens):
    """Echelonized basis (nonzero HNF rows) of the lattice spanned by gens."""
    if not gens:
        return []
    h, _ = hnf_rows(gens)
    return [row for row in h if any(x != 0 for x in row)]


def lattice_reduce(vec, basis, unit_prime=None):
    """Reduce vec against an echelonized integer basis.

    With unit_prime=None coefficients must be integers (plain lattice
    membership).  With unit_prime=p, division by integers coprime to p is
    allowed, deciding membership in the Z_(p)-span.

    Returns (residual, coeffs); membership holds iff residual is all zero.
    """
    res = [Fraction(x) for x in vec]
    coeffs = []
    for row in basis:
        pc = next((j for j, x in enumerate(row) if x != 0), None)
        if pc is None:
            coeffs.append(Fraction(0))
            continue
        q = res[pc] / row[pc]
        if unit_prime is None:
            if q.denominator != 1:
                # Best integral approximation keeps the procedure canonical.
                q = Fraction(q.numerator // q.denominator)
        else:
            if q.denominator % unit_prime == 0:
                num, den = q.numerator, q.denominator
                k = 0
                while den % unit_prime == 0:
                    den //= unit_prime
                    k += 1
                # Drop the non-unit part; leaves a nonzero residual.
                q = Fraction(0)
        if q:
            res = [a - q * b for a, b in zip(res, row)]
        coeffs.append(q)
    return res, coeffs


def lattice_member(vec, basis, unit_prime=None):
    """Coefficients expressing vec over basis, or None."""
    res, coeffs = lattice_reduce(vec, basis, unit_prime)
    if any(x != 0 for x in res):
        return None
    return coeffs


def integer_kernel(mat):
    """Basis of {x in Z^n : x @ mat = 0} (left kernel), automatically saturated."""
    if not mat:
        return []
    h, u = hnf_rows(mat)
    return [u[i] for i in range(len(mat)) if all(x == 0 for x in h[i])]


def right_integer_kernel(mat):
    """Basis of {x in Z^n : mat @ x = 0}."""
    if not mat or not mat[0]:
        return []
    t = [[mat[i][j] for i in range(len(mat))] for j in range(len(mat[0]))]
    return integer_kernel(t)


def saturate_lattice(gens):
    """Basis of (Q-span of gens) intersected with Z^n.

    gens are integer row vectors.  The result contains the HNF lattice of
    gens with all finite index divided out.
    """
    rows = [r for r in gens if any(x != 0 for x in r)]
    if not rows:
        return []
    ncols = len(rows[0])
    # Rational orthogonal complement, cleared to integers.
    null = frac_nullspace(rows)
    if not null:
        return lattice_basis([[1 if i == j else 0 for j in range(ncols)]
                              for i in range(ncols)])
    cleared = []
    for vec in null:
        den = 1
        for x in vec:
            den = den * x.denominator // gcd(den, x.denominator)
        cleared.append([int(x * den) for x in vec])
    # x is in the saturation iff x . y = 0 for every complement vector y.
    mat = [[cleared[k][j] for k in range(len(cleared))] for j in range(ncols)]
    return lattice_basis(integer_kernel(mat))


def clear_denominators(vec):
    """Scale a rational vector to a primitive integer vector (positive lead)."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return ints
