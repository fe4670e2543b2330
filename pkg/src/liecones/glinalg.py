"""Exact graded linear algebra: matrices, canonical subspaces, eigensplitting.

All data is over one scalar tower (see exactnum).  Subspaces are kept in
reduced row-echelon form, which makes equality decidable and serialization
stable.  Eigenvalue extraction factors characteristic polynomials over Q
(via sympy) and splits quadratics inside the declared tower; anything that
does not split is reported as SPLITTING_FAILURE, never approximated.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .exactnum import ExactnumError, Field, Poly, Scalar, sqrt_in_field

Vector = tuple[Scalar, ...]


class LinalgError(ValueError):
    pass


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v, strict=True))

def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v, strict=True))

def vec_scale(s: Scalar, v: Vector) -> Vector:
    return tuple(s * x for x in v)

def vec_is_zero(v: Vector) -> bool:
    return not any(v)

def zero_vector(fld: Field, n: int) -> Vector:
    return tuple(fld.zero for _ in range(n))

def unit_vector(fld: Field, n: int, j: int) -> Vector:
    return tuple(fld.one if k == j else fld.zero for k in range(n))


class Matrix:
    """Dense exact matrix over one tower; immutable."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, fld: Field, rows: Sequence[Sequence]):
        self.field = fld
        self.rows = tuple(tuple(fld.coerce(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise LinalgError("ragged matrix")

    @staticmethod
    def identity(fld: Field, n: int) -> "Matrix":
        return Matrix(fld, [[fld.one if i == j else fld.zero for j in range(n)]
                            for i in range(n)])

    @staticmethod
    def zero(fld: Field, m: int, n: int) -> "Matrix":
        return Matrix(fld, [[fld.zero] * n for _ in range(m)])

    @staticmethod
    def from_cols(fld: Field, cols: Sequence[Sequence]) -> "Matrix":
        if not cols:
            return Matrix(fld, [])
        return Matrix(fld, [[cols[j][i] for j in range(len(cols))]
                            for i in range(len(cols[0]))])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field is other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field.tag, self.rows))

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, [vec_add(r, s) for r, s in zip(self.rows, other.rows, strict=True)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, [vec_sub(r, s) for r, s in zip(self.rows, other.rows, strict=True)])

    def __neg__(self) -> "Matrix":
        return self.scale(-self.field.one)

    def scale(self, s: Scalar) -> "Matrix":
        return Matrix(self.field, [vec_scale(s, r) for r in self.rows])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise LinalgError("dimension mismatch in matrix product")
        z = self.field.zero
        ocols = other.ncols
        out = []
        for r in self.rows:
            row = [z] * ocols
            for k, a in enumerate(r):
                if not a:
                    continue
                orow = other.rows[k]
                row = [row[j] + a * orow[j] for j in range(ocols)]
            out.append(row)
        return Matrix(self.field, out)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.ncols:
            raise LinalgError("dimension mismatch in matrix-vector product")
        z = self.field.zero
        out = []
        for r in self.rows:
            acc = z
            for a, x in zip(r, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows))) if self.rows else self

    def conjugate(self) -> "Matrix":
        return Matrix(self.field, [[x.conjugate_i() for x in r] for r in self.rows])

    def conj_transpose(self) -> "Matrix":
        return self.conjugate().transpose()

    def trace(self) -> Scalar:
        acc = self.field.zero
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def power(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise LinalgError("power of non-square matrix")
        acc = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base if k > 1 else base
            k >>= 1
        return acc

    # elimination ----------------------------------------------------------
    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        rows = [list(r) for r in self.rows]
        pivots: list[int] = []
        pr = 0
        for pc in range(self.ncols):
            pivot_row = None
            for i in range(pr, len(rows)):
                if rows[i][pc]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
            inv = rows[pr][pc].inverse()
            rows[pr] = [x * inv for x in rows[pr]]
            for i in range(len(rows)):
                if i != pr and rows[i][pc]:
                    f = rows[i][pc]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
            pivots.append(pc)
            pr += 1
            if pr == len(rows):
                break
        return Matrix(self.field, rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[Vector]:
        """Canonical basis of the null space (one vector per free column)."""
        R, pivots = self.rref()
        pivset = set(pivots)
        basis = []
        one, zero = self.field.one, self.field.zero
        for j in range(self.ncols):
            if j in pivset:
                continue
            v = [zero] * self.ncols
            v[j] = one
            for r, pc in enumerate(pivots):
                v[pc] = -R.rows[r][j]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Vector) -> Vector | None:
        """One exact solution of M x = b, or None."""
        if len(b) != self.nrows:
            raise LinalgError("dimension mismatch in solve")
        aug = Matrix(self.field, [list(r) + [b[i]] for i, r in enumerate(self.rows)])
        R, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [self.field.zero] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = R.rows[r][self.ncols]
        return tuple(x)

    def solve_matrix(self, B: "Matrix") -> "Matrix | None":
        """X with self @ X = B, or None."""
        cols = []
        for j in range(B.ncols):
            x = self.solve(B.col(j))
            if x is None:
                return None
            cols.append(x)
        return Matrix.from_cols(self.field, cols)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise LinalgError("inverse of non-square matrix")
        X = self.solve_matrix(Matrix.identity(self.field, self.nrows))
        if X is None or not (self * X == Matrix.identity(self.field, self.nrows)):
            raise LinalgError("matrix is singular")
        return X

    def det(self) -> Scalar:
        if self.nrows != self.ncols:
            raise LinalgError("determinant of non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = self.field.one
        for pc in range(n):
            pivot_row = None
            for i in range(pc, n):
                if rows[i][pc]:
                    pivot_row = i
                    break
            if pivot_row is None:
                return self.field.zero
            if pivot_row != pc:
                rows[pc], rows[pivot_row] = rows[pivot_row], rows[pc]
                det = -det
            det = det * rows[pc][pc]
            inv = rows[pc][pc].inverse()
            for i in range(pc + 1, n):
                if rows[i][pc]:
                    f = rows[i][pc] * inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[pc])]
        return det

    def charpoly(self) -> Poly:
        """Characteristic polynomial det(xI - M), monic, via Faddeev-LeVerrier."""
        if self.nrows != self.ncols:
            raise LinalgError("charpoly of non-square matrix")
        n = self.nrows
        f = self.field
        cs = [f.zero] * (n + 1)
        cs[n] = f.one
        Mk = Matrix.identity(f, n)
        for k in range(1, n + 1):
            Mk = self * Mk
            ck = Mk.trace() * f.rat(Fraction(-1, k))
            cs[n - k] = ck
            if k < n:
                Mk = Mk + Matrix.identity(f, n).scale(ck)
        return Poly(f, cs)

    def minpoly(self) -> Poly:
        """Monic minimal polynomial, found by the first linear dependence of powers."""
        if self.nrows != self.ncols:
            raise LinalgError("minpoly of non-square matrix")
        f = self.field
        n = self.nrows
        powers = [Matrix.identity(f, n)]
        for k in range(1, n + 2):
            flat = [[p.rows[i][j] for p in powers] for i in range(n) for j in range(n)]
            dep = Matrix(f, flat).kernel_basis()
            if dep:
                coeffs = dep[0]
                return Poly(f, coeffs).monic()
            powers.append(powers[-1] * self)
        raise LinalgError("minpoly search failed")  # pragma: no cover

    def exp_nilpotent(self) -> "Matrix":
        """Exact exp(M) for nilpotent M (polynomial series)."""
        n = self.nrows
        f = self.field
        acc = Matrix.identity(f, n)
        term = Matrix.identity(f, n)
        fact = 1
        for k in range(1, n + 1):
            term = term * self
            if term.is_zero():
                return acc
            fact *= k
            acc = acc + term.scale(f.rat(Fraction(1, fact)))
        raise LinalgError("matrix is not nilpotent")

    def promote(self, fld: Field) -> "Matrix":
        return Matrix(fld, [[x.promote(fld) for x in r] for r in self.rows])

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"


# ---------------------------------------------------------------------------
# graded spaces and canonical subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedSpace:
    """Ambient Z2-graded coordinate space; even coordinates come first."""
    even_dim: int
    odd_dim: int
    basis_names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.basis_names:
            names = tuple(f"e{i}" for i in range(self.even_dim)) + \
                    tuple(f"f{i}" for i in range(self.odd_dim))
            object.__setattr__(self, "basis_names", names)
        if len(self.basis_names) != self.even_dim + self.odd_dim:
            raise LinalgError("basis_names length mismatch")

    @property
    def dim(self) -> int:
        return self.even_dim + self.odd_dim

    def parity(self, i: int) -> int:
        return 0 if i < self.even_dim else 1

    def even_indices(self) -> range:
        return range(self.even_dim)

    def odd_indices(self) -> range:
        return range(self.even_dim, self.dim)


def ungraded(n: int) -> GradedSpace:
    return GradedSpace(n, 0)


class Subspace:
    """Subspace of a graded coordinate space, stored as canonical RREF rows."""

    __slots__ = ("field", "ambient", "rows", "pivots", "generators")

    def __init__(self, fld: Field, ambient: GradedSpace, vectors: Iterable[Sequence]):
        gens = tuple(tuple(fld.coerce(x) for x in v) for v in vectors)
        for v in gens:
            if len(v) != ambient.dim:
                raise LinalgError("vector length does not match ambient dimension")
        self.field = fld
        self.ambient = ambient
        self.generators = gens
        if gens:
            R, piv = Matrix(fld, gens).rref()
            self.rows = tuple(R.rows[k] for k in range(len(piv)))
            self.pivots = piv
        else:
            self.rows = ()
            self.pivots = ()

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field is other.field
                and self.ambient == other.ambient and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field.tag, self.ambient, self.rows))

    def basis(self) -> tuple[Vector, ...]:
        return self.rows

    def reduce(self, v: Vector) -> Vector:
        """Residual of v after eliminating against the canonical rows."""
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            if v[pc]:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Vector) -> bool:
        return vec_is_zero(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coords_of(self, v: Vector) -> Vector | None:
        """Coefficients of v over the canonical basis rows, or None."""
        if not self.contains(v):
            return None
        return tuple(v[pc] for pc in self.pivots)

    def sum_with(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.ambient, self.rows + other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.rows or not other.rows:
            return Subspace(self.field, self.ambient, [])
        # x = a . rows1 = b . rows2  <=>  (a, -b) in kernel of [rows1^T rows2^T]
        cols = [list(r) for r in self.rows] + [list(r) for r in other.rows]
        M = Matrix.from_cols(self.field, cols)
        vecs = []
        for k in M.kernel_basis():
            a = k[:len(self.rows)]
            v = zero_vector(self.field, self.ambient.dim)
            for coef, row in zip(a, self.rows):
                if coef:
                    v = vec_add(v, vec_scale(coef, row))
            vecs.append(v)
        return Subspace(self.field, self.ambient, vecs)

    def even_part(self) -> "Subspace":
        return self.intersect(coordinate_subspace(self.field, self.ambient,
                                                   self.ambient.even_indices()))

    def odd_part(self) -> "Subspace":
        return self.intersect(coordinate_subspace(self.field, self.ambient,
                                                   self.ambient.odd_indices()))

    def is_graded(self) -> bool:
        return self.even_part().dim + self.odd_part().dim == self.dim

    def homogeneous_basis(self) -> tuple[Vector, ...]:
        """Even rows followed by odd rows; requires a graded subspace."""
        if not self.is_graded():
            raise LinalgError("subspace is not graded")
        return self.even_part().rows + self.odd_part().rows

    def complement_coordinates(self) -> tuple[int, ...]:
        """Non-pivot coordinates; the matching unit vectors complete the basis."""
        pivset = set(self.pivots)
        return tuple(j for j in range(self.ambient.dim) if j not in pivset)

    def promote(self, fld: Field, ambient: GradedSpace | None = None) -> "Subspace":
        return Subspace(fld, ambient or self.ambient,
                        [tuple(x.promote(fld) for x in r) for r in self.rows])

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient.dim})"


def coordinate_subspace(fld: Field, ambient: GradedSpace, indices: Iterable[int]) -> Subspace:
    return Subspace(fld, ambient, [unit_vector(fld, ambient.dim, j) for j in indices])


def full_subspace(fld: Field, ambient: GradedSpace) -> Subspace:
    return coordinate_subspace(fld, ambient, range(ambient.dim))


def kernel(M: Matrix, ambient: GradedSpace | None = None) -> Subspace:
    return Subspace(M.field, ambient or ungraded(M.ncols), M.kernel_basis())


def image(M: Matrix, ambient: GradedSpace | None = None) -> Subspace:
    return Subspace(M.field, ambient or ungraded(M.nrows),
                    [M.col(j) for j in range(M.ncols)])


def solve(M: Matrix, b: Vector) -> Vector | None:
    return M.solve(b)


# ---------------------------------------------------------------------------
# eigenvalue splitting over the tower
# ---------------------------------------------------------------------------

@dataclass
class EigenSplit:
    """Result of a generalized-eigenspace computation; never approximate."""
    status: str                      # "OK" | "SPLITTING_FAILURE"
    pairs: list[tuple[Scalar, Subspace]] = dc_field(default_factory=list)
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "OK"


def _poly_to_sympy(p: Poly):
    x = sympy.Symbol("x")
    return sympy.Poly([sympy.Rational(c.as_fraction()) for c in reversed(p.coeffs)],
                      x, domain="QQ")

def _sympy_factors_to_polys(fld: Field, fac) -> list[tuple[Poly, int]]:
    out = []
    for f, mult in fac:
        coeffs = [Fraction(str(c)) for c in reversed(f.all_coeffs())]
        out.append((Poly(fld, coeffs), mult))
    return out


def rational_factors(p: Poly) -> list[tuple[Poly, int]]:
    """Irreducible factorization over Q of a rational-coefficient polynomial."""
    for c in p.coeffs:
        if not c.is_rational():
            raise LinalgError("rational_factors needs rational coefficients")
    sp = _poly_to_sympy(p)
    _, fac = sp.factor_list()
    return _sympy_factors_to_polys(p.field, fac)


def _roots_of_low_degree(f: Poly) -> list[Scalar] | None:
    """Roots in the tower of an irreducible (over Q) factor; None if unsplittable."""
    fld = f.field
    if f.degree == 1:
        b, a = f.coeffs
        return [-b / a]
    if f.degree == 2:
        c, b, a = f.coeffs
        disc = b * b - fld.rat(4) * a * c
        sq = sqrt_in_field(disc)
        if sq is None:
            return None
        two_a = fld.rat(2) * a
        return [(-b + sq) / two_a, (-b - sq) / two_a]
    return None


def roots_in_field(p: Poly) -> tuple[dict[Scalar, int], Poly | None]:
    """All roots of p inside its tower, with multiplicities.

    Returns (roots, leftover): leftover is a nontrivial factor whose roots lie
    outside the tower (None when p splits completely).
    """
    if p.is_zero():
        raise ExactnumError("roots of the zero polynomial")
    fld = p.field
    candidates: set[Scalar] = set()
    if all(c.is_rational() for c in p.coeffs):
        norm = p
    else:
        # product over the Galois conjugates has rational coefficients
        norm = p * Poly(fld, [c.conjugate_i() for c in p.coeffs])
        if fld.d is not None:
            norm = norm * Poly(fld, [c.conjugate_sqrt() for c in norm.coeffs])
        if any(not c.is_rational() for c in norm.coeffs):
            raise LinalgError("norm polynomial is not rational")  # pragma: no cover
    for f, _ in rational_factors(norm):
        if f.degree == 0:
            continue
        rts = _roots_of_low_degree(f)
        if rts:
            candidates.update(rts)
    roots: dict[Scalar, int] = {}
    rem = p
    for lam in sorted(candidates, key=str):
        mult = 0
        while True:
            q, r = rem.divmod(Poly(fld, [-lam, fld.one]))
            if not r.is_zero():
                break
            rem, mult = q, mult + 1
        if mult:
            roots[lam] = mult
    leftover = rem if rem.degree > 0 else None
    return roots, leftover


def generalized_eigenspaces(M: Matrix, ambient: GradedSpace | None = None) -> EigenSplit:
    """Exact direct-sum decomposition into generalized eigenspaces.

    SPLITTING_FAILURE is returned (not raised) when the characteristic
    polynomial has roots outside the declared tower.
    """
    if M.nrows != M.ncols:
        raise LinalgError("generalized_eigenspaces of non-square matrix")
    amb = ambient or ungraded(M.ncols)
    cp = M.charpoly()
    roots, leftover = roots_in_field(cp)
    if leftover is not None:
        return EigenSplit("SPLITTING_FAILURE",
                          failure=f"characteristic factor does not split: {leftover}")
    pairs = []
    n = M.ncols
    I = Matrix.identity(M.field, n)
    total = 0
    for lam in sorted(roots, key=str):
        mult = roots[lam]
        A = (M - I.scale(lam)).power(mult)
        space = kernel(A, amb)
        pairs.append((lam, space))
        total += space.dim
    if total != n:
        return EigenSplit("SPLITTING_FAILURE",
                          failure="eigenspace dimensions do not sum to the ambient")
    return EigenSplit("OK", pairs)


def joint_eigenspaces(mats: Sequence[Matrix], ambient: GradedSpace | None = None,
                      ) -> tuple[str, list[tuple[tuple[Scalar, ...], Subspace]]]:
    """Common refinement of generalized eigenspaces of a commuting family.

    Computed by intersecting the per-matrix decompositions, which agrees with
    iterated splitting for commuting operators and is order-independent.
    """
    amb = ambient or ungraded(mats[0].ncols if mats else 0)
    if not mats:
        return "OK", [((), full_subspace(Field(), amb))]
    splits = []
    for M in mats:
        es = generalized_eigenspaces(M, amb)
        if not es.ok:
            return "SPLITTING_FAILURE", []
        splits.append(es.pairs)
    current: list[tuple[tuple[Scalar, ...], Subspace]] = [((), full_subspace(mats[0].field, amb))]
    for pairs in splits:
        nxt = []
        for evs, space in current:
            for lam, espace in pairs:
                inter = space.intersect(espace)
                if inter.dim:
                    nxt.append((evs + (lam,), inter))
        current = nxt
    return "OK", current
