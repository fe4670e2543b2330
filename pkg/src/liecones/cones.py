"""The invariant cone generated by odd squares, its exact certificates, and
the star-reduced obstruction battery.

The cone itself is never materialized; every verdict is carried by a
certificate that is re-verified independently of the search that found it:
a functional lambda with positive-definite odd Gram matrix (pointedness),
an odd vector X with [X,X] = 0 (forced kernel), or an exact convex
combination of square images hitting zero (a line in the cone).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import Field, Poly, Scalar
from .glinalg import Matrix, Subspace, Vector, unit_vector, vec_add, vec_is_zero, vec_scale, zero_vector
from .lsa import LieSuperalgebra, bracket_span, center, is_ideal, is_nilpotent, series
from . import cartan as _cartan


class ConesError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """A certified obstruction and a certified cone certificate met."""


POINTED_CERTIFIED = "POINTED_CERTIFIED"
LINE_FOUND = "LINE_FOUND"
ISOTROPIC_FOUND = "ISOTROPIC_FOUND"
UNDETERMINED = "UNDETERMINED"
OBSTRUCTED = "OBSTRUCTED"
CONE_OK = "CONE_OK"


# ---------------------------------------------------------------------------
# odd squares and the Gram matrix of a functional
# ---------------------------------------------------------------------------

def odd_square(g: LieSuperalgebra, x: Vector) -> Vector:
    """[X, X] for a purely odd X."""
    if any(x[i] for i in g.space.even_indices()) or vec_is_zero(x):
        raise ConesError("odd_square needs a nonzero purely odd vector")
    return g.bracket(x, x)


def functional_value(lam: Vector, v: Vector) -> Scalar:
    acc = None
    for a, b in zip(lam, v, strict=True):
        t = a * b
        acc = t if acc is None else acc + t
    return acc


@dataclass
class OddSquareForm:
    """Gram matrix M(lambda)[a][b] = lambda([f_a, f_b]) over the odd basis."""
    host: LieSuperalgebra
    lam: Vector           # coordinates on g0* (length = even_dim)
    matrix: Matrix

    @staticmethod
    def of(g: LieSuperalgebra, lam: Sequence) -> "OddSquareForm":
        f = g.field
        lam = tuple(f.coerce(x) for x in lam)
        if len(lam) != g.space.even_dim:
            raise ConesError("functional length must equal the even dimension")
        odd = list(g.space.odd_indices())
        rows = []
        for a in odd:
            row = []
            for b in odd:
                v = g.bracket_basis(a, b)
                row.append(functional_value(lam, v[:g.space.even_dim]))
            rows.append(row)
        M = Matrix(f, rows)
        if M != M.transpose():
            raise ConesError("odd Gram matrix is not symmetric")  # pragma: no cover
        return OddSquareForm(g, lam, M)


# ---------------------------------------------------------------------------
# exact definiteness tests
# ---------------------------------------------------------------------------

def leading_principal_minors(S: Matrix) -> list[Scalar]:
    """Exact leading principal minors, each via an independent determinant."""
    out = []
    for k in range(1, S.nrows + 1):
        sub = Matrix(S.field, [r[:k] for r in S.rows[:k]])
        out.append(sub.det())
    return out


def is_positive_definite(S: Matrix) -> bool:
    """Sylvester criterion for a symmetric real matrix; exact."""
    if S.nrows != S.ncols:
        raise ConesError("definiteness of a non-square matrix")
    if S.nrows == 0:
        return True
    for m in leading_principal_minors(S):
        if m.sign() <= 0:
            return False
    return True


def is_positive_semidefinite(S: Matrix) -> bool:
    """Exact PSD test by symmetric elimination with diagonal pivoting."""
    n = S.nrows
    if n != S.ncols:
        raise ConesError("definiteness of a non-square matrix")
    rows = [list(r) for r in S.rows]
    active = list(range(n))
    while active:
        pivot = None
        for i in active:
            s = rows[i][i].sign()
            if s < 0:
                return False
            if s > 0 and pivot is None:
                pivot = i
        if pivot is None:
            # all active diagonal entries are zero: PSD forces the block to vanish
            for i in active:
                for j in active:
                    if rows[i][j]:
                        return False
            return True
        p = rows[pivot][pivot]
        active.remove(pivot)
        for i in active:
            f = rows[i][pivot] / p
            if f:
                for j in active:
                    rows[i][j] = rows[i][j] - f * rows[pivot][j]
            rows[i][pivot] = S.field.zero
    return True


def hermitian_is_positive_definite(S: Matrix) -> bool:
    """Sylvester test for a Hermitian matrix over a complex tower."""
    if S != S.conj_transpose():
        raise ConesError("matrix is not Hermitian")
    if S.nrows == 0:
        return True
    for m in leading_principal_minors(S):
        if not m.is_real() or m.real_part().sign() <= 0:
            return False
    return True


def _pd_prefix_score(S: Matrix) -> int:
    """Length of the maximal all-positive prefix of leading minors."""
    rows = [list(r) for r in S.rows]
    n = S.nrows
    score = 0
    minor = S.field.one
    for pc in range(n):
        # elimination without row swaps; pivot product = leading minor
        piv = rows[pc][pc]
        minor = minor * piv
        if not minor or minor.sign() <= 0:
            return score
        score += 1
        inv = piv.inverse()
        for i in range(pc + 1, n):
            if rows[i][pc]:
                fct = rows[i][pc] * inv
                rows[i] = [x - fct * y for x, y in zip(rows[i], rows[pc])]
    return score


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class ConeCertificate:
    status: str
    lam: Vector | None = None
    isotropic: Vector | None = None
    line: tuple[Vector, Vector] | None = None
    details: dict = dc_field(default_factory=dict)

    def as_json(self) -> dict:
        out = {"status": self.status}
        if self.lam is not None:
            out["lambda"] = [str(x) for x in self.lam]
        if self.isotropic is not None:
            out["isotropic"] = [str(x) for x in self.isotropic]
        if self.line is not None:
            out["line"] = [[str(x) for x in v] for v in self.line]
        if self.details:
            out["details"] = {k: v for k, v in sorted(self.details.items())}
        return out


def certify_pointed(g: LieSuperalgebra, lam: Sequence) -> ConeCertificate:
    """Build a POINTED_CERTIFIED certificate, re-verifying via Sylvester."""
    form = OddSquareForm.of(g, lam)
    if not is_positive_definite(form.matrix):
        raise ConesError("claimed PD functional fails the Sylvester test")
    return ConeCertificate(POINTED_CERTIFIED, lam=form.lam,
                           details={"odd_dim": g.space.odd_dim})


def certify_isotropic(g: LieSuperalgebra, x: Vector) -> ConeCertificate:
    if vec_is_zero(x):
        raise ConesError("isotropic witness must be nonzero")
    if not vec_is_zero(odd_square(g, x)):
        raise ConesError("claimed isotropic vector has nonzero square")
    return ConeCertificate(ISOTROPIC_FOUND, isotropic=x)


def find_pd_functional(g: LieSuperalgebra, bound: int = 3, cap: int = 2000,
                       hill_steps: int = 200) -> ConeCertificate:
    """Deterministic integer scan over g0*, then rational hill climbing."""
    e, d = g.space.even_dim, g.space.odd_dim
    f = g.field
    if d == 0:
        return ConeCertificate(POINTED_CERTIFIED, lam=tuple(f.zero for _ in range(e)),
                               details={"odd_dim": 0, "note": "no odd part"})
    best_lam = None
    best_score = -1
    for ints in _cartan.candidate_vectors(e, bound, cap):
        lam = tuple(f.rat(c) for c in ints)
        M = OddSquareForm.of(g, lam).matrix
        score = _pd_prefix_score(M)
        if score == d:
            return certify_pointed(g, lam)
        if score > best_score:
            best_score, best_lam = score, lam
    if best_lam is None:
        return ConeCertificate(UNDETERMINED, details={"budget": "scan exhausted"})
    lam = best_lam
    steps = [f.rat(Fraction(1, 2) ** k) for k in range(0, 4)]
    for _ in range(hill_steps):
        improved = False
        for j in range(e):
            for s in steps:
                for sgn in (1, -1):
                    cand = list(lam)
                    cand[j] = cand[j] + s * f.rat(sgn)
                    M = OddSquareForm.of(g, cand).matrix
                    sc = _pd_prefix_score(M)
                    if sc == d:
                        return certify_pointed(g, tuple(cand))
                    if sc > best_score:
                        best_score, lam = sc, tuple(cand)
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
        if not improved:
            break
    return ConeCertificate(UNDETERMINED,
                           details={"budget": "hill climb exhausted",
                                    "best_score": best_score, "odd_dim": d})


def find_isotropic_odd(g: LieSuperalgebra) -> ConeCertificate:
    """Nonzero odd X with [X,X] = 0: basis vectors, pairs, then 2-dim slices."""
    f = g.field
    d = g.space.odd_dim
    odd_idx = list(g.space.odd_indices())
    if d == 0:
        return ConeCertificate(UNDETERMINED, details={"note": "no odd part"})
    basis = [g.basis_vector(i) for i in odd_idx]
    squares = [g.bracket(v, v) for v in basis]
    for v, sq in zip(basis, squares):
        if vec_is_zero(sq):
            return certify_isotropic(g, v)
    for a in range(d):
        for b in range(a + 1, d):
            for sgn in (f.one, -f.one):
                v = vec_add(basis[a], vec_scale(sgn, basis[b]))
                if vec_is_zero(g.bracket(v, v)):
                    return certify_isotropic(g, v)
    # quadratic slices: [f_a + t f_b, f_a + t f_b] = S_a + 2t B_ab + t^2 S_b
    for a in range(d):
        for b in range(d):
            if a == b:
                continue
            cross = g.bracket(basis[a], basis[b])
            polys = []
            for k in range(g.dim):
                coeffs = [squares[a][k], f.rat(2) * cross[k], squares[b][k]]
                p = Poly(f, coeffs)
                if not p.is_zero():
                    polys.append(p)
            if not polys:
                continue   # whole slice isotropic; pairs above already caught it
            gcd = polys[0]
            for p in polys[1:]:
                gcd = gcd.gcd(p)
                if gcd.degree == 0:
                    break
            if gcd.degree == 0:
                continue
            from .glinalg import roots_in_field
            roots, _ = roots_in_field(gcd)
            for t in sorted(roots, key=str):
                if not t.is_real():
                    continue
                v = vec_add(basis[a], vec_scale(t, basis[b]))
                if not vec_is_zero(v) and vec_is_zero(g.bracket(v, v)):
                    return certify_isotropic(g, v)
    return ConeCertificate(UNDETERMINED, details={"search": "basis, pairs, 2-dim slices"})


# ---------------------------------------------------------------------------
# exact LP: zero in the convex hull
# ---------------------------------------------------------------------------

def _simplex_phase1(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """One exact feasible x >= 0 with A x = b, or None (Bland's rule)."""
    m, n = len(A), len(A[0]) if A else 0
    T = []
    for i in range(m):
        row = list(A[i])
        rhs = b[i]
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        T.append(row + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    ncols = n + m
    cost = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            cost[j] += T[i][j]
    while True:
        enter = None
        for j in range(n):       # artificials never re-enter
            if j not in basis and cost[j] > 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][ncols] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break                # unbounded cannot happen in phase 1; defensive
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter]:
                fct = T[i][enter]
                T[i] = [x - fct * y for x, y in zip(T[i], T[leave])]
        if cost[enter]:
            fct = cost[enter]
            cost = [x - fct * y for x, y in zip(cost, T[leave])]
        basis[leave] = enter
    if cost[ncols] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i][ncols]
        elif T[i][ncols] != 0:
            return None          # artificial stuck at nonzero level
    return x


def convex_hull_contains_zero(vectors: Sequence[Vector]) -> tuple[Fraction, ...] | None:
    """Exact coefficients c >= 0, sum 1, sum c_i v_i = 0; or None.

    Vector coordinates must be rational scalars.
    """
    if not vectors:
        raise ConesError("empty vector list")
    n = len(vectors[0])
    cols = []
    for v in vectors:
        col = []
        for x in v:
            if not x.is_rational():
                raise ConesError("hull test needs rational coordinates")
            col.append(x.as_fraction())
        cols.append(col)
    A = [[cols[j][i] for j in range(len(vectors))] for i in range(n)]
    A.append([Fraction(1)] * len(vectors))
    b = [Fraction(0)] * n + [Fraction(1)]
    sol = _simplex_phase1(A, b)
    if sol is None:
        return None
    # exact re-verification
    assert all(c >= 0 for c in sol) and sum(sol) == 1
    for i in range(n):
        assert sum(cols[j][i] * sol[j] for j in range(len(vectors))) == 0
    return tuple(sol)


# ---------------------------------------------------------------------------
# per-root Hermitian forms (interior-dual-functional test)
# ---------------------------------------------------------------------------

def _mu_fixed_by_cartan(g: LieSuperalgebra, h0: Subspace, mu: Vector) -> bool:
    e = g.space.even_dim
    for b in h0.rows:
        ad_even = Matrix(g.field, [r[:e] for r in g.ad(b).rows[:e]])
        for j in range(e):
            if functional_value(mu, ad_even.col(j)):
                return False
    return True


def check_root_space_form(g: LieSuperalgebra, datum, mu: Sequence) -> list[dict]:
    """Per nonzero root: is <X,Y> = mu([X, conj Y]) positive definite on the
    odd root space?  mu must vanish on [h0, g0]."""
    f = g.field
    mu = tuple(f.coerce(x) for x in mu)
    if len(mu) != g.space.even_dim:
        raise ConesError("mu length must equal the even dimension")
    if not _mu_fixed_by_cartan(g, datum.cartan.h0, mu):
        raise ConesError("mu is not fixed by the even Cartan action")
    gc = datum.complexified
    muc = tuple(x.promote(gc.field) for x in mu)
    verdicts = []
    for root in datum.roots:
        if root.is_zero or root.odd_space.dim == 0:
            continue
        basis = root.odd_space.rows
        rows = []
        for x in basis:
            row = []
            for y in basis:
                ybar = tuple(s.conjugate_i() for s in y)
                v = gc.bracket(x, ybar)
                row.append(functional_value(muc, v[:g.space.even_dim]))
            rows.append(row)
        G = Matrix(gc.field, rows)
        ok = hermitian_is_positive_definite(G)
        verdicts.append({
            "root": [str(v) for v in root.values],
            "odd_dim": root.odd_space.dim,
            "positive_definite": ok,
        })
    return verdicts


# ---------------------------------------------------------------------------
# nilpotent vanishing ideal (third-layer kernel)
# ---------------------------------------------------------------------------

def nilpotent_vanishing_ideal(g: LieSuperalgebra) -> Subspace:
    """Ideal generated by [g1, [g1, g1]]; forced kernel of every unitary rep."""
    if not is_nilpotent(g):
        raise ConesError("nilpotent_vanishing_ideal needs a nilpotent algebra")
    odd = g.odd_subspace()
    layer2 = bracket_span(g, odd, odd)
    layer3 = bracket_span(g, odd, layer2)
    ideal = layer3
    while True:
        bigger = ideal.sum_with(bracket_span(g, g.full_space(), ideal))
        if bigger == ideal:
            return ideal
        ideal = bigger


# ---------------------------------------------------------------------------
# Lemma 5.1-style sanity check
# ---------------------------------------------------------------------------

def abelian_even_ideals_contained_in_center(g: LieSuperalgebra) -> list[dict]:
    """Canonical candidate ideals (center, series members, odd-square span):
    report each abelian even ideal and whether it sits inside the center."""
    zc = center(g)
    candidates = [("center", zc)]
    for kind in ("derived", "lower_central"):
        for t, s in enumerate(series(g, kind)):
            candidates.append((f"{kind}[{t}]", s.intersect(g.even_subspace())))
    odd = g.odd_subspace()
    candidates.append(("[g1,g1]", bracket_span(g, odd, odd)))
    out = []
    seen = set()
    for label, s in candidates:
        if s.rows in seen or s.dim == 0:
            continue
        seen.add(s.rows)
        if not g.even_subspace().contains_subspace(s):
            continue
        ok, _ = is_ideal(g, s)
        if not ok:
            continue
        if bracket_span(g, s, s).dim != 0:
            continue
        out.append({"ideal": label, "dim": s.dim,
                    "in_center": zc.contains_subspace(s)})
    return out


# ---------------------------------------------------------------------------
# the obstruction battery
# ---------------------------------------------------------------------------

@dataclass
class StarReducedReport:
    status: str
    reasons: list = dc_field(default_factory=list)
    certificate: ConeCertificate | None = None
    notes: list = dc_field(default_factory=list)

    def as_json(self) -> dict:
        out = {"status": self.status, "reasons": self.reasons, "notes": self.notes}
        if self.certificate is not None:
            out["certificate"] = self.certificate.as_json()
        return out


def _odd_square_samples(g: LieSuperalgebra) -> list[tuple[str, Vector]]:
    odd_idx = list(g.space.odd_indices())
    basis = [g.basis_vector(i) for i in odd_idx]
    samples = []
    for t, v in enumerate(basis):
        samples.append((f"f{t}", g.bracket(v, v)))
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            v = vec_add(basis[a], basis[b])
            samples.append((f"f{a}+f{b}", g.bracket(v, v)))
            w = vec_add(basis[a], vec_scale(-g.field.one, basis[b]))
            samples.append((f"f{a}-f{b}", g.bracket(w, w)))
    return samples


def _root_square_vectors(g: LieSuperalgebra, datum) -> list[Vector]:
    """Real vectors [X, tau X] for X ranging over odd root-space bases
    (nonzero roots only)."""
    gc = datum.complexified
    e = g.space.even_dim
    out = []
    for root in datum.roots:
        if root.is_zero or root.odd_space.dim == 0:
            continue
        for x in root.odd_space.rows:
            xbar = tuple(s.conjugate_i() for s in x)
            h = gc.bracket(x, xbar)
            if vec_is_zero(h):
                continue
            real = []
            for s in h:
                if not s.is_real():
                    raise ConesError("root square is not tau-fixed")  # pragma: no cover
                real.append(s.demote(g.field))
            out.append(tuple(real))
    return out


def star_reduced_report(g: LieSuperalgebra, bound: int = 3, cap: int = 2000,
                        hill_steps: int = 200) -> StarReducedReport:
    """Run the obstruction battery; tri-state verdict with exact witnesses."""
    reasons: list = []
    notes: list = []

    iso = find_isotropic_odd(g)
    if iso.status == ISOTROPIC_FOUND:
        reasons.append({"kind": "isotropic_odd",
                        "witness": [str(x) for x in iso.isotropic]})
        return StarReducedReport(OBSTRUCTED, reasons, iso, notes)

    k0 = _cartan.compact_cartan_even(g, bound=bound)
    datum = None
    if k0 is not None:
        try:
            cd = _cartan.cartan_subsuperalgebra(g, k0)
            if cd.compactly_embedded is True:
                datum = _cartan.root_decomposition(g, cd)
        except _cartan.CartanError as exc:
            notes.append(f"root decomposition unavailable: {exc}")
    if datum is not None:
        hs = _root_square_vectors(g, datum)
        if hs:
            combo = convex_hull_contains_zero(hs)
            if combo is not None:
                reasons.append({
                    "kind": "root_square_hull",
                    "coefficients": [str(c) for c in combo],
                    "vectors": [[str(x) for x in v] for v in hs],
                })
                cert = ConeCertificate(LINE_FOUND, details={"route": "root_square_hull"})
                return StarReducedReport(OBSTRUCTED, reasons, cert, notes)
    if k0 is not None:
        try:
            P = _cartan.fixed_point_projection(g, k0)
            projected = []
            for label, sq in _odd_square_samples(g):
                pv = P.apply(sq[:g.space.even_dim])
                if not vec_is_zero(pv):
                    projected.append((label, pv))
            if projected:
                combo = convex_hull_contains_zero([v for _, v in projected])
                if combo is not None:
                    reasons.append({
                        "kind": "projected_square_hull",
                        "coefficients": [str(c) for c in combo],
                        "generators": [label for label, _ in projected],
                    })
                    cert = ConeCertificate(LINE_FOUND,
                                           details={"route": "projected_square_hull"})
                    return StarReducedReport(OBSTRUCTED, reasons, cert, notes)
        except _cartan.CartanError as exc:
            notes.append(f"fixed-point projection unavailable: {exc}")

    odd = g.odd_subspace()
    if bracket_span(g, odd, odd) == g.even_subspace():
        if k0 is None:
            notes.append("g0 = [g1,g1] but no compactly embedded Cartan was found "
                         "within the scan budget; existence undetermined")

    pd = find_pd_functional(g, bound=bound, cap=cap, hill_steps=hill_steps)
    if pd.status == POINTED_CERTIFIED:
        if reasons:
            raise InvariantViolation("PD certificate coexists with an obstruction")
        return StarReducedReport(CONE_OK, reasons, pd, notes)
    notes.append("no positive-definite functional within budget")
    return StarReducedReport(UNDETERMINED, reasons, None, notes)
