"""Lie superalgebra values: structure constants, axioms, ideals, series,
centroid, derivations, Grassmann base extensions, quotients.

The structure-constants tensor is the single source of truth.  Constants are
stored for all ordered pairs; graded antisymmetry is checked, not implied.
When loading user files, an omitted mirror pair (j, i) is filled in by
antisymmetry, while explicitly supplied pairs are kept verbatim so that
inconsistent input is caught by check_axioms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactnum import Field, Scalar
from .glinalg import (
    GradedSpace, LinalgError, Matrix, Subspace, Vector, coordinate_subspace,
    full_subspace, unit_vector, vec_add, vec_is_zero, vec_scale, zero_vector,
)


class LsaError(ValueError):
    pass


class NotAnIdealError(LsaError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"subspace is not a graded ideal; witness pair {witness}")


SparseVec = dict[int, Scalar]


def _sparsify(v: Vector) -> SparseVec:
    return {k: x for k, x in enumerate(v) if x}


class LieSuperalgebra:
    """Finite-dimensional Lie superalgebra over one scalar tower."""

    def __init__(self, name: str, space: GradedSpace, fld: Field,
                 brackets: dict[tuple[int, int], SparseVec]):
        self.name = name
        self.space = space
        self.field = fld
        self.brackets = {
            pair: {k: s for k, s in out.items() if s}
            for pair, out in brackets.items() if any(out.values())
        }

    # -- construction ------------------------------------------------------
    @staticmethod
    def from_table(name: str, fld: Field, even: Sequence[str], odd: Sequence[str],
                   table: dict[tuple[str, str], dict[str, object]],
                   fill_antisymmetric: bool = True) -> "LieSuperalgebra":
        """Build from a {(left, right): {out: coeff}} table of basis names."""
        names = list(even) + list(odd)
        index = {nm: i for i, nm in enumerate(names)}
        space = GradedSpace(len(even), len(odd), tuple(names))
        br: dict[tuple[int, int], SparseVec] = {}
        for (l, r), out in table.items():
            br[(index[l], index[r])] = {index[k]: fld.coerce(c) for k, c in out.items()}
        g = LieSuperalgebra(name, space, fld, br)
        if fill_antisymmetric:
            g._fill_mirrors()
        return g

    def _fill_mirrors(self) -> None:
        for (i, j), out in list(self.brackets.items()):
            if (j, i) in self.brackets or (i == j):
                continue
            sign = -self.field.one if (self.space.parity(i) * self.space.parity(j)) == 0 \
                else self.field.one
            self.brackets[(j, i)] = {k: sign * c for k, c in out.items()}

    @property
    def dim(self) -> int:
        return self.space.dim

    def parity(self, i: int) -> int:
        return self.space.parity(i)

    # -- bracket machinery ---------------------------------------------------
    def c(self, i: int, j: int) -> SparseVec:
        return self.brackets.get((i, j), {})

    def bracket_basis(self, i: int, j: int) -> Vector:
        out = zero_vector(self.field, self.dim)
        out = list(out)
        for k, s in self.c(i, j).items():
            out[k] = s
        return tuple(out)

    def bracket(self, u: Vector, v: Vector) -> Vector:
        acc: SparseVec = {}
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                f = ui * vj
                for k, s in self.c(i, j).items():
                    t = acc.get(k)
                    t = f * s if t is None else t + f * s
                    if t:
                        acc[k] = t
                    elif k in acc:
                        del acc[k]
        out = [self.field.zero] * self.dim
        for k, s in acc.items():
            out[k] = s
        return tuple(out)

    def ad(self, v: Vector) -> Matrix:
        cols = [self.bracket(v, unit_vector(self.field, self.dim, j))
                for j in range(self.dim)]
        return Matrix.from_cols(self.field, cols)

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.field, self.dim, i)

    def vector_parity(self, v: Vector) -> int | None:
        """0/1 for homogeneous nonzero v, None for mixed or zero."""
        has_even = any(v[i] for i in self.space.even_indices())
        has_odd = any(v[i] for i in self.space.odd_indices())
        if has_even and has_odd:
            return None
        if has_even:
            return 0
        if has_odd:
            return 1
        return None

    def subspace(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace(self.field, self.space, vectors)

    def full_space(self) -> Subspace:
        return full_subspace(self.field, self.space)

    def even_subspace(self) -> Subspace:
        return coordinate_subspace(self.field, self.space, self.space.even_indices())

    def odd_subspace(self) -> Subspace:
        return coordinate_subspace(self.field, self.space, self.space.odd_indices())

    def complexify(self) -> "LieSuperalgebra":
        fld = self.field.complexified()
        br = {p: {k: s.promote(fld) for k, s in out.items()}
              for p, out in self.brackets.items()}
        return LieSuperalgebra(self.name + "^C", self.space, fld, br)

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        entries = []
        for (i, j) in sorted(self.brackets):
            out = self.brackets[(i, j)]
            entries.append({"left": i, "right": j,
                            "out": [{"k": k, "c": str(out[k])} for k in sorted(out)]})
        return {"name": self.name, "field": self.field.tag,
                "even": self.space.even_dim, "odd": self.space.odd_dim,
                "basis": list(self.space.basis_names), "brackets": entries}

    @staticmethod
    def from_json(doc: dict) -> "LieSuperalgebra":
        fld = Field.parse(doc["field"])
        even, odd = int(doc["even"]), int(doc["odd"])
        names = tuple(doc.get("basis") or ())
        space = GradedSpace(even, odd, names) if names else GradedSpace(even, odd)
        br: dict[tuple[int, int], SparseVec] = {}
        for ent in doc.get("brackets", []):
            i, j = int(ent["left"]), int(ent["right"])
            if not (0 <= i < space.dim and 0 <= j < space.dim):
                raise LsaError(f"bracket index ({i},{j}) out of range")
            br[(i, j)] = {int(o["k"]): fld.coerce(o["c"]) for o in ent["out"]}
        g = LieSuperalgebra(doc.get("name", "g"), space, fld, br)
        g._fill_mirrors()
        return g

    @staticmethod
    def load(path: str) -> "LieSuperalgebra":
        with open(path) as fh:
            return LieSuperalgebra.from_json(json.load(fh))

    def __repr__(self):
        return (f"LieSuperalgebra({self.name}, dim ({self.space.even_dim}"
                f"|{self.space.odd_dim}), field {self.field.tag})")


# ---------------------------------------------------------------------------
# axiom checking
# ---------------------------------------------------------------------------

@dataclass
class AxiomReport:
    parity_ok: bool
    antisymmetry_ok: bool
    jacobi_ok: bool
    violations: list = dc_field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return self.parity_ok and self.antisymmetry_ok and self.jacobi_ok


def check_axioms(g: LieSuperalgebra, max_violations: int = 25) -> AxiomReport:
    """Exhaustive parity / graded-antisymmetry / graded-Jacobi check."""
    n = g.dim
    f = g.field
    violations = []
    parity_ok = True
    for (i, j), out in g.brackets.items():
        want = (g.parity(i) + g.parity(j)) % 2
        for k, s in out.items():
            if s and g.parity(k) != want:
                parity_ok = False
                if len(violations) < max_violations:
                    violations.append(("parity", i, j, k))
    antisymmetry_ok = True
    for i in range(n):
        pi = g.parity(i)
        for j in range(i, n):
            sign = f.one if (pi * g.parity(j)) else -f.one
            lhs = g.c(i, j)
            rhs = g.c(j, i)
            keys = set(lhs) | set(rhs)
            for k in keys:
                a = lhs.get(k, f.zero)
                b = rhs.get(k, f.zero)
                if b != sign * a:
                    antisymmetry_ok = False
                    if len(violations) < max_violations:
                        violations.append(("antisymmetry", i, j))
                    break
    jacobi_ok = True
    basis = [g.basis_vector(i) for i in range(n)]
    brk = [[g.bracket_basis(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        pi = g.parity(i)
        for j in range(n):
            pj = g.parity(j)
            for k in range(n):
                pk = g.parity(k)
                t1 = vec_scale(f.rat((-1) ** (pi * pk)), g.bracket(basis[i], brk[j][k]))
                t2 = vec_scale(f.rat((-1) ** (pj * pi)), g.bracket(basis[j], brk[k][i]))
                t3 = vec_scale(f.rat((-1) ** (pk * pj)), g.bracket(basis[k], brk[i][j]))
                if not vec_is_zero(vec_add(vec_add(t1, t2), t3)):
                    jacobi_ok = False
                    if len(violations) < max_violations:
                        violations.append(("jacobi", i, j, k))
    return AxiomReport(parity_ok, antisymmetry_ok, jacobi_ok, violations)


# ---------------------------------------------------------------------------
# subspace machinery: centers, series, ideals
# ---------------------------------------------------------------------------

def supercommutant(g: LieSuperalgebra, h: Subspace) -> Subspace:
    """Z_g(h) = {X : [h, X] = 0}; h must be a graded subsuperalgebra."""
    if not h.is_graded():
        raise LsaError("supercommutant of a non-graded subspace")
    if not is_subalgebra(g, h):
        raise LsaError("supercommutant of a non-subalgebra")
    return _joint_ad_kernel(g, h)


def _joint_ad_kernel(g: LieSuperalgebra, h: Subspace) -> Subspace:
    rows = []
    for b in h.rows:
        rows.extend(g.ad(b).rows)
    if not rows:
        return g.full_space()
    return Subspace(g.field, g.space, Matrix(g.field, rows).kernel_basis())


def center(g: LieSuperalgebra) -> Subspace:
    return _joint_ad_kernel(g, g.full_space())


def bracket_span(g: LieSuperalgebra, s1: Subspace, s2: Subspace) -> Subspace:
    return g.subspace([g.bracket(u, v) for u in s1.rows for v in s2.rows])


def is_subalgebra(g: LieSuperalgebra, s: Subspace) -> bool:
    return s.contains_subspace(bracket_span(g, s, s))


def is_ideal(g: LieSuperalgebra, s: Subspace) -> tuple[bool, tuple | None]:
    for gi in range(g.dim):
        gv = g.basis_vector(gi)
        for v in s.rows:
            if not s.contains(g.bracket(gv, v)):
                return False, (gi, v)
    return True, None


def series(g: LieSuperalgebra, kind: str) -> list[Subspace]:
    """Descending derived or lower_central chain, up to stabilization."""
    if kind not in ("derived", "lower_central"):
        raise LsaError(f"unknown series kind {kind!r}")
    chain = [g.full_space()]
    while True:
        cur = chain[-1]
        nxt = bracket_span(g, cur, cur) if kind == "derived" else \
            bracket_span(g, g.full_space(), cur)
        if nxt == cur:
            break
        chain.append(nxt)
        if nxt.dim == 0:
            break
    return chain


def is_nilpotent(g: LieSuperalgebra) -> bool:
    return series(g, "lower_central")[-1].dim == 0


def is_solvable(g: LieSuperalgebra) -> bool:
    return series(g, "derived")[-1].dim == 0


def nilpotency_class(g: LieSuperalgebra) -> int:
    """Smallest s with c_{s+1} = 0; raises when g is not nilpotent."""
    chain = series(g, "lower_central")
    if chain[-1].dim != 0:
        raise LsaError(f"{g.name} is not nilpotent")
    return len(chain) - 1


# ---------------------------------------------------------------------------
# sparse nullspace used by the endomorphism solvers
# ---------------------------------------------------------------------------

def sparse_nullspace(rows: Iterable[SparseVec], ncols: int, fld: Field) -> list[SparseVec]:
    """Nullspace basis of a sparse row system; rows are {col: coeff} dicts."""
    pivrows: dict[int, SparseVec] = {}
    for raw in rows:
        r = {c: v for c, v in raw.items() if v}
        while r:
            j = min(r)
            p = pivrows.get(j)
            if p is None:
                inv = r[j].inverse()
                pivrows[j] = {c: v * inv for c, v in r.items()}
                break
            f = r.pop(j)
            for c, v in p.items():
                if c == j:
                    continue
                nv = r.get(c)
                nv = -(f * v) if nv is None else nv - f * v
                if nv:
                    r[c] = nv
                elif c in r:
                    del r[c]
    for j in sorted(pivrows, reverse=True):
        row = pivrows[j]
        for j2 in [c for c in list(row) if c != j and c in pivrows]:
            f = row.pop(j2)
            for c, v in pivrows[j2].items():
                if c == j2:
                    continue
                nv = row.get(c)
                nv = -(f * v) if nv is None else nv - f * v
                if nv:
                    row[c] = nv
                elif c in row:
                    del row[c]
    basis = []
    for fcol in range(ncols):
        if fcol in pivrows:
            continue
        v: SparseVec = {fcol: fld.one}
        for j, row in pivrows.items():
            coef = row.get(fcol)
            if coef:
                v[j] = -coef
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# derivations, centroid, differential constants
# ---------------------------------------------------------------------------

@dataclass
class EndoFamily:
    """Homogeneous basis of a space of endomorphisms of g."""
    host: LieSuperalgebra
    even: list[Matrix]
    odd: list[Matrix]

    @property
    def dim(self) -> int:
        return len(self.even) + len(self.odd)


DerivationAlgebra = EndoFamily
Centroid = EndoFamily


def _allowed_entries(g: LieSuperalgebra, s: int) -> list[tuple[int, int]]:
    """Entry positions (p, q) of a parity-s block map (column q -> row p)."""
    return [(p, q) for p in range(g.dim) for q in range(g.dim)
            if (g.parity(p) - g.parity(q)) % 2 == s]


def _solve_endomorphisms(g: LieSuperalgebra, s: int,
                         equations: Callable[[dict[tuple[int, int], int], int], Iterable[SparseVec]],
                         ) -> list[Matrix]:
    entries = _allowed_entries(g, s)
    pos = {e: u for u, e in enumerate(entries)}
    rows = equations(pos, s)
    basis = sparse_nullspace(rows, len(entries), g.field)
    mats = []
    z = g.field.zero
    for sol in basis:
        m = [[z] * g.dim for _ in range(g.dim)]
        for u, val in sol.items():
            p, q = entries[u]
            m[p][q] = val
        mats.append(Matrix(g.field, m))
    return mats


def derivations(g: LieSuperalgebra) -> DerivationAlgebra:
    """Basis of Der(g), split by parity, by exact linear solve."""
    n = g.dim

    def eqs(pos, s):
        rows = []
        for i in range(n):
            pi = g.parity(i)
            sgn = g.field.rat((-1) ** (s * pi))
            for j in range(i, n):
                cij = g.c(i, j)
                for m in range(n):
                    if (g.parity(m) - (pi + g.parity(j))) % 2 != s:
                        continue
                    row: SparseVec = {}

                    def add(key, val):
                        u = pos.get(key)
                        if u is None or not val:
                            return
                        cur = row.get(u)
                        cur = val if cur is None else cur + val
                        if cur:
                            row[u] = cur
                        elif u in row:
                            del row[u]

                    for k, cv in cij.items():
                        add((m, k), cv)
                    for p in range(n):
                        cpj = g.c(p, j).get(m)
                        if cpj:
                            add((p, i), -cpj)
                        cip = g.c(i, p).get(m)
                        if cip:
                            add((p, j), -(sgn * cip))
                    if row:
                        rows.append(row)
        return rows

    return EndoFamily(g, _solve_endomorphisms(g, 0, eqs), _solve_endomorphisms(g, 1, eqs))


def centroid(g: LieSuperalgebra) -> Centroid:
    """Supercommutant of the multiplication algebra inside End(g)."""
    n = g.dim
    ads = [g.ad(g.basis_vector(i)) for i in range(n)]

    def eqs(pos, s):
        rows = []
        for i in range(n):
            sgn = g.field.rat((-1) ** (s * g.parity(i)))
            L = ads[i]
            for m in range(n):
                for q in range(n):
                    if (g.parity(m) - g.parity(q)) % 2 != (s + g.parity(i)) % 2:
                        continue
                    row: SparseVec = {}
                    for p in range(n):
                        lv = L.rows[p][q]
                        if lv:
                            u = pos.get((m, p))
                            if u is not None:
                                cur = row.get(u, None)
                                cur = lv if cur is None else cur + lv
                                if cur:
                                    row[u] = cur
                                elif u in row:
                                    del row[u]
                        lv2 = L.rows[m][p]
                        if lv2:
                            u = pos.get((p, q))
                            if u is not None:
                                val = -(sgn * lv2)
                                cur = row.get(u, None)
                                cur = val if cur is None else cur + val
                                if cur:
                                    row[u] = cur
                                elif u in row:
                                    del row[u]
                    if row:
                        rows.append(row)
        return rows

    return EndoFamily(g, _solve_endomorphisms(g, 0, eqs), _solve_endomorphisms(g, 1, eqs))


def differential_constants(g: LieSuperalgebra) -> EndoFamily:
    """Supercommutant of Der(g) inside the centroid."""
    cen = centroid(g)
    der = derivations(g)
    out: dict[int, list[Matrix]] = {0: [], 1: []}
    for s, cbasis in ((0, cen.even), (1, cen.odd)):
        if not cbasis:
            continue
        rows: list[SparseVec] = []
        for dparity, dmats in ((0, der.even), (1, der.odd)):
            sgn = g.field.rat((-1) ** (s * dparity))
            for D in dmats:
                # [A, D] = A D - (-1)^{s |D|} D A = 0 over A = sum a_t C_t
                comms = [C * D - (D * C).scale(sgn) for C in cbasis]
                for p in range(g.dim):
                    for q in range(g.dim):
                        row = {t: comms[t].rows[p][q] for t in range(len(cbasis))
                               if comms[t].rows[p][q]}
                        if row:
                            rows.append(row)
        sols = sparse_nullspace(rows, len(cbasis), g.field)
        for sol in sols:
            acc = Matrix.zero(g.field, g.dim, g.dim)
            for t, val in sol.items():
                acc = acc + cbasis[t].scale(val)
            out[s].append(acc)
    return EndoFamily(g, out[0], out[1])


# ---------------------------------------------------------------------------
# Grassmann base extension
# ---------------------------------------------------------------------------

def _xi_product(S: tuple[int, ...], T: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    if set(S) & set(T):
        return None
    inversions = sum(1 for s in S for t in T if s > t)
    merged = tuple(sorted(S + T))
    return (-1) ** inversions, merged


def grassmann_extend(g: LieSuperalgebra, n: int) -> LieSuperalgebra:
    """g tensor Lambda(n): basis e_i (x) xi_S over subsets S of {1..n}."""
    if n < 0:
        raise LsaError("n must be >= 0")
    subsets = []
    for mask in range(1 << n):
        subsets.append(tuple(i + 1 for i in range(n) if mask >> i & 1))
    raw = [(i, S) for S in subsets for i in range(g.dim)]

    def par(item):
        i, S = item
        return (g.parity(i) + len(S)) % 2

    ordered = [it for it in raw if par(it) == 0] + [it for it in raw if par(it) == 1]
    even_dim = sum(1 for it in raw if par(it) == 0)
    pos = {it: t for t, it in enumerate(ordered)}

    def name(item):
        i, S = item
        base = g.space.basis_names[i]
        return base if not S else base + "*" + "".join(f"x{k}" for k in S)

    space = GradedSpace(even_dim, len(raw) - even_dim, tuple(name(it) for it in ordered))
    br: dict[tuple[int, int], SparseVec] = {}
    for (i, S) in raw:
        for (j, T) in raw:
            prod = _xi_product(S, T)
            if prod is None:
                continue
            sign, merged = prod
            # (a (x) u)(b (x) v) = (-1)^{|u||b|} ab (x) uv
            sgn = g.field.rat(sign * (-1) ** (len(S) * g.parity(j)))
            out: SparseVec = {}
            for k, cv in g.c(i, j).items():
                val = sgn * cv
                if val:
                    out[pos[(k, merged)]] = val
            if out:
                br[(pos[(i, S)], pos[(j, T)])] = out
    return LieSuperalgebra(f"{g.name}(x)Lambda({n})", space, g.field, br)


# ---------------------------------------------------------------------------
# quotients and subalgebras
# ---------------------------------------------------------------------------

@dataclass
class QuotientResult:
    algebra: LieSuperalgebra
    projection: Matrix     # new coords of the residual of an ambient vector
    ideal: Subspace


def quotient(g: LieSuperalgebra, ideal: Subspace, name: str | None = None) -> QuotientResult:
    """Quotient by a verified graded ideal, on the complement-coordinate basis."""
    if not ideal.is_graded():
        raise NotAnIdealError("not graded")
    ok, witness = is_ideal(g, ideal)
    if not ok:
        raise NotAnIdealError(witness)
    comp = ideal.complement_coordinates()
    even_new = sum(1 for j in comp if g.parity(j) == 0)
    names = tuple(g.space.basis_names[j] + "~" for j in comp)
    space = GradedSpace(even_new, len(comp) - even_new, names)
    posn = {j: t for t, j in enumerate(comp)}
    br: dict[tuple[int, int], SparseVec] = {}
    for a_t, a in enumerate(comp):
        for b_t, b in enumerate(comp):
            v = ideal.reduce(g.bracket_basis(a, b))
            out = {posn[k]: x for k, x in enumerate(v) if x}
            if out:
                br[(a_t, b_t)] = out
    # projection: ambient vector -> reduce mod ideal -> complement coordinates
    cols = []
    for j in range(g.dim):
        resid = ideal.reduce(g.basis_vector(j))
        cols.append(tuple(resid[c] for c in comp))
    proj = Matrix.from_cols(g.field, cols)
    qname = name or f"{g.name}/I"
    return QuotientResult(LieSuperalgebra(qname, space, g.field, br), proj, ideal)


@dataclass
class SubalgebraResult:
    algebra: LieSuperalgebra
    inclusion: Matrix      # ambient coords of the chosen homogeneous basis (columns)
    subspace: Subspace

    def restrict(self, v: Vector) -> Vector | None:
        return self.inclusion.solve(v)


def subalgebra_on(g: LieSuperalgebra, s: Subspace, name: str | None = None) -> SubalgebraResult:
    """Realize a graded subsuperalgebra on its own basis."""
    if not s.is_graded():
        raise LsaError("subspace is not graded")
    if not is_subalgebra(g, s):
        raise LsaError("subspace is not closed under the bracket")
    basis = s.homogeneous_basis()
    e_dim = s.even_part().dim
    incl = Matrix.from_cols(g.field, basis)
    space = GradedSpace(e_dim, len(basis) - e_dim,
                        tuple(f"s{t}" for t in range(len(basis))))
    br: dict[tuple[int, int], SparseVec] = {}
    for a in range(len(basis)):
        for b in range(len(basis)):
            v = g.bracket(basis[a], basis[b])
            coords = incl.solve(v)
            if coords is None:
                raise LsaError("bracket left the subspace")  # pragma: no cover
            out = {k: x for k, x in enumerate(coords) if x}
            if out:
                br[(a, b)] = out
    sname = name or f"{g.name}|sub"
    return SubalgebraResult(LieSuperalgebra(sname, space, g.field, br), incl, s)
