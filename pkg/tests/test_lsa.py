import json

import pytest

from liecones.exactnum import QQ
from liecones.glinalg import GradedSpace, Subspace
from liecones.lsa import (
    LieSuperalgebra, NotAnIdealError, bracket_span, center, centroid,
    check_axioms, derivations, differential_constants, grassmann_extend,
    is_nilpotent, is_solvable, is_subalgebra, nilpotency_class, quotient,
    series, subalgebra_on, supercommutant,
)
from liecones import catalog


def test_check_axioms_heisenberg(algebra):
    rep = check_axioms(algebra("h(1)"))
    assert rep.all_ok and not rep.violations


def test_check_axioms_flags_bad_antisymmetry():
    # [X,Y] = Z and [Y,X] = Z with even parities violates antisymmetry
    g = LieSuperalgebra.from_table(
        "bad", QQ, ["X", "Y", "Z"], [],
        {("X", "Y"): {"Z": 1}, ("Y", "X"): {"Z": 1}},
        fill_antisymmetric=False)
    rep = check_axioms(g)
    assert not rep.antisymmetry_ok
    assert any(v[0] == "antisymmetry" and set(v[1:]) == {0, 1} for v in rep.violations)


def test_check_axioms_catalog_su(corpus):
    rep = check_axioms(corpus["su(1,1|1,1)"].algebra)
    assert rep.all_ok


def test_mirror_fill_from_json(algebra):
    h1 = algebra("h(1)")
    doc = h1.to_json()
    # keep only the (X, Y) bracket; mirror must be inferred on load
    doc["brackets"] = [e for e in doc["brackets"] if e["left"] < e["right"]]
    g = LieSuperalgebra.from_json(doc)
    assert check_axioms(g).all_ok
    assert g.brackets[(1, 0)] == {2: -QQ.one}


def test_json_roundtrip(corpus):
    for key in ("h(1)", "gl(1|1)", "cl(1|2,+-)"):
        g = corpus[key].algebra
        g2 = LieSuperalgebra.from_json(json.loads(json.dumps(g.to_json())))
        assert g2.brackets == g.brackets
        assert g2.space == g.space


def test_center_examples(algebra):
    h1 = algebra("h(1)")
    Z = center(h1)
    assert Z.dim == 1 and Z.contains(h1.basis_vector(2))
    ab = algebra("abelian(2|1)")
    assert center(ab).dim == 3
    hc = algebra("hc(2|2,++)")
    assert center(hc).dim == 1


def test_supercommutant_full_is_center(algebra):
    g = algebra("gl(1|1)")
    assert supercommutant(g, g.full_space()) == center(g)
    # supercommutant of the center is everything
    assert supercommutant(g, center(g)) == g.full_space()


def test_series_examples(algebra):
    h1 = algebra("h(1)")
    lc = series(h1, "lower_central")
    assert [s.dim for s in lc] == [3, 1, 0]
    assert is_nilpotent(h1) and nilpotency_class(h1) == 2
    sl2 = algebra("sl(2,R)")
    assert not is_nilpotent(sl2) and not is_solvable(sl2)
    assert series(sl2, "derived")[-1].dim == 3
    for key in ("hc(2|2,++)", "hc(2|2,+-)", "cl(1|3,++-)"):
        assert nilpotency_class(catalog.build(key).algebra) <= 2


def test_n3super_is_three_step(algebra):
    g = algebra("n3super")
    assert nilpotency_class(g) == 3


def test_derivations_abelian_full_gl():
    g = catalog.build_abelian(3, 0).algebra
    assert derivations(g).dim == 9


def test_derivations_gl11_graded(algebra):
    g = algebra("gl(1|1)")
    der = derivations(g)
    # every derivation satisfies the graded Leibniz rule by construction;
    # spot-check one even basis element
    for s, mats in ((0, der.even), (1, der.odd)):
        for D in mats:
            for i in range(g.dim):
                for j in range(g.dim):
                    lhs = D.apply(g.bracket_basis(i, j))
                    sgn = g.field.rat((-1) ** (s * g.parity(i)))
                    rhs_v = g.bracket(D.col(i), g.basis_vector(j))
                    rhs_w = g.bracket(g.basis_vector(i), D.col(j))
                    rhs = tuple(a + sgn * b for a, b in zip(rhs_v, rhs_w))
                    assert lhs == rhs


def test_centroid_dims_paper_values():
    assert centroid(catalog.build("sl(2,C)_R").algebra).dim == 2
    assert centroid(catalog.build("sl(2,R)").algebra).dim == 1


def test_centroid_odd_part_trivial_simple(corpus):
    # simple with nontrivial odd part: odd centroid must vanish
    for key in ("su(1,1|1,1)", "osp(1|2)"):
        cen = centroid(corpus[key].algebra)
        assert not cen.odd


def test_differential_constants(algebra):
    assert differential_constants(algebra("sl(2,R)")).dim == 1
    assert differential_constants(catalog.build("sl(2,C)_R").algebra).dim == 2


def test_grassmann_extension_dims(algebra):
    sl2 = algebra("sl(2,R)")
    g0 = grassmann_extend(sl2, 0)
    assert (g0.space.even_dim, g0.space.odd_dim) == (3, 0)
    assert g0.brackets == {tuple(k): v for k, v in sl2.brackets.items()}
    g1 = grassmann_extend(sl2, 1)
    assert (g1.space.even_dim, g1.space.odd_dim) == (3, 3)
    assert check_axioms(g1).all_ok


def test_grassmann_derivation_formula():
    # dim Der(s x Lambda(n)) = 2^n dim Der(s) + n 2^n dim C(s), by direct solve
    sl2 = catalog.build("sl(2,R)").algebra
    dd, dc = derivations(sl2).dim, centroid(sl2).dim
    for n in (1, 2):
        ext = grassmann_extend(sl2, n)
        assert derivations(ext).dim == 2 ** n * dd + n * 2 ** n * dc


def test_grassmann_odd_tensor_selfbracket(algebra):
    # [X (x) xi1, X (x) xi1] = 0 for even X
    sl2 = algebra("sl(2,R)")
    ext = grassmann_extend(sl2, 1)
    for i in range(3):
        name = sl2.space.basis_names[i]
        idx = ext.space.basis_names.index(name + "*x1")
        v = ext.basis_vector(idx)
        assert ext.space.parity(idx) == 1
        assert all(not x for x in ext.bracket(v, v))


def test_quotient_examples(algebra):
    h1 = algebra("h(1)")
    q = quotient(h1, center(h1))
    assert q.algebra.dim == 2 and not q.algebra.brackets
    qq = quotient(h1, h1.full_space())
    assert qq.algebra.dim == 0
    # non-ideal raises with a witness
    not_ideal = h1.subspace([h1.basis_vector(0)])   # span{X}
    with pytest.raises(NotAnIdealError):
        quotient(h1, not_ideal)


def test_subalgebra_extraction(algebra):
    hc = algebra("hc(2|2,++)")
    # span{Y, Z} + odd part is a subsuperalgebra
    s = hc.subspace([hc.basis_vector(1), hc.basis_vector(2),
                     hc.basis_vector(3), hc.basis_vector(4)])
    assert is_subalgebra(hc, s)
    sub = subalgebra_on(hc, s)
    assert (sub.algebra.space.even_dim, sub.algebra.space.odd_dim) == (2, 2)
    assert check_axioms(sub.algebra).all_ok


def test_all_catalog_pass_axioms(corpus):
    for key, entry in corpus.items():
        assert check_axioms(entry.algebra).all_ok, key


def test_sparse_nullspace_matches_dense():
    import random
    from liecones.lsa import sparse_nullspace
    from liecones.glinalg import Matrix, Subspace, ungraded
    rng = random.Random(7)
    for _ in range(25):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(n)] for _ in range(m)]
        M = Matrix(QQ, rows)
        dense = M.kernel_basis()
        sparse_rows = [{j: QQ.rat(x) for j, x in enumerate(r) if x} for r in rows]
        sparse = sparse_nullspace(sparse_rows, n, QQ)
        sp_vecs = []
        for sol in sparse:
            v = [QQ.zero] * n
            for j, val in sol.items():
                v[j] = val
            sp_vecs.append(tuple(v))
        amb = ungraded(n)
        assert Subspace(QQ, amb, dense) == Subspace(QQ, amb, sp_vecs)
        for v in sp_vecs:
            assert all(not x for x in M.apply(v))
