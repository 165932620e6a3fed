"""Cocycle spaces, tangent product rank, and the rigidity verdict."""

import random

import pytest

import oracles
from rigiditylab.errors import InputError
from rigiditylab import adjoint, coinv, ff, matgrp, rigidity


@pytest.fixture(scope="module")
def psl27_triple():
    """A (2, 3, 7) generating triple of PSL2(7), found deterministically."""
    F = ff.field_create(7)
    a, b = matgrp.generating_pair(F, 2)
    table = matgrp.group_closure([a, b], cap=10 ** 6, projective=True)
    for i in range(table.size):
        if table.order_of(i) != 2:
            continue
        for j in range(table.size):
            if table.order_of(j) != 3:
                continue
            k = table.inv(table.mul(i, j))
            if table.order_of(k) != 7:
                continue
            gens = [table.mats[i], table.mats[j], table.mats[k]]
            if oracles.subgroup_generated(table, (i, j, k)) == table.size:
                prod = gens[0] @ gens[1] @ gens[2]
                if prod.is_identity():
                    return matgrp.tuple_from_matrices(gens)
    raise AssertionError("no (2,3,7) triple found")


# ---------------------------------------------------------------------------
# cocycle spaces
# ---------------------------------------------------------------------------

def test_identity_tuple_cocycles_depend_on_declared_orders():
    F = ff.field_create(7)
    eye = ff.Matrix.identity(F, 2)
    # order 2 is invertible mod 7: each power relation forces zero
    coprime = matgrp.group_tuple([eye, eye], [2, 2])
    cs = rigidity.cocycle_spaces(coprime)
    assert (cs.z1_dim, cs.b1_dim, cs.h1_dim) == (0, 0, 0)
    # order 7 vanishes mod 7: power relations are vacuous and only the
    # product relation cuts the space down
    modular = matgrp.group_tuple([eye, eye], [7, 7])
    cs = rigidity.cocycle_spaces(modular)
    assert (cs.z1_dim, cs.b1_dim, cs.h1_dim) == (3, 0, 3)


def test_psl27_triple_cocycle_dimensions_pinned(psl27_triple):
    cs = rigidity.cocycle_spaces(psl27_triple)
    assert (cs.z1_dim, cs.b1_dim, cs.h1_dim) == (4, 3, 1)


def test_z1_matches_independent_rank_computation():
    rng = random.Random(3)
    for q in (5, 7, 13):
        F = ff.field_create(q)
        for _ in range(6):
            t = matgrp.random_sl_tuple(F, 2, 3, rng)
            cs = rigidity.cocycle_spaces(t)
            grid = cs.relator_matrix.row_values()
            cols = cs.relator_matrix.cols
            assert cs.z1_dim == cols - oracles.rank_mod_p(grid, q)


def test_b1_is_the_whole_tuple_coboundary_rank():
    F = ff.field_create(5)
    rep = adjoint.adjoint_rep(F, 2)
    rng = random.Random(5)
    for _ in range(10):
        t = matgrp.random_sl_tuple(F, 2, 3, rng)
        cs = rigidity.cocycle_spaces(t)
        eye = ff.Matrix.identity(F, rep.dim)
        stacked = []
        for g in t.generators:
            ad = rep.ad_matrix(g)
            stacked += [[(ad[i, j] - (F.one if i == j else F.zero)).value
                         for j in range(rep.dim)] for i in range(rep.dim)]
        # rank of the stacked (Ad - 1) blocks, transposed into one map
        cols = [[row[j] for row in stacked] for j in range(rep.dim)]
        assert cs.b1_dim == ff.rank_of_rows(F, cols)


def test_cocycles_contain_coboundaries(psl27_triple):
    rng = random.Random(8)
    F = ff.field_create(5)
    tuples = [psl27_triple] + [matgrp.random_sl_tuple(F, 2, 3, rng)
                               for _ in range(10)]
    for t in tuples:
        cs = rigidity.cocycle_spaces(t)
        assert 0 <= cs.b1_dim <= cs.z1_dim
        assert cs.h1_dim == cs.z1_dim - cs.b1_dim


# ---------------------------------------------------------------------------
# tangent product rank
# ---------------------------------------------------------------------------

def test_tangent_rank_of_trivial_and_cyclic_tuples():
    F = ff.field_create(7)
    eye = ff.Matrix.identity(F, 2)
    t = matgrp.group_tuple([eye, eye], [1, 1])
    assert rigidity.tangent_product_rank(t) == 0
    c = ff.Matrix.diagonal(F, [3, 5])
    pair = matgrp.group_tuple((c, c.inverse()), (3, 3))
    assert rigidity.tangent_product_rank(pair) == 2


def test_tangent_rank_equals_span_dim():
    rng = random.Random(12)
    for q, n in [(4, 2), (5, 2), (7, 2), (9, 2), (13, 2), (2, 3), (5, 3)]:
        p = {4: 2, 9: 3}.get(q, q)
        k = {4: 2, 9: 2}.get(q, 1)
        F = ff.field_create(p, k)
        for _ in range(8):
            t = matgrp.random_sl_tuple(F, n, rng.randrange(2, 5), rng)
            assert rigidity.tangent_product_rank(t) == \
                coinv.coinvariant_dim(t).span_dim


# ---------------------------------------------------------------------------
# central lift
# ---------------------------------------------------------------------------

def test_central_lift_appends_the_inverse_scalar():
    F = ff.field_create(5)
    a = matgrp.random_sl_matrix(F, 2, random.Random(14))
    b = a.inverse() @ ff.Matrix.diagonal(F, [4, 4])
    t = matgrp.group_tuple((a, b), (matgrp.projective_order(a),
                                    matgrp.projective_order(b)))
    lifted = rigidity.central_lift(t)
    assert lifted.length == 3
    assert lifted.product().is_identity()
    assert lifted.generators[-1].is_scalar()
    # a tuple whose product is already the identity is left alone
    clean = matgrp.random_sl_tuple(F, 2, 3, random.Random(15))
    assert rigidity.central_lift(clean) is clean


def test_scalar_product_tuple_matches_manual_extension():
    F = ff.field_create(5)
    a = matgrp.random_sl_matrix(F, 2, random.Random(16))
    b = a.inverse() @ ff.Matrix.diagonal(F, [4, 4])
    t = matgrp.group_tuple((a, b), (matgrp.projective_order(a),
                                    matgrp.projective_order(b)))
    manual = matgrp.tuple_from_matrices([a, b, ff.Matrix.diagonal(F, [4, 4])])
    got = rigidity.rigidity_verdict(t)
    want = rigidity.rigidity_verdict(manual)
    assert got.lifted_order == 2 and want.lifted_order is None
    assert got.span_dim == want.span_dim
    assert got.coinv_dim == want.coinv_dim
    assert got.df_rank == want.df_rank
    assert sum(got.class_dims) == sum(want.class_dims)


# ---------------------------------------------------------------------------
# the verdict
# ---------------------------------------------------------------------------

def test_rigid_verdict_for_psl27_triple(psl27_triple):
    report = rigidity.rigidity_verdict(psl27_triple)
    assert report.verdict == rigidity.VERDICT_RIGID
    assert report.class_dims == (2, 2, 2)
    assert report.sum_class_dims == 6 == report.two_dim_g
    assert report.coinv_dim == 0
    assert report.span_dim == 3 == report.df_rank
    assert report.irreducible == rigidity.IRREDUCIBLE_VERIFIED
    assert report.h1_dim == 0
    assert report.lifted_order is None


def test_hypothesis_failed_for_reducible_tuple():
    F = ff.field_create(7)
    c = ff.Matrix.diagonal(F, [3, 5])
    t = matgrp.group_tuple((c, c.inverse()), (3, 3))
    report = rigidity.rigidity_verdict(t)
    assert report.verdict == rigidity.VERDICT_HYPOTHESIS_FAILED
    assert report.irreducible == rigidity.IRREDUCIBLE_FAILED
    assert report.coinv_dim == 1


def test_hypothesis_failed_for_identity_padding():
    F = ff.field_create(5)
    eye = ff.Matrix.identity(F, 2)
    t = matgrp.group_tuple([eye, eye, eye], [1, 1, 1])
    report = rigidity.rigidity_verdict(t)
    assert report.verdict == rigidity.VERDICT_HYPOTHESIS_FAILED


def test_report_is_conjugation_invariant():
    F = ff.field_create(5)
    rng = random.Random(18)
    for _ in range(6):
        t = matgrp.random_sl_tuple(F, 2, 3, rng)
        h = matgrp.random_sl_matrix(F, 2, rng)
        conj = matgrp.group_tuple([h @ g @ h.inverse() for g in t.generators],
                                  t.declared_orders)
        a = rigidity.rigidity_verdict(t)
        b = rigidity.rigidity_verdict(conj)
        assert a == b


def test_declared_order_mismatch_is_flagged_not_fatal():
    F = ff.field_create(7)
    c = ff.Matrix.diagonal(F, [3, 5])
    t = matgrp.group_tuple((c, c.inverse()), (6, 3))
    report = rigidity.rigidity_verdict(t)
    assert any("declared order" in f for f in report.flags)


def test_irreducibility_modes(psl27_triple):
    asserted = rigidity.rigidity_verdict(psl27_triple, irreducibility="assert")
    assert asserted.irreducible == rigidity.IRREDUCIBLE_ASSERTED
    assert asserted.verdict == rigidity.VERDICT_RIGID
    with pytest.raises(InputError):
        rigidity.rigidity_verdict(psl27_triple, irreducibility="maybe")


def test_h1_dim_nonnegative_across_random_tuples():
    rng = random.Random(20)
    for q in (4, 5, 7, 9):
        p = {4: 2, 9: 3}.get(q, q)
        k = {4: 2, 9: 2}.get(q, 1)
        F = ff.field_create(p, k)
        for _ in range(6):
            t = matgrp.random_sl_tuple(F, 2, 3, rng)
            report = rigidity.rigidity_verdict(t)
            assert report.h1_dim >= 0
            assert report.sum_class_dims == report.df_rank + report.b1_dim \
                + report.h1_dim


def test_report_to_json_is_plain_data(psl27_triple):
    doc = rigidity.rigidity_verdict(psl27_triple).to_json()
    assert doc["verdict"] == "RIGID"
    assert doc["class_dims"] == [2, 2, 2]
    assert isinstance(doc["flags"], list)
    assert doc["schema"] == 1
