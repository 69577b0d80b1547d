import json

import pytest
from hypothesis import given, settings, strategies as st

from ltskit import lts
from ltskit.linalg import Span, vec_add, vec_is_zero, vec_scale, vec_sub
from ltskit.scalars import I, parse_scalar, rat, sqrt
from ltskit.spaces import NotInM, build_space


def subspace(sp, vectors):
    return lts.Subspace(sp, vectors)


# -- closure ---------------------------------------------------------------


def test_full_tangent_space_is_lts():
    for name in ("G2group", "EIV"):
        sp = build_space(name)
        S = subspace(sp, [list(r) for r in sp.m_rows])
        assert lts.is_lts(S)


def test_adhoc_plane_is_not_lts_with_certificate():
    sp = build_space("EIII")
    v1 = sp.sharp["l1"]
    v2 = vec_add(sp.charts["l1"].map(1, 1, 0, 0), sp.charts["l3"].map(1, 0, 0))
    S = subspace(sp, [v1, v2])
    assert not lts.is_lts(S)
    cert = lts.closure_defect(S)
    assert cert is not None
    i, j, k = cert
    alg = sp.alg
    bad = alg.bracket(alg.bracket(S.basis[i], S.basis[j]), S.basis[k])
    assert not S.contains(bad)


def test_subspace_requires_m_vectors():
    sp = build_space("EIII")
    with pytest.raises(NotInM):
        subspace(sp, [sp.k_rows[0]])


def test_subspace_reduces_dependent_generators():
    sp = build_space("EIV")
    v = sp.charts["l1"].map(1, 0, 0, 0)
    S = subspace(sp, [v, vec_scale(rat(3), v), sp.sharp["l1"]])
    assert S.dim == 2


# -- closed subsystems -----------------------------------------------------


def test_closed_subsystem_l1_2l1():
    sp = build_space("EIII")
    S = lts.lts_from_closed_subsystem(sp, {"l1", "2l1"})
    assert S.dim == 10
    assert lts.is_lts(S)


def test_closed_subsystem_quadric_type():
    sp = build_space("EIII")
    S = lts.lts_from_closed_subsystem(sp, {"l3", "l4", "2l1", "2l2"})
    assert S.dim == 16
    assert lts.is_lts(S)


def test_closed_subsystem_rejects_open_sets():
    sp = build_space("EIII")
    with pytest.raises(lts.NotClosed):
        lts.lts_from_closed_subsystem(sp, {"l1"})  # misses 2l1
    with pytest.raises(lts.NotClosed):
        lts.lts_from_closed_subsystem(sp, {"nope"})


def test_closed_subsystem_single_long_root():
    sp = build_space("EIII")
    S = lts.lts_from_closed_subsystem(sp, {"l4"})
    assert S.dim == 7
    assert lts.is_lts(S)


def test_closed_subsystem_empty():
    sp = build_space("EIV")
    S = lts.lts_from_closed_subsystem(sp, set())
    assert S.dim == 0


def test_closed_subsystem_negative_labels_symmetrized():
    sp = build_space("EIV")
    S1 = lts.lts_from_closed_subsystem(sp, {"l1", "-l1"})
    S2 = lts.lts_from_closed_subsystem(sp, {"l1"})
    assert S1 == S2
    assert S1.dim == 9


# -- rank and flats --------------------------------------------------------


def test_rank_of_line():
    sp = build_space("EIV")
    S = subspace(sp, [sp.charts["l1"].map(1, 0, 0, 0)])
    rank, flat = lts.rank_and_flat(S)
    assert rank == 1 and flat.dim == 1


def test_rank_of_full_space_is_two():
    for name in ("G2group", "EIV", "EIII"):
        sp = build_space(name)
        S = subspace(sp, [list(r) for r in sp.m_rows])
        rank, flat = lts.rank_and_flat(S)
        assert rank == 2
        alg = sp.alg
        assert vec_is_zero(alg.bracket(flat.basis[0], flat.basis[1]))


def test_rank_of_quadric_prototype():
    sp = build_space("EIII")
    S = lts.lts_from_closed_subsystem(sp, {"l3", "l4", "2l1", "2l2"})
    rank, flat = lts.rank_and_flat(S)
    assert rank == 2


def test_flat_search_is_seed_deterministic():
    sp = build_space("EIII")
    S = lts.lts_from_closed_subsystem(sp, {"l1", "2l1"})
    _, f1 = lts.rank_and_flat(S, seed=7)
    _, f2 = lts.rank_and_flat(S, seed=7)
    assert f1.basis == f2.basis


def test_empty_subspace_rank_zero():
    sp = build_space("EIV")
    rank, flat = lts.rank_and_flat(subspace(sp, []))
    assert rank == 0 and flat.dim == 0


# -- restricted roots of a pair --------------------------------------------


def roots_as_set(roots):
    return {(tuple(str(v) for v in r.values), r.mult) for r in roots}


def test_quadric_prototype_root_pattern():
    sp = build_space("EIII")
    S = lts.lts_from_closed_subsystem(sp, {"l3", "l4", "2l1", "2l2"})
    rank, flat = lts.rank_and_flat(S)
    roots = lts.sub_restricted_roots(S, flat)
    mults = sorted(r.mult for r in roots)
    assert mults == [1, 1, 6, 6]
    labels = {r.labels for r in roots}
    assert labels == {("2l1",), ("2l2",), ("l3",), ("l4",)}


def test_group_model_root_multiplicities():
    sp = build_space("G2group")
    S = subspace(sp, [list(r) for r in sp.m_rows])
    rank, flat = lts.rank_and_flat(S)
    roots = lts.sub_restricted_roots(S, flat)
    assert len(roots) == 6
    assert all(r.mult == 2 for r in roots)


def test_flat_alone_has_no_roots():
    sp = build_space("EIII")
    S = subspace(sp, [list(z) for z in sp.a_basis])
    roots = lts.sub_restricted_roots(S, S)
    assert roots == []


def test_sub_roots_reject_bad_flat():
    sp = build_space("EIII")
    S = lts.lts_from_closed_subsystem(sp, {"l1", "2l1"})
    not_flat = subspace(sp, [sp.charts["l1"].map(1, 0, 0, 0)])
    with pytest.raises(lts.NotAFlat):
        lts.sub_restricted_roots(S, not_flat)  # not inside... actually in S?
    outside = subspace(sp, [sp.sharp["l2"]])
    with pytest.raises(lts.NotAFlat):
        lts.sub_restricted_roots(S, outside)


def test_decomposition_checks_pass_on_prototypes():
    sp = build_space("EIII")
    for labels in ({"l1", "2l1"}, {"l3", "l4", "2l1", "2l2"}, {"l4"}):
        S = lts.lts_from_closed_subsystem(sp, labels)
        rank, flat = lts.rank_and_flat(S)
        roots = lts.sub_restricted_roots(S, flat)
        checks = lts.decomposition_checks(S, flat, roots)
        assert all(checks.values()), (labels, checks)
        assert S.dim == rank + sum(r.mult for r in roots)


# -- complex / totally real classification ---------------------------------


def test_complexity_of_quadric_prototype_is_complex():
    sp = build_space("EIII")
    S = lts.lts_from_closed_subsystem(sp, {"l3", "l4", "2l1", "2l2"})
    assert lts.complexity_class(S) == "complex"


def test_flat_is_totally_real():
    sp = build_space("EIII")
    S = subspace(sp, [list(z) for z in sp.a_basis])
    assert lts.complexity_class(S) == "totally_real"


def test_complexity_neither():
    sp = build_space("EIII")
    S = subspace(sp, [sp.sharp["l1"],
                      sp.charts["l1"].map(1, 0, 0, 0),
                      sp.charts["l1"].map(I, 0, 0, 0)])
    assert lts.complexity_class(S) == "neither"


def test_complexity_requires_hermitian_model():
    sp = build_space("EIV")
    S = subspace(sp, [sp.sharp["l1"]])
    with pytest.raises(lts.NoComplexStructure):
        lts.complexity_class(S)


# -- quarter-turn rotations ------------------------------------------------


def witness(sp):
    # unit isotropy vector attached to the third orbit representative of l1
    return sp.k_charts["l1"].pairs[2][0]


def test_rotate_by_zero_is_identity():
    sp = build_space("EIII")
    v = sp.charts["l2"].map(1, I, 0, 0)
    Z = [rat(0)] * sp.alg.dim
    assert lts.isotropy_rotate(sp, Z, v) == v


def test_witness_fixes_second_dual_and_doubled_chart():
    sp = build_space("EIII")
    Z = witness(sp)
    for v in (sp.sharp["l2"], sp.charts["2l2"].map(1)):
        assert lts.isotropy_rotate(sp, Z, v) == v


def test_witness_transfers_l2_into_l3_plus_l4():
    sp = build_space("EIII")
    Z = witness(sp)
    c = rat(1, 2) + I
    d = rat(2) - I
    e = rat(1) + rat(3) * I
    v = sp.charts["l2"].map(c, d, e, 0)
    img = sp.alg.bracket(Z, v)
    s = sqrt(2).inv()
    want = vec_add(
        sp.charts["l3"].map(s * d, s * c, -s * e.conj_i()),
        sp.charts["l4"].map(-s * d, -s * c, s * e))
    assert vec_is_zero(vec_sub(img, want))


def test_witness_congruence_into_quadric_prototype():
    sp = build_space("EIII")
    Z = witness(sp)
    target = lts.lts_from_closed_subsystem(sp, {"l3", "l4", "2l1", "2l2"})
    gens = [sp.sharp["l2"], sp.charts["2l2"].map(1)]
    for cs in ((1, 0, 0, 0), (I, 0, 0, 0), (0, 1, 0, 0), (0, I, 0, 0),
               (0, 0, 1, 0), (0, 0, I, 0)):
        gens.append(sp.charts["l2"].map(*cs))
    for v in gens:
        assert target.contains(lts.isotropy_rotate(sp, Z, v))


def test_rotation_is_isometric():
    sp = build_space("EIII")
    Z = witness(sp)
    vs = [sp.sharp["l2"], sp.charts["l2"].map(1, I, 0, 0),
          sp.charts["l2"].map(0, 0, rat(2), 0)]
    imgs = [lts.isotropy_rotate(sp, Z, v) for v in vs]
    for i in range(len(vs)):
        for j in range(len(vs)):
            assert sp.inner(imgs[i], imgs[j]) == sp.inner(vs[i], vs[j])


def test_rotation_rejects_wrong_speed():
    sp = build_space("EIII")
    Z = vec_scale(rat(2), witness(sp))
    with pytest.raises(lts.NotQuarterTurnCompatible):
        lts.isotropy_rotate(sp, Z, sp.charts["l2"].map(1, 0, 0, 0))


def test_rotation_rejects_non_isotropy_generator():
    sp = build_space("EIII")
    with pytest.raises(NotInM):
        lts.isotropy_rotate(sp, sp.sharp["l1"], sp.sharp["l2"])


coeff = st.integers(min_value=-2, max_value=2)


@settings(max_examples=20, deadline=None)
@given(st.lists(coeff, min_size=8, max_size=8))
def test_rotation_preserves_norms_on_l2(cs):
    sp = build_space("EIII")
    Z = witness(sp)
    args = [rat(cs[2 * k]) + rat(cs[2 * k + 1]) * I for k in range(4)]
    v = sp.charts["l2"].map(*args)
    w = lts.isotropy_rotate(sp, Z, v)
    assert sp.norm_sq(w) == sp.norm_sq(v)


# -- reports ---------------------------------------------------------------


def test_analyze_non_lts_report():
    sp = build_space("EIII")
    v1 = sp.sharp["l1"]
    v2 = vec_add(sp.charts["l1"].map(1, 1, 0, 0), sp.charts["l3"].map(1, 0, 0))
    rep = lts.analyze(lts.Subspace(sp, [v1, v2]))
    data = rep.as_json()
    assert data["is_lts"] is False
    assert data["dim"] == 2
    assert data["failing_triple"] is not None


def test_analyze_rank_one_prototype():
    sp = build_space("EIII")
    rep = lts.analyze(lts.lts_from_closed_subsystem(sp, {"l1", "2l1"}))
    data = rep.as_json()
    assert data["is_lts"] and data["dim"] == 10 and data["rank"] == 1
    assert data["isotropy_angle"] == "0"
    assert data["complexity"] == "complex"
    mults = sorted(r["multiplicity"] for r in data["restricted"])
    assert mults == [1, 8]
    assert all(data["checks"].values())


def test_analyze_long_root_prototype_angle():
    sp = build_space("EIII")
    rep = lts.analyze(lts.lts_from_closed_subsystem(sp, {"l4"}))
    data = rep.as_json()
    assert data["rank"] == 1 and data["dim"] == 7
    assert data["isotropy_angle"] == "pi/4"


def test_markdown_report_renders():
    sp = build_space("EIII")
    rep = lts.analyze(lts.lts_from_closed_subsystem(sp, {"l4"}))
    text = rep.as_markdown()
    assert "rank: 1" in text
    assert "restricted roots:" in text
    json.dumps(rep.as_json())  # serializable


# -- subspace files --------------------------------------------------------


def test_parse_subspace_roundtrip():
    text = """
    # comment line
    space: EIII
    a(1, 0)
    M[l1](1, 0, 0, 0) + M[l2](i, 0, 0, 0)
    sharp[l2](1/2) - M[2l2](sqrt(2))
    """
    S = lts.parse_subspace(text)
    assert S.space.name == "EIII"
    assert S.dim == 3
    sp = S.space
    v = vec_sub(vec_scale(rat(1, 2), sp.sharp["l2"]),
                sp.charts["2l2"].map(sqrt(2)))
    assert S.contains(v)


def test_parse_subspace_bare_header():
    S = lts.parse_subspace("EIV\nM[l3](1, 0, 0, 0)\n")
    assert S.space.name == "EIV" and S.dim == 1


def test_parse_vector_signs_and_nesting():
    sp = build_space("EIII")
    v = lts.parse_vector(sp, "-M[l1](1+i, 0, 0, 0) + a(1/2, -1)")
    want = vec_add(vec_scale(rat(-1), sp.charts["l1"].map(rat(1) + I, 0, 0, 0)),
                   vec_sub(vec_scale(rat(1, 2), sp.a_basis[0]),
                           sp.a_basis[1]))
    assert vec_is_zero(vec_sub(v, want))


def test_parse_subspace_errors():
    with pytest.raises(lts.SubspaceFormatError):
        lts.parse_subspace("")
    with pytest.raises(lts.SubspaceFormatError):
        lts.parse_subspace("EIII\nM[l9](1)\n")
    with pytest.raises(lts.SubspaceFormatError):
        lts.parse_subspace("EIII\nM[l1](1, 0, 0\n")
    with pytest.raises(lts.SubspaceFormatError):
        lts.parse_subspace("EIII\nfoo(1)\n")
    with pytest.raises(ValueError):
        lts.parse_subspace("E9\na(1, 0)\n")


def test_parsed_file_analysis_end_to_end():
    text = """space: EIII
    sharp[l4](1)
    M[l4](1, 0, 0)
    M[l4](i, 0, 0)
    M[l4](0, 1, 0)
    M[l4](0, i, 0)
    M[l4](0, 0, 1)
    M[l4](0, 0, i)
    """
    rep = lts.analyze(lts.parse_subspace(text))
    data = rep.as_json()
    assert data["is_lts"] and data["dim"] == 7 and data["rank"] == 1
    assert data["isotropy_angle"] == "pi/4"
