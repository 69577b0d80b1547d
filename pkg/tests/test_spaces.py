from fractions import Fraction

import pytest

from ltskit.linalg import Span, vec_add, vec_is_zero, vec_scale, vec_sub
from ltskit.scalars import I, parse_scalar, rat, sqrt
from ltskit.spaces import (
    ANGLE_NAMES, AngleDescriptor, NotHermitian, NotInM, SpaceModel,
    build_space, scalar_sign,
)


def e(n, k, a=1):
    v = [0] * n
    v[k] = a
    return v


# -- splitting and involution ---------------------------------------------

def test_dimensions():
    eiii = build_space("EIII")
    assert len(eiii.k_rows) == 46 and len(eiii.m_rows) == 32
    eiv = build_space("EIV")
    assert len(eiv.k_rows) == 52 and len(eiv.m_rows) == 26
    g2 = build_space("G2group")
    assert len(g2.m_rows) == 14


def test_involution_is_involutive_automorphism():
    for name in ("EIII", "EIV"):
        assert build_space(name).validate_involution()


def test_orbit_tables_match_involution():
    for name in ("EIII", "EIV"):
        assert build_space(name).validate_orbit_tables()


def test_k_m_bracket_relations():
    sp = build_space("EIII")
    alg = sp.alg
    kspan = Span(sp.k_rows)
    mspan = Span(sp.m_rows)
    for x in sp.k_rows[:4]:
        for y in sp.m_rows[:4]:
            assert mspan.contains(alg.bracket(x, y))
    for x in sp.m_rows[:4]:
        for y in sp.m_rows[:4]:
            assert kspan.contains(alg.bracket(x, y))


# -- restricted root data ---------------------------------------------------

def test_restricted_kinds_and_multiplicities():
    eiii = build_space("EIII").restricted
    assert eiii.kind == "BC2"
    assert {(r.label, r.mult) for r in eiii.positives} == {
        ("l1", 8), ("2l1", 1), ("l2", 8), ("2l2", 1), ("l3", 6), ("l4", 6)}
    eiv = build_space("EIV").restricted
    assert eiv.kind == "A2"
    assert all(r.mult == 8 for r in eiv.positives)
    g2 = build_space("G2group").restricted
    assert g2.kind == "G2"
    assert all(r.mult == 2 for r in g2.positives)


def test_restricted_coordinates():
    eiii = build_space("EIII").restricted
    by = {r.label: r.coords for r in eiii.positives}
    assert by["l3"] == (Fraction(-1), Fraction(1))
    assert by["l4"] == (Fraction(1), Fraction(1))
    assert by["2l1"] == (Fraction(2), Fraction(0))


def test_sharp_norms():
    sp = build_space("EIII")
    want = {"l1": 1, "2l1": 4, "l2": 1, "2l2": 4, "l3": 2, "l4": 2}
    for label, n in want.items():
        assert sp.norm_sq(sp.sharp[label]) == rat(n)
    spv = build_space("EIV")
    for label in ("l1", "l2", "l3"):
        assert spv.norm_sq(spv.sharp[label]) == rat(1)
    g2 = build_space("G2group")
    assert g2.norm_sq(g2.sharp["l1"]) == rat(1)
    assert g2.norm_sq(g2.sharp["l2"]) == rat(3)


def test_root_space_dimensions_match_multiplicity():
    for name in ("EIII", "EIV", "G2group"):
        sp = build_space(name)
        for r in sp.restricted.positives:
            assert len(sp.charts[r.label].basis_vectors()) == r.mult


def test_m_basis_orthonormal():
    for name in ("EIII", "EIV", "G2group"):
        sp = build_space(name)
        basis = sp.m_basis()
        assert len(basis) == len(sp.m_rows)
        for i, x in enumerate(basis):
            for j in range(i, len(basis)):
                want = rat(1) if i == j else rat(0)
                assert sp.inner(x, basis[j]) == want


def test_jacobi_operator_law():
    # ad(Z)^2 X = -lambda(Z)^2 X for Z in a, X in the root space
    for name in ("EIII", "EIV", "G2group"):
        sp = build_space(name)
        for r in sp.restricted.positives:
            h = sp.sharp[r.label]
            lam_of_h = sp.norm_sq(h)  # lambda(h) for h = lambda-sharp
            for x in sp.charts[r.label].basis_vectors():
                lhs = sp.alg.bracket(h, sp.alg.bracket(h, x))
                assert vec_is_zero(vec_add(lhs, vec_scale(lam_of_h * lam_of_h, x)))


# -- curvature ---------------------------------------------------------------

def test_curvature_symmetries():
    sp = build_space("EIV")
    b = sp.m_basis()
    quads = [(0, 3, 7, 11), (1, 4, 9, 2), (5, 6, 10, 0)]
    for i, j, k, l in quads:
        x, y, z, w = b[i], b[j], b[k], b[l]
        assert vec_is_zero(vec_add(sp.curvature(x, y, z), sp.curvature(y, x, z)))
        lhs = sp.inner(sp.curvature(x, y, z), w)
        rhs = sp.inner(sp.curvature(z, w, x), y)
        assert (lhs - rhs).is_zero()
        bianchi = vec_add(vec_add(sp.curvature(x, y, z), sp.curvature(y, z, x)),
                          sp.curvature(z, x, y))
        assert vec_is_zero(bianchi)


def test_curvature_rejects_vectors_outside_m():
    sp = build_space("EIII")
    k_vec = sp.k_rows[0]
    with pytest.raises(NotInM):
        sp.curvature(k_vec, sp.m_rows[0], sp.m_rows[1])


# -- complex structure (EIII) -----------------------------------------------

def test_complex_structure_properties():
    sp = build_space("EIII")
    j = sp.complex_structure()
    for x in sp.m_basis():
        assert vec_is_zero(vec_add(sp.apply_J(sp.apply_J(x)), x))
    b = sp.m_basis()
    for i in (0, 3, 9, 17, 25):
        for jdx in (1, 8, 20, 31):
            lhs = sp.inner(sp.apply_J(b[i]), sp.apply_J(b[jdx]))
            assert (lhs - sp.inner(b[i], b[jdx])).is_zero()


def test_complex_structure_action_table():
    sp = build_space("EIII")
    # m_l1, m_l2 are J-invariant
    for label in ("l1", "l2"):
        space = sp.root_space(label)
        for x in sp.charts[label].basis_vectors():
            assert space.contains(sp.apply_J(x))
    # J(a) = m_2l1 + m_2l2
    doubled = Span(sp.charts["2l1"].basis_vectors()
                   + sp.charts["2l2"].basis_vectors())
    for z in sp.a_basis:
        assert doubled.contains(sp.apply_J(z))
    # J(m_l3) = m_l4
    l4 = sp.root_space("l4")
    for x in sp.charts["l3"].basis_vectors():
        assert l4.contains(sp.apply_J(x))


def test_complex_structure_slot_action():
    sp = build_space("EIII")
    signs = (1, -1, 1, -1)
    for label in ("l1", "l2"):
        ch = sp.charts[label]
        for k in range(4):
            got = sp.apply_J(ch.map(*e(4, k)))
            want = ch.map(*e(4, k, signs[k] * I))
            assert vec_is_zero(vec_sub(got, want))
    # J M_l3(c1,c2,c3) = M_l4(i c1, -i c2, -i conj(c3))
    c3, c4 = sp.charts["l3"], sp.charts["l4"]
    for c in [(1, 0, 0), (I, 0, 0), (0, 1, 0), (0, I, 0), (0, 0, 1), (0, 0, I)]:
        got = sp.apply_J(c3.map(*c))
        conj = lambda z: (z + (rat(0) + z).conj_i()) - z if False else None
        cc = [rat(Fraction(x)) if not isinstance(x, type(I)) else x for x in c]
        cs = [x if isinstance(x, type(I)) else rat(Fraction(x)) for x in c]
        want = c4.map(I * cs[0], -I * cs[1], -I * cs[2].conj_i())
        assert vec_is_zero(vec_sub(got, want))
    for c in [(1, 0, 0), (0, I, 0), (0, 0, I)]:
        cs = [x if isinstance(x, type(I)) else rat(Fraction(x)) for x in c]
        got = sp.apply_J(c4.map(*c))
        want = c3.map(I * cs[0], -I * cs[1], I * cs[2].conj_i())
        assert vec_is_zero(vec_sub(got, want))


def test_complex_structure_doubled_roots():
    sp = build_space("EIII")
    got = sp.apply_J(sp.charts["2l1"].map(1))
    assert scalar_sign(sp.inner(got, sp.sharp["l1"])) < 0
    assert Span(sp.a_basis).contains(got)
    got2 = sp.apply_J(sp.charts["2l2"].map(1))
    assert Span(sp.a_basis).contains(got2)


def test_no_complex_structure_elsewhere():
    for name in ("EIV", "G2group"):
        with pytest.raises(NotHermitian):
            build_space(name).complex_structure()


# -- calibrated curvature identities ----------------------------------------

def test_eiii_jacobi_doubled_identity():
    # R(sharp_ref, v, M_{2l}(1)) = -(1/8) Jv, exactly, for every basis v
    sp = build_space("EIII")
    for k, (lab, dlab) in enumerate((("l1", "2l1"), ("l2", "2l2"))):
        h = sp.reference_sharp(lab)
        m2 = sp.charts[dlab].map(1)
        sign = rat(Fraction(-1, 8)) if k == 0 else rat(Fraction(1, 8))
        for v in sp.charts[lab].basis_vectors():
            got = sp.curvature(h, v, m2)
            want = vec_scale(sign, sp.apply_J(v))
            assert vec_is_zero(vec_sub(got, want))
            # norm + subspace statement of the identity
            assert sp.root_space(lab).contains(got)
            assert sp.norm_sq(got) == rat(Fraction(1, 64)) * sp.norm_sq(v)


def test_eiii_a_component_law():
    sp = build_space("EIII")
    eighth = rat(Fraction(1, 8))
    for lab in ("l1", "l2"):
        h = sp.reference_sharp(lab)
        basis = sp.charts[lab].basis_vectors()
        for v in basis[:3]:
            for w in basis[:3]:
                out = sp.curvature(h, v, w)
                want = vec_scale(eighth * sp.inner(v, w), sp.reference_sharp(lab))
                got = sp.a_component(out)
                # reference inner product differs by the metric ratio 8
                want = vec_scale(rat(8), want)
                assert vec_is_zero(vec_sub(got, want))


def test_eiii_cross_space_identities():
    sp = build_space("EIII")
    C = sp.charts
    s16 = sqrt(2) * rat(Fraction(1, 16))
    h1 = sp.reference_sharp("l1")
    h2 = sp.reference_sharp("l2")
    h3 = sp.reference_sharp("l3")
    signs = (I, I, -I, -I)
    for k in range(4):
        for a in (rat(1), I):
            got = sp.curvature(h1, C["l1"].map(*e(4, k, a)), C["l3"].map(0, 0, 1))
            want = vec_scale(s16, C["l2"].map(*e(4, k, signs[k] * a)))
            assert vec_is_zero(vec_sub(got, want))
            got = sp.curvature(h2, C["l2"].map(*e(4, k, a)), C["l3"].map(0, 0, 1))
            want = vec_scale(-s16, C["l1"].map(*e(4, k, signs[k] * a)))
            assert vec_is_zero(vec_sub(got, want))
    # R(M_l1(1,0,0,0), M_l2(c), l3_ref) = sqrt2/8 M_l3(-c4 i, -conj(c3) i, c1 i)
    s8 = sqrt(2) * rat(Fraction(1, 8))
    one1 = C["l1"].map(1, 0, 0, 0)
    for c in [(1, 0, 0, 0), (I, 0, 0, 0), (0, 0, 1, 0), (0, 0, I, 0),
              (0, 0, 0, 1), (0, 0, 0, I)]:
        cs = [x if isinstance(x, type(I)) else rat(Fraction(x)) for x in c]
        got = sp.curvature(one1, C["l2"].map(*c), h3)
        want = vec_scale(s8, C["l3"].map(-cs[3] * I, -cs[2].conj_i() * I, cs[0] * I))
        assert vec_is_zero(vec_sub(got, want))


def test_eiii_l3_l4_transfer_identity():
    # u := R(l2_ref, M_l3(d), M_l1(1,0,0,0)) = -sqrt2/16 M_l2(i d3, 0, i conj(d2), -i d1)
    # R(u, M_l1(1,0,0,0)) l1_ref = 1/128 (M_l3(d) + M_l4(-d1, d2, conj(d3)))
    sp = build_space("EIII")
    C = sp.charts
    h1, h2 = sp.reference_sharp("l1"), sp.reference_sharp("l2")
    one1 = C["l1"].map(1, 0, 0, 0)
    s16 = sqrt(2) * rat(Fraction(1, 16))
    for d in [(1, 0, 0), (I, 0, 0), (0, 1, 0), (0, I, 0), (0, 0, 1), (0, 0, I)]:
        ds = [x if isinstance(x, type(I)) else rat(Fraction(x)) for x in d]
        u = sp.curvature(h2, C["l3"].map(*d), one1)
        want_u = vec_scale(-s16, C["l2"].map(I * ds[2], 0, I * ds[1].conj_i(),
                                             -I * ds[0]))
        assert vec_is_zero(vec_sub(u, want_u))
        out = sp.curvature(u, one1, h1)
        want = vec_scale(rat(Fraction(1, 128)),
                         vec_add(C["l3"].map(*d),
                                 C["l4"].map(-ds[0], ds[1], ds[2].conj_i())))
        assert vec_is_zero(vec_sub(out, want))


def test_g2_curvature_identities():
    sp = build_space("G2group")
    C = sp.charts
    h1 = sp.reference_sharp("l1")
    c34 = sqrt(3) * rat(Fraction(3, 4))
    c4 = sqrt(3) * rat(Fraction(1, 4))
    half = rat(Fraction(1, 2))
    checks = [
        (sp.curvature(h1, C["l2"].map(1), C["l1"].map(1)),
         vec_scale(c34, C["l3"].map(I))),
        (sp.curvature(h1, C["l3"].map(I), C["l1"].map(1)),
         vec_sub(vec_scale(c4, C["l2"].map(1)), vec_scale(half, C["l4"].map(1)))),
        (sp.curvature(h1, C["l4"].map(1), C["l1"].map(1)),
         vec_sub(vec_scale(half, C["l3"].map(I)), vec_scale(c4, C["l5"].map(I)))),
        (sp.curvature(h1, C["l5"].map(I), C["l2"].map(1)),
         vec_scale(c34, C["l6"].map(1))),
        (sp.curvature(h1, C["l2"].map(1), C["l5"].map(1)),
         vec_scale(-c34, C["l6"].map(I))),
    ]
    for got, want in checks:
        assert vec_is_zero(vec_sub(got, want))


def test_g2_mixed_root_identity():
    # R(l1_ref, V_l1(c), V_l3(d)) = sqrt3/2 V_l2(conj(c) d i) + V_l4(c d i)
    sp = build_space("G2group")
    C = sp.charts
    h1 = sp.reference_sharp("l1")
    s32 = sqrt(3) * rat(Fraction(1, 2))
    for c in (rat(1), I):
        for d in (rat(1), I):
            got = sp.curvature(h1, C["l1"].map(c), C["l3"].map(d))
            want = vec_add(vec_scale(s32, C["l2"].map(c.conj_i() * d * I)),
                           C["l4"].map(c * d * I))
            assert vec_is_zero(vec_sub(got, want))


def test_eiv_curvature_identities():
    sp = build_space("EIV")
    C = sp.charts
    h1 = sp.reference_sharp("l1")
    s8 = sqrt(2) * rat(Fraction(1, 8))
    v1 = C["l1"].map(1, 0, 0, 0)
    v2 = C["l2"].map(1, 0, 0, 0)
    checks = [
        (sp.curvature(h1, v1, v2), vec_scale(s8, C["l3"].map(0, 0, 0, I))),
        (sp.curvature(h1, C["l1"].map(I, 0, 0, 0), v2),
         vec_scale(-s8, C["l3"].map(0, 0, 0, 1))),
        (sp.curvature(h1, v1, C["l3"].map(0, 0, 0, 1)),
         vec_scale(-s8, C["l2"].map(I, 0, 0, 0))),
    ]
    for got, want in checks:
        assert vec_is_zero(vec_sub(got, want))
    for c in (rat(1), I):
        got = sp.curvature(h1, C["l1"].map(0, c, 0, 0), v2)
        want = vec_scale(s8, C["l3"].map(0, 0, c.conj_i() * I, 0))
        assert vec_is_zero(vec_sub(got, want))
        got = sp.curvature(h1, v1, C["l3"].map(0, 0, c, 0))
        want = vec_scale(s8, C["l2"].map(0, c.conj_i() * I, 0, 0))
        assert vec_is_zero(vec_sub(got, want))


# -- isotropy angle ----------------------------------------------------------

def test_isotropy_angle_special_rays():
    sp = build_space("EIII")
    assert sp.isotropy_angle(sp.sharp["l2"]).name == "0"
    assert sp.isotropy_angle(sp.sharp["l4"]).name == "pi/4"
    assert sp.isotropy_angle(sp.sharp["l1"]).name == "0"  # Weyl-conjugate to l2
    spv = build_space("EIV")
    base = vec_add(spv.sharp["l1"], spv.sharp["l3"])
    assert spv.isotropy_angle(base).name == "0"
    # every restricted root dual is Weyl-conjugate to l3-sharp, at pi/6
    for lab in ("l1", "l2", "l3"):
        assert spv.isotropy_angle(spv.sharp[lab]).name == "pi/6"
    g2 = build_space("G2group")
    assert g2.isotropy_angle(g2.sharp["l4"]).name == "0"
    assert g2.isotropy_angle(g2.sharp["l6"]).name == "pi/6"
    assert g2.isotropy_angle(g2.sharp["l1"]).name == "0"  # short, conjugate to l4
    assert g2.isotropy_angle(g2.sharp["l2"]).name == "pi/6"  # long, conjugate to l6


def test_isotropy_angle_weyl_invariance():
    sp = build_space("EIII")
    v = vec_add(vec_scale(rat(2), sp.sharp["l2"]), sp.sharp["l1"])
    base = sp.isotropy_angle(v)
    for r in sp.restricted.positives:
        h = sp.sharp[r.label]
        refl = vec_sub(v, vec_scale(rat(2) * sp.inner(v, h) / sp.norm_sq(h), h))
        assert sp.isotropy_angle(refl).tan_sq == base.tan_sq
    assert base.tan_sq == rat(Fraction(1, 4))
    assert base.name == "arctan(1/2)"


def test_isotropy_angle_rejects():
    sp = build_space("EIII")
    with pytest.raises(ValueError):
        sp.isotropy_angle([rat(0)] * sp.alg.dim)
    with pytest.raises(NotInM):
        sp.isotropy_angle(sp.charts["l1"].map(1, 0, 0, 0))


def test_build_space_cached():
    assert build_space("EIII") is build_space("EIII")
    with pytest.raises(ValueError):
        SpaceModel("EV")
