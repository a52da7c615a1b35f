import pytest
import sympy
from hypothesis import given, settings, strategies as st

from symideal import cuboid
from symideal.catalog import COMBINATIONS, catalog
from symideal.cuboid import (
    NotMultisymmetric,
    derive_combination,
    e_form,
    kernel_gb,
    phi,
    reduce_xd_canonical,
)
from symideal.groebner import buchberger, elimination_ideal, load_cache, reduce, save_cache
from symideal.report import CORRECTED, PASS
from symideal.ring import Permutation, apply_permutation, format_poly, is_invariant, symmetrize

from conftest import to_sympy

CAT = catalog()
X = CAT.xd_ring
ER = CAT.e_ring


def sympy_phi(p_e):
    """phi through sympy substitution, independent of ``substitute``."""
    expr = to_sympy(p_e)
    syms = {s.name: s for s in expr.free_symbols}
    repl = {syms[name]: to_sympy(img) for name, img in CAT.e_assignment().items() if name in syms}
    return sympy.expand(expr.xreplace(repl))


def xd_polys(max_terms=4, max_exp=2):
    term = st.tuples(st.integers(-6, 6), st.tuples(*[st.integers(0, max_exp)] * 7))
    return st.lists(term, min_size=1, max_size=max_terms).map(X.from_terms)


# -- phi ------------------------------------------------------------------------


def test_phi_examples():
    assert format_poly(phi(ER("E10"))) == "x1+x2+x3"
    assert phi(ER("E11")) == X("x1*d2+x1*d3+x2*d1+x2*d3+x3*d1+x3*d2")
    assert phi(ER("L^2")) == X("L^2")
    assert phi(ER("E10^2-2*E20-L^2")) == CAT.p[0]


@pytest.mark.parametrize("i", range(1, 8))
def test_q_in_kernel_by_sympy(i):
    assert sympy_phi(CAT.q[i]) == 0


def test_phi_is_a_homomorphism_on_catalog():
    a, b = CAT.eform_prev["7.4"], CAT.eform_prev["7.6"]
    assert phi(a * b + a) == phi(a) * phi(b) + phi(a)
    assert to_sympy(phi(a)) == sympy_phi(a)


# -- kernel basis ------------------------------------------------------------------


def test_kernel_gb_shape():
    gb = kernel_gb()
    r = [CAT.r[i] for i in range(1, 10)]
    gk = elimination_ideal(r, 6, gb=gb)
    assert len(gb) == 55
    assert len(gk) == 14
    assert all(g.leading_term()[0] == 1 for g in gb)


def test_kernel_gb_cache_round_trip(tmp_path):
    gb = kernel_gb()
    path = tmp_path / "k.txt"
    save_cache(path, gb)
    back = load_cache(path, CAT.joint_ring, gb.generators)
    assert back.elements == gb.elements


# -- e_form ---------------------------------------------------------------------


def test_e_form_examples():
    assert e_form(X("x1^2+x2^2+x3^2")) == ER("E10^2-2*E20")
    assert e_form(X("x1*x2*x3*d1*d2*d3")) == ER("E30*E03")
    assert e_form(CAT.p[0]) == CAT.eform_prev["7.1"]
    assert e_form(X("7")) == ER("7")


def test_e_form_rejects_non_invariant():
    with pytest.raises(NotMultisymmetric):
        e_form(X("x1"))


@settings(max_examples=200, deadline=None)
@given(xd_polys())
def test_phi_e_form_round_trip(p):
    s = symmetrize(p)
    assert phi(e_form(s)) == s


@settings(max_examples=25, deadline=None)
@given(st.lists(
    st.tuples(st.integers(-5, 5), st.tuples(*[st.integers(0, 1)] * 10).filter(lambda e: sum(e) <= 3)),
    min_size=1, max_size=3,
))
def test_e_form_of_phi_is_congruent(terms):
    P = ER.from_terms(terms)
    r = [CAT.r[i] for i in range(1, 10)]
    gk = [ER.convert(g) for g in elimination_ideal(r, 6, gb=kernel_gb())]
    diff = e_form(phi(P)) - P
    assert reduce(diff, gk)[0].is_zero()


# -- seven-coefficient form --------------------------------------------------------

SWAP23 = Permutation((1, 3, 2))


def swap_symmetric(p):
    return p + apply_permutation(p, SWAP23)


@settings(max_examples=60, deadline=None)
@given(xd_polys(max_terms=3, max_exp=3))
def test_qform_reassembles(p):
    s = swap_symmetric(p)
    q = reduce_xd_canonical(s)
    assert q.assemble() == s
    for (a, b), coeff in q.coefficients().items():
        assert coeff.ring == ER
        assert a <= 2 and b <= 2


def test_qform_of_c1():
    q = reduce_xd_canonical(CAT.c[1])
    got = {ab: format_poly(v) for ab, v in q.coefficients().items() if v}
    assert got == {(2, 0): "-1", (0, 2): "-1", (0, 0): "-2*E20+E10^2"}


def test_qform_rejects_asymmetric_input():
    with pytest.raises(ValueError):
        reduce_xd_canonical(X("x2"))


# -- supporting bases [DERIVED, frozen] ----------------------------------------------


def test_basis_of_face_ideal():
    gb = buchberger([CAT.p[0], CAT.c[1], CAT.c[2], CAT.c[3]])
    assert [format_poly(g) for g in gb] == [
        "x1^2-d2^2-d3^2+L^2",
        "x2^2+d2^2-L^2",
        "x3^2+d3^2-L^2",
        "d1^2+d2^2+d3^2-2*L^2",
    ]


def test_face_ideal_basis_matches_sympy():
    gens = sympy.symbols(X.variables)
    G = sympy.groebner([to_sympy(p) for p in (CAT.p[0], CAT.c[1], CAT.c[2], CAT.c[3])], *gens, order="lex")
    ours = buchberger([CAT.p[0], CAT.c[1], CAT.c[2], CAT.c[3]])
    assert {sympy.srepr(sympy.Poly(g, *gens).monic().as_expr()) for g in G.exprs} == {
        sympy.srepr(to_sympy(g)) for g in ours
    }


def test_ptilde_and_q_basis_sizes():
    assert len(buchberger([CAT.ptilde[i] for i in range(1, 9)], track=False)) == 22
    assert len(buchberger([CAT.q[i] for i in range(1, 8)], track=False)) == 14


# -- combination solver -------------------------------------------------------------


def test_derive_combination_recovers_printed_identity():
    gens = {i: CAT.ptilde[i] for i in range(1, 9)}
    target = phi(CAT.eform_prev["7.2"])
    printed = {k: ER(t) for k, t in COMBINATIONS["7.2"][1].items()}
    slots, corrected = derive_combination(target, gens, printed)
    assert slots == []
    assert corrected == printed


def test_derive_combination_fixes_wrong_slot():
    gens = {i: CAT.ptilde[i] for i in range(1, 9)}
    target = phi(CAT.eform_prev["7.2"])
    printed = {1: ER("2"), 2: ER("-3")}
    slots, corrected = derive_combination(target, gens, printed, max_changed=1)
    assert slots in ([1], [2])
    total = sum((phi(v) * gens[k] for k, v in corrected.items()), X.zero())
    assert total == target


def test_corrected_conversions_expand_by_sympy(conversions_report):
    """Re-expand the derived combinations independently."""
    names = {v: k for k, v in cuboid.PTILDE_NAMES.items()}
    for src, tag in (("7.8", "7.9"), ("7.10", "7.11")):
        claim = conversions_report[f"sec7/eq{tag}/combination"]
        assert claim.status == CORRECTED
        total = 0
        for part in claim.witness.split(" + "):
            coeff_text, gen_name = part.rsplit(")*", 1)
            coeff = ER(coeff_text[1:])
            total += sympy_phi(coeff) * to_sympy(CAT.ptilde[names[gen_name]])
        assert sympy.expand(total - to_sympy(phi(CAT.eform_prev[src]))) == 0


def test_corrected_quartic_combination_moves_weight_to_d_squares(conversions_report):
    claim = conversions_report["sec7/eq7.9/combination"]
    assert "(18)*sum(x_i^2*p_i)" in claim.witness
    assert "(6)*sum(d_i^2*p_i)" in claim.witness
    assert "x_i*d_i" not in claim.witness


def test_corrected_unreadable_p0_coefficient(conversions_report):
    claim = conversions_report["sec7/eq7.11/combination"]
    assert claim.witness.startswith("(-10*E20+7*E10^2-20*E01^2+5*L^2)*p0")


# -- reports ------------------------------------------------------------------------


def test_partial_relations_report():
    rep = cuboid.verify_partial_relations()
    assert rep.ok
    assert rep["sec5/eq5.7/f01"].status == CORRECTED
    assert rep["sec5/eq5.7/f10"].status == PASS


def test_sym_report(sym_report):
    assert sym_report.ok
    assert sym_report["sec3/eq3.6/equivariance"].status == CORRECTED
    assert sym_report["thm6.1/eq6.10/8"].status == CORRECTED
    assert sym_report["thm6.1/probe"].status == PASS
    for i in range(1, 9):
        assert sym_report[f"thm6.1/member/ptilde{i}"].status == PASS


def test_kernel_report(kernel_report):
    assert kernel_report.status == PASS
    assert kernel_report["thm2.2/gk-size"].witness == "14"


def test_records_are_sorted_and_tab_separated(kernel_report):
    lines = kernel_report.to_records().splitlines()
    ids = [ln.split("\t")[0] for ln in lines]
    assert ids == sorted(ids)
    assert all(len(ln.split("\t")) == 3 for ln in lines)


@settings(max_examples=100, deadline=None)
@given(st.lists(
    st.tuples(st.integers(-5, 5), st.tuples(*[st.integers(0, 2)] * 10).filter(lambda e: sum(e) <= 3)),
    min_size=1, max_size=4,
))
def test_phi_images_are_multisymmetric(terms):
    assert is_invariant(phi(ER.from_terms(terms)))
