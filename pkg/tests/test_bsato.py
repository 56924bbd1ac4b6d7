import json
import random
from fractions import Fraction

import pytest

from qsing.affine import Affine, Box
from qsing.brackets import BracketTerm, compute_bfunction, family_from_terms
from qsing.bsato import (
    CertifyOutcome,
    cert_from_json,
    cert_to_json,
    certify_all_good,
    check_form_assumption,
    generator_bc,
    is_good,
    membership_in_ztilde,
    rational_singularities_verdict,
    reduc_a,
    reduc_b,
    single_variable_roots,
    sym_state_from_family,
    verify_certificate,
)
from qsing.decomp import generic_decomposition, perp_simples

E6_FAMILY_PAPER_ORDER = lambda n, m: family_from_terms(4, [
    # paper's own variable order (s_1..s_4) for readability in these tests
    BracketTerm((1, 0, 0, 0), 0, n + m),
    BracketTerm((0, 1, 0, 0), 0, n + m),
    BracketTerm((0, 0, 1, 0), 0, n),
    BracketTerm((0, 0, 0, 1), 0, n),
    BracketTerm((0, 0, 1, 1), n, 2 * n + m),
    BracketTerm((0, 1, 1, 0), n + m, 2 * n + m),
    BracketTerm((1, 0, 0, 1), n + m, 2 * n + m),
])

E8_POS_FAMILY = lambda n: family_from_terms(2, [
    BracketTerm((0, 1), 0, 4 * n),
    BracketTerm((0, 1), n, 3 * n, 2),
    BracketTerm((0, 1), 2 * n, 4 * n),
    BracketTerm((1, 0), 0, n),
    BracketTerm((1, 1), n, 4 * n),
    BracketTerm((1, 2), 4 * n, 7 * n),
])


def test_is_good():
    assert is_good((-1, -1), 2)
    assert not is_good((9, -7), 2)
    assert is_good((-2, -1, -1, -1), 4)
    assert not is_good((Fraction(-1, 2), -1), 2)


def test_generator_unit_c():
    fam = E6_FAMILY_PAPER_ORDER(2, 2)
    gen = generator_bc(fam, (1, 0, 0, 0))
    assert gen.binomial_factors == ()
    assert gen.factors[((1, 0, 0, 0), 1)] == 1  # the factor s_1 + 1
    # depth-1 factors of the two gamma_1-brackets only
    gammas = {g for (g, _c) in gen.factors}
    assert gammas == {(1, 0, 0, 0), (1, 0, 0, 1)}


def test_generator_with_negative_part():
    fam = E8_POS_FAMILY(1)
    gen = generator_bc(fam, (2, -1))
    assert gen.binomial_factors == ((2, 1),)
    # shift c^- = (0,-1) moves every gamma_2-involving constant down by gamma_2
    assert ((1, 2), 3) in gen.factors  # offset 5, depth from c+=(2,0), shift -2
    # evaluates like the stored factors
    z = (Fraction(3), Fraction(-2))
    val = gen.value_at(z)
    manual = Fraction(1)
    for (g, c), cnt in gen.factors.items():
        manual *= (g[0] * z[0] + g[1] * z[1] + c) ** cnt
    manual *= z[1]  # binom(s_2, 1)
    assert val == manual


def test_generator_a2():
    fam = family_from_terms(1, [BracketTerm((1,), 0, 1)])
    gen = generator_bc(fam, (1,))
    assert gen.factors == {((1,), 1): 1}


def test_generator_soundness_random():
    # product of stored factors equals direct evaluation for random c, z
    rng = random.Random(41)
    fam = E6_FAMILY_PAPER_ORDER(2, 2)
    for _ in range(20):
        c = [0, 0, 0, 0]
        for i in range(3):
            c[i] = rng.randint(-2, 2)
        c[3] = 1 - sum(c[:3])
        gen = generator_bc(fam, tuple(c))
        z = tuple(Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
                  for _ in range(4))
        val = gen.value_at(z)
        manual = Fraction(1)
        for (g, const), cnt in gen.factors.items():
            manual *= (sum(Fraction(a) * b for a, b in zip(g, z)) + const) ** cnt
        for i, order in gen.binomial_factors:
            b = Fraction(1)
            for t in range(order):
                b *= z[i - 1] - t
            import math
            manual *= b / math.factorial(order)
        assert val == manual


def test_membership_r1():
    fam = family_from_terms(1, [BracketTerm((1,), 0, 1)])
    assert membership_in_ztilde(fam, (-1,)).kind == "member"
    assert membership_in_ztilde(fam, (-2,)).kind == "nonmember"


def test_membership_expos_exact():
    """The E8 positive-root example, exactly at r = 2.

    The member found by the engine lies on the line s_1 + s_2 = -2, every
    generator of which contains the factor s_1 + s_2 + 2.  The point
    (8n+1, -6n-1) printed in the source example is NOT a member: the single
    generator at c = (3n+1, -3n) has no vanishing factor there (its two
    candidate factor windows just miss), which brute-force evaluation
    confirms; see test_membership_brute_force_cross_check.
    """
    fam = E8_POS_FAMILY(1)
    got = membership_in_ztilde(fam, (-4, 2))
    assert got.kind == "member"
    got = membership_in_ztilde(fam, (9, -7))
    assert got.kind == "nonmember"
    assert got.witness_c == (4, -3)
    assert membership_in_ztilde(fam, (100, 100)).kind == "nonmember"


def test_membership_brute_force_cross_check():
    fam = E8_POS_FAMILY(1)
    for z, expected in (((-4, 2), True), ((9, -7), False)):
        z = tuple(Fraction(v) for v in z)
        vanishes_everywhere = all(
            generator_bc(fam, (1 + t, -t)).value_at(z) == 0
            for t in range(-40, 41)
        )
        assert vanishes_everywhere == expected


def test_membership_box_r4():
    fam = E6_FAMILY_PAPER_ORDER(2, 2)
    got = membership_in_ztilde(fam, (-1, -1, -1, -1), box_bound=2)
    # every generator in the box vanishes at -e, but r > 2 stays honest
    assert got.kind == "unknown"
    got = membership_in_ztilde(fam, (50, 50, 50, 50), box_bound=1)
    assert got.kind == "nonmember"


def test_check_form_assumption():
    assert check_form_assumption(E6_FAMILY_PAPER_ORDER(2, 2))
    assert not check_form_assumption(E8_POS_FAMILY(1))  # [s]^{11}_{1,4}: 2 > 1
    units = family_from_terms(2, [BracketTerm((1, 0), 0, 3),
                                  BracketTerm((0, 1), 0, 2)])
    assert check_form_assumption(units)


def test_reduc_a_examples():
    fam = E6_FAMILY_PAPER_ORDER(2, 2)
    state = sym_state_from_family(fam)
    got, fail = reduc_a(state, (0, 1))
    assert got is not None
    certs, splits = got
    assert len(certs) == 1
    assert [Fraction(x) for x in certs[0].u] == [1, 1]
    assert splits[0] == [1, 2, 3, 4] and splits[1] == [1, 2, 3, 4]
    # ex:pos: I = {1} fails with the (1,1) bracket tuple
    state2 = sym_state_from_family(E8_POS_FAMILY(1))
    got2, fail2 = reduc_a(state2, (0,))
    assert got2 is None and fail2[0] == "no-certificate"


def test_reduc_a_vacuous_when_gamma_empty():
    fam = family_from_terms(2, [BracketTerm((1, 0), 0, 2),
                                BracketTerm((0, 1), 0, 2)])
    state = sym_state_from_family(fam)
    got, _ = reduc_a(state, (0,))
    certs, splits = got
    assert certs == [] and splits[0] == [1, 2]


def test_reduc_b_b1_family():
    # the printed 3-variable reduction of the E6 example: J empty,
    # J+ = {1, 3}, J- = {2}
    n = m = 2
    fam = family_from_terms(3, [
        BracketTerm((1, 0, 0), 0, n + m),
        BracketTerm((0, 1, 0), 0, n),
        BracketTerm((0, 0, 1), 0, n),
        BracketTerm((0, 1, 1), n, 2 * n + m),
        BracketTerm((1, 1, 0), n + m, 2 * n + m),
        BracketTerm((0, 0, 1), n + m - 1, 2 * n + m - 1),
    ])
    rb = reduc_b(sym_state_from_family(fam))
    assert rb is not None
    assert rb.j_set == ()
    assert rb.j_plus == (0, 2) and rb.j_minus == (1,)


def test_reduc_b_not_applicable_when_e_in_cone():
    rb = reduc_b(sym_state_from_family(E8_POS_FAMILY(1)))
    assert rb is None  # (1,1) lies in Gamma


def test_reduc_b_gamma_empty():
    fam = family_from_terms(3, [BracketTerm((1, 0, 0), 0, 2),
                                BracketTerm((0, 1, 0), 0, 2),
                                BracketTerm((0, 0, 1), 0, 2)])
    rb = reduc_b(sym_state_from_family(fam))
    assert rb is not None
    assert len(rb.j_set) == 2  # maximal J misses a single coordinate
    assert len(rb.j_plus) == 1 and rb.j_minus == ()


def test_certify_a2():
    fam = family_from_terms(1, [BracketTerm((1,), 0, 1)])
    out = certify_all_good(fam)
    assert out.kind == "certificate"
    assert out.certificate.rule == "leaf_last_var"
    ok, msg = verify_certificate(fam, out.certificate)
    assert ok, msg


def test_certify_e6_and_checker():
    fam = E6_FAMILY_PAPER_ORDER(2, 2)
    out = certify_all_good(fam)
    assert out.kind == "certificate"
    assert out.certificate.rule == "reduc_a"
    ok, msg = verify_certificate(fam, out.certificate)
    assert ok, msg
    # serialization round trip feeds the checker equally well
    blob = json.dumps(cert_to_json(out.certificate))
    ok2, msg2 = verify_certificate(fam, cert_from_json(json.loads(blob)))
    assert ok2, msg2


def test_checker_rejects_tampered_certificate():
    fam = E6_FAMILY_PAPER_ORDER(2, 2)
    out = certify_all_good(fam)
    blob = cert_to_json(out.certificate)
    blob["data"]["certs"][0]["u"] = ["1", "0"]  # no longer combines to e
    ok, msg = verify_certificate(fam, cert_from_json(blob))
    assert not ok
    blob2 = cert_to_json(out.certificate)
    del blob2["branches"][0]  # drop a case
    ok2, _ = verify_certificate(fam, cert_from_json(blob2))
    assert not ok2


def test_certify_expos_refuted():
    fam = E8_POS_FAMILY(1)
    out = certify_all_good(fam)
    assert out.kind == "refuted"
    z = out.witness
    assert not is_good(z, 2)
    assert membership_in_ztilde(fam, z).kind == "member"


def test_single_variable_roots():
    fam = family_from_terms(1, [BracketTerm((1,), 0, 2), BracketTerm((2,), 2, 4)])
    roots = single_variable_roots(fam)
    assert roots[0] == (Fraction(-1), 1)
    assert (Fraction(-3, 2), 1) in roots


def test_verdict_a2(a2):
    v = rational_singularities_verdict(a2, (1, 1))
    assert v.kind == "rational_singularities"
    assert v.largest_root == -1 and v.largest_root_mult == 1
    # Z(B~) for the one-variable family is exactly {-1}
    assert [r for r, _ in single_variable_roots(v.family)] == [Fraction(-1)]


def test_verdict_codim1_a3(a3):
    # a hypersurface orbit closure: alpha = (1,1,2) with its single
    # perpendicular simple (0,1,0); the semi-invariant is a coordinate
    v = rational_singularities_verdict(a3, (1, 1, 2), selected=(1,))
    assert v.kind == "rational_singularities"
    assert v.largest_root == -1 and v.largest_root_mult == 1


def test_verdict_e6(e6, e6_alpha):
    v = rational_singularities_verdict(e6, e6_alpha(2, 2))
    assert v.kind == "rational_singularities"
    assert v.certificate is not None
    ok, msg = verify_certificate(v.family, v.certificate)
    assert ok, msg
    assert v.reducedness.verdict == "reduced"


def test_verdict_expos(e8, e8_alpha):
    v = rational_singularities_verdict(e8, e8_alpha(1), selected=(2, 4))
    assert v.kind == "not_certified"
    assert v.witness is not None
    assert not is_good(v.witness, 2)
    assert membership_in_ztilde(v.family, v.witness).kind == "member"


def test_affine_box_arithmetic():
    k = Affine.sym("k")
    box = Box().with_symbol("k", 1)
    e = k * 2 + 3
    assert box.min_of(e) == 5 and box.max_of(e) is None
    assert box.min_of(-k) is None
    assert box.always_ge(e, 5) and not box.always_gt(e, 5)
    bounded = Box().with_symbol("k", 1, 4)
    assert bounded.max_of(e) == 11
    assert (k - k).is_const()
