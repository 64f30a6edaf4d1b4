from cycliccover.cohomology import DeRhamTriple, derham_basis, omega_basis
from cycliccover.curve import ASCurve, KummerCurve
from cycliccover.funcfield import FFDiff, FFElem
from cycliccover.gf import FieldSpec
from cycliccover.polyrat import Poly, RatFn
from cycliccover.verify import (
    VerifyOptions,
    cocycle_check,
    dimension_check,
    divisor_checks,
    duality_matrix,
    exactness_check,
    full_report,
    locus_check,
)

F3 = FieldSpec(3)
F5 = FieldSpec(5)
F7 = FieldSpec(7)
F11 = FieldSpec(11)

QUARTIC = KummerCurve(F5, 2, [(F5.element(i), 1) for i in (1, 2, 3, 4)])
AS_P3 = ASCurve(F3, Poly.from_ints(F3, [1, 0, 1]), [(F3.element(1), 1), (F3.element(2), 1)])
GENUS6 = KummerCurve(F11, 5, [(F11.element(i), 1) for i in (1, 2, 3, 4, 5)])


def test_duality_matrix_quartic():
    matrix, result = duality_matrix(QUARTIC)
    assert result.status == "pass"
    assert matrix == [[F5.one()]]


def test_duality_matrix_as_extended():
    matrix, result = duality_matrix(AS_P3, "extended")
    assert result.status == "pass"
    assert len(matrix) == 2
    for i, row in enumerate(matrix):
        for j, v in enumerate(row):
            assert v == (F3.one() if i == j else F3.zero())


def test_duality_matrix_full_identity_across_distinct_mu():
    # genus 6 with four distinct mu blocks: every off-diagonal pairing,
    # including mu_1 != mu_2, must vanish
    matrix, result = duality_matrix(GENUS6)
    assert result.status == "pass"
    assert len(matrix) == 6
    for i, row in enumerate(matrix):
        for j, v in enumerate(row):
            assert v == (F11.one() if i == j else F11.zero())


def test_cocycle_check_examples():
    classes = derham_basis(QUARTIC)
    assert cocycle_check(classes[0]).status == "pass"
    assert cocycle_check(classes[0]).name == "cocycle:a[1,1]"
    assert cocycle_check(classes[1]).status == "pass"  # delta

    paper = derham_basis(QUARTIC, sign_convention="paper")[0]
    result = cocycle_check(paper)
    assert result.status == "fail"
    # diagnostic identity: the residual is exactly twice the infinity slot
    residual = paper.triple.f0inf.exterior_d() - paper.triple.omega0 + paper.triple.omega_inf
    assert residual == paper.triple.omega_inf + paper.triple.omega_inf
    assert result.payload["residual"] == residual.render()


def test_locus_check_passes_on_emitted_triples():
    for curve in (QUARTIC, AS_P3, GENUS6):
        for cls in derham_basis(curve):
            assert locus_check(cls).status == "pass"


def test_locus_check_engineered_failure():
    # omega_0 with a pole at a branch point is a confirmed violation
    bad = FFDiff(FFElem.from_ratfn(QUARTIC, RatFn(Poly.one(F5), Poly.from_ints(F5, [-1, 1]))))
    holom = omega_basis(QUARTIC)[0][1]
    triple = DeRhamTriple(bad, holom, FFElem.zero(QUARTIC))
    result = locus_check(triple, "engineered")
    assert result.status == "fail"
    assert "branch" in result.details


def test_locus_check_inconclusive_on_unresolved_bound():
    # two monomials with equal branch valuations: the minimum is attained
    # twice, the bound is negative, and no exact verdict exists
    curve = KummerCurve(F5, 4, [(F5.element(1), 2), (F5.element(2), 1), (F5.element(3), 1)])
    lin = Poly.from_ints(F5, [-1, 1])  # x - 1, the e = 2 branch point
    elem = FFElem.monomial(curve, 2, RatFn(Poly.one(F5), lin * lin)) + FFElem.monomial(
        curve, 0, RatFn(Poly.one(F5), lin)
    )
    triple = DeRhamTriple(FFDiff.zero(curve), FFDiff.zero(curve), elem)
    result = locus_check(triple, "engineered")
    assert result.status == "inconclusive"


def test_divisor_checks_pass_on_worked_curves():
    for curve in (QUARTIC, AS_P3, GENUS6):
        result = divisor_checks(curve)
        assert result.status == "pass", result.details


def test_divisor_checks_cover_the_identity_suite():
    # spot-check that the sub-identities are really exercised
    from cycliccover.curve import mu_table, ram_data
    from cycliccover.funcfield import place_classes, valuation_bound

    # Kummer (y): lambda_i at branch, -t over infinity, degree zero
    y = FFElem.y(QUARTIC)
    ram = ram_data(QUARTIC)
    total = 0
    for place, entry in zip(place_classes(QUARTIC), ram.branch):
        bound, exact = valuation_bound(y, place)
        assert (bound, exact) == (entry.lam, True)
        total += bound * place.npoints
    # AS (dx) degree is 2g - 2 = 2
    dx = FFDiff(FFElem.one(AS_P3))
    total = sum(
        valuation_bound(dx, place)[0] * place.npoints for place in place_classes(AS_P3)
    )
    assert total == 2

    # extrael2 exponent identity on the AS example
    table = mu_table(AS_P3, "extended")
    p = AS_P3.p
    for m in table.mus():
        mu = p - m
        if mu < 1:
            continue
        row = table[m]
        for i, (_, l) in enumerate(AS_P3.branch):
            assert p * row.m[i] - (mu - 1) * l == p - 1 - row.v[i]
            assert p * row.m[i] - (mu - 1) * l >= 0


def test_dimension_check_examples():
    assert dimension_check(QUARTIC).status == "pass"
    assert dimension_check(QUARTIC).payload == {"omega": 1, "h1": 1, "derham": 2, "genus": 1}
    assert dimension_check(AS_P3, "extended").status == "pass"
    paper = dimension_check(AS_P3, "paper")
    assert paper.status == "fail"
    assert (paper.payload["omega"], paper.payload["h1"], paper.payload["derham"]) == (1, 1, 2)
    assert paper.payload["genus"] == 2


def test_exactness_check_examples():
    assert exactness_check(QUARTIC).status == "pass"
    assert exactness_check(AS_P3, "extended").status == "pass"
    assert exactness_check(GENUS6).status == "pass"


def test_full_report_all_pass_and_ordering():
    report = full_report(QUARTIC)
    assert report.all_pass
    names = [c.name for c in report.checks]
    assert names[:4] == ["validation", "divisors", "dimension", "duality"]
    assert names[-1] == "exactness"
    assert "cocycle:a[1,1]" in names and "locus:delta[1,1]" in names
    assert report.pairing_matrix == [[F5.one()]]


def test_full_report_paper_policy_dimension_failure_only():
    report = full_report(AS_P3, VerifyOptions(mu_range="paper"))
    assert not report.all_pass
    failing = [c.name for c in report.checks if c.status != "pass"]
    assert failing == ["dimension"]


def test_full_report_paper_sign_cocycle_failure():
    report = full_report(QUARTIC, VerifyOptions(sign="paper"))
    assert not report.all_pass
    failing = [c.name for c in report.checks if c.status != "pass"]
    assert failing == ["cocycle:a[1,1]"]


def test_full_report_on_invalid_curve_reports_only_validation():
    bad = KummerCurve(F5, 3, [(F5.element(i), 1) for i in (1, 2, 3, 4)])
    report = full_report(bad)
    assert not report.all_pass
    assert report.pairing_matrix is None
    assert all(c.name.startswith("validate:") for c in report.checks)
    assert {c.status for c in report.checks} == {"fail"}
