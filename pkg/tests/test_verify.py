"""Suite reports: frozen outcome sets, exact recorded residuals, rendering."""

import pytest

from superplane.algebra import Expression
from superplane.parsing import render_expression
from superplane.scalars import Scalar
from superplane.verify import (
    DISCREPANCY,
    FAIL,
    PASS,
    SUITES,
    overall_ok,
    render_structured,
    render_text,
    run_differential_structure_suite,
    run_forms_suite,
)

# every printed row that does not reduce to zero against the derived
# rules, by suite; anything else must pass outright
EXPECTED_DISCREPANCIES = {
    "contraction": {
        "sigma-deriv-x-x",
        "sigma-deriv-th-th",
        "sigma-deriv-diff-xx",
        "sigma-deriv-diff-xth",
        "sigma-deriv-diff-thx",
        "sigma-deriv-diff-thth",
        "h-deriv-diff-thth",
    },
    "differential": set(),
    "covariance": set(),
    "forms": {"one-form-th-u", "operator-shift-th"},
    "phase-space": {"phase-em-ep", "clifford-em-ep", "clifford-om-op"},
    "oscillator": {"osc-deriv-x-x", "osc-deriv-th-th"},
    "appendix": set(),
}

# exact residuals for the hand-checked mismatches
FROZEN_RESIDUALS = {
    ("forms", "one-form-th-u"): "h2*dth",
    ("forms", "operator-shift-th"):
        "-2*h1*th*x*px + 2*h1*h2*th*x*pth",
    ("phase-space", "phase-em-ep"): "(-1 + i)*h1*h2",
    ("phase-space", "clifford-em-ep"):
        "(-1 + i)*h1*h2 + (-1 + i)*h1*h2*th*pth",
    ("phase-space", "clifford-om-op"): "(1 + i)*h1*h2*x*px",
    ("contraction", "h-deriv-diff-thth"):
        "-2*h1*h2*dth*pth - 2*h1*h2*dx*px",
    ("contraction", "sigma-deriv-x-x"):
        "-2*h1*th*px + (2)/(q - 1)*h1*h2*th*pth"
        " + (2)/(q - 1)*h1*h2*x*px",
    ("oscillator", "osc-deriv-x-x"):
        "-2*h1*Bp*A + (2)/(q - 1)*h1*h2*Ap*A"
        " + (2)/(q - 1)*h1*h2*Bp*B",
}


def by_suite(reports):
    return {r.suite: r for r in reports}


def test_runs_every_registered_suite(reports):
    assert [r.suite for r in reports] == list(SUITES)
    assert set(EXPECTED_DISCREPANCIES) == set(SUITES)


def test_no_failures(reports):
    failed = [(r.suite, c.id) for r in reports for c in r.results
              if c.status == FAIL]
    assert failed == []


def test_discrepancy_sets_are_exactly_the_documented_ones(reports):
    for rep in reports:
        found = {c.id for c in rep.results if c.status == DISCREPANCY}
        assert found == EXPECTED_DISCREPANCIES[rep.suite], rep.suite


def test_overall_verdict(reports):
    assert overall_ok(reports)
    for rep in reports:
        assert rep.ok


def test_frozen_residuals(reports):
    reps = by_suite(reports)
    for (suite, cid), text in FROZEN_RESIDUALS.items():
        row = next(c for c in reps[suite].results if c.id == cid)
        assert row.residual is not None
        assert render_expression(row.residual) == text, (suite, cid)


def test_pass_rows_carry_no_residual(reports):
    for rep in reports:
        for c in rep.results:
            if c.status == PASS:
                assert c.residual is None
            else:
                assert not c.residual.is_zero()


def test_results_sorted_and_unique(reports):
    for rep in reports:
        ids = [c.id for c in rep.results]
        assert ids == sorted(ids)
        assert len(ids) == len(set(ids))


def test_counts(reports):
    reps = by_suite(reports)
    assert reps["contraction"].counts == {PASS: 26, FAIL: 0, DISCREPANCY: 7}
    assert reps["appendix"].counts == {PASS: 18, FAIL: 0, DISCREPANCY: 0}
    total = sum(len(r.results) for r in reports)
    assert total == 138


def test_twin_print_rows_share_the_same_gap(reports):
    # the two printed tables of the hatted algebra disagree with the
    # derived rules in the same bracket constant
    reps = by_suite(reports)
    rows = {c.id: c for c in reps["phase-space"].results}
    gap = Expression({("h1", "h2"): Scalar.i() - Scalar.one()})
    phase = rows["phase-em-ep"].residual
    clifford = rows["clifford-em-ep"].residual
    assert phase == gap
    assert (clifford - gap).words() == [("h1", "h2", "th", "pth")]


def test_appendix_drift_rows_state_the_multiple(reports):
    reps = by_suite(reports)
    notes = {c.id: c.notes for c in reps["appendix"].results}
    assert "2*h1*h2/((p-1)*(q-1))" in notes["right-convention-diff"]
    assert "-2*h1*h2/((p-1)*(q-1))" in notes["right-convention-deriv"]


def test_covariance_reading_recorded(reports):
    reps = by_suite(reports)
    row = next(c for c in reps["covariance"].results
               if c.id == "coefficient-reading")
    assert "diagonal" in row.notes
    assert "rejected alternative" in row.notes


def test_fingerprints_recorded(reports):
    for rep in reports:
        assert rep.presentation_fingerprints
        for name, digest in rep.presentation_fingerprints:
            assert len(digest) == 64
            assert int(digest, 16) >= 0


def test_single_suite_matches_shared_run(catalog, reports):
    rep = run_differential_structure_suite(catalog)
    shared = by_suite(reports)["differential"]
    assert rep.results == shared.results
    assert rep.presentation_fingerprints == shared.presentation_fingerprints


def test_forms_includes_both_sectors(catalog):
    rep = run_forms_suite(catalog)
    ids = {c.id for c in rep.results}
    assert {"one-form-w-sq", "operator-nilpotent"} <= ids
    assert len(rep.presentation_fingerprints) == 2


def test_text_render_layout(reports):
    text = render_text(reports)
    for rep in reports:
        assert f"== {rep.suite} " in text
    assert text.rstrip().endswith("overall: PASS")
    assert text.count("summary:") == len(reports)


def test_structured_render_layout(reports):
    lines = render_structured(reports).splitlines()
    kinds = {line.split("\t", 1)[0] for line in lines}
    assert kinds == {"fingerprint", "check"}
    checks = [l for l in lines if l.startswith("check\t")]
    assert len(checks) == 138
    for line in checks:
        parts = line.split("\t")
        assert len(parts) == 6
        assert parts[3] in {PASS, FAIL, DISCREPANCY}
    # stable across repeated rendering of the same reports
    assert render_structured(reports) == render_structured(reports)


def test_structured_render_has_no_timing(reports):
    text = render_structured(reports)
    assert "elapsed" not in text
    assert "s)" not in text
