import json
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import forms_on, spaces
from orthoplucker.errors import SamplingExhausted
from orthoplucker.exterior import Form, MetricSpace
from orthoplucker.harness.cases import AnsatzCase, Branch, builtin_cases, evaluate, euclidean_probe, get_case
from orthoplucker.harness.io import (
    InputError,
    algebra_to_json,
    form_to_json,
    parse_bracket,
    parse_form,
)
from orthoplucker.harness.trials import (
    TrialConfig,
    check_candidate,
    random_rational,
    run_case,
    run_conjecture_direction,
    su3_counterexample,
    trial_seed,
)
from orthoplucker.lie import oscillator, su3, su3_form
from orthoplucker.plucker import relation_holds

a, b, g, dl = sp.symbols("alpha beta gamma delta")


def quick(case, trials=4, seed=3):
    return run_case(case, TrialConfig.for_case(case, trials=trials, seed=seed))


# ---------------------------------------------------------------- case table


def test_case_table_shape():
    names = [c.name for c in builtin_cases()]
    assert len(names) == len(set(names)) >= 30
    assert {c.degree for c in builtin_cases()} == {3, 4, 5}
    assert all(c.kind in {"decomposable", "contradiction", "simple"} for c in builtin_cases())


def test_e6_so4_template_and_constraint():
    c = get_case("e6-p3-so4")
    assert [(blade, sp.sympify(e)) for blade, e in c.template] == [
        ((1, 2, 3), a), ((1, 4, 5), b), ((2, 3, 6), g), ((4, 5, 6), dl)
    ]
    assert [sp.expand(x) for x in c.constraints] == [a * b + g * dl]


def test_m10_so4_parametrisation():
    c = get_case("m10-p5-so4")
    assert (c.dim, c.time_dims, c.degree) == (10, 1, 5)
    names = {s.name for s in c.parameters}
    assert {f"lambda{i}" for i in range(1, 10)} <= names
    mu2, mu3 = sp.symbols("mu2 mu3")
    assert sp.expand(c.constraints[0] - (sp.Symbol("beta") - mu2 * mu3)) == 0
    assert c.has_split


def test_e8_so4_constraints():
    c = get_case("e8-p4-so4")
    nu1, nu3, mu2, mu3 = sp.symbols("nu1 nu3 mu2 mu3")
    assert {sp.expand(x) for x in c.constraints} == {nu1 * nu3 + 1, mu2 * mu3 - a * b}


def test_probe_lookup():
    probe = get_case("e10-p5-so4-probe")
    assert probe.time_dims == 0 and probe.probe
    assert probe == euclidean_probe(get_case("m10-p5-so4"))
    with pytest.raises(KeyError):
        get_case("no-such-case")


def test_case_validation():
    with pytest.raises(ValueError, match="not in the template"):
        AnsatzCase("x", "", 3, 0, 3, (((1, 2, 3), a),), (b,), (Branch("all"),))
    with pytest.raises(ValueError, match="dependent"):
        AnsatzCase("x", "", 3, 0, 3, (((1, 2, 3), a),), (), (Branch("b", ((b, a),)),), dependents=((a, b),))


def test_evaluate_is_exact():
    x, y = sp.symbols("x y")
    assert evaluate(x**2 / 3 - y, {x: Fraction(3, 2), y: Fraction(1, 4)}) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        evaluate(1 / x, {x: Fraction(0)})


@pytest.mark.parametrize("case", builtin_cases(), ids=lambda c: c.name)
def test_every_case_iff_on_a_few_samples(case):
    rep = quick(case, trials=3)
    assert rep.passed, rep.failures
    assert rep.satisfied_and_decomposed == rep.constraint_violated_and_relation_failed == 3


def test_contradiction_case_forces_collapse():
    rep = quick(get_case("e7-p3-u1diag"), trials=10)
    assert rep.passed and get_case("e7-p3-u1diag").kind == "contradiction"


def test_sampling_exhausted():
    case = AnsatzCase("bad", "", 3, 0, 3, (((1, 2, 3), a - b),), (a - b,), (Branch("off", ((a, b + 1),)),))
    with pytest.raises(SamplingExhausted):
        quick(case, trials=1)


def test_run_case_rejects_wrong_dimensions():
    with pytest.raises(ValueError):
        run_case(get_case("e6-p3-so4"), TrialConfig(7, 0, 3))


def test_euclidean_probe_reports_flags_not_failures():
    rep = quick(get_case("e10-p5-so4-probe"), trials=4)
    assert rep.passed
    assert rep.flags and "diverges" in rep.flags[0]


# ---------------------------------------------------------------- config, seeds, reports


def test_trial_config_validation():
    with pytest.raises(ValueError):
        TrialConfig(6, 0, 3, trials=0)
    with pytest.raises(ValueError):
        TrialConfig(6, 0, 3, coefficient_height=0)
    with pytest.raises(ValueError):
        TrialConfig(6, 0, 3, seed=-1)


def test_trial_seed_is_order_independent():
    assert trial_seed(7, "e6-p3-so4", 3) == trial_seed(7, "e6-p3-so4", 3)
    assert len({trial_seed(7, "e6-p3-so4", i) for i in range(100)}) == 100
    assert 0 <= trial_seed(2**64 - 1, "x", 0) < 2**64


@given(st.integers(0, 2**32), st.integers(1, 20))
def test_random_rational_range(seed, h):
    q = random_rational(random.Random(seed), h)
    assert q != 0 and abs(q.numerator) <= h and q.denominator <= h


def test_reports_are_deterministic():
    case = get_case("m6-p3-so2")
    one = json.dumps(quick(case, 6, 11).to_json(timing=False))
    two = json.dumps(quick(case, 6, 11).to_json(timing=False))
    assert one == two
    assert "elapsed_ms" not in json.loads(one)


def test_report_verdict_tracks_failures():
    rep = quick(get_case("e6-p3-so4"))
    assert rep.verdict == "pass"
    rep.failures.append((1, "x"))
    assert rep.verdict == "fail" and not rep.passed
    assert rep.to_json()["verdict"] == "fail"


# ---------------------------------------------------------------- conjecture and su(3)


def test_conjecture_part_one():
    rep = run_conjecture_direction(TrialConfig(6, 0, 3, trials=20, seed=1))
    assert rep.passed and rep.details["part"] == "i" and rep.satisfied_and_decomposed == 20


def test_conjecture_part_two_d5():
    rep = run_conjecture_direction(TrialConfig(5, 0, 3, trials=20, seed=1))
    assert rep.passed and rep.details["part"] == "ii"
    assert rep.constraint_violated_and_relation_failed == 20 and not rep.flags


def test_su3_suite():
    rep = su3_counterexample()
    assert rep.passed
    assert rep.details["su(3)"]["support_rank"] == 8
    assert rep.details["su(3)+R^1"]["support_rank"] == 8
    assert rep.details["so(3)"] == {"support_rank": 3, "simple": True}


def test_check_candidate():
    out = check_candidate(su3_form())
    assert out["relation_holds"] and out["counterexample"] and out["support_rank"] == 8
    out = check_candidate(Form.blade(MetricSpace(6), 1, 2, 3) + Form.blade(MetricSpace(6), 4, 5, 6))
    assert out["relation_holds"] and not out["counterexample"]


# ---------------------------------------------------------------- file formats


@given(st.data())
def test_form_json_round_trip(data):
    space = data.draw(spaces(1, 6, lorentzian=True))
    F = data.draw(forms_on(space, data.draw(st.integers(0, space.dim))))
    assert parse_form(json.dumps(form_to_json(F))) == F


def test_su3_form_round_trips_with_sqrt3():
    F = su3_form()
    assert parse_form(json.dumps(form_to_json(F))) == F
    assert relation_holds(parse_form(json.dumps(form_to_json(F))))


def test_bracket_round_trip():
    for L in (su3(), oscillator(Fraction(2, 3), -1, 5)):
        back = parse_bracket(json.dumps(algebra_to_json(L)))
        assert back.bracket == L.bracket and back.metric == L.metric


BAD_FORM = """{
  "dim": 4, "time_dims": 0, "degree": 2,
  "terms": [
    {"indices": [1, 2], "coeff": "1"},
    {"indices": [3, 3], "coeff": "1/2"}
  ]
}"""


def test_form_diagnostics_name_line_and_field():
    with pytest.raises(InputError) as err:
        parse_form(BAD_FORM, "f.json")
    assert str(err.value) == "f.json:5: field terms[1].indices: indices must be strictly increasing"
    assert err.value.line == 5


@pytest.mark.parametrize(
    "text, field",
    [
        ('{"dim": 0, "time_dims": 0, "degree": 1, "terms": []}', "dim"),
        ('{"dim": 3, "time_dims": 4, "degree": 1, "terms": []}', "time_dims"),
        ('{"dim": 3, "time_dims": 0, "degree": 1, "terms": 5}', "terms"),
        ('{"dim": 3, "time_dims": 0, "degree": 1, "terms": [{"indices": [4], "coeff": 1}]}', "terms[0].indices"),
        ('{"dim": 3, "time_dims": 0, "degree": 1, "terms": [{"indices": [1], "coeff": "x"}]}', "terms[0].coeff"),
        ('{"dim": 3, "time_dims": 0, "degree": 1, "terms": [{"indices": [1]}]}', "terms[0].coeff"),
    ],
)
def test_form_diagnostics(text, field):
    with pytest.raises(InputError) as err:
        parse_form(text)
    assert err.value.field == field


def test_invalid_json_reports_line():
    with pytest.raises(InputError) as err:
        parse_form('{\n  "dim": 3,\n  oops\n}')
    assert err.value.line == 3


def test_bracket_diagnostics():
    with pytest.raises(InputError) as err:
        parse_bracket('{"arity": 2, "dim": 3, "constants": [{"lower": [1, 2], "upper": 9, "coeff": 1}]}')
    assert err.value.field == "constants[0].upper"
    with pytest.raises(InputError) as err:
        parse_bracket('{"arity": 2, "dim": 2, "constants": [], "metric": [[1, 0], [0, 0]]}')
    assert err.value.field == "metric"
