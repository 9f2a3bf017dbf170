import pytest

from specrad import (
    ChainInputs,
    EnsembleSpec,
    EvalContext,
    FiniteMatrix,
    HypothesisViolation,
    evaluate_chain,
    run_ensemble,
)
from specrad.chains import CHAIN, ChainSpec, Part
from specrad.registry import by_id
from specrad.spectral import Bracket


CTX = EvalContext()


def _const_chain(values, tol_level="finite"):
    """Test-only chain whose terms are fixed point brackets."""

    def build(inputs, ctx):
        return [Part("fixed", CHAIN,
                     [(f"t{i}", Bracket(v, v, "fixed")) for i, v in enumerate(values)])]

    return ChainSpec("TEST", "fixed", tol_level, "test-only fixture", {},
                     "none", lambda rng, ens: ChainInputs(),
                     lambda inputs: None, build)


def _wide_chain():
    def build(inputs, ctx):
        return [Part("wide", CHAIN, [
            ("t0", Bracket(0.0, 10.0, "wide")),
            ("t1", Bracket(0.0, 5.0, "tight")),
        ])]

    return ChainSpec("WIDE", "wide", "finite", "test-only fixture", {},
                     "none", lambda rng, ens: ChainInputs(),
                     lambda inputs: None, build)


def test_verdicts():
    assert evaluate_chain(_const_chain([1.0, 2.0, 3.0]), ChainInputs(), CTX).verdict == "pass"
    assert evaluate_chain(_const_chain([3.0, 2.0]), ChainInputs(), CTX).verdict == "fail"
    assert evaluate_chain(_wide_chain(), ChainInputs(), CTX).verdict == "inconclusive"
    rep = evaluate_chain(_const_chain([1.0, 1.0]), ChainInputs(), CTX)
    assert rep.verdict == "pass"  # equality within tolerance is not a failure


def test_relative_tolerance_scales():
    # a relative wobble below the finite tolerance must pass
    eps = 1e-12
    assert evaluate_chain(_const_chain([1.0 + eps, 1.0]), ChainInputs(), CTX).verdict == "pass"
    assert evaluate_chain(_const_chain([2.0, 1.0]), ChainInputs(), CTX).verdict == "fail"


def test_hypothesis_rejection():
    spec = by_id("F10")
    bad = ChainInputs(matrices=(FiniteMatrix([[1.0]]),), params={"t": 0.5})
    with pytest.raises(HypothesisViolation):
        evaluate_chain(spec, bad, CTX)
    spec = by_id("E1")
    bad = ChainInputs(families=(), params={"m": 1, "t": 0.5})
    with pytest.raises(HypothesisViolation):
        evaluate_chain(spec, bad, CTX)


def test_reports_are_deterministic():
    ens = EnsembleSpec(kind="dense_uniform", size=4, seed=5)
    spec = by_id("F2")
    a = run_ensemble(spec, ens, 4, CTX)
    b = run_ensemble(spec, ens, 4, CTX)
    assert a.to_json() == b.to_json()
    assert a.summary["pass"] == 4


def test_f2_ones_example():
    spec = by_id("F2")
    j = FiniteMatrix([[1, 1], [1, 1]])
    rep = evaluate_chain(spec, ChainInputs(matrices=(j, j)), CTX)
    assert rep.verdict == "pass"
    values = [row.hi for row in rep.parts[0].rows]
    assert values == pytest.approx([2.0, 2.0, 4.0], rel=1e-9)


def test_f4_degenerate_m1_collapses():
    spec = by_id("F4")
    a = FiniteMatrix([[0.3, 1.2], [0.7, 0.1]])
    rep = evaluate_chain(spec, ChainInputs(matrices=(a,), params={"m": 1}), CTX)
    assert rep.verdict == "pass"
    rows = rep.parts[0].rows
    assert rows[0].lo == pytest.approx(rows[1].lo, rel=1e-9)


def test_e10_shift_example():
    from specrad import Constant, shift_family
    spec = by_id("E10")
    c = 0.9
    f = shift_family(Constant(c))
    rep = evaluate_chain(spec, ChainInputs(families=(f, f),
                                           params={"beta": 0.5, "beta_open": 0.5}), CTX)
    assert rep.verdict == "pass"
    for part in rep.parts:
        for row in part.rows:
            assert row.hi == pytest.approx(c * c, rel=1e-9)


def test_run_ensemble_summary_fields():
    ens = EnsembleSpec(kind="shift_family", size=4, seed=9)
    run = run_ensemble(by_id("E2"), ens, 3, CTX)
    s = run.summary
    assert s["trials"] == 3
    assert s["pass"] + s["fail"] + s["inconclusive"] == 3
    assert s["argmin_digest"]
    assert run.reports[0].input_digest != ""
