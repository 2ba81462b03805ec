import orjson
import pytest

from app.automaton.words import parse_ep_word
from app.brs.criteria import BrsVerdict, MonotoneProfile, prop5_check, thm2_decide, verify_witness
from app.brs.empirical import GrowthCheckpoint, empirical_check, growth_slope
from app.discrepancy.sweep import sweep_rows
from app.errors import CapExceededError, ReducibleCharpolyError, WordError
from app.sequence.values import valued_word
from app.settings import BrsSection

FINITE = ["1", "2", "1,2", "0,1", "2,0,2", "1,2,0,2"]
PERIODIC = ["|2", "|2,0", "|1,0", "0|2", "1|0,2", "|2,2,0", "|0,1"]
EXPECTED = {
    "|2": "bounded",
    "0|2": "bounded",
    "|2,0": "unbounded",
    "|1,0": "unbounded",
    "1|0,2": "unbounded",
    "|2,2,0": "unbounded",
    "|0,1": "unbounded",
}


def _valued(aut, data, text):
    return valued_word(aut, data, parse_ep_word(text))


def test_prop5_on_known_words(example1, example1_data):
    assert prop5_check(example1, example1_data, _valued(example1, example1_data, "1")) == (1, 0)
    assert prop5_check(example1, example1_data, _valued(example1, example1_data, "|2")) == (0, 3)


@pytest.mark.parametrize("text", FINITE)
def test_finite_words_give_bounded_sets(example1, example1_data, text):
    u = _valued(example1, example1_data, text)
    verdict = thm2_decide(example1, example1_data, u)
    assert verdict.prop5 is not None
    assert verdict.prop5[1] == 0
    assert verdict.decision == "bounded"
    assert verdict.label == "bounded"
    assert verdict.hypotheses_met


@pytest.mark.parametrize("text", PERIODIC)
def test_periodic_verdicts(example1, example1_data, text):
    u = _valued(example1, example1_data, text)
    verdict = thm2_decide(example1, example1_data, u)
    assert verdict.explored > 0
    assert verdict.decision == EXPECTED[text]
    assert verdict.label == EXPECTED[text]
    if verdict.prop5 is not None:
        assert verdict.decision == "bounded"
    if verdict.witness is None:
        assert verdict.decision == "bounded"
    else:
        assert verdict.decision == "unbounded"
        assert verify_witness(example1, example1_data, u, verdict.witness)


def test_period_doubling_keeps_verdict(example1, example1_data):
    for text, doubled in [("|2,0", "|2,0,2,0"), ("|1,0", "1,0|1,0"), ("0|2", "0,2|2,2")]:
        first = thm2_decide(example1, example1_data, _valued(example1, example1_data, text))
        second = thm2_decide(example1, example1_data, _valued(example1, example1_data, doubled))
        assert first.decision == second.decision


def test_word_must_start_at_initial_state(example1, example1_data):
    u = valued_word(example1, example1_data, parse_ep_word("|2"), start=1)
    with pytest.raises(WordError):
        thm2_decide(example1, example1_data, u)


def test_final_example_is_rejected(final_example, final_data):
    u = _valued(final_example, final_data, "3,0|2")
    assert prop5_check(final_example, final_data, u) is None
    with pytest.raises(ReducibleCharpolyError):
        thm2_decide(final_example, final_data, u)


def test_label_names_missing_hypotheses():
    verdict = BrsVerdict(decision="bounded", pisot=False, minimal_letter_rule=True)
    assert verdict.label == "bounded (hypotheses-not-met: not Pisot)"
    verdict = BrsVerdict(decision="unbounded", pisot=False, minimal_letter_rule=False)
    assert verdict.label == "unbounded (hypotheses-not-met: not Pisot, tau(q,a0) <= q for some q)"


def test_monotone_profile(example1):
    profile = MonotoneProfile.identity(example1)
    assert profile.mirror_state == 3
    after = profile.extend(example1, 1)
    assert after.map == (0, 0, 0, 2)
    assert after.mirror_state == 1
    assert after.extend(example1, 1).dead


def test_empirical_full_interval_is_flat(example1, example1_data, example1_seq):
    report = empirical_check(example1_seq, example1_data.field.one, 256)
    assert report.max_abs_D == 0.0
    assert report.argmax_N == 0
    assert report.slope == pytest.approx(0.0)
    assert report.looks_bounded
    assert [point.N for point in report.checkpoints] == [2, 4, 8, 16, 32, 64, 128, 256]
    assert orjson.loads(report.to_json())["n_max"] == 256


def test_empirical_running_maximum(example1_data, example1_seq):
    y = example1_data.beta.inverse()
    report = empirical_check(example1_seq, y, 300, options=BrsSection(fit_min_n=16))
    magnitudes = {point.N: abs(float(point.D)) for point in sweep_rows(example1_seq, y, 300)}
    assert report.max_abs_D == pytest.approx(max(magnitudes.values()))
    assert magnitudes[report.argmax_N] == pytest.approx(report.max_abs_D)
    assert report.checkpoints[-1].N == 300
    running = [point.max_abs_D for point in report.checkpoints]
    assert running == sorted(running)


def test_empirical_respects_cap(example1_data, example1_seq):
    with pytest.raises(CapExceededError):
        empirical_check(example1_seq, example1_data.field.one, 100, cap=50)


def test_growth_slope_fits_log_growth():
    flat = [GrowthCheckpoint(N=2**i, max_abs_D=3.0) for i in range(1, 12)]
    assert growth_slope(flat, 64) == pytest.approx(0.0, abs=1e-9)
    logarithmic = [GrowthCheckpoint(N=2**i, max_abs_D=2.0 * i) for i in range(1, 12)]
    assert growth_slope(logarithmic, 64) == pytest.approx(2.0 / 0.6931471805599453)
    assert growth_slope(flat[:1], 64) == 0.0
