import copy

import pytest

from regring.golden import BLOCKS, FIXTURES, run_checks


@pytest.mark.parametrize("block", BLOCKS)
def test_block_passes(block):
    checks = run_checks(only=[block])
    assert checks
    failed = [(c.anchor, c.expected, c.actual) for c in checks if not c.passed]
    assert not failed


@pytest.mark.parametrize(
    "block, key, value, anchor",
    [
        ("example14", "v1", "0 0 0 0 / 0 0 0 0 / 0 0 0 0 / 0 0 0 1", "v1 = (f a1 e)^+"),
        ("example14", "ev2f", "2/3 1/3 0 0 / 2/3 1/3 0 0 / 2/3 1/3 0 0 / 0 0 0 0", "e v2 f"),
        ("example18", "a_s", "1 0 1 0 / 0 1 0 0 / 1 0 1 0 / 0 0 0 1", "a_S (Anderson-Trapp, k=3)"),
        ("example7", "rank_c", 3, "rank(c)"),
    ],
)
def test_perturbation_names_anchor(block, key, value, anchor):
    fixtures = copy.deepcopy(FIXTURES)
    fixtures[block][key] = value
    failed = [c.anchor for c in run_checks(only=[block], fixtures=fixtures) if not c.passed]
    assert anchor in failed


def test_crash_becomes_failure():
    fixtures = copy.deepcopy(FIXTURES)
    fixtures["example18"]["a"] = "0 1 / 1 0"  # not PSD: shorted_psd raises
    checks = run_checks(only=["example18"], fixtures=fixtures)
    assert not checks[-1].passed
    assert "raised" in checks[-1].anchor


def test_unknown_block():
    with pytest.raises(KeyError):
        run_checks(only=["example99"])


def test_records_have_schema():
    rec = run_checks(only=["example7"])[0].as_record()
    assert {"command", "inputs", "anchor", "expected", "actual", "pass"} <= set(rec)
