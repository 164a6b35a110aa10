from fractions import Fraction

import pytest

import ccdc


def test_config_defaults_and_jobs():
    cfg = ccdc.SystemConfig(K=4, r=2, N=6, Q=4, T=1024)
    assert cfg.J == 4
    assert cfg.scheme == "ccdc"
    assert cfg.violations() == []
    cfg.validate()


def test_invalid_config_names_condition():
    cfg = ccdc.SystemConfig(K=4, r=2, N=5, Q=4, T=1024)
    assert "(r+1) must divide N" in cfg.violations()
    with pytest.raises(ccdc.ConfigError, match=r"\(r\+1\) must divide N"):
        cfg.validate()
    with pytest.raises(ValueError):
        ccdc.SystemConfig(mu=0.5)


def test_lex_subsets():
    assert ccdc.lex_subsets(4, 3) == [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]
    with pytest.raises(ccdc.ParameterError):
        ccdc.lex_subsets(3, 4)


def test_payload_helpers():
    assert ccdc.group_add("add8", b"\x01\xff", b"\x01\x01") == b"\x02\x00"
    assert ccdc.xor_bits(b"\xaa\x55", b"\xaa\x55") == b"\x00\x00"
    halves = ccdc.split_packet(bytes(range(128)), 2)
    assert [len(h) for h in halves] == [64, 64]
    assert b"".join(halves) == bytes(range(128))
    with pytest.raises(ccdc.PayloadError):
        ccdc.xor_bits(b"\x00", b"\x00\x00")


def test_formula_load():
    assert ccdc.formula_load("ccdc", 4, 2) == Fraction(3, 4)
    assert ccdc.formula_load("cdc", 3, 2, 6) == Fraction(1)
    assert ccdc.formula_load("compression", 4, 1) == Fraction(3)


@pytest.mark.parametrize(
    "scheme, expected",
    [("uncoded", Fraction(2)), ("compression", Fraction(1)), ("cdc", Fraction(1)), ("ccdc", Fraction(1, 2))],
)
def test_three_node_loads(scheme, expected):
    report = ccdc.evaluate(ccdc.SystemConfig(scheme=scheme, K=3, r=2, N=6, Q=3, T=3072))
    assert report["measured"] == expected
    assert report["match"] and report["correct"]


def test_run_returns_outputs_and_trace():
    cfg = ccdc.SystemConfig(K=4, r=2, N=6, Q=4, T=1024, group="add32", workload="linear")
    result = ccdc.run(cfg)
    assert result["measured"] == Fraction(3, 4)
    assert result["per_stage"]["stage1_subset"] == Fraction(3, 32)
    assert len(result["trace"]) == 24
    assert all(m["bits"] == 512 for m in result["trace"])
    assert result["outputs"] == ccdc.oracle_outputs(cfg)
    assert len(result["outputs"]) == cfg.J * cfg.Q
