"""CLI surface: flag parsing, exit codes, reproducible output."""

import io
from contextlib import redirect_stdout

import pytest

from cf2.cli import main, parse_spec_text
from cf2.words import GSpec, PSpec


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def test_gen_family_p():
    code, out = run_cli("gen", "--family", "P", "--w0", "", "--eps", "10", "--len", "8")
    assert code == 0
    assert out.splitlines()[-1] == "10111010"


def test_gen_family_g():
    code, out = run_cli("gen", "--family", "G", "--u0", "a", "--v0", "b", "--ups", "1", "--len", "8")
    assert code == 0
    assert out.splitlines()[-1] == "abbabaab"


def test_gen_spec_text_form():
    code, out = run_cli("gen", "--spec", "P w0= eps=10", "--len", "8")
    assert code == 0 and out.splitlines()[-1] == "10111010"


def test_parse_spec_text():
    assert parse_spec_text("P w0=ab eps=c") == PSpec("ab", "c")
    assert parse_spec_text("G u0=a v0=b ups=01") == GSpec("a", "b", "01")
    with pytest.raises(Exception):
        parse_spec_text("Q x=1")


def test_sigma_and_inverse():
    code, out = run_cli("sigma", "--word", "10111010")
    assert code == 0 and out.splitlines()[-1] == "011010011"
    code, out = run_cli("sigma", "--word", "011010011", "--inverse")
    assert code == 0 and out.splitlines()[-1] == "10111010"


def test_sigma_inverse_too_short_is_usage_error():
    code, _ = run_cli("sigma", "--word", "1", "--inverse")
    assert code == 2


def test_cf_series_output():
    code, out = run_cli("cf", "--word", "zzz", "--map", "z=z", "--prec", "8")
    assert code == 0
    assert out.splitlines()[-1] == "z + z^-1 + z^-3 + z^-5 + z^-7 + O(z^-8)"


def test_cf_short_word_still_works():
    code, out = run_cli("cf", "--word", "ab", "--map", "a=z,b=z+1", "--prec", "16")
    assert code == 0 and "O(z^-16)" in out.splitlines()[-1]


def test_constant_specialization_rejected():
    code, _ = run_cli("cf", "--word", "ab", "--map", "a=1,b=z", "--prec", "64")
    assert code == 2


def test_unmapped_letter_rejected():
    code, _ = run_cli("cf", "--word", "abq", "--map", "a=z,b=z+1", "--prec", "64")
    assert code == 2


def test_default_binary_map():
    code, out = run_cli("cf", "--word", "0110", "--prec", "16")
    assert code == 0


def test_tower_trace_format():
    code, out = run_cli(
        "tower-trace", "--family", "P", "--w0", "", "--eps", "10", "--steps", "4",
        "--prec", "128",
    )
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("step=")]
    assert len(lines) == 4
    assert lines[0].startswith("step=1 val(d)=2 val(L-1)=")


def test_identities_single_check():
    code, out = run_cli(
        "identities", "--check", "pair-products", "--trials", "10", "--seed", "3"
    )
    assert code == 0
    assert "pair-products pass trials=10 field=GF(2^16) seed=0x3" in out


def test_relation_rational():
    code, out = run_cli("relation", "--num", "1", "--den", "z+1", "--degx", "2", "--prec", "128")
    assert code == 0
    assert "X^1*(z+1) + X^0*(1)" in out
    assert "degree=1" in out


def test_theorem2_thue_morse_cli():
    code, out = run_cli(
        "theorem2", "--u0", "a", "--v0", "b", "--ups", "1",
        "--map", "a=z,b=z+1", "--prec", "256",
    )
    assert code == 0
    assert "theorem-g pass" in out
    assert "degree=4" in out


def test_theorem2_odd_swaps_usage_error():
    code, _ = run_cli(
        "theorem2", "--u0", "a", "--v0", "b", "--ups", "10",
        "--map", "a=z,b=z+1", "--prec", "128",
    )
    assert code == 2


def test_theorem1_cli():
    code, out = run_cli("theorem1", "--w0", "", "--eps", "10", "--prec", "256")
    assert code == 0 and "theorem-p pass" in out


def test_prec_minimum_for_search_commands():
    code, _ = run_cli("relation", "--num", "1", "--den", "z+1", "--degx", "2", "--prec", "32")
    assert code == 2


def test_byte_identical_reruns():
    args = ("identities", "--check", "pair-products", "--trials", "5", "--seed", "7")
    assert run_cli(*args) == run_cli(*args)


def test_explore_cli_small():
    code, out = run_cli("explore-sigma-inv", "--degx", "2", "--degz", "8", "--prec", "128")
    assert code == 0
    assert "explore-sigma-inv" in out


def test_config_echo_present():
    _, out = run_cli("gen", "--family", "P", "--w0", "", "--eps", "10", "--len", "4")
    first = out.splitlines()[0]
    assert first.startswith("config command=gen") and "seed=0x1" in first


def test_relation_family_path():
    code, out = run_cli(
        "relation", "--family", "G", "--u0", "a", "--v0", "b", "--ups", "1",
        "--map", "a=z,b=z+1", "--degx", "4", "--prec", "256",
    )
    assert code == 0
    assert "degree=4" in out and "X^4*" in out


def test_tower_trace_family_g():
    code, out = run_cli(
        "tower-trace", "--family", "G", "--u0", "a", "--v0", "b", "--ups", "11",
        "--map", "a=z,b=z+1", "--steps", "3", "--prec", "256",
    )
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("step=")]
    assert len(lines) == 3 and all("val(d)=" in l and "val(L-1)=" in l for l in lines)


def test_gen_spec_text_family_g():
    code, out = run_cli("gen", "--spec", "G u0=a v0=b ups=011", "--len", "8")
    assert code == 0 and out.splitlines()[-1] == "aabbbbaa"


def test_bad_spec_text_is_usage_error():
    code, _ = run_cli("gen", "--spec", "Q x=1", "--len", "4")
    assert code == 2


def test_env_precision_override(monkeypatch):
    monkeypatch.setenv("CF2_PREC", "16")
    code, out = run_cli("cf", "--word", "zzz", "--map", "z=z")
    assert code == 0 and "O(z^-16)" in out.splitlines()[-1]
    monkeypatch.setenv("CF2_PREC", "junk")
    code, _ = run_cli("cf", "--word", "zzz", "--map", "z=z")
    assert code == 2
