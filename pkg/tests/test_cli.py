import json

import pytest

from wqlat.cli import main
from wqlat.presets import ACCEPTANCE_PRESETS

from conftest import ball_of, pres_of


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestElementVerbs:
    def test_nf(self, capsys):
        code, out, _ = run(capsys, "nf", "bs:2,3", "b^3 a")
        assert code == 0 and "a b^2" in out

    def test_nf_identity_token(self, capsys):
        code, out, _ = run(capsys, "nf", "free:2", "e")
        assert code == 0 and '"e"' in out

    def test_zero_exponent_parses(self, capsys):
        code, out, _ = run(capsys, "nf", "free:2", "b^0 a")
        assert code == 0 and '"a"' in out

    def test_pos_with_witness(self, capsys):
        code, out, _ = run(capsys, "pos", "bs:2,-3", "a b^-7")
        assert code == 0 and "true" in out and "witness" in out

    def test_leq(self, capsys):
        code, out, _ = run(capsys, "leq", "bs:2,-3", "a b^-3 a^-1", "b^3 a")
        assert code == 0 and "true" in out

    def test_join_infinite(self, capsys):
        code, out, _ = run(capsys, "join", "bs:2,-3", "b a", "b^2 a")
        assert code == 0 and "infinite" in out

    def test_join_with_oracle_cross_check(self, capsys):
        code, out, _ = run(capsys, "join", "bs:1,2", "a", "b", "--oracle", "--radius", "6")
        assert code == 0
        assert out.count("finite a b") == 2

    def test_join_oracle_fallback_inconclusive(self, capsys):
        code, out, _ = run(capsys, "join", "sd:nonexample", "a", "b", "--radius", "3")
        assert code == 3


class TestScanVerbs:
    def test_ball(self, capsys):
        code, out, _ = run(capsys, "ball", "scarparo", "--radius", "2", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["findings"][0]["size"] == 4

    def test_check_wql_clean(self, capsys):
        code, _, _ = run(capsys, "check-wql", "free:2", "--radius", "4")
        assert code == 0

    def test_check_wql_violation(self, capsys):
        code, out, _ = run(capsys, "check-wql", "sd:nonexample", "--radius", "4", "--json")
        assert code == 2
        report = json.loads(out)
        assert report["verdict"] == "violation"
        assert any(f["pair"] == ["a b s", "a s^2"] for f in report["findings"])

    def test_check_controlled_sigma(self, capsys):
        code, _, _ = run(capsys, "check-controlled", "bs:2,3", "--radius", "4")
        assert code == 0

    def test_check_controlled_lambda(self, capsys):
        code, _, _ = run(capsys, "check-controlled", "bs:2,-3", "--radius", "4", "--chain-depth", "6")
        assert code == 0

    def test_check_controlled_negative_control(self, capsys):
        code, out, _ = run(capsys, "check-controlled", "bs:1,-1", "--mode", "sigma", "--radius", "4", "--json")
        assert code == 2
        report = json.loads(out)
        assert any("sigma_coverage_failures" in f for f in report["findings"])

    def test_nica_verify(self, capsys):
        code, _, _ = run(capsys, "nica-verify", "free:2", "--radius", "4", "--safe-radius", "2")
        assert code == 0

    def test_nica_verify_sampled(self, capsys):
        code, _, _ = run(
            capsys, "nica-verify", "bs:1,2", "--radius", "5", "--safe-radius", "2",
            "--pairs", "sample:20", "--seed", "7",
        )
        assert code == 0

    def test_nica_verify_truncation_is_inconclusive(self, capsys):
        # At radius 6 some adjoints of bs:2,-3 shifts escape the ball; the
        # verb must refuse to certify rather than report a clean pass.
        code, _, _ = run(capsys, "nica-verify", "bs:2,-3", "--radius", "6", "--safe-radius", "3")
        assert code == 3
        code, _, _ = run(
            capsys, "nica-verify", "bs:2,-3", "--radius", "8", "--max-radius", "8", "--safe-radius", "3"
        )
        assert code == 0

    def test_demo_chain_pass(self, capsys):
        code, _, _ = run(capsys, "demo-chain", "bs:2,-3", "--n", "4")
        assert code == 0

    def test_demo_chain_divisible_case(self, capsys):
        code, out, _ = run(capsys, "demo-chain", "bs:1,-1", "--n", "4")
        assert code == 2 and "interpolants" in out

    def test_op_export(self, capsys):
        code, out, _ = run(capsys, "op", "free:2", "a", "--radius", "1", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["findings"][0]["basis"] == ["e", "a", "b"]
        assert report["findings"][0]["rows"] == [[0, 0, 0], [1, 0, 0], [0, 0, 0]]


class TestReports:
    def test_json_determinism(self, capsys):
        argv = ["check-wql", "sd:nonexample", "--radius", "4", "--json"]
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_findings_sorted(self, capsys):
        _, out, _ = run(capsys, "check-wql", "sd:nonexample", "--radius", "4", "--json")
        findings = json.loads(out)["findings"]
        assert findings == sorted(findings, key=lambda f: (f["pair"], f["upper_bounds"]))


class TestUsageErrors:
    def test_unknown_preset(self, capsys):
        code, _, err = run(capsys, "nf", "nosuch:9", "e")
        assert code == 64 and "unknown preset" in err

    def test_unknown_generator(self, capsys):
        code, _, err = run(capsys, "nf", "free:2", "q^2")
        assert code == 64 and "unknown generator" in err

    def test_malformed_exponent(self, capsys):
        code, _, err = run(capsys, "nf", "free:2", "a^x")
        assert code == 64

    def test_unknown_verb(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 64

    def test_radius_cap(self, capsys):
        code, _, err = run(capsys, "ball", "free:2", "--radius", "9")
        assert code == 64 and "exceeds cap" in err
        code, _, _ = run(capsys, "ball", "free:2", "--radius", "7", "--max-radius", "7")
        assert code == 0


class TestParseRoundTrips:
    def test_all_presets(self):
        for name in ACCEPTANCE_PRESETS + ("hnn+:x,y@x,y", "sd:perm3", "sd:nonexample", "graph:complete2"):
            pres = pres_of(name)
            for x in ball_of(name, 3):
                assert pres.parse(pres.canonical_str(x)) == x, name
