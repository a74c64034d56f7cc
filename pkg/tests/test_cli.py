import json

import pytest

import cli
from cli import RunSpec, run


def test_build_config_counts():
    code, report = run(RunSpec("build-config", N=2, n=5, field="prime:11"))
    assert code == 0
    assert report["schema"] == 1
    assert report["observed"] == "pass"
    assert report["result"]["counts"]["primes"] == 28


def test_check_symbolic_passes():
    code, report = run(RunSpec("check-symbolic", N=2, n=3, m=3, field="prime:7", expect="pass"))
    assert code == 0
    rows = report["result"]["rows"]
    assert len(rows) == 12
    assert all(row["order"] >= 3 for row in rows)


def test_check_symbolic_failure_exit_code():
    code, report = run(RunSpec("check-symbolic", N=2, n=3, m=4, field="prime:7"))
    assert code == 1
    assert report["observed"] == "fail"


def test_check_symbolic_custom_polynomial():
    code, report = run(RunSpec("check-symbolic", N=2, n=3, m=1, field="prime:7", poly="x0*x1*x2"))
    assert report["observed"] == "fail"
    code, report = run(RunSpec("check-symbolic", N=2, n=3, m=1, field="prime:7", poly="x0 +"))
    assert code == 2


def test_expectation_mismatch():
    code, report = run(RunSpec("check-ordinary", N=2, n=3, r=2, field="prime:7", expect="containment"))
    assert code == 1
    assert report["observed"] == "noncontainment"


def test_false_verdict_without_expectation_is_success():
    code, report = run(RunSpec("check-ordinary", N=2, n=3, r=2, field="prime:7"))
    assert code == 0
    assert report["result"]["verdict"] == "noncontainment"


@pytest.mark.parametrize("job", [
    RunSpec("certify-chain", n=3),
    RunSpec("check-containment", m=3),
    RunSpec("build-config", field="prime:7", n=5),
    RunSpec("build-config", field="reals"),
    RunSpec("build-config", max_degree=0),
    RunSpec("build-config", N=1),
    RunSpec("frobnicate"),
    RunSpec("build-config", expect="maybe"),
])
def test_usage_errors(job):
    code, report = run(job)
    assert code == 2
    assert "error" in report


def test_resource_abort_exit_code():
    code, report = run(RunSpec("check-ordinary", N=2, n=3, r=2, field="prime:7", max_basis=2))
    assert code == 3
    assert report["error"].startswith("resource limit")


def test_certificate_failure_exit_code(monkeypatch):
    def broken(*args, **kwargs):
        raise cli.CertificateError("level 3: corrupted")

    monkeypatch.setattr(cli, "verify_chain", broken)
    code, report = run(RunSpec("certify-chain", N_max=3, n=3, field="prime:7"))
    assert code == 4


def test_chain_cli_json_is_deterministic(tmp_path):
    outputs = []
    for k in range(2):
        out = tmp_path / f"chain{k}.json"
        code = cli.main([
            "certify-chain", "--N-max", "4", "--n", "3", "--field", "prime:31",
            "--expect", "noncontainment", "--no-timing", "--format", "json", "--output", str(out),
        ])
        assert code == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    report = json.loads(outputs[0])
    assert report["result"]["levels"] == 3
    assert all(r["verdict"] == "noncontainment" for r in report["result"]["reports"])
    assert "elapsed" not in json.dumps(report)


def test_text_output(capsys):
    code = cli.main(["build-config", "--N", "2", "--n", "3", "--field", "prime:7"])
    assert code == 0
    out = capsys.readouterr().out
    assert "primes: 12 (J=9, C=3); expected 12" in out


def test_env_defaults(monkeypatch):
    monkeypatch.setenv("FERMAT_FIELD", "prime:13")
    code, report = run(RunSpec("build-config", N=2, n=4))
    assert code == 0
    assert report["params"]["field"] == "prime:13"
    assert report["result"]["field"]["p"] == 13


def test_argparse_rejects_unknown_command():
    with pytest.raises(SystemExit) as exc:
        cli.main(["nope"])
    assert exc.value.code == 2
