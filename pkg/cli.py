"""Batch front end.

Usage:
  python cli.py build-config --N 2 --n 5
  python cli.py verify-lemma1 --N 3 --n 3 --field prime:7
  python cli.py check-symbolic --N 2 --n 3 --m 3
  python cli.py check-ordinary --N 2 --n 3 --r 2 --field prime:31
  python cli.py check-containment --N 2 --n 3 --m 3 --r 2 --field prime:7
  python cli.py certify-chain --N-max 4 --n 3 --field cyclotomic --expect noncontainment

Exit codes: 0 ok, 1 check failed or expectation not met, 2 usage error,
3 resource limit hit, 4 certificate rejected. Cap defaults come from the
environment (see ``config.load_config``).
"""
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Tuple
import argparse
import json
import logging
import sys

from algebra.coeff import FieldSpec
from algebra.groebner import ResourceGuard, ResourceLimitExceeded
from algebra.multipoly import TermOrder, parse_poly
from config import load_config
from fermat.arrangement import build_config, expected_prime_count, verify_lemma1
from fermat.certify import CertificateError, check_containment, check_ordinary, verify_chain
from fermat.symbolic import symbolic_report
from utils.normalizers import normalize_expect, normalize_field, normalize_order
from utils.validators import is_positive, is_valid_expect, is_valid_field, is_valid_order

log = logging.getLogger(__name__)

SCHEMA = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_CERTIFICATE = 4

COMMANDS = (
    "build-config",
    "verify-lemma1",
    "check-symbolic",
    "check-ordinary",
    "check-containment",
    "certify-chain",
)

# parameters each command cannot run without
_REQUIRED = {
    "check-symbolic": ("m",),
    "check-ordinary": ("r",),
    "check-containment": ("m", "r"),
    "certify-chain": ("N_max",),
}


@dataclass
class RunSpec:
    command: str
    N: int = 2
    n: int = 3
    field: Optional[str] = None
    m: Optional[int] = None
    r: Optional[int] = None
    N_max: Optional[int] = None
    order: Optional[str] = None
    max_degree: Optional[int] = None
    max_basis: Optional[int] = None
    time_budget: Optional[float] = None
    output: Optional[str] = None
    format: str = "text"
    expect: Optional[str] = None
    timing: bool = True
    poly: Optional[str] = None

    @classmethod
    def from_dict(cls, data: Dict) -> "RunSpec":
        known = set(cls.__dataclass_fields__)
        unknown = sorted(k for k in data if k not in known)
        if unknown:
            raise ValueError(f"unknown run parameters: {', '.join(unknown)}")
        if "command" not in data:
            raise ValueError("command is required")
        return cls(**data)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}; choose from {', '.join(COMMANDS)}")
        for name in _REQUIRED.get(self.command, ()):
            if getattr(self, name) is None:
                raise ValueError(f"{self.command} needs --{name.replace('_', '-')}")
        for name in ("N", "n", "m", "r", "N_max"):
            value = getattr(self, name)
            if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
                raise ValueError(f"{name} must be an integer")
        for name in ("max_degree", "max_basis", "time_budget"):
            value = getattr(self, name)
            if value is not None and not is_positive(value):
                raise ValueError(f"{name.replace('_', '-')} must be positive")
        if self.field is not None and not is_valid_field(self.field):
            raise ValueError(f"unrecognized field {self.field!r}; use 'cyclotomic' or 'prime:p'")
        if self.order is not None and not is_valid_order(self.order):
            raise ValueError(f"unrecognized term order {self.order!r}")
        if not is_valid_expect(self.expect):
            raise ValueError(f"unrecognized expectation {self.expect!r}")
        if self.format not in ("text", "json"):
            raise ValueError("format must be text or json")


def _guard(job: RunSpec, cfg: Dict) -> ResourceGuard:
    return ResourceGuard(
        max_degree=int(job.max_degree or cfg["FERMAT_MAX_DEGREE"]),
        max_basis=int(job.max_basis or cfg["FERMAT_MAX_BASIS"]),
        time_budget=float(job.time_budget or cfg["FERMAT_TIME_BUDGET"]),
    )


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k != "elapsed"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def _execute(job: RunSpec, field: FieldSpec, order: TermOrder, guard: ResourceGuard) -> Tuple[Dict, str]:
    """Run one command; returns (result, observed outcome)."""
    cmd = job.command
    if cmd == "certify-chain":
        reports = verify_chain(job.N_max, job.n, field, guard, order)
        observed = "containment" if any(r.contained for r in reports) else "noncontainment"
        return {"levels": len(reports), "reports": [r.to_dict() for r in reports]}, observed

    cfg = build_config(job.N, job.n, field)
    if cmd == "build-config":
        result = cfg.to_dict()
        result["digest"] = cfg.digest()
        result["expected_primes"] = expected_prime_count(job.N, job.n)
        ok = len(cfg.primes) == result["expected_primes"]
        return result, "pass" if ok else "fail"
    if cmd == "verify-lemma1":
        report = verify_lemma1(cfg)
        return report.to_dict(), "pass" if report.passed else "fail"
    if cmd == "check-symbolic":
        f = parse_poly(job.poly, cfg.nvars, field) if job.poly else cfg.F
        report = symbolic_report(f, cfg, job.m)
        return report.to_dict(), "pass" if report.passed else "fail"
    if cmd == "check-ordinary":
        report = check_ordinary(cfg, job.r, guard, order)
        return report.to_dict(), report.verdict
    report = check_containment(cfg, job.m, job.r, guard, order)
    return report.to_dict(), report.verdict


def run(job: RunSpec) -> Tuple[int, Dict]:
    """Execute ``job``; returns the exit status and the report."""
    cfg = load_config()
    report: Dict = {"schema": SCHEMA, "command": job.command}
    try:
        job.validate()
        job.field = normalize_field(job.field or cfg["FERMAT_FIELD"])
        job.order = normalize_order(job.order or cfg["FERMAT_ORDER"])
        job.expect = normalize_expect(job.expect)
        field = FieldSpec.parse(job.field or "", job.n)
        order = TermOrder.parse(job.order)
        guard = _guard(job, cfg)
    except ValueError as exc:
        report["error"] = str(exc)
        return EXIT_USAGE, report

    report["params"] = {k: v for k, v in asdict(job).items() if k not in ("output", "format", "timing")}
    try:
        result, observed = _execute(job, field, order, guard)
    except ResourceLimitExceeded as exc:
        log.error("resource limit: %s", exc)
        report["error"] = f"resource limit: {exc}"
        return EXIT_RESOURCE, report
    except CertificateError as exc:
        log.error("certificate rejected: %s", exc)
        report["error"] = f"certificate rejected: {exc}"
        return EXIT_CERTIFICATE, report
    except ValueError as exc:
        report["error"] = str(exc)
        return EXIT_USAGE, report

    report["result"] = result if job.timing else _strip_timing(result)
    report["observed"] = observed
    report["expect"] = job.expect
    if job.expect is not None:
        code = EXIT_OK if observed == job.expect else EXIT_CHECK_FAILED
    else:
        code = EXIT_CHECK_FAILED if observed == "fail" else EXIT_OK
    return code, report


def _containment_lines(rep: Dict) -> List[str]:
    m = rep["m"] if rep["m"] is not None else "-"
    lines = [
        f"  (N,n)=({rep['N']},{rep['n']}) m={m} r={rep['r']}: {rep['verdict']} [{rep['method']}, {rep['grade']}]",
        f"    thresholds: e*r-(e-1)={rep['thresholds']['harbourne']} N*r={rep['thresholds']['els']}",
    ]
    if rep["thresholds"]["counterexample_to_codim_bound"]:
        lines.append("    counterexample to the codimension-2 bound")
    if rep.get("symbolic"):
        lines.append(f"    symbolic m={rep['symbolic']['m']}: {'pass' if rep['symbolic']['passed'] else 'fail'}")
    for note in rep.get("notes") or []:
        lines.append(f"    note: {note}")
    return lines


def render_text(report: Dict) -> str:
    lines = [f"command: {report['command']}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
        return "\n".join(lines) + "\n"
    p = report["params"]
    lines.append(f"N={p['N']} n={p['n']} field={p['field']} order={p['order']}")
    result = report["result"]
    cmd = report["command"]
    if cmd == "build-config":
        c = result["counts"]
        lines.append(f"primes: {c['primes']} (J={c['J']}, C={c['C']}); expected {result['expected_primes']}")
        lines.append(f"digest: {result['digest']}")
    elif cmd in ("verify-lemma1", "check-symbolic"):
        for row in result["rows"]:
            if cmd == "check-symbolic":
                lines.append(f"  {row['prime']:<18} order={row['order']} threshold={row['threshold']} {'ok' if row['pass'] else 'FAIL'}")
            else:
                lines.append(f"  {row['prime']:<18} factors={row['vanishing_factors']}/{row['expected']} {'ok' if row['ok'] else 'FAIL'}")
        if cmd == "verify-lemma1":
            lines.append(f"flats found: {result['flats_found']}; missing={result['missing']} extra={len(result['extra'])}")
    elif cmd == "certify-chain":
        for rep in result["reports"]:
            lines.extend(_containment_lines(rep))
    else:
        lines.extend(_containment_lines(result))
        if result.get("witness"):
            lines.append(f"    witness: {result['witness']}")
    lines.append(f"observed: {report['observed']}" + (f" (expected {report['expect']})" if report["expect"] else ""))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fermat", description="Containment checks for Fermat configurations")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--N", type=int, default=2, help="projective dimension (N >= 2)")
    p.add_argument("--n", type=int, default=3, help="root of unity order (n >= 3)")
    p.add_argument("--m", type=int, help="symbolic power index")
    p.add_argument("--r", type=int, help="ordinary power index")
    p.add_argument("--N-max", dest="N_max", type=int, help="top level for certify-chain")
    p.add_argument("--field", help="'cyclotomic' or 'prime:p' (default from FERMAT_FIELD)")
    p.add_argument("--order", help="grevlex, lex or block:k (default from FERMAT_ORDER)")
    p.add_argument("--poly", help="polynomial to test instead of F (check-symbolic)")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--max-basis", type=int)
    p.add_argument("--time-budget", type=float)
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--expect", help="containment, noncontainment, pass or fail")
    p.add_argument("--no-timing", dest="timing", action="store_false", help="omit timings from the report")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = load_config()
    logging.basicConfig(level=getattr(logging, cfg["FERMAT_LOG_LEVEL"], logging.INFO))
    job = RunSpec(**vars(args))
    code, report = run(job)
    if job.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        text = render_text(report)
    if job.output:
        with open(job.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code:
        log.info("exit status %d", code)
    return code


if __name__ == "__main__":
    sys.exit(main())
