"""Black-box checks of the srotto command line: exit codes, file contract, manifest, determinism."""

import csv
import hashlib
import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

SROTTO = str(Path(sys.argv[1]).resolve())
failures = []


def check(cond, what):
    print(("ok    " if cond else "FAIL  ") + what)
    if not cond:
        failures.append(what)


def run(*args, cwd):
    return subprocess.run([SROTTO, *args], cwd=cwd, capture_output=True, text=True)


def error_of(proc):
    try:
        return json.loads(proc.stderr.strip().splitlines()[-1])["error"]
    except (ValueError, IndexError, KeyError):
        return None


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    p = run("ignition", "--num-injections", "0", cwd=tmp)
    err = error_of(p)
    check(p.returncode == 2, "zero injections exits 2")
    check(err is not None and err["kind"] == "config" and err["exit_code"] == 2, "error JSON on stderr")

    p = run("ignition", "--no-such-flag", cwd=tmp)
    check(p.returncode == 2, "unknown flag exits 2")

    (tmp / "bad.json").write_text('{"physics": {"gg": 1}}')
    p = run("ignition", "--config", "bad.json", cwd=tmp)
    err = error_of(p)
    check(p.returncode == 2 and err is not None and "physics.gg" in err["message"], "unknown config key names its path")

    p = run("otto", "--print-config", "--g", "0.25", cwd=tmp)
    cfg = json.loads(p.stdout)
    check(p.returncode == 0 and cfg["physics"]["g"] == 0.25, "--print-config reflects overrides")
    check(cfg["protocol"]["num_injections"] == 250, "default injection count")
    check(not (tmp / "out").exists(), "--print-config writes nothing")

    outs = []
    for name in ("a", "b"):
        p = run("ignition", "--N", "2,3,4", "--num-injections", "3", "--output-dir", name, cwd=tmp)
        check(p.returncode == 0, f"ignition run {name} succeeds")
        outs.append(tmp / name)
    a, b = outs
    csvs = sorted(x.name for x in a.glob("ignition_N*.csv"))
    check(csvs == [f"ignition_N{n}_g0.19_k0.03_gam0.csv" for n in (2, 3, 4)], "one trajectory file per N")
    check((a / "ignition_summary.json").exists() and (a / "manifest_ignition.json").exists(), "summary and manifest")

    with open(a / csvs[0], newline="") as f:
        rows = list(csv.reader(f))
    check(rows[0] == ["t", "mean_n", "T_eff"], "trajectory header")
    check(float(rows[1][0]) == 0.0 and abs(float(rows[1][1]) - 0.156) < 1e-3, "first row is the initial thermal field")
    check(len(rows) == 1 + 3 * 10 + 1, "samples per cycle")

    manifest = json.loads((a / "manifest_ignition.json").read_text())
    listed = {f["path"]: f for f in manifest["files"]}
    check(set(listed) == {*csvs, "ignition_summary.json"}, "manifest lists every output")
    check(
        all(hashlib.sha256((a / n).read_bytes()).hexdigest() == f["sha256"] for n, f in listed.items()),
        "manifest digests match",
    )
    check(manifest["command"] == "ignition" and "config" in manifest, "manifest records command and config")

    check(all((a / n).read_bytes() == (b / n).read_bytes() for n in csvs), "reruns are byte-identical")

    p = run("cost", "--output-dir", "c", "--N", "2", "--work-output", "0.35", cwd=tmp)
    rep = json.loads((tmp / "c" / "cost_report.json").read_text())["reports"][0]
    check(p.returncode == 0 and abs(rep["pulse_energy_in_hbar_omega"] - math.pi**2 / 3) < 1e-12, "cost pulse energy")
    check(rep["ratio_defined"] and rep["cost_to_work_ratio"] > 1e3, "cost ratio with work output")

    p = run("cost", "--output-dir", "d", "--N", "2", cwd=tmp)
    rep = json.loads((tmp / "d" / "cost_report.json").read_text())["reports"][0]
    check(p.returncode == 0 and not rep["ratio_defined"], "no work output leaves the ratio undefined")

print(f"{len(failures)} failed")
sys.exit(1 if failures else 0)
