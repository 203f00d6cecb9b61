#!/usr/bin/env python3
"""End-to-end checks for the v2vq command-line tool.

Usage: cli_test.py /path/to/v2vq
"""
import json
import csv as csvmod
import io
import math
import subprocess
import sys
import tempfile
import os

BIN = sys.argv[1]
FAILURES = []


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        raise AssertionError(
            f"{args}: exit {proc.returncode}, wanted {expect}\n"
            f"stdout:\n{proc.stdout}\nstderr:\n{proc.stderr}")
    return proc


def check(name, fn):
    try:
        fn()
        print(f"  ok: {name}")
    except Exception as exc:  # noqa: BLE001 - report and keep going
        FAILURES.append(name)
        print(f"FAIL: {name}: {exc}")


def fields(stdout):
    out = {}
    for line in stdout.splitlines():
        if "=" in line and not line.startswith("note"):
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def eval_defaults():
    proc = run("eval")
    vals = fields(proc.stdout)
    assert abs(float(vals["P"]) - 0.552235005374) < 1e-9, vals["P"]
    assert abs(float(vals["T_us"]) - 1516.03885252) < 1e-6, vals["T_us"]
    assert abs(float(vals["D"]) - 0.924198057374) < 1e-9, vals["D"]
    assert abs(float(vals["Q"]) - 0.738216531374) < 1e-9, vals["Q"]
    assert vals["hops"] == "20", vals["hops"]
    assert abs(float(vals["eta_db"]) - 5.88122695274) < 1e-9
    assert abs(float(vals["P_hop"]) - 0.880251584511) < 1e-9
    assert abs(float(vals["erlang_base"]) - 0.970747311923) < 1e-9


def eval_alpha_one():
    proc = run("eval", "--set", "alpha=1", "--set", "beta=0")
    vals = fields(proc.stdout)
    assert vals["Q"] == vals["P"], (vals["Q"], vals["P"])


def eval_default_note():
    with tempfile.NamedTemporaryFile("w", suffix=".cfg", delete=False) as f:
        f.write("density_per_m = 0.1\nhop_distance_m = 50\n")
        path = f.name
    try:
        proc = run("eval", "--config", path)
        assert "snr_threshold_db=10" in proc.stdout.replace(" ", ""), proc.stdout
    finally:
        os.unlink(path)


def eval_bad_inputs():
    run("eval", "--set", "warp_factor=9", expect=2)
    run("eval", "--set", "alpha=not_a_number", expect=2)
    run("eval", "--set", "alpha=0.7", "--set", "beta=0.7", expect=2)
    run("eval", "--set", "bandwidth_hz=-1", expect=2)


def simulate_requires_seed():
    run("simulate", expect=2)


def simulate_deterministic():
    a = run("simulate", "--seed", "42", "--trials", "2000")
    b = run("simulate", "--seed", "42", "--trials", "2000")
    assert a.stdout == b.stdout
    c = run("simulate", "--seed", "42", "--trials", "2000", "--threads", "1")
    d = run("simulate", "--seed", "42", "--trials", "2000", "--threads", "4")
    assert c.stdout == d.stdout == a.stdout


def simulate_insufficient():
    proc = run("simulate", "--seed", "1", "--trials", "50",
               "--set", "density_per_m=1e-9", expect=3)
    out = (proc.stdout + proc.stderr).lower()
    assert "no connected trials" in out, out
    assert "connectivity_hat = 0" in proc.stdout, proc.stdout


def sweep_csv():
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "sweep.csv")
        run("sweep", "--rho-min", "0.07", "--rho-max", "0.1",
            "--rho-step", "0.03", "--r-min", "20", "--r-max", "60",
            "--r-step", "20", "--out", out)
        with open(out) as f:
            lines = [l for l in f.read().splitlines() if not l.startswith("#")]
        assert lines[0] == "rho,r_m,alpha,beta,P,T_us,D,Q", lines[0]
        assert len(lines) == 1 + 2 * 3, lines
    run("sweep", "--engine", "mc", expect=2)  # seed required


def optimize_point():
    proc = run("optimize", "--set", "density_per_m=0.07")
    vals = fields(proc.stdout)
    assert vals["r_star_m"] == "14", vals
    assert abs(float(vals["q_star"]) - 0.842690706736) < 1e-9


def figure_csv():
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "fig3.csv")
        run("figure", "--figure", "3", "--out", out)
        with open(out) as f:
            text = f.read()
        rows = [r for r in csvmod.DictReader(
            io.StringIO("\n".join(l for l in text.splitlines()
                                  if not l.startswith("#"))))]
        rhos = {r["rho"] for r in rows}
        assert rhos == {"0.07", "0.1", "0.15"}, rhos
        assert len(rows) == 3 * 191
    run("figure", "--figure", "7", expect=2)


def eval_json_out():
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "eval.json")
        run("eval", "--format", "json", "--out", out)
        with open(out) as f:
            doc = json.load(f)
        assert doc["metadata"]["engine"] == "analytic"
        assert len(doc["rows"]) == 1
        assert math.isclose(doc["rows"][0]["Q"], 0.738216531374,
                            rel_tol=1e-9)


def compare_runs():
    proc = run("compare", "--seed", "7", "--trials", "500",
               "--rho-min", "0.1", "--rho-max", "0.1", "--rho-step", "0.01",
               "--r-min", "50", "--r-max", "50", "--r-step", "1")
    lines = [l for l in proc.stdout.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    assert header[:6] == ["rho", "r_m", "alpha", "beta", "P_ana", "P_mc"], header


def compare_equal_spacing():
    proc = run("compare", "--seed", "11", "--trials", "20000",
               "--placement", "equal_spacing",
               "--rho-min", "0.1", "--rho-max", "0.1", "--rho-step", "0.01",
               "--r-min", "100", "--r-max", "100", "--r-step", "1")
    lines = [l for l in proc.stdout.splitlines() if l and not l.startswith("#")]
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    dt = abs(float(row["dT_us"]))
    se = float(row["T_se_us"])
    assert dt <= 3.5 * se, (dt, se)


def version_flag():
    proc = run("--version")
    assert "0.1.0" in proc.stdout + proc.stderr


def main():
    checks = [
        ("eval prints the reference point", eval_defaults),
        ("alpha=1 collapses Q to P", eval_alpha_one),
        ("defaulted keys are noted", eval_default_note),
        ("bad inputs exit 2", eval_bad_inputs),
        ("simulate without seed exits 2", simulate_requires_seed),
        ("simulate is seed-deterministic", simulate_deterministic),
        ("impossible scenario exits 3", simulate_insufficient),
        ("sweep writes exact csv header", sweep_csv),
        ("optimize finds the frozen optimum", optimize_point),
        ("figure 3 exports three series", figure_csv),
        ("json export round-trips the quality", eval_json_out),
        ("compare emits the side-by-side table", compare_runs),
        ("compare matches closed-form delay", compare_equal_spacing),
        ("--version prints the version", version_flag),
    ]
    for name, fn in checks:
        check(name, fn)
    if FAILURES:
        print(f"{len(FAILURES)} cli check(s) failed")
        return 1
    print(f"all {len(checks)} cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
