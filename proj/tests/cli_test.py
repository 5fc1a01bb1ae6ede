"""End-to-end checks of the qmob command-line tool."""

import json
import os
import subprocess
import sys

BIN = sys.argv[1]
CHECK = sys.argv[2]
SOURCE = sys.argv[3]


def run(*args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env)


def expect(cond, msg):
    if not cond:
        sys.exit("FAILED: " + msg)


def check_eval():
    p = run("eval", "--regular", "--a", "0.5", "--q", "0.3")
    expect(p.returncode == 0, p.stderr)
    value = json.loads(p.stdout)["value"]
    expect(abs(value[0] + 4.0 / 17.0) <= 1e-15 and value[1:] == [0, 0, 0], str(value))

    p = run("eval", "--regular", "--a", "0.5", "--q", "0.3", "--mode", "series")
    expect(abs(json.loads(p.stdout)["value"][0] + 4.0 / 17.0) <= 1e-12, p.stdout)

    p = run("eval", "--classical", "--matrix", os.path.join(SOURCE, "docs/examples/identity.json"),
            "--q", "[0.1,0.2,0.3,0.4]")
    expect(p.returncode == 0 and json.loads(p.stdout)["value"] == [0.1, 0.2, 0.3, 0.4], p.stdout + p.stderr)


def check_canonical():
    p = run("canonical", "--matrix", os.path.join(SOURCE, "docs/examples/identity.json"))
    expect(p.returncode == 0, p.stderr)
    out = json.loads(p.stdout)
    expect(out["a"] == [0, 0, 0, 0] and out["u"] == [1, 0, 0, 0] and out["consistency_defect"] == 0, p.stdout)


def check_jacobian():
    p = run("jacobian", "--a", "[0.3,-0.2,0.1,0.4]", "--u", "[0,0,1,0]")
    expect(p.returncode == 0, p.stderr)
    out = json.loads(p.stdout)
    expect(out["rank_total"] == 10 and out["rank_image"] == 7 and out["fd_vs_closed_rel"] <= 1e-5, p.stdout)


def check_counterexample():
    p = run("counterexample")
    expect(p.returncode == 0, p.stderr)
    expect(abs(json.loads(p.stdout)["residual"] - 0.10296177088441251) <= 1e-8, p.stdout)
    p = run("counterexample", "--u", "[1,0,0,0]")
    expect(json.loads(p.stdout)["residual"] <= 1e-8, p.stdout)


def check_input_errors():
    cases = [
        ["verify", "--bogus"],
        ["verify", "--trials", "0"],
        ["verify", "--tol", "nonexistent=1"],
        ["verify", "--suite", "nonexistent"],
        ["eval", "--regular", "--a", "0.5"],
        ["eval", "--regular", "--a", "0.99", "--q", "0.1"],
        ["eval", "--classical", "--matrix", "{\"m\": 3}", "--q", "0.1"],
        ["canonical", "--matrix", "{\"m\":[[[2,0,0,0],[0,0,0,0]],[[0,0,0,0],[1,0,0,0]]]}"],
        ["jacobian", "--a", "[0.95,0,0,0]"],
    ]
    for args in cases:
        p = run(*args)
        expect(p.returncode == 2, f"{args}: exit {p.returncode}")
    env = dict(os.environ, QMOB_SEED="not-a-number")
    expect(run("verify", "--trials", "1", env=env).returncode == 2, "bad QMOB_SEED")


def check_failures_exit():
    p = run("verify", "--trials", "10", "--suite", "quaternion", "--tol", "quaternion.assoc=0")
    expect(p.returncode == 1, f"exit {p.returncode}")
    expect(json.loads(p.stdout)["failed"] > 0, "no failures reported")
    expect(run("verify", "--trials", "10").returncode == 0, "default run failed")


def strip(report):
    for s in report["suites"]:
        s.pop("wall_time_s")
    return json.dumps(report, sort_keys=True)


def check_determinism():
    a = run("verify", "--trials", "20", "--seed", "17")
    b = run("verify", "--trials", "20", "--seed", "17")
    expect(a.returncode == 0 and b.returncode == 0, a.stderr + b.stderr)
    expect(strip(json.loads(a.stdout)) == strip(json.loads(b.stdout)), "reports differ")
    env = dict(os.environ, QMOB_SEED="17")
    c = run("verify", "--trials", "20", env=env)
    expect(strip(json.loads(c.stdout)) == strip(json.loads(a.stdout)), "QMOB_SEED not honoured")
    d = run("verify", "--trials", "20", "--seed", "18", env=env)
    expect(json.loads(d.stdout)["seed"] == 18, "flag does not override QMOB_SEED")


def check_schema():
    import jsonschema

    with open(os.path.join(SOURCE, "docs/report.schema.json")) as f:
        schema = json.load(f)
    for args in (["--trials", "5"], ["--trials", "5", "--tol", "quaternion.assoc=0", "--tol", "regular.cullen=0"]):
        p = run("verify", *args)
        jsonschema.validate(json.loads(p.stdout), schema)


CHECKS = {name[len("check_"):]: fn for name, fn in globals().items() if name.startswith("check_")}

if __name__ == "__main__":
    CHECKS[CHECK]()
    print("ok")
