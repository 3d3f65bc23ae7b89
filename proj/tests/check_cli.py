#!/usr/bin/env python3
"""Exit codes, file round trips, caching and determinism of the CLI."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile

exe = sys.argv[1]
failures = 0


def run(*args, env=None):
    return subprocess.run([exe, *args], capture_output=True, text=True, env=env)


def check(cond, label):
    global failures
    print(("ok   " if cond else "FAIL ") + label)
    failures += not cond


def code(expected, *args, env=None):
    r = run(*args, env=env)
    check(r.returncode == expected, f"exit {expected}: {' '.join(args)} (got {r.returncode})")
    return r


with tempfile.TemporaryDirectory() as tmp:
    t = pathlib.Path(tmp)
    env = dict(os.environ, OMNI_CACHE_DIR=str(t / "cache"))

    # exit codes
    code(0, "construct", "--family", "l-star", "--m", "1", "-o", str(t / "l8.txt"))
    code(0, "certify", str(t / "l8.txt"), "--expect", "omniversal", env=env)
    code(1, "certify", "--group", "Z4", "--expect", "omniversal", env=env)
    code(0, "certify", "--group", "Z5", "--expect", "near-omniversal", "--mu", "4", env=env)
    code(1, "certify", "--group", "Z5", "--expect", "near-omniversal", "--mu", "3", env=env)
    code(2, "spectrum", "--bogus")
    code(2, "frobnicate")
    code(2, "spectrum", "--group", "Z99", "--no-cache")
    code(2, "groups", "classify", "--name", "Z17")
    code(2, "witness", "--family", "l-star", "--m", "1", "--length", "3", "-o", "-")
    code(3, "spectrum", "--group", "Z12", "--budget-nodes", "3", "--no-cache")
    code(1, "square", "validate", str(t / "missing.txt"))

    # construct round trip: the file reproduces the square byte for byte
    r = code(0, "construct", "--family", "l-star", "--m", "1", "-o", "-")
    check(r.stdout == (t / "l8.txt").read_text(), "construct to stdout matches the file")
    r = code(0, "square", "validate", str(t / "l8.txt"))
    h = run("construct", "--family", "l-star", "--m", "1", "-o", str(t / "again.txt")).stdout.strip()
    check(h in r.stdout, "validate reports the construct hash")
    spaced = "8\n" + "\n".join("  ".join(l.split()) + "  " for l in (t / "l8.txt").read_text().splitlines()[1:]) + "\n\n"
    (t / "spaced.txt").write_text(spaced)
    check(h in run("square", "validate", str(t / "spaced.txt")).stdout, "hash ignores whitespace")

    # spectrum strips and the cache
    r = code(0, "spectrum", str(t / "l8.txt"), env=env)
    check(r.stdout.splitlines()[0] == "4●5●6●7●8●", "L*_8 strip")
    check("verdict: omniversal" in r.stdout, "L*_8 verdict")
    entries = [e.name for e in (t / "cache").iterdir()]
    check(h.replace(":", "-") + ".exhaustive.json" in entries, "exhaustive cache entry written")
    code(0, "spectrum", str(t / "l8.txt"), "--json", str(t / "a.json"), env=env)
    code(0, "spectrum", str(t / "l8.txt"), "--json", str(t / "b.json"), env=env)
    a, b = (json.loads((t / n).read_text()) for n in ("a.json", "b.json"))
    for d in (a, b):
        del d["manifest"]
    check(a == b, "cached report identical modulo manifest")
    r = code(0, "spectrum", "--group", "Z7", "--no-cache")
    check(r.stdout.splitlines()[0] == "4○5●6○7●", "Z7 strip")
    code(3, "spectrum", "--group", "Z12", "--budget-nodes", "3", env=env)
    r = code(0, "spectrum", "--group", "Z12", "--budget-nodes", "100000000", env=env)
    check("?" not in r.stdout.splitlines()[0], "larger budget recomputes a timed-out entry")
    code(0, "spectrum", "--group", "Z7", "--svg", str(t / "z7.svg"), env=env)
    check((t / "z7.svg").read_text().count("<rect") == 4, "svg strip")

    # witnesses
    code(0, "witness", "--family", "m-star", "--m", "2", "--length", "7", "-o", str(t / "w.json"))
    w = json.loads((t / "w.json").read_text())
    check(w["length"] == 7 and len(w["triples"]) == 7, "m-star witness length")

    # groups
    r = code(0, "groups", "list", "--order", "16")
    check(len(r.stdout.splitlines()) == 14, "14 groups of order 16")
    code(0, "groups", "export", "--name", "Q8", "-o", str(t / "q8.txt"))
    check((t / "q8.txt").read_text().startswith("8\n"), "group export")
    r = code(0, "groups", "classify", "--name", "D8")
    check("near-omniversal mu=5" in r.stdout, "D8 classified")
    code(0, "groups", "classify-all", "--max-order", "8", "--jobs", "1", "--json", str(t / "j1.json"),
         "--md", str(t / "c.md"))
    code(0, "groups", "classify-all", "--max-order", "8", "--jobs", "2", "--json", str(t / "j2.json"))
    def untimed(doc):
        for g in doc["groups"]:
            for st in g["report"]["lengths"].values():
                st.pop("millis")
        return doc["groups"]

    j1, j2 = (untimed(json.loads((t / n).read_text())) for n in ("j1.json", "j2.json"))
    check(j1 == j2, "classify-all independent of --jobs")
    check("| D8 | 8 |" in (t / "c.md").read_text(), "markdown table")

    # extension and embedding
    r = code(0, "extend", "--group", "Z6", "--rows", "0,2", "--cols", "0,2,4", "--json")
    e = json.loads(r.stdout)
    check(e["subsquare"]["rows"] == [0, 2, 4], "extend finds the order-3 block")
    code(2, "extend", "--group", "Z6", "--rows", "0,x", "--cols", "0")
    (t / "r.txt").write_text("2 2\n0 1\n1 2\n")
    r = code(0, "embed-check", str(t / "r.txt"), "--order", "3")
    check(r.stdout.startswith("embeddable"), "Ryser example embeddable")
    (t / "bad.txt").write_text("2 2\n0 1\n1 0\n")
    r = code(1, "embed-check", str(t / "bad.txt"), "--order", "3")
    check(r.stdout.startswith("not embeddable"), "Ryser counting failure")

    # randomized sweeps are reproducible from the seed
    code(0, "conjecture41", "--trials", "30", "--seed", "9", "--order-max", "16", "-o", str(t / "c1.jsonl"))
    code(0, "conjecture41", "--trials", "30", "--seed", "9", "--order-max", "16", "-o", str(t / "c2.jsonl"))
    l1 = [json.loads(x) for x in (t / "c1.jsonl").read_text().splitlines()]
    l2 = [json.loads(x) for x in (t / "c2.jsonl").read_text().splitlines()]
    check(len(l1) >= 30 and l1 == l2, "conjecture41 log reproducible")

    # species census at order 4
    r = code(0, "square", "species", "--order", "4")
    check("2 species" in r.stdout, "order-4 species")

sys.exit(1 if failures else 0)
