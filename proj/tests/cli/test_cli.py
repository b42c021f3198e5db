"""End-to-end checks of the bdfeas command-line tool.

usage: test_cli.py <bdfeas binary> <schema dir> <data dir>
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema
from referencing import Registry, Resource

BIN, SCHEMAS, DATA = sys.argv[1:4]
del sys.argv[1:4]


def load_schema(name):
    with open(os.path.join(SCHEMAS, name)) as f:
        return json.load(f)


REGISTRY = Registry().with_resources(
    (name, Resource.from_contents(load_schema(name)))
    for name in os.listdir(SCHEMAS)
    if name.endswith(".json")
)


def validate(doc, schema_name):
    jsonschema.validate(doc, load_schema(schema_name), registry=REGISTRY)


def run(*args, check=True):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=240)
    if check and proc.returncode != 0:
        raise AssertionError(f"{args} exited {proc.returncode}: {proc.stderr}")
    return proc


def run_json(*args):
    return json.loads(run(*args).stdout)


class Bounds(unittest.TestCase):
    def test_default_csv(self):
        lines = run("bounds").stdout.strip().splitlines()
        self.assertEqual(lines[0], "dataset,log10_alphabet,log10_min_n,exponent")
        rows = {l.split(",")[0]: int(l.split(",")[3]) for l in lines[1:]}
        self.assertEqual(rows["CIFAR10"], 3697)
        self.assertEqual(
            list(rows.values()), [369904, 181252, 3697, 942, 116, 9, 5, 1]
        )

    def test_alpha_half_all_zero(self):
        rows = run_json("bounds", "--alpha", "0.5", "--format", "json")
        self.assertTrue(all(r["exponent"] == 0 for r in rows))
        self.assertTrue(all(r["log10_min_n"] is None for r in rows))

    def test_json_schema_and_catalog_file(self):
        rows = run_json("bounds", "--format", "json")
        validate(rows, "bounds.schema.json")
        with open(os.path.join(DATA, "catalog.json")) as f:
            validate(json.load(f), "catalog.schema.json")
        from_file = run_json(
            "bounds", "--format", "json", "--catalog", os.path.join(DATA, "catalog.json")
        )
        self.assertEqual(rows, from_file)

    def test_unreadable_catalog(self):
        proc = run("bounds", "--catalog", "/nonexistent/catalog.json", check=False)
        self.assertNotEqual(proc.returncode, 0)
        self.assertIn("cannot read", proc.stderr)


class Risk(unittest.TestCase):
    def test_oracle_gap_within_ci(self):
        out = run_json("risk", "--detector", "np", "--oracle", "--trials", "20000", "--seed", "4")
        validate(out, "risk.schema.json")
        self.assertEqual(out["exact_np_risk"], 0.34375)
        self.assertLess(out["gap"], out["ci_width"])

    def test_deterministic(self):
        a = run("risk", "--detector", "type2-tv", "--k", "5", "--n", "12", "--seed", "9")
        b = run("risk", "--detector", "type2-tv", "--k", "5", "--n", "12", "--seed", "9")
        self.assertEqual(a.stdout, b.stdout)
        c = run("--threads", "3", "risk", "--detector", "type2-tv", "--k", "5", "--n", "12",
                "--seed", "9")
        self.assertEqual(a.stdout, c.stdout)

    def test_min_trials(self):
        self.assertEqual(run("risk", "--trials", "99", check=False).returncode, 2)

    def test_enumeration_cap(self):
        proc = run("risk", "--k", "10", "--n", "8", "--oracle", "--trials", "100", check=False)
        self.assertEqual(proc.returncode, 3)

    def test_pair_and_config_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            pair = os.path.join(tmp, "pair.json")
            with open(pair, "w") as f:
                json.dump({"p0": [0.5, 0.5], "pb": [1.0, 0.0], "gamma": 0.5, "beta": 0.5}, f)
            a = run_json("risk", "--pair", pair, "--seed", "2")
            b = run_json("risk", "--seed", "2")
            self.assertEqual(a["risk"], b["risk"])
            cfg = os.path.join(tmp, "cfg.json")
            with open(cfg, "w") as f:
                json.dump({"detector": "bayes-sample", "flavor": "ood", "k": 3, "n": 2,
                           "trials": 500, "seed": 1}, f)
            out = run_json("risk", "--config", cfg)
            validate(out, "risk.schema.json")
            with open(cfg, "w") as f:
                json.dump({"detector": "np", "flavor": "sbd"}, f)
            self.assertEqual(run("risk", "--config", cfg, check=False).returncode, 2)

    def test_out_file_dedup(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = os.path.join(tmp, "results.jsonl")
            run("--out", out, "risk", "--seed", "1")
            run("--out", out, "risk", "--seed", "1")
            run("--out", out, "risk", "--seed", "2")
            with open(out) as f:
                records = [json.loads(l) for l in f if l.strip()]
            self.assertEqual(len(records), 2)
            for r in records:
                validate(r, "output_record.schema.json")
                validate(r["payload"], "risk.schema.json")


class Toy(unittest.TestCase):
    def test_default_run_and_warning(self):
        proc = run("toy")
        self.assertIn("normalized", proc.stderr)
        out = json.loads(proc.stdout)
        validate(out, "toy.schema.json")
        self.assertAlmostEqual(out["mu"], 1.177, places=3)

    def test_ensemble_summary(self):
        out = run_json("toy", "--seeds", "100")
        self.assertEqual(len(out["runs"]), 100)
        self.assertGreater(out["summary"]["median_p_value"], 0.05)
        self.assertGreater(out["summary"]["median_attack_success_rate"], 0.9)

    def test_no_poison_baseline(self):
        out = run_json("toy", "--gamma", "0", "--seeds", "20")
        self.assertLess(out["summary"]["median_attack_success_rate"], 0.3)
        self.assertGreater(out["summary"]["median_clean_accuracy"], 0.99)

    def test_plots(self):
        with tempfile.TemporaryDirectory() as tmp:
            base = os.path.join(tmp, "fig.svg")
            run("toy", "--svg", base, "--csv", os.path.join(tmp, "fig.csv"))
            for name in ("fig-scatter.svg", "fig-histogram.svg",
                         "fig-scatter.csv", "fig-histogram.csv"):
                path = os.path.join(tmp, name)
                self.assertTrue(os.path.getsize(path) > 0, name)
            with open(os.path.join(tmp, "fig-scatter.svg")) as f:
                self.assertTrue(f.read().rstrip().endswith("</svg>"))

    def test_degenerate_direction(self):
        proc = run("toy", "--v", "1,1", check=False)
        self.assertEqual(proc.returncode, 2)
        self.assertIn("parallel", proc.stderr)


class Probe(unittest.TestCase):
    def test_floor_and_pass(self):
        out = run_json("probe", "--k", "100000", "--beta", "0.01", "--n", "20", "--gamma", "1")
        validate(out, "probe.schema.json")
        self.assertAlmostEqual(out["floor"], 0.331, places=2)
        self.assertEqual(out["floor_check"], "pass")

    def test_regime_error(self):
        proc = run("probe", "--k", "1000", "--n", "20", check=False)
        self.assertEqual(proc.returncode, 2)
        self.assertIn("must exceed", proc.stderr)

    def test_unknown_detector(self):
        self.assertEqual(run("probe", "--detector", "np", check=False).returncode, 2)


if __name__ == "__main__":
    unittest.main(verbosity=2)
