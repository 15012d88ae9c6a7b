#!/usr/bin/env python3
"""Smoke test for the hyperell_py extension module.

Builds the cdylib with cargo, copies it next to this script under the
importable name, and runs a few end-to-end checks.
"""

import json
import pathlib
import shutil
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_extension() -> pathlib.Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "hyperell-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "libhyperell_py.so"
    target = pathlib.Path(__file__).resolve().parent / "hyperell_py.so"
    shutil.copyfile(built, target)
    return target


def main() -> int:
    build_extension()
    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))
    import hyperell_py

    failures = 0

    def check(name, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1

    k4 = {
        "vertices": [{"id": f"v{i}"} for i in range(1, 5)],
        "edges": [
            {"id": "a", "ends": ["v1", "v2"]},
            {"id": "b", "ends": ["v1", "v3"]},
            {"id": "c", "ends": ["v1", "v4"]},
            {"id": "d", "ends": ["v2", "v3"]},
            {"id": "e", "ends": ["v2", "v4"]},
            {"id": "f", "ends": ["v3", "v4"]},
        ],
    }
    banana = {
        "vertices": [{"id": "u"}, {"id": "v"}],
        "edges": [
            {"id": f"e{i}", "ends": ["u", "v"], "length": "1"} for i in range(1, 5)
        ],
    }

    m = hyperell_py.Model.from_json(json.dumps(k4))
    check("K4 has genus 3", m.genus() == 3)
    decision = json.loads(m.is_hyperelliptic())
    check("K4 is not hyperelliptic", decision["hyperelliptic"] is False)
    check("K4 rank oracle agrees", m.is_hyperelliptic_by_rank() is False)
    canonical = json.loads(m.is_hyperelliptic())
    check(
        "K4 canonical divisor has rank 2",
        m.rank(json.dumps({"chips": {f"v{i}": 1 for i in range(1, 5)}})) == 2,
    )
    del canonical

    b = hyperell_py.Model.from_json(json.dumps(banana))
    bd = json.loads(b.is_hyperelliptic())
    check("banana is hyperelliptic", bd["hyperelliptic"] is True)
    check("banana rank oracle agrees", b.is_hyperelliptic_by_rank() is True)

    h23 = json.loads(hyperell_py.moduli(3, True))
    check(
        "H2(3) f-vector is (1,2,2,3,2,1)",
        h23["f_vector"] == [1, 2, 2, 3, 2, 1] and h23["n_cells"] == 11,
    )
    h3 = json.loads(hyperell_py.moduli(3, False))
    check(
        "H(3) f-vector is (1,3,6,11,9,5,1)",
        h3["f_vector"] == [1, 3, 6, 11, 9, 5, 1] and h3["n_cells"] == 36,
    )

    lad = json.loads(hyperell_py.ladders(5))
    check("genus 5 has 2 ladders", lad["count"] == 2)

    counts = json.loads(hyperell_py.newton_counts(3))
    check(
        "genus-3 census counts are 495/240/28",
        (counts["neither"], counts["one"], counts["both"]) == (495, 240, 28),
    )

    cert = json.loads(hyperell_py.newton_certify(3, 5, 17))
    check(
        "all genus-3 members certify as standard ladders",
        cert["all_standard_ladders"] and cert["all_opposite_sides_equal"],
    )

    print(f"\n{('OK' if failures == 0 else 'FAILURES: %d' % failures)}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
