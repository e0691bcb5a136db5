"""Golden CLI invocations: (name, argv, expected exit code).

Every argv runs with ``tests/data`` as working directory; stdout is compared
byte for byte against ``tests/golden/<name>.out``.  Regenerate with
``python3 tests/cli_cases.py`` after an intentional output change.
"""

from __future__ import annotations

import os
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

CASES = [
    ("validate_antichain", ["validate", "antichain2.json"], 0),
    ("validate_empty", ["validate", "empty.json"], 0),
    ("validate_triangle", ["validate", "bad_triangle.json"], 2),
    ("validate_malformed", ["validate", "malformed.json"], 3),
    ("check_diamond", ["check", "diamond.json", "--complete", "--injective"], 0),
    ("check_antichain", ["check", "antichain2.json", "--complete"], 1),
    ("check_antichain_all", ["check", "antichain2.json"], 1),
    ("check_chain_convex", ["check", "chain_trop_two.json", "--convex"], 1),
    ("check_lawvere_injective", ["check", "two_points.json", "--injective"], 4),
    ("check_lawvere_convex", ["check", "two_points.json", "--convex", "--grid-den", "2"], 1),
    ("check_lawvere_no_grid", ["check", "two_points.json", "--convex"], 3),
    ("check_text", ["check", "diamond.json", "--format", "text"], 0),
    ("macneille_antichain", ["macneille", "antichain2.json"], 0),
    ("macneille_diamond", ["macneille", "diamond.json"], 0),
    ("macneille_empty", ["macneille", "empty.json"], 0),
    ("macneille_chain_trop", ["macneille", "chain_trop_two.json"], 0),
    ("macneille_dot", ["macneille", "antichain2.json", "--format", "dot"], 0),
    ("macneille_cap", ["macneille", "chain_trop_two.json", "--cap", "3"], 5),
    ("closure_member", ["closure", "member_pair.json"], 0),
    ("closure_balls", ["closure", "midpoint_balls.json"], 0),
    ("extend_antichain", ["extend", "extend_antichain.json"], 0),
    ("lawbook_bool2", ["lawbook", '{"kind": "bool2"}'], 0),
    ("lawbook_relations", ["lawbook", '{"kind": "relations", "size": 2}'], 0),
    ("lawbook_lawvere", ["lawbook", '{"kind": "lawvere_rat"}', "--samples", "500", "--trials", "20"], 0),
]


def run(argv: list[str], env: dict | None = None, cwd: Path = DATA) -> subprocess.CompletedProcess:
    full = dict(os.environ)
    full.pop("ENRIQ_CAP", None)
    full.update(env or {})
    return subprocess.run(
        [sys.executable, "-m", "enriq", *argv], cwd=cwd, env=full, capture_output=True, text=True
    )


if __name__ == "__main__":
    for name, argv, code in CASES:
        proc = run(argv)
        assert proc.returncode == code, (name, proc.returncode, proc.stderr)
        (GOLDEN / f"{name}.out").write_text(proc.stdout, encoding="utf-8")
        print(f"{name}: exit {proc.returncode}")
