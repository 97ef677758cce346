"""Rebuild the table_q*.csv golden files from the naive oracle (not the package).

    python tests/golden/regenerate.py
"""

import math
import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

from oracles import naive_least_totient, trial_phi  # noqa: E402

for q in (3, 5, 7, 11):
    limit = 4 * q * q
    lines = ["# schema_version: 1", "q,a,n,phi_n,kind,limit"]
    ns = []
    for a in range(q):
        n = naive_least_totient(q, a, limit)
        ns.append(n)
        lines.append(f"{q},{a},{n},{trial_phi(n)},exact-minimum,{limit}")
    exp = math.log(max(ns)) / math.log(q)
    lines.append(f"# summary q={q} max_n={max(ns)} exponent={exp:.6f} unresolved=0")
    (HERE / f"table_q{q}.csv").write_text("\n".join(lines) + "\n")
