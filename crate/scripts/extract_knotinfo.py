#!/usr/bin/env python3
"""Extract DT codes of prime alternating knots from the KnotInfo database.

Usage: pip download database-knotinfo --no-deps; unpack the wheel, then
    python3 scripts/extract_knotinfo.py path/to/knotinfo_data_complete.csv data/knots MAX_N

Writes one `dt_NN.csv` file per crossing number with `name,dt-code` rows.
Hoste-Thistlethwaite names `11a_k` are rendered as `11_k`.
"""
import csv
import os
import sys

csv.field_size_limit(10**9)


def main(src, out_dir, max_n):
    rows = csv.reader(open(src), delimiter="|")
    header = next(rows)
    next(rows)  # display names
    col = {k: j for j, k in enumerate(header)}
    levels = {}
    for row in rows:
        if row[col["alternating"]] != "Y":
            continue
        n = int(row[col["crossing_number"]])
        if n < 3 or n > max_n:
            continue
        name = row[col["name"]].replace("a_", "_")
        dt = [int(x) for x in row[col["dt_notation"]].strip("[]() ").split(",")]
        # alternating diagrams carry uniform signs; a negated code is the mirror
        assert all(x > 0 for x in dt) or all(x < 0 for x in dt), name
        dt = [abs(x) for x in dt]
        assert all(x % 2 == 0 for x in dt), name
        levels.setdefault(n, []).append((name, dt))
    os.makedirs(out_dir, exist_ok=True)
    for n, knots in sorted(levels.items()):
        with open(os.path.join(out_dir, f"dt_{n:02}.csv"), "w") as f:
            f.write("# prime alternating knots, source: KnotInfo DT notation\n")
            for name, dt in knots:
                f.write(name + "," + ",".join(map(str, dt)) + "\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2], int(sys.argv[3]))
