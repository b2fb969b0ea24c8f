"""Canonical report emission: versioned JSON documents and flat CSV rows.

JSON output is deterministic (sorted keys, fixed separators) so identical runs
are byte-identical regardless of worker count.
"""

from __future__ import annotations

import csv
import io
import json

SCHEMA = "circlezero/1"


def json_document(kind: str, items: list[dict], meta: dict | None = None) -> str:
    doc = {"schema": SCHEMA, "kind": kind, "items": items}
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


VERIFY_COLUMNS = ["family", "k", "method", "zeros_on_circle", "degree_nontrivial",
                  "origin_zeros", "max_mod_dev_mid", "max_mod_dev_rad",
                  "min_root_sep_mid", "min_root_sep_rad", "certified", "verdict"]

CRITERIA_COLUMNS = ["family", "k", "criterion", "c_mid", "c_rad",
                    "margin_mid", "margin_rad", "holds", "exact"]


def csv_text(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore",
                            lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def table_text(columns: list[str], rows: list[dict]) -> str:
    cells = [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) if cells else len(c)
              for i, c in enumerate(columns)]
    def fmt(vals):
        return "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()
    lines = [fmt(columns)]
    lines += [fmt(row) for row in cells]
    return "\n".join(lines) + "\n"
