"""CSV and JSON serialisation for grids, error tables, samples and check results."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1


def fmt(x) -> str:
    return format(float(x), ".17g")


def fmt_complex(z) -> str:
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}i"


def _jsonable(obj):
    if isinstance(obj, complex):
        return fmt_complex(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def dump_json(obj: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **_jsonable(obj)}, indent=2, sort_keys=False)


def write_json(path, obj: dict):
    Path(path).write_text(dump_json(obj) + "\n")


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def kernel_grid_rows(grid):
    nodes = grid.nodes
    for i in range(grid.steps_re):
        for k in range(grid.steps_im):
            w, v = nodes[i, k], grid.values[i, k]
            yield [fmt(w.real), fmt(w.imag), fmt(v.real), fmt(v.imag), fmt(abs(v))]


def write_kernel_grid_csv(path, grid):
    _write_rows(path, ["re_w", "im_w", "re_k", "im_k", "abs_k"], kernel_grid_rows(grid))


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_error_table(path, rows):
    """Write ``alpha,n,r_sup`` rows plus a JSON sidecar (same stem) describing the sample."""
    path = Path(path)
    _write_rows(path, ["alpha", "n", "r_sup"], ([fmt(r.alpha), r.n, fmt(r.r_sup)] for r in rows))
    sidecar = path.with_suffix(".json")
    write_json(sidecar, {
        "sample": rows[0].grid_spec if rows else None,
        "rows": [
            {"alpha": r.alpha, "n": r.n, "r_sup": r.r_sup, "argmax_z": r.argmax_z, "argmax_w": r.argmax_w}
            for r in rows
        ],
    })
    return sidecar


def write_sample_csv(path, sample):
    header = ["index", "modulus"] + (["angle"] if sample.angles is not None else [])
    def rows():
        for i, m in enumerate(sample.moduli):
            row = [i, fmt(m)]
            if sample.angles is not None:
                row.append(fmt(sample.angles[i]))
            yield row
    _write_rows(path, header, rows())


def write_density_csv(path, radii, values):
    _write_rows(path, ["r", "density"], ([fmt(r), fmt(v)] for r, v in zip(radii, values)))
