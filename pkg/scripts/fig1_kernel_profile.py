"""Kernel magnitude |K_n(z, w)|/n around a fixed z, plus peak location and width.

Writes one grid CSV per (alpha, n) and a summary JSON.
"""

from dataclasses import dataclass
from pathlib import Path

from _config import parse_config
from normalens import EnsembleParams, io, kernel_grid


@dataclass(frozen=True)
class Config:
    alphas: tuple = (2.0, 4.0, 8.0)
    ns: tuple = (50, 200)
    z_re: float = 0.3
    z_im: float = 0.4
    half_width: float = 0.9
    steps: int = 181
    out_dir: str = "results/fig1"


def main(cfg: Config):
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    z = complex(cfg.z_re, cfg.z_im)
    bounds = (-cfg.half_width, cfg.half_width)
    summary = []
    for alpha in cfg.alphas:
        for n in cfg.ns:
            grid = kernel_grid(EnsembleParams(alpha, n), z, bounds, bounds, cfg.steps)
            io.write_kernel_grid_csv(out / f"grid_a{alpha:g}_n{n}.csv", grid)
            idx, w_peak, v_peak = grid.peak()
            summary.append({
                "alpha": alpha, "n": n, "peak_w": w_peak, "peak_abs": abs(v_peak),
                "peak_index": list(idx), "nearest_index_to_z": list(grid.nearest_index(z)),
                "half_max_width": grid.half_max_width(),
            })
            print(f"alpha={alpha:g} n={n}: peak at {w_peak:.3f}, width {grid.half_max_width():.3f}")
    io.write_json(out / "summary.json", {"z": z, "bounds": list(bounds), "runs": summary})


if __name__ == "__main__":
    main(parse_config(Config, __doc__.splitlines()[0]))
