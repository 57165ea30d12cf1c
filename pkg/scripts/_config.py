"""Tiny helper: expose a dataclass config as argparse flags."""

import argparse
import dataclasses


def parse_config(cls, description):
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        if isinstance(default, tuple):
            kind = type(default[0])
            parser.add_argument(f"--{f.name.replace('_', '-')}", type=kind, nargs="+", default=default)
        else:
            parser.add_argument(f"--{f.name.replace('_', '-')}", type=type(default), default=default)
    ns = parser.parse_args()
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in vars(ns).items()})
