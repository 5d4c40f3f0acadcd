"""JSON serialization of subbases and parsing of points/rationals."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Tuple

from . import space as space_mod
from .builder import BuildResult
from .space import SpaceModel, builtin_space, gray_subbase
from .subbase import Cut, DyadicSubbase, FunctionalSubbase


def parse_rational(text: str) -> Fraction:
    """Accept 'p/q' and decimal notation; decimals become exact rationals."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("cannot parse rational %r" % text) from exc


def parse_point(text: str):
    """Point syntax: 'x' or 'x,y' with rational/decimal coordinates; 'p'
    names the compactification point."""
    text = text.strip()
    if text == "p":
        return space_mod.POINT_AT_INFINITY
    return tuple(parse_rational(part) for part in text.split(","))


def space_to_json(M: SpaceModel) -> dict:
    return {"name": M.name, "resolution": str(M.resolution)}


def space_from_json(data: dict, file: str = None) -> SpaceModel:
    return builtin_space(data["name"], parse_rational(data["resolution"]),
                         file=file)


def subbase_to_json(S: DyadicSubbase, M: SpaceModel = None) -> dict:
    if isinstance(S, FunctionalSubbase) and S.exact_oracle is None:
        out = {
            "kind": "distance",
            "cuts": [{"center_index": c.center_index, "cut": str(c.c)}
                     for c in S.cuts],
        }
        if M is not None:
            out["space"] = space_to_json(M)
        return out
    raise ValueError("unsupported subbase type for serialization")


def gray_to_json(pairs: int) -> dict:
    return {"kind": "gray", "pairs": pairs}


def save_subbase(path: str, data: dict):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def load_subbase(path: str, M: SpaceModel = None,
                 space_file: str = None) -> Tuple[DyadicSubbase, Optional[SpaceModel]]:
    """Load a subbase JSON file; reconstruct its space when embedded."""
    with open(path) as fh:
        data = json.load(fh)
    kind = data.get("kind")
    if kind == "gray":
        return gray_subbase(int(data.get("pairs", 8))), M
    if kind == "distance":
        if M is None:
            if "space" not in data:
                raise ValueError("distance subbase needs a space "
                                 "(embedded or via --space)")
            M = space_from_json(data["space"], file=space_file)
        cuts = []
        for rec in data["cuts"]:
            idx = int(rec["center_index"])
            c = parse_rational(rec["cut"])
            center = M.sample_points[idx]
            cuts.append(Cut(f=(lambda x, p=center, MM=M: MM.metric(p, x)),
                            c=c, center_index=idx))
        return FunctionalSubbase(cuts, boundary_tol=1e-9), M
    raise ValueError("unknown subbase kind %r" % kind)


def built_subbase_json(result: BuildResult, M: SpaceModel) -> dict:
    return subbase_to_json(result.subbase, M)
