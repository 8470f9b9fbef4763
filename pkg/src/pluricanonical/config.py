"""Model configuration files (YAML) and the built-in fixture library."""
from __future__ import annotations

import re
from importlib import resources
from math import gcd
from pathlib import Path

import yaml

from .curves import (
    ActionSpec,
    MarkedOrbit,
    ModelError,
    WeightedCurve,
    apply_basis_change,
    parse_polynomial,
)
from .cyclotomic import parse_cyclotomic
from .groups import AbelianGroup
from .pq import Exactness, Factor, ProductQuotientModel

__all__ = [
    "FORMAT_VERSION",
    "ConfigError",
    "BUILTIN_FIXTURES",
    "load_config",
    "model_from_config",
    "load_model",
    "fermat_config",
]

FORMAT_VERSION = 1
BUILTIN_FIXTURES = ("z6_cy3", "z8_fake_cy", "fermat_b3")


class ConfigError(ValueError):
    """Malformed or unreadable configuration."""


def _fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath("fixtures").joinpath(f"{name}.cfg").read_text("utf-8")


def load_config(source: str | Path) -> dict:
    """Read a config from a path or a built-in name such as ``z6_cy3`` or ``fermat_b5``."""
    src = str(source)
    m = re.fullmatch(r"fermat_b(\d+)", src)
    if m:
        return fermat_config(int(m.group(1)))
    if src in BUILTIN_FIXTURES:
        text = _fixture_text(src)
    else:
        try:
            text = Path(src).read_text("utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read {src}: {exc.strerror}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{src}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{src}: expected a mapping at top level")
    return data


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise ConfigError(f"{where}: missing '{key}'")
    return d[key]


def _int_list(v, where: str) -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
        raise ConfigError(f"{where}: expected a list of integers")
    return tuple(v)


def _curve(spec: dict, where: str) -> WeightedCurve:
    gens = _need(spec, "generators", where)
    try:
        names = tuple(str(n) for n, _ in gens)
        degrees = tuple(int(d) for _, d in gens)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: generators must be [name, degree] pairs") from exc
    trunc_spec = spec.get("truncation", {}) or {}
    unknown = set(trunc_spec) - set(names)
    if unknown:
        raise ConfigError(f"{where}: truncation for unknown generator {sorted(unknown)[0]}")
    text = str(_need(spec, "equation", where))
    return WeightedCurve(
        names=names,
        degrees=degrees,
        equation=parse_polynomial(text, names),
        kappa=int(_need(spec, "kappa", where)),
        genus=int(_need(spec, "genus", where)),
        truncation=tuple(trunc_spec.get(n) for n in names),
        equation_text=text,
    )


def _action(spec: dict, group: AbelianGroup, where: str) -> ActionSpec:
    weights = [list(_int_list(r, where)) for r in _need(spec, "weights", where)]
    twist = list(_int_list(spec.get("twist", [0] * group.rank), where))
    change = spec.get("basis_change")
    if change is not None:
        if len(set(group.orders)) != 1:
            raise ConfigError(f"{where}: basis_change needs all cyclic factors of equal order")
        weights, twist = apply_basis_change(group.orders[0], change, weights, twist)
    return ActionSpec(
        group=group,
        weights=tuple(tuple(r) for r in weights),
        twist=tuple(twist),
        denominator=int(spec.get("denominator", 1)),
    )


def _orbit(spec: dict, where: str) -> MarkedOrbit:
    name = str(_need(spec, "name", where))
    where = f"{where}, orbit {name}"
    points = tuple(
        tuple(parse_cyclotomic(str(c)) for c in p) for p in _need(spec, "points", where)
    )
    if not points:
        raise ConfigError(f"{where}: at least one representative point")
    return MarkedOrbit(
        name=name,
        points=points,
        stabilizer=_int_list(_need(spec, "stabilizer", where), where),
        stabilizer_order=int(_need(spec, "stabilizer_order", where)),
        rotation=int(_need(spec, "rotation", where)),
        orbit_size=int(_need(spec, "orbit_size", where)),
        orders=_int_list(_need(spec, "orders", where), where),
    )


def model_from_config(data: dict, validate: bool = True) -> ProductQuotientModel:
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise ConfigError(f"unsupported format_version {version!r}, expected {FORMAT_VERSION}")
    try:
        group = AbelianGroup(_int_list(_need(data, "group", "model"), "group"))
        factors = []
        for i, fs in enumerate(_need(data, "factors", "model")):
            where = f"factor {i + 1}"
            curve = _curve(_need(fs, "curve", where), where)
            action = _action(_need(fs, "action", where), group, where)
            orbits = tuple(_orbit(o, where) for o in fs.get("orbits", []))
            factors.append(Factor(curve, action, orbits))
        ex = data.get("exactness")
        exactness = None
        if ex:
            degs = ex.get("degrees", "all")
            exactness = Exactness(
                None if degs == "all" else frozenset(_int_list(degs, "exactness")), str(ex.get("note", ""))
            )
    except (KeyError, TypeError, AttributeError) as exc:
        raise ConfigError(f"malformed model: {exc!r}") from exc
    return ProductQuotientModel(group, factors, str(data.get("name", "")), exactness, validate=validate)


def load_model(source, validate: bool = True) -> ProductQuotientModel:
    return model_from_config(load_config(source), validate=validate)


def fermat_config(b: int) -> dict:
    """Square of the Fermat curve of degree b^2 with a (Z_n)^2 action twisted on the second factor."""
    if b < 3:
        raise ConfigError("the Fermat family needs b >= 3")
    n = b * b
    if gcd(n, 1 - n) != 1:
        raise ConfigError("1 - b^2 must be a unit modulo b^2")
    root = f"z({2 * n})"  # a root of x^n = -1
    names = ["x0", "x1", "x2"]
    curve = {
        "generators": [[x, 1] for x in names],
        "equation": f"x0^{n} + x1^{n} + x2^{n}",
        "kappa": n - 3,
        "genus": (n - 1) * (n - 2) // 2,
        "truncation": {"x2": n - 1},
    }
    geometric = {"weights": [[0, -1, 0], [0, 0, -1]], "twist": [-1, -1]}

    def orbits(g, h, k):
        def orb(name, point, stab, orders):
            return {
                "name": name,
                "points": [point],
                "stabilizer": list(stab),
                "stabilizer_order": n,
                "rotation": n - 1,
                "orbit_size": n,
                "orders": orders,
            }

        return [
            orb("fix_g", ["1", "0", root], g, [0, 1, 0]),
            orb("fix_h", ["1", root, "0"], h, [0, 0, 1]),
            orb("fix_k", ["0", "1", root], k, [1, 0, 0]),
        ]

    return {
        "format_version": FORMAT_VERSION,
        "name": f"fermat_b{b}",
        "group": [n, n],
        "exactness": {
            "degrees": [2],
            "note": "bicanonical invariants are spanned by monomials meeting the stalk conditions",
        },
        "factors": [
            {"curve": curve, "action": geometric, "orbits": orbits([1, 0], [0, 1], [n - 1, n - 1])},
            {
                "curve": curve,
                "action": dict(geometric, basis_change=[[1, b], [-b, -1]]),
                "orbits": orbits([1, b], [-b % n, n - 1], [b - 1, (1 - b) % n]),
            },
        ],
    }
