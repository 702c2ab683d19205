"""Experiment configs, dispatch and reports.

A config is a JSON object ``{"version": 1, "command": ..., "seed": ..., <params>}``;
each command admits a fixed set of parameter keys and anything else is
rejected.  Reports are written as ``report.json``, ``report.csv`` and
``determinism.sha256``, the hash covering the JSON minus its timestamp.
"""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .lambda_sets import ap_density, density_ratio, fejer_threshold, k_phi_lower, witness_ratio
from .littlewood_paley import rademacher_randomized_norm, square_function_ratio
from .luxemburg import luxemburg_norm
from .restriction import (
    _hypothesis_warnings,
    build_lambda_set,
    monte_carlo_K,
    random_subset,
    sample_restriction,
    selection_density,
)
from .torus import AllIntegers, FrequencySet, Squares, TrigPolynomial
from .young import (
    YoungFunction,
    check_delta2_nabla2,
    complementary,
    matuszewska_indices,
    power,
    zygmund,
)

__all__ = [
    "COMMANDS",
    "SCHEMA_VERSION",
    "ExperimentReport",
    "validate_config",
    "run",
    "resolve_threads",
    "parse_young",
    "parse_set",
    "parse_poly",
]

SCHEMA_VERSION = 1

_YOUNG = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"type": {"const": "power"}, "p": {"type": "number"}, "c": {"type": "number"}},
            "required": ["type", "p"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"type": {"const": "zygmund"}, "p": {"type": "number"}, "alpha": {"type": "number"}},
            "required": ["type", "p", "alpha"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"pieces": {"type": "array"}, "nice": {"type": "boolean"}},
            "required": ["pieces"],
            "additionalProperties": False,
        },
    ]
}

_PAIR = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}

_SET = {
    "type": "object",
    "properties": {
        "interval": _PAIR,
        "squares": _PAIR,
        "list": {"type": "array", "items": {"type": "integer"}},
        "file": {"type": "string"},
        "random_subset": {
            "type": "object",
            "properties": {"range": _PAIR, "size": {"type": "integer", "minimum": 0}},
            "required": ["range", "size"],
            "additionalProperties": False,
        },
    },
    "minProperties": 1,
    "maxProperties": 1,
    "additionalProperties": False,
}

_COEFF = {"oneOf": [{"type": "number"}, {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}]}

_POLY = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"freqs": {"type": "array", "items": {"type": "integer"}}, "coeffs": {"type": "array", "items": _COEFF}},
            "required": ["freqs", "coeffs"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"set": _SET, "normalize": {"type": "boolean"}},
            "required": ["set"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"random": {"type": "object", "properties": {"count": {"type": "integer", "minimum": 1}, "max_freq": {"type": "integer", "minimum": 1}}, "required": ["count", "max_freq"], "additionalProperties": False}},
            "required": ["random"],
            "additionalProperties": False,
        },
    ]
}

_POS_INT = {"type": "integer", "minimum": 1}
_INT_LIST = {"type": "array", "items": _POS_INT, "minItems": 1}
_NUM_LIST = {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1}

# command -> (properties, required)
COMMANDS = {
    "norm": ({"phi": _YOUNG, "f": _POLY, "M": _POS_INT}, ["phi", "f"]),
    "indices": ({"phi": _YOUNG, "u_max": {"type": "number"}}, ["phi"]),
    "conj": ({"phi": _YOUNG, "u": _NUM_LIST}, ["phi", "u"]),
    "knorm": ({"phi": _YOUNG, "set": _SET, "restarts": {"type": "integer", "minimum": 0}, "M": _POS_INT}, ["phi", "set"]),
    "density": ({"set": _SET, "N": _INT_LIST, "b_max": _POS_INT, "phi": _YOUNG}, ["set", "N"]),
    "fejer": ({"phi": _YOUNG, "N": {"oneOf": [_POS_INT, _INT_LIST]}}, ["phi", "N"]),
    "sample": ({"set": _SET, "delta": {"type": "number"}, "phi": _YOUNG}, ["set"]),
    "mc": (
        {"phi": _YOUNG, "phi0": _YOUNG, "set": _SET, "trials": _POS_INT, "restarts": {"type": "integer", "minimum": 0}},
        ["phi", "phi0", "set"],
    ),
    "build": (
        {
            "phi0": _YOUNG,
            "phi1": _YOUNG,
            "source": {"oneOf": [{"enum": ["integers", "squares"]}, _SET]},
            "r_range": _PAIR,
            "trials_per_shell": _POS_INT,
            "restarts": {"type": "integer", "minimum": 0},
        },
        ["phi0", "phi1", "r_range"],
    ),
    "lp": ({"phi": _YOUNG, "f": _POLY, "t_samples": _POS_INT}, ["phi", "f"]),
    "witness": ({"phi1": _YOUNG, "phi2": _YOUNG, "r_range": _PAIR}, ["phi1", "phi2", "r_range"]),
    "accept": ({"suite": {"type": "string"}}, []),
}


def _schema(command: str) -> dict:
    props, required = COMMANDS[command]
    return {
        "type": "object",
        "properties": {
            "version": {"const": SCHEMA_VERSION},
            "command": {"const": command},
            "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
            **props,
        },
        "required": ["command", *required],
        "additionalProperties": False,
    }


def validate_config(config: dict) -> dict:
    """Validate against the command's schema; returns the config with defaults filled."""
    if not isinstance(config, dict) or config.get("command") not in COMMANDS:
        raise ValueError(f"unknown or missing command; expected one of {sorted(COMMANDS)}")
    try:
        jsonschema.validate(config, _schema(config["command"]))
    except jsonschema.ValidationError as exc:
        raise ValueError(f"invalid config: {exc.message}") from None
    return {"version": SCHEMA_VERSION, "seed": 0, **config}


def parse_young(spec: dict) -> YoungFunction:
    if "pieces" in spec:
        return YoungFunction.from_dict(spec)
    if spec["type"] == "power":
        return power(spec["p"], spec.get("c", 1.0))
    return zygmund(spec["p"], spec["alpha"])


def parse_set(spec: dict, seed: int = 0) -> FrequencySet:
    if "interval" in spec:
        return FrequencySet.interval(*spec["interval"])
    if "squares" in spec:
        return Squares().restrict(*spec["squares"])
    if "list" in spec:
        return FrequencySet(spec["list"])
    if "random_subset" in spec:
        lo, hi = spec["random_subset"]["range"]
        return random_subset(lo, hi, spec["random_subset"]["size"], seed)
    return FrequencySet.from_json(Path(spec["file"]).read_text())


def random_poly(rng: np.random.Generator, max_freq: int) -> TrigPolynomial:
    """Random complex Gaussian coefficients on a random symmetric band ``|n| <= F``."""
    F = int(rng.integers(1, max_freq + 1))
    n = np.arange(-F, F + 1)
    return TrigPolynomial(n, rng.standard_normal(len(n)) + 1j * rng.standard_normal(len(n)))


def parse_poly(spec: dict, seed: int = 0) -> list:
    """A list of polynomials (one unless ``random`` is used)."""
    if "random" in spec:
        rng = np.random.default_rng(seed)
        return [random_poly(rng, spec["random"]["max_freq"]) for _ in range(spec["random"]["count"])]
    if "set" in spec:
        S = parse_set(spec["set"], seed)
        f = TrigPolynomial.on_set(S)
        if spec.get("normalize", False):
            f = f * (1.0 / np.sqrt(len(S)))
        return [f]
    coeffs = [complex(*c) if isinstance(c, list) else complex(c) for c in spec["coeffs"]]
    return [TrigPolynomial(spec["freqs"], coeffs)]


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


@dataclass
class ExperimentReport:
    config: dict
    rows: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    timestamp: str = ""

    def add(self, op: str, params: dict, values: dict, diagnostics: dict | None = None):
        self.rows.append({"op": op, "params": params, "values": values, "diagnostics": diagnostics or {}})

    def payload(self, with_timestamp: bool = True) -> dict:
        doc = {
            "code_version": __version__,
            "config": self.config,
            "seed": self.config.get("seed", 0),
            "rows": self.rows,
            "warnings": self.warnings,
        }
        if with_timestamp:
            doc["timestamp"] = self.timestamp
        return _jsonable(doc)

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, indent=1)

    def determinism_hash(self) -> str:
        text = json.dumps(self.payload(with_timestamp=False), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["op", "params", "key", "value"])
        for row in self.rows:
            params = json.dumps(_jsonable(row["params"]), sort_keys=True)
            for key, val in list(row["values"].items()) + [("diag." + k, v) for k, v in row["diagnostics"].items()]:
                val = _jsonable(val)
                w.writerow([row["op"], params, key, val if np.isscalar(val) else json.dumps(val)])
        return buf.getvalue()

    def write(self, out_dir) -> Path:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(self.to_json() + "\n")
        (out / "report.csv").write_text(self.to_csv())
        (out / "determinism.sha256").write_text(self.determinism_hash() + "\n")
        return out


def resolve_threads(threads: int | None) -> int:
    """Explicit value, else ``ORLICZ_THREADS``, else 1."""
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("ORLICZ_THREADS")
    return max(1, int(env)) if env else 1


def _cmd_norm(cfg, rep, threads):
    phi = parse_young(cfg["phi"])
    for i, f in enumerate(parse_poly(cfg["f"], cfg["seed"])):
        res = luxemburg_norm(phi, f, cfg.get("M"))
        rep.add("norm", {"index": i}, {"value": res.value}, {"modular": res.modular_at_value, "grid": res.grid_size})


def _cmd_indices(cfg, rep, threads):
    phi = parse_young(cfg["phi"])
    est = matuszewska_indices(phi, u_max=cfg.get("u_max", 1e8))
    d2, n2 = check_delta2_nabla2(phi)
    rep.add("indices", {"u_max": est.u_max}, {k: v for k, v in est._asdict().items()}, {"delta2": d2, "nabla2": n2})


def _cmd_conj(cfg, rep, threads):
    phi = parse_young(cfg["phi"])
    psi = complementary(phi)
    for u in cfg["u"]:
        prod = phi.inverse(u) * psi.inverse(u)
        rep.add("conj", {"u": u}, {"psi_u": float(psi(u)), "inverse_product": prod, "ratio": prod / u})


def _cmd_knorm(cfg, rep, threads):
    phi = parse_young(cfg["phi"])
    S = parse_set(cfg["set"], cfg["seed"])
    est = k_phi_lower(phi, S, restarts=cfg.get("restarts", 4), seed=cfg["seed"], M=cfg.get("M"))
    rep.add("knorm", {"size": len(S)}, {"lower_bound": est.lower_bound}, est.to_dict())


def _cmd_density(cfg, rep, threads):
    S = parse_set(cfg["set"], cfg["seed"])
    b_max = cfg.get("b_max", 64)
    phi = parse_young(cfg["phi"]) if "phi" in cfg else None
    ratios = dict(density_ratio(S, phi, cfg["N"])) if phi is not None else {}
    for N in cfg["N"]:
        vals = {"A_S": ap_density(S, N, b_max)}
        if phi is not None:
            vals["density_ratio"] = ratios[N]
        rep.add("density", {"N": N, "b_max": b_max}, vals)


def _cmd_fejer(cfg, rep, threads):
    phi = parse_young(cfg["phi"])
    Ns = cfg["N"] if isinstance(cfg["N"], list) else [cfg["N"]]
    N0, rows = fejer_threshold(phi, Ns)
    for N, lhs, rhs in rows:
        rep.add("fejer", {"N": N}, {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs})
    rep.add("fejer_threshold", {}, {"N0": N0})


def _cmd_sample(cfg, rep, threads):
    E = parse_set(cfg["set"], cfg["seed"])
    if "delta" in cfg:
        delta = cfg["delta"]
    elif "phi" in cfg:
        delta = selection_density(parse_young(cfg["phi"]), E)
    else:
        raise ValueError("sample needs delta or phi")
    J = sample_restriction(E, delta, cfg["seed"])
    rep.add("sample", {"delta": delta, "size_E": len(E)}, {"J": J.elems, "size": len(J)})


def _cmd_mc(cfg, rep, threads):
    phi, phi0 = parse_young(cfg["phi"]), parse_young(cfg["phi0"])
    rep.warnings.extend(_hypothesis_warnings(phi0, phi))
    E = parse_set(cfg["set"], cfg["seed"])
    st = monte_carlo_K(phi, phi0, E, trials=cfg.get("trials", 32), seed=cfg["seed"], restarts=cfg.get("restarts", 2), threads=threads)
    rep.add("mc", {"size_E": len(E), "trials": len(st.values)}, st.to_dict())


def _cmd_build(cfg, rep, threads):
    import warnings as _w

    phi0, phi1 = parse_young(cfg["phi0"]), parse_young(cfg["phi1"])
    src = cfg.get("source", "integers")
    if src == "integers":
        E = AllIntegers()
    elif src == "squares":
        E = Squares()
    else:
        E = parse_set(src, cfg["seed"])
    with _w.catch_warnings():
        _w.simplefilter("ignore")
        sc = build_lambda_set(
            phi0,
            phi1,
            E,
            tuple(cfg["r_range"]),
            trials_per_shell=cfg.get("trials_per_shell", 4),
            seed=cfg["seed"],
            restarts=cfg.get("restarts", 1),
            threads=threads,
        )
    rep.warnings.extend(w for w in sc.warnings if "clamped" not in w)
    for sh in sc.shells:
        rep.add("shell", {"r": sh.r}, {"S_r": sh.S_r.elems, "size": len(sh.S_r), "k_est": sh.k_est}, {"delta": sh.delta})
    Ns = [2**r for r in range(cfg["r_range"][0] + 1, cfg["r_range"][1] + 2)]
    for N, ratio in density_ratio(sc.S, phi1, Ns):
        rep.add("build_density", {"N": N}, {"count": sc.S.count_in(-N, N), "ratio": ratio})


def _cmd_lp(cfg, rep, threads):
    phi = parse_young(cfg["phi"])
    d2, n2 = check_delta2_nabla2(phi)
    if not (d2 and n2):
        rep.warnings.append("phi fails the Delta_2 / nabla_2 check")
    for i, f in enumerate(parse_poly(cfg["f"], cfg["seed"])):
        vals = {"square_function_ratio": square_function_ratio(phi, f)}
        if cfg.get("t_samples"):
            rr = rademacher_randomized_norm(phi, f, cfg["t_samples"], seed=[cfg["seed"], i])
            vals.update(randomized_max=rr["max"], randomized_ratio=rr["ratio"])
        rep.add("lp", {"index": i, "max_abs_freq": f.max_abs_freq}, vals)


def _cmd_witness(cfg, rep, threads):
    phi1, phi2 = parse_young(cfg["phi1"]), parse_young(cfg["phi2"])
    r_lo, r_hi = cfg["r_range"]
    for r in range(r_lo, r_hi + 1):
        N = 2**r
        size = int(np.ceil(phi1.inverse(float(N)) ** 2 - 1e-9))
        S_r = random_subset(N, 2 * N, size, np.random.SeedSequence(cfg["seed"], spawn_key=(r,)))
        rep.add(
            "witness",
            {"r": r, "size": size},
            {"ratio": witness_ratio(S_r, phi1, phi2, r), "inverse_gap": phi1.inverse(float(N)) / phi2.inverse(float(N))},
        )


def _cmd_accept(cfg, rep, threads):
    from .acceptance import run_suite

    results = run_suite(cfg.get("suite", "fast"), threads=threads)
    for res in results:
        rep.add("accept", {"criterion": res.number}, {"passed": res.passed, "name": res.name}, res.details)


_DISPATCH = {
    "norm": _cmd_norm,
    "indices": _cmd_indices,
    "conj": _cmd_conj,
    "knorm": _cmd_knorm,
    "density": _cmd_density,
    "fejer": _cmd_fejer,
    "sample": _cmd_sample,
    "mc": _cmd_mc,
    "build": _cmd_build,
    "lp": _cmd_lp,
    "witness": _cmd_witness,
    "accept": _cmd_accept,
}


def run(config: dict, out_dir=None, threads: int | None = None) -> ExperimentReport:
    """Validate, dispatch and (optionally) write the report files."""
    cfg = validate_config(config)
    rep = ExperimentReport(config=cfg, timestamp=_dt.datetime.now(_dt.timezone.utc).isoformat())
    _DISPATCH[cfg["command"]](cfg, rep, resolve_threads(threads))
    if out_dir is not None:
        rep.write(out_dir)
    return rep
