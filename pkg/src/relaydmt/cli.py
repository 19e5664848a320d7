"""Command-line front end: figure experiments, config sweeps, DMT queries.

Subcommands: `figure` reruns a built-in experiment and writes one CSV,
`sweep` runs a user config file, `dmt` and `effectiveness` print analytic
results. All CSV output is deterministic: rerunning with the same inputs
and seed reproduces the file byte for byte, whatever --workers says.
"""

from __future__ import annotations

import argparse
import difflib
import math
import os
import sys
import tempfile
from dataclasses import dataclass, replace

from . import __version__
from .analyticdmt import (
    direct_halfduplex_dmt,
    effectiveness_dblast,
    effectiveness_fixed,
    effectiveness_stc,
    max_effective_transmit_antennas,
    mimo_dmt,
    stc_dmt,
)
from .channelmodel import (
    NetworkTopology,
    RateSpec,
    RelaySpec,
    path_gain_from_distance,
    snr_grid,
)
from .errors import ConfigurationError, NumericError, RelayDmtError
from .montecarlo import DEFAULT_TRIALS, ProtocolSpec, SCHEMES, run_sweep, sweep_pci

CSV_HEADER = "series,eta_db,value,ci_low,ci_high"
DMT_HEADER = "series,r,d"
ENV_OUT_DIR = "RELAYDMT_OUT"

_GRID_DEFAULT = (-10.0, 40.0, 2.0)


def _fmt(x: float) -> str:
    # 17 significant digits round-trip a float64 exactly.
    return "%.17g" % float(x)


# ---------------------------------------------------------------------------
# CSV emission and parsing


@dataclass(frozen=True)
class ParsedCsv:
    meta: tuple[str, ...]
    rows: tuple[tuple[str, float, float, float, float], ...]


def write_csv(path: str, meta: list[str], rows) -> None:
    """Atomically write metadata comments, the header, and data rows."""
    parts = [f"# {line}\n" for line in meta]
    parts.append(CSV_HEADER + "\n")
    for series, eta_db, value, lo, hi in rows:
        parts.append(f"{series},{_fmt(eta_db)},{_fmt(value)},{_fmt(lo)},{_fmt(hi)}\n")
    _replace_with(path, "".join(parts))


def _replace_with(path: str, text: str) -> None:
    # Same-directory temp file so os.replace stays atomic.
    parent = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_csv(path: str) -> ParsedCsv:
    """Parse a sweep CSV; re-emitting the result is byte-identical."""
    meta = []
    rows = []
    header_seen = False
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if line.startswith("#"):
                if header_seen:
                    raise ConfigurationError(f"{path}:{lineno}: comment after data")
                meta.append(line[2:] if line.startswith("# ") else line[1:])
                continue
            if not header_seen:
                if line != CSV_HEADER:
                    raise ConfigurationError(
                        f"{path}:{lineno}: expected header '{CSV_HEADER}', got '{line}'"
                    )
                header_seen = True
                continue
            fields = line.split(",")
            if len(fields) != 5:
                raise ConfigurationError(f"{path}:{lineno}: expected 5 fields, got {len(fields)}")
            try:
                rows.append(
                    (
                        fields[0],
                        float(fields[1]),
                        float(fields[2]),
                        float(fields[3]),
                        float(fields[4]),
                    )
                )
            except ValueError as exc:
                raise ConfigurationError(f"{path}:{lineno}: {exc}") from None
    if not header_seen:
        raise ConfigurationError(f"{path}: missing header row")
    return ParsedCsv(meta=tuple(meta), rows=tuple(rows))


def csv_series_names(parsed: ParsedCsv) -> list[str]:
    names: list[str] = []
    for row in parsed.rows:
        if row[0] not in names:
            names.append(row[0])
    return names


# ---------------------------------------------------------------------------
# experiment config files


_CONFIG_TYPES = {
    "scheme": str,
    "k": int,
    "n": int,
    "r": float,
    "g": float,
    "eta_start_db": float,
    "eta_stop_db": float,
    "eta_step_db": float,
    "trials": int,
    "seed": int,
    "cyclic_sets": int,
    "out": str,
}
_RELAY_TYPES = {
    "m": int,
    "mt": int,
    "mr": int,
    "phi_db": float,
    "distance": float,
    "gamma": float,
}
_CONFIG_SCHEMES = SCHEMES + ("pci",)


@dataclass(frozen=True)
class ExperimentConfig:
    """A fully resolved sweep description; every default made explicit."""

    scheme: str
    source_antennas: int
    dest_antennas: int
    relays: tuple[RelaySpec, ...]
    cyclic_sets: int | None
    multiplexing_gain: float
    array_gain: float
    eta_start_db: float
    eta_stop_db: float
    eta_step_db: float
    trials: int
    seed: int
    out: str | None

    def topology(self) -> NetworkTopology:
        return NetworkTopology(
            source_antennas=self.source_antennas,
            dest_antennas=self.dest_antennas,
            relays=self.relays,
        )

    def meta_lines(self) -> list[str]:
        lines = [
            f"relaydmt v{__version__}",
            f"scheme={self.scheme}",
            f"k={self.source_antennas}",
            f"n={self.dest_antennas}",
        ]
        for relay in self.relays:
            lines.append(
                f"relay m={relay.total_antennas} mt={relay.transmit_antennas} "
                f"mr={relay.receive_antennas} phi_db={_fmt(relay.phi_db)}"
            )
        if self.cyclic_sets is not None:
            lines.append(f"cyclic_sets={self.cyclic_sets}")
        lines += [
            f"r={_fmt(self.multiplexing_gain)}",
            f"g={_fmt(self.array_gain)}",
            f"eta_start_db={_fmt(self.eta_start_db)}",
            f"eta_stop_db={_fmt(self.eta_stop_db)}",
            f"eta_step_db={_fmt(self.eta_step_db)}",
            f"trials={self.trials}",
            f"seed={self.seed}",
        ]
        return lines


def _reject_key(where: str, key: str, known) -> ConfigurationError:
    hint = difflib.get_close_matches(key, list(known), n=1)
    extra = f" (did you mean '{hint[0]}'?)" if hint else ""
    return ConfigurationError(f"{where}: unknown key '{key}'{extra}")


def _convert(where: str, key: str, value: str, types) -> object:
    try:
        return types[key](value)
    except ValueError:
        raise ConfigurationError(
            f"{where}: key '{key}' needs a {types[key].__name__}, got '{value}'"
        ) from None


def _parse_relay(where: str, body: str) -> RelaySpec:
    values: dict[str, object] = {}
    for token in body.split():
        key, sep, raw = token.partition("=")
        if not sep:
            raise ConfigurationError(f"{where}: expected key=value in relay line, got '{token}'")
        if key not in _RELAY_TYPES:
            raise _reject_key(where, key, _RELAY_TYPES)
        if key in values:
            raise ConfigurationError(f"{where}: duplicate relay key '{key}'")
        values[key] = _convert(where, key, raw, _RELAY_TYPES)
    if "m" not in values:
        raise ConfigurationError(f"{where}: relay line needs m=<antennas>")
    m = int(values["m"])
    if "phi_db" in values and "distance" in values:
        raise ConfigurationError(f"{where}: give phi_db or distance+gamma, not both")
    if "distance" in values or "gamma" in values:
        if not ("distance" in values and "gamma" in values):
            raise ConfigurationError(f"{where}: distance and gamma go together")
        gain = path_gain_from_distance(float(values["distance"]), float(values["gamma"]))
        phi_db = 10.0 * math.log10(gain)
    else:
        phi_db = float(values.get("phi_db", 0.0))
    return RelaySpec(
        total_antennas=m,
        transmit_antennas=int(values.get("mt", m)),
        receive_antennas=int(values.get("mr", m)),
        phi_db=phi_db,
    )


def parse_config(text: str, name: str = "<config>") -> ExperimentConfig:
    """Parse flat key=value experiment text. Unknown keys are errors."""
    values: dict[str, object] = {}
    relays: list[RelaySpec] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"{name}:{lineno}"
        if line == "relay" or line.startswith("relay "):
            relays.append(_parse_relay(where, line[len("relay") :]))
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep:
            raise ConfigurationError(f"{where}: expected key=value, got '{line}'")
        if key not in _CONFIG_TYPES:
            raise _reject_key(where, key, list(_CONFIG_TYPES) + list(_RELAY_TYPES))
        if key in values:
            raise ConfigurationError(f"{where}: duplicate key '{key}'")
        values[key] = _convert(where, key, value, _CONFIG_TYPES)
    for required in ("scheme", "k", "n"):
        if required not in values:
            raise ConfigurationError(f"{name}: missing required key '{required}'")
    scheme = str(values["scheme"])
    if scheme not in _CONFIG_SCHEMES:
        raise ConfigurationError(
            f"{name}: unknown scheme '{scheme}'; expected one of {', '.join(_CONFIG_SCHEMES)}"
        )
    k = int(values["k"])
    n = int(values["n"])
    return ExperimentConfig(
        scheme=scheme,
        source_antennas=k,
        dest_antennas=n,
        relays=tuple(relays),
        cyclic_sets=int(values["cyclic_sets"]) if "cyclic_sets" in values else None,
        multiplexing_gain=float(values.get("r", 1.0)),
        array_gain=float(values["g"]) if "g" in values else float(k * n),
        eta_start_db=float(values.get("eta_start_db", _GRID_DEFAULT[0])),
        eta_stop_db=float(values.get("eta_stop_db", _GRID_DEFAULT[1])),
        eta_step_db=float(values.get("eta_step_db", _GRID_DEFAULT[2])),
        trials=int(values.get("trials", DEFAULT_TRIALS)),
        seed=int(values.get("seed", 0)),
        out=str(values["out"]) if "out" in values else None,
    )


# ---------------------------------------------------------------------------
# sweep execution shared by `sweep` and `figure`


def _sweep_rows(sweep, mapping: dict[str, str], grid) -> list[tuple]:
    rows = []
    for engine_name, csv_name in mapping.items():
        estimates = sweep.series(engine_name)
        for pt, est in zip(grid, estimates):
            rows.append((csv_name, pt.eta_db, est.p_hat, est.ci_low, est.ci_high))
    return rows


def run_config(config: ExperimentConfig, workers: int = 1):
    """Run the configured sweep; returns (sweep, grid)."""
    grid = snr_grid(config.eta_start_db, config.eta_stop_db, config.eta_step_db)
    topo = config.topology()
    if config.scheme == "pci":
        if config.cyclic_sets is not None:
            raise ConfigurationError("cyclic_sets does not apply to scheme 'pci'")
        sweep = sweep_pci(topo, grid, trials=config.trials, seed=config.seed)
    else:
        if config.scheme == "cyclic_adaptive" and config.cyclic_sets is None:
            raise ConfigurationError("scheme 'cyclic_adaptive' needs cyclic_sets")
        spec = ProtocolSpec(scheme=config.scheme, topology=topo, n_sets=config.cyclic_sets)
        rate = RateSpec(
            multiplexing_gain=config.multiplexing_gain, array_gain=config.array_gain
        )
        sweep = run_sweep(
            spec, rate, grid, trials=config.trials, seed=config.seed, workers=workers
        )
    return sweep, grid


def cmd_sweep(ns) -> int:
    try:
        with open(ns.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config: {exc}") from None
    config = parse_config(text, name=ns.config)
    if ns.trials is not None:
        config = replace(config, trials=ns.trials)
    if ns.seed is not None:
        config = replace(config, seed=ns.seed)
    sweep, grid = run_config(config, workers=ns.workers)
    mapping = {name: name for name in sweep.series_names}
    rows = _sweep_rows(sweep, mapping, grid)
    path = ns.out or config.out
    if path is None:
        path = os.path.join(_out_dir(None), f"sweep_{config.scheme}.csv")
    write_csv(path, config.meta_lines(), rows)
    print(path)
    return 0


# ---------------------------------------------------------------------------
# built-in figure experiments


def _relay(m: int, mt: int, phi_db: float) -> RelaySpec:
    return RelaySpec(total_antennas=m, transmit_antennas=mt, phi_db=phi_db)


def _series_meta(csv_name: str, scheme: str, topo: NetworkTopology, rate: RateSpec) -> str:
    relays = " ".join(
        f"(m={rl.total_antennas} mt={rl.transmit_antennas} mr={rl.receive_antennas} "
        f"phi_db={_fmt(rl.phi_db)})"
        for rl in topo.relays
    )
    return (
        f"series {csv_name}: scheme={scheme} k={topo.source_antennas} "
        f"n={topo.dest_antennas} relays=[{relays}] r={_fmt(rate.multiplexing_gain)} "
        f"g={_fmt(rate.array_gain)}"
    )


def _figure_2(grid, trials, seed, workers):
    """Decode-constraint probability and its threshold approximation, (2,2,4,2)."""
    # Every built-in figure is a 2-antenna source, 4-antenna destination
    # network, so the default rate normalizer is g = K N = 8 throughout.
    rate = RateSpec(multiplexing_gain=0.0, array_gain=8.0)
    meta, rows = [], []
    for phi in (10.0, 20.0, 30.0):
        topo = NetworkTopology(2, 4, (_relay(2, 2, phi),))
        sweep = run_sweep(
            ProtocolSpec(scheme="fixed_bound", topology=topo), rate, grid, trials, seed, workers
        )
        tag = f"phi{int(phi)}db"
        mapping = {"p_c": f"p_c_{tag}", "p_nu": f"p_nu_{tag}"}
        for name in mapping.values():
            meta.append(_series_meta(name, "fixed_bound", topo, rate))
        rows += _sweep_rows(sweep, mapping, grid)
    return meta, rows


def _figure_3(grid, trials, seed, workers):
    """Decode-constraint probability for the (2,3,4,1) topology."""
    rate = RateSpec(multiplexing_gain=0.0, array_gain=8.0)
    meta, rows = [], []
    for phi in (10.0, 20.0, 30.0):
        topo = NetworkTopology(2, 4, (_relay(3, 1, phi),))
        sweep = run_sweep(
            ProtocolSpec(scheme="fixed_bound", topology=topo), rate, grid, trials, seed, workers
        )
        mapping = {"p_c": f"p_c_phi{int(phi)}db"}
        meta.append(_series_meta(mapping["p_c"], "fixed_bound", topo, rate))
        rows += _sweep_rows(sweep, mapping, grid)
    return meta, rows


def _figure_4(grid, trials, seed, workers):
    """Adaptive outage and its decode-weighted bound at r = 2, (2,2,4,2)."""
    rate = RateSpec(multiplexing_gain=2.0, array_gain=8.0)
    meta, rows = [], []
    for phi, include_refs in ((20.0, True), (30.0, False)):
        topo = NetworkTopology(2, 4, (_relay(2, 2, phi),))
        sweep = run_sweep(
            ProtocolSpec(scheme="fixed_adaptive", topology=topo), rate, grid, trials, seed, workers
        )
        tag = f"phi{int(phi)}db"
        mapping = {}
        if include_refs:
            # Direct and composite statistics do not depend on phi.
            mapping["direct"] = "direct"
            mapping["composite"] = "composite"
        mapping["adaptive"] = f"adaptive_{tag}"
        mapping["bound"] = f"bound_{tag}"
        for name in mapping.values():
            meta.append(_series_meta(name, "fixed_adaptive", topo, rate))
        rows += _sweep_rows(sweep, mapping, grid)
    return meta, rows


def _figure_5(grid, trials, seed, workers):
    """Selection decode probability (two relays) next to the one-relay curve."""
    rate = RateSpec(multiplexing_gain=0.0, array_gain=8.0)
    meta, rows = [], []
    one = NetworkTopology(2, 4, (_relay(2, 2, 20.0),))
    sweep = run_sweep(
        ProtocolSpec(scheme="fixed_bound", topology=one), rate, grid, trials, seed, workers
    )
    meta.append(_series_meta("p_c_one_relay", "fixed_bound", one, rate))
    rows += _sweep_rows(sweep, {"p_c": "p_c_one_relay"}, grid)
    two = NetworkTopology(2, 4, (_relay(2, 2, 20.0), _relay(2, 2, 20.0)))
    sweep = run_sweep(
        ProtocolSpec(scheme="relay_selection", topology=two), rate, grid, trials, seed, workers
    )
    meta.append(_series_meta("p_c_ors_two_relay", "relay_selection", two, rate))
    rows += _sweep_rows(sweep, {"p_c_ors": "p_c_ors_two_relay"}, grid)
    return meta, rows


def _figure_6(grid, trials, seed, workers):
    """Relay-selection outage, one relay vs two, r = 2."""
    rate = RateSpec(multiplexing_gain=2.0, array_gain=8.0)
    meta, rows = [], []
    for count, name in ((1, "selection_one_relay"), (2, "selection_two_relay")):
        topo = NetworkTopology(2, 4, tuple(_relay(2, 2, 20.0) for _ in range(count)))
        sweep = run_sweep(
            ProtocolSpec(scheme="relay_selection", topology=topo), rate, grid, trials, seed, workers
        )
        meta.append(_series_meta(name, "relay_selection", topo, rate))
        rows += _sweep_rows(sweep, {"selection": name}, grid)
    return meta, rows


def _figure_7(grid, trials, seed, workers):
    """Decode-group bound weights for the two-relay (2,3,4,1) network."""
    rate = RateSpec(multiplexing_gain=0.0, array_gain=8.0)
    topo = NetworkTopology(2, 4, (_relay(3, 1, 20.0), _relay(3, 1, 20.0)))
    sweep = sweep_pci(topo, grid, trials=trials, seed=seed)
    mapping = {"p_c_1": "p_c_1", "p_c_2": "p_c_2"}
    meta = [_series_meta(name, "pci", topo, rate) for name in mapping.values()]
    return meta, _sweep_rows(sweep, mapping, grid)


def _figure_8(grid, trials, seed, workers):
    """Group-adaptive outage in the two-relay (2,3,4,1) network at r = 2.3."""
    rate = RateSpec(multiplexing_gain=2.3, array_gain=8.0)
    meta, rows = [], []
    two = NetworkTopology(2, 4, (_relay(3, 1, 20.0), _relay(3, 1, 20.0)))
    sweep = run_sweep(
        ProtocolSpec(scheme="multi_adaptive", topology=two), rate, grid, trials, seed, workers
    )
    mapping = {
        "multi_adaptive": "multi_adaptive",
        "composite_all": "composite_two_relay",
        "direct": "direct",
    }
    for name in mapping.values():
        meta.append(_series_meta(name, "multi_adaptive", two, rate))
    rows += _sweep_rows(sweep, mapping, grid)
    one = NetworkTopology(2, 4, (_relay(3, 1, 20.0),))
    sweep = run_sweep(
        ProtocolSpec(scheme="fixed_adaptive", topology=one), rate, grid, trials, seed, workers
    )
    meta.append(_series_meta("composite_one_relay", "fixed_adaptive", one, rate))
    rows += _sweep_rows(sweep, {"composite": "composite_one_relay"}, grid)
    return meta, rows


FIGURES = {
    2: _figure_2,
    3: _figure_3,
    4: _figure_4,
    5: _figure_5,
    6: _figure_6,
    7: _figure_7,
    8: _figure_8,
}


def _out_dir(flag: str | None) -> str:
    return flag or os.environ.get(ENV_OUT_DIR) or "."


def cmd_figure(ns) -> int:
    grid = snr_grid(ns.eta_start_db, ns.eta_stop_db, ns.eta_step_db)
    builder = FIGURES[ns.id]
    meta, rows = builder(grid, ns.trials, ns.seed, ns.workers)
    head = [
        f"relaydmt v{__version__}",
        f"figure={ns.id}",
        f"eta_start_db={_fmt(ns.eta_start_db)}",
        f"eta_stop_db={_fmt(ns.eta_stop_db)}",
        f"eta_step_db={_fmt(ns.eta_step_db)}",
        f"trials={ns.trials}",
        f"seed={ns.seed}",
    ]
    out_dir = _out_dir(ns.out)
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"figure{ns.id}.csv")
    write_csv(path, head + meta, rows)
    print(path)
    return 0


# ---------------------------------------------------------------------------
# analytic queries


def cmd_dmt(ns) -> int:
    wanted = {"mimo": 2, "stc": 3, "direct_hd": 2}[ns.kind]
    if len(ns.antennas) != wanted:
        print(f"error: dmt {ns.kind} takes {wanted} antenna counts", file=sys.stderr)
        return 2
    if ns.kind == "mimo":
        curve = mimo_dmt(*ns.antennas)
        label = "mimo_{}x{}".format(*ns.antennas)
    elif ns.kind == "stc":
        curve = stc_dmt(*ns.antennas)
        label = "stc_{}x{}x{}".format(*ns.antennas)
    else:
        curve = direct_halfduplex_dmt(*ns.antennas)
        label = "direct_hd_{}x{}".format(*ns.antennas)
    for r, d in curve.vertices:
        print(f"({_fmt(r)}, {_fmt(d)})")
    if ns.out:
        lines = [f"# relaydmt v{__version__}", f"# dmt kind={ns.kind} antennas={ns.antennas}"]
        lines.append(DMT_HEADER)
        for r, d in curve.vertices:
            lines.append(f"{label},{_fmt(r)},{_fmt(d)}")
        _replace_with(ns.out, "\n".join(lines) + "\n")
        print(ns.out)
    return 0


def cmd_effectiveness(ns) -> int:
    counts = ns.antennas
    if ns.scheme in ("fixed", "stc"):
        if len(counts) != 4:
            print("error: effectiveness fixed|stc takes K M N MT", file=sys.stderr)
            return 2
        k, m, n, mt = counts
        report = (effectiveness_fixed if ns.scheme == "fixed" else effectiveness_stc)(k, m, n, mt)
        threshold = max_effective_transmit_antennas(k, m)
    else:
        if len(counts) != 3:
            print("error: effectiveness dblast takes MT N MR", file=sys.stderr)
            return 2
        mt, n, m = counts
        report = effectiveness_dblast(mt, n, m)
        threshold = max_effective_transmit_antennas(1, m)
    omega = "none" if report.omega is None else "%g" % float(report.omega)
    flag = "yes" if report.effective else "no"
    print(
        f"omega={omega} effective={flag} max_gain={'%g' % report.max_gain_g} "
        f"max_effective_mt={threshold}"
    )
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaydmt",
        description="Outage sweeps and tradeoff curves for multi-antenna relay networks.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    fig = sub.add_parser("figure", help="run a built-in experiment, write one CSV")
    fig.add_argument("id", type=int, choices=sorted(FIGURES))
    fig.add_argument("--out", help=f"output directory (default ${ENV_OUT_DIR} or .)")
    fig.add_argument("--seed", type=int, default=0)
    fig.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    fig.add_argument("--workers", type=int, default=1)
    fig.add_argument("--eta-start-db", type=float, default=_GRID_DEFAULT[0])
    fig.add_argument("--eta-stop-db", type=float, default=_GRID_DEFAULT[1])
    fig.add_argument("--eta-step-db", type=float, default=_GRID_DEFAULT[2])
    fig.set_defaults(func=cmd_figure)

    swp = sub.add_parser("sweep", help="run a key=value config file, write a CSV")
    swp.add_argument("config")
    swp.add_argument("--out", help="output file (default from config or output dir)")
    swp.add_argument("--seed", type=int, default=None, help="override the config seed")
    swp.add_argument("--trials", type=int, default=None, help="override the config trials")
    swp.add_argument("--workers", type=int, default=1)
    swp.set_defaults(func=cmd_sweep)

    dmt = sub.add_parser("dmt", help="print analytic tradeoff vertices")
    dmt.add_argument("kind", choices=("mimo", "stc", "direct_hd"))
    dmt.add_argument("antennas", type=int, nargs="+")
    dmt.add_argument("--out", help="also write the vertices as CSV")
    dmt.set_defaults(func=cmd_dmt)

    eff = sub.add_parser("effectiveness", help="decode-constraint exponent and gain bound")
    eff.add_argument("scheme", choices=("fixed", "stc", "dblast"))
    eff.add_argument("antennas", type=int, nargs="+")
    eff.set_defaults(func=cmd_effectiveness)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return ns.func(ns)
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 4
    except RelayDmtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
