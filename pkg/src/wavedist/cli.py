"""
Command line interface.

Subcommands::

    wavedist fit                 fit models to datasets, optional bootstrap
    wavedist eval                goodness of fit of fitted models
    wavedist plotdata            QQ, probability paper and tail density series
    wavedist simulate-recovery   Monte Carlo check of an estimator

Exit status is 0 when every requested job succeeded, 1 when some estimation
job failed, 2 for configuration errors and 3 for unreadable or empty input.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import logging
import os
import sys
import tempfile
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .bootstrap import BootstrapConfig, Estimator, bootstrap_se
from .distributions import FAMILIES, family_class
from .errors import ConfigError, FileFormatError, WavedistError
from .estimation import WeightScheme, fit_mle, fit_wls
from .gof import gof_report, probability_paper_series, qq_series, tail_density_series
from .ingest import DatasetSpec, load_dataset, load_dataset_spec

logger = logging.getLogger("wavedist")

EXIT_OK, EXIT_JOB_FAILED, EXIT_CONFIG, EXIT_INPUT = 0, 1, 2, 3

#: Models compared by default: (family, method).
DEFAULT_MODELS = (("translated-weibull", "mle"), ("exp-weibull", "mle"), ("exp-weibull", "wls"))


class InputError(WavedistError):
    pass


@dataclass
class RunConfig:
    datasets: dict[str, DatasetSpec] = field(default_factory=dict)
    models: list[tuple[str, str]] = field(default_factory=lambda: list(DEFAULT_MODELS))
    weight_exponent: float = 2
    bootstrap: int = 0
    seed: int = 0
    out: Path = Path(".")
    fmt: str = "csv"
    timestamp_header: bool = True
    workers: int = 1


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_table(path: Path, rows: list[dict], fmt: str = "csv", timestamp_header: bool = True) -> Path:
    """Write rows atomically as CSV or JSON lines; returns the final path."""
    path = Path(path).with_suffix(".csv" if fmt == "csv" else ".jsonl")
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = list(rows[0]) if rows else []
    for r in rows[1:]:
        columns.extend(k for k in r if k not in columns)
    lines = []
    stamp = f"wavedist {__version__} generated {_dt.datetime.now(_dt.timezone.utc).isoformat(timespec='seconds')}"
    if fmt == "csv":
        if timestamp_header:
            lines.append(f"# {stamp}")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows([_cell(r.get(c)) for c in columns] for r in rows)
        lines.extend(buf.getvalue().splitlines())
    else:
        if timestamp_header:
            lines.append(json.dumps({"_meta": stamp}))
        for r in rows:
            lines.append(json.dumps({c: _jsonable(r.get(c)) for c in columns}))
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)
    return path


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if np.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    return v


def read_table(path: Path) -> list[dict]:
    """Read a table written by :func:`write_table`."""
    path = Path(path)
    text = path.read_text(encoding="utf-8").splitlines()
    if path.suffix == ".jsonl":
        rows = [json.loads(line) for line in text if line.strip()]
        return [r for r in rows if "_meta" not in r]
    text = [line for line in text if line and not line.startswith("#")]
    if not text:
        return []
    return list(csv.DictReader(text))


# --------------------------------------------------------------------------
# jobs
# --------------------------------------------------------------------------


def _job_seed(seed, *key):
    return (int(seed), zlib.crc32("/".join(key).encode()))


def _estimator(family, method, q):
    if method == "wls":
        return Estimator(family, "wls", WeightScheme(q))
    return Estimator(family, "mle")


def _load(spec: DatasetSpec):
    try:
        fit_sample, retained = load_dataset(spec)
    except FileNotFoundError as exc:
        raise InputError(str(exc)) from None
    except (FileFormatError, OSError) as exc:
        raise InputError(f"dataset {spec.name}: {exc}") from None
    if len(fit_sample) == 0:
        raise InputError(f"dataset {spec.name}: no valid observations in {', '.join(map(str, spec.files))}")
    return fit_sample, retained


def _stem(*parts):
    return "_".join(p.replace("/", "-") for p in parts)


def run_fit(cfg: RunConfig) -> int:
    status = EXIT_OK
    for name, spec in cfg.datasets.items():
        sample, _ = _load(spec)
        for family, method in cfg.models:
            row = {"dataset": name, "family": family, "method": method, "n": len(sample)}
            try:
                est = _estimator(family, method, cfg.weight_exponent)
                report = est(sample)
                n_failed = ""
                if cfg.bootstrap:
                    bs = bootstrap_se(
                        sample,
                        est,
                        BootstrapConfig(B=cfg.bootstrap, seed=_job_seed(cfg.seed, name, family, method)),
                        max_workers=cfg.workers,
                    )
                    report = report.with_stderr(bs.stderr)
                    n_failed = bs.n_failed
                row.update(report.as_dict())
                row["dataset"] = name
                row["bootstrap_B"] = cfg.bootstrap
                row["bootstrap_failed"] = n_failed
                row["status"] = "ok"
            except WavedistError as exc:
                row["status"] = f"failed: {exc}"
                status = EXIT_JOB_FAILED
                logger.error("%s %s %s: %s", name, family, method, exc)
            write_table(cfg.out / _stem("fit", name, family, method), [row], cfg.fmt, cfg.timestamp_header)
    return status


def _params_from_row(row):
    cls = family_class(row["family"])
    return cls.from_array([float(row[n]) for n in cls.names()])


def load_fits(fits_dir: Path) -> list[dict]:
    """All successful fit rows found in ``fits_dir``."""
    rows = []
    for path in sorted(Path(fits_dir).glob("fit_*")):
        if path.suffix not in (".csv", ".jsonl"):
            continue
        for row in read_table(path):
            if row.get("status") == "ok":
                row["params"] = _params_from_row(row)
                rows.append(row)
    return rows


def _models_for(cfg, fits, inline, name):
    if inline is not None:
        family, params = inline
        return [{"dataset": name, "family": family, "method": "given", "weight_exponent": "", "params": params}]
    chosen = [r for r in fits if r["dataset"] == name]
    if not chosen:
        raise ConfigError(f"no fitted parameters for dataset {name}")
    return chosen


def run_eval(cfg: RunConfig, fits, inline) -> int:
    tables = {"in_sample": [], "retained": []}
    for name, spec in cfg.datasets.items():
        sample, retained = _load(spec)
        for model in _models_for(cfg, fits, inline, name):
            for subset, data in (("in_sample", sample), ("retained", retained)):
                if len(data) == 0:
                    continue
                rep = gof_report(data, model["params"])
                row = {
                    "dataset": name if subset == "in_sample" else f"{name}_r",
                    "family": model["family"],
                    "method": model["method"],
                    "weight_exponent": model.get("weight_exponent", ""),
                    "n": len(data),
                }
                row.update(rep.as_dict())
                tables[subset].append(row)
    for subset, rows in tables.items():
        if rows:
            write_table(cfg.out / f"gof_{subset}", rows, cfg.fmt, cfg.timestamp_header)
    return EXIT_OK


def run_plotdata(cfg: RunConfig, fits, inline, threshold: float, bins: int) -> int:
    for name, spec in cfg.datasets.items():
        sample, retained = _load(spec)
        for model in _models_for(cfg, fits, inline, name):
            for label, data in ((name, sample), (f"{name}_r", retained)):
                if len(data) == 0:
                    continue
                params = model["params"]
                stem = (label, model["family"], model["method"])
                qq = qq_series(data, params)
                write_table(
                    cfg.out / _stem("qq", *stem),
                    [{"p": p, "observed": o, "model": m} for p, o, m in zip(qq.probability, qq.observed, qq.model)],
                    cfg.fmt,
                    cfg.timestamp_header,
                )
                pp = probability_paper_series(data, params)
                rows = [{"kind": "empirical", "abscissa": a, "ordinate": o} for a, o in zip(pp.abscissa, pp.ordinate)]
                rows += [{"kind": "model", "abscissa": a, "ordinate": o} for a, o in zip(pp.curve_abscissa, pp.curve_ordinate)]
                write_table(cfg.out / _stem("probpaper", *stem), rows, cfg.fmt, cfg.timestamp_header)
                try:
                    td = tail_density_series(data, params, threshold, bins)
                except WavedistError as exc:
                    logger.warning("%s: tail density skipped: %s", label, exc)
                    continue
                rows = [
                    {"bin_lo": lo, "bin_hi": hi, "center": c, "density": d, "mass": m, "model_pdf": f}
                    for lo, hi, c, d, m, f in zip(td.edges[:-1], td.edges[1:], td.centers, td.density, td.mass, td.model_pdf)
                ]
                write_table(cfg.out / _stem("taildensity", *stem), rows, cfg.fmt, cfg.timestamp_header)
    return EXIT_OK


def simulate_recovery(alpha, beta, delta, n, repeats, method="wls", seed=0, weight_exponent=2):
    """Fit ``repeats`` synthetic exponentiated Weibull samples of size ``n``.

    Returns
    -------
    raw : list of dict
        One row per repeat with the estimates (NaN on failure) and a status.
    summary : list of dict
        Per parameter: true value, mean, standard deviation, median and
        quartiles over the successful repeats.
    """
    from .distributions import ExpWeibullParams

    if n < 100 or repeats < 2:
        raise ConfigError("simulate-recovery needs n >= 100 and repeats >= 2")
    truth = ExpWeibullParams(alpha, beta, delta)
    raw = []
    for i in range(repeats):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(i,)))
        sample = truth.sample(n, rng)
        row = {"repeat": i}
        try:
            if method == "wls":
                rep = fit_wls(sample, WeightScheme(weight_exponent))
            else:
                rep = fit_mle("exp-weibull", sample)
            row.update(zip(truth.names(), rep.params.to_array()))
            row["status"] = "ok"
        except WavedistError as exc:
            row.update({k: float("nan") for k in truth.names()})
            row["status"] = f"failed: {exc}"
        raw.append(row)
    summary = []
    for name, true in zip(truth.names(), truth.to_array()):
        v = np.array([r[name] for r in raw if r["status"] == "ok"], dtype=float)
        q25, med, q75 = np.percentile(v, [25, 50, 75]) if v.size else (np.nan,) * 3
        summary.append(
            {
                "parameter": name,
                "true": true,
                "mean": float(np.mean(v)) if v.size else np.nan,
                "sd": float(np.std(v, ddof=1)) if v.size > 1 else np.nan,
                "median": med,
                "q25": q25,
                "q75": q75,
                "n_ok": int(v.size),
            }
        )
    return raw, summary


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv", dest="fmt")
    p.add_argument("--no-timestamp-header", action="store_true", help="omit the generation time line")
    p.add_argument("--seed", type=int, default=0, help="master seed for all randomness")
    p.add_argument("-v", "--verbose", action="count", default=0)


def _add_data(p):
    p.add_argument("--dataset-spec", type=Path, help="YAML file describing datasets")
    p.add_argument("--dataset", action="append", help="dataset name from --dataset-spec (repeatable; default all)")
    p.add_argument("--input", type=Path, action="append", help="data file used as a single dataset")
    p.add_argument(
        "--kind", choices=DatasetSpec.KINDS, default="hindcast-csv", help="format of --input files"
    )


def _add_models(p, with_params=False):
    p.add_argument("--family", action="append", choices=sorted(FAMILIES))
    p.add_argument("--method", action="append", choices=("mle", "wls"))
    p.add_argument("--weight-exponent", type=int, choices=(1, 2, 3), default=2)
    if with_params:
        p.add_argument("--fits", type=Path, help="directory holding 'wavedist fit' output")
        p.add_argument("--params", help="inline parameters, e.g. alpha=1,beta=1,delta=2 (needs one --family)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wavedist", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"wavedist {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit distributions to datasets")
    _add_data(p)
    _add_models(p)
    p.add_argument("--bootstrap", type=int, default=0, metavar="B", help="bootstrap resamples (0 = none)")
    p.add_argument("--workers", type=int, default=1, help="threads for bootstrap refits")
    _add_common(p)

    p = sub.add_parser("eval", help="goodness of fit of fitted models")
    _add_data(p)
    _add_models(p, with_params=True)
    _add_common(p)

    p = sub.add_parser("plotdata", help="QQ, probability paper and tail density series")
    _add_data(p)
    _add_models(p, with_params=True)
    p.add_argument("--tail-threshold", type=float, default=0.99)
    p.add_argument("--bins", type=int, default=15)
    _add_common(p)

    p = sub.add_parser("simulate-recovery", help="Monte Carlo check of the exp-weibull estimators")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=2.0)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--repeats", type=int, default=100)
    p.add_argument("--method", choices=("mle", "wls"), default="wls")
    p.add_argument("--weight-exponent", type=int, choices=(1, 2, 3), default=2)
    _add_common(p)
    return parser


def _datasets(args) -> dict[str, DatasetSpec]:
    specs = {}
    if args.dataset_spec is not None:
        specs = load_dataset_spec(args.dataset_spec)
        if args.dataset:
            unknown = [d for d in args.dataset if d not in specs]
            if unknown:
                raise ConfigError(f"datasets {unknown} not in {args.dataset_spec}")
            specs = {d: specs[d] for d in args.dataset}
    elif args.dataset:
        raise ConfigError("--dataset needs --dataset-spec")
    for path in args.input or ():
        specs[path.stem] = DatasetSpec(name=path.stem, kind=args.kind, files=(path,))
    if not specs:
        raise ConfigError("no datasets given; use --dataset-spec or --input")
    return specs


def _models(args):
    if not args.family and not args.method:
        return list(DEFAULT_MODELS)
    families = args.family or ["exp-weibull"]
    methods = args.method or ["mle"]
    models = [(f, m) for f in families for m in methods if m == "mle" or f == "exp-weibull"]
    if not models:
        raise ConfigError("weighted least squares is only available for the exp-weibull family")
    return models


def _inline(args):
    if not args.params:
        return None
    if not args.family or len(args.family) != 1:
        raise ConfigError("--params needs exactly one --family")
    cls = family_class(args.family[0])
    try:
        values = dict(kv.split("=", 1) for kv in args.params.split(","))
        return args.family[0], cls(**{k.strip(): float(v) for k, v in values.items()})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad --params {args.params!r}: {exc}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        if args.command == "simulate-recovery":
            raw, summary = simulate_recovery(
                args.alpha, args.beta, args.delta, args.n, args.repeats, args.method, args.seed, args.weight_exponent
            )
            write_table(args.out / "recovery_raw", raw, args.fmt, not args.no_timestamp_header)
            write_table(args.out / "recovery_summary", summary, args.fmt, not args.no_timestamp_header)
            return EXIT_OK if all(r["status"] == "ok" for r in raw) else EXIT_JOB_FAILED

        cfg = RunConfig(
            datasets=_datasets(args),
            models=_models(args),
            weight_exponent=args.weight_exponent,
            seed=args.seed,
            out=args.out,
            fmt=args.fmt,
            timestamp_header=not args.no_timestamp_header,
        )
        if args.command == "fit":
            cfg.bootstrap = args.bootstrap
            cfg.workers = args.workers
            return run_fit(cfg)
        inline = _inline(args)
        if inline is None and args.fits is None:
            raise ConfigError(f"{args.command} needs --fits DIR or --params")
        fits = load_fits(args.fits) if args.fits is not None else []
        if args.command == "eval":
            return run_eval(cfg, fits, inline)
        return run_plotdata(cfg, fits, inline, args.tail_threshold, args.bins)
    except InputError as exc:
        print(f"wavedist: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConfigError as exc:
        print(f"wavedist: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
