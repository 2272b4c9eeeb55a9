"""Command-line frontend for the impedance-shape pipeline.

Exit codes are fixed for scriptability: 0 success, 2 usage/config error,
3 data/processing error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .artifacts import (
    TOOL_VERSION,
    atomic_write_text,
    svg_header,
    write_artifact,
)
from .classifiers import predict, train_model
from .classifiers.serialize import load_model, save_model
from .dataset import (
    FEATURE_CSV_HEADER,
    FEATURE_MODES,
    FeatureTable,
    feature_csv_row,
    feature_names_for_mode,
    parse_feature_csv,
)
from .errors import BadSpecError, DimensionMismatchError, EctShapeError
from .evaluation import cross_validate, metrics_csv_lines, report_text
from .geometry import shape_descriptors
from .ingest import (
    ImpedanceRecord,
    _record_id_from_path,
    load_manifest,
    parse_record,
    record_to_text,
)
from .preprocess import TrimPolicy, to_point_cloud, trim_noise
from .plots import features_svg, record_svg
from .synthetic import generate_synthetic, parse_synth_spec
from .textio import format_float

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3

PREDICTIONS_CSV_HEADER = "record_id,predicted_label,confidence"

_EVAL_KINDS = ("tree", "nb", "mlp")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_CONFIG
        return EXIT_OK if code == 0 else EXIT_CONFIG
    return args.func(args)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ect-shape",
        description="Shape-based classification of eddy-current impedance records.",
    )
    parser.add_argument(
        "--version", action="version", version=f"ect-shape {TOOL_VERSION}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="manifest -> geometric feature CSV")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    _add_trim_flags(p)
    p.add_argument(
        "--features",
        choices=FEATURE_MODES,
        default="extended",
        help="recorded in the header; the CSV always carries every column",
    )
    p.add_argument(
        "--strict", action="store_true", help="abort on the first bad record"
    )
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="k-fold cross-validation report")
    _add_input_group(p)
    p.add_argument("--classifier", required=True, choices=_EVAL_KINDS + ("all",))
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.add_argument(
        "--per-fold-mean",
        action="store_true",
        help="summarize with fold-mean metrics instead of the pooled matrix",
    )
    p.add_argument("--features", choices=FEATURE_MODES, default="basic")
    _add_trim_flags(p)
    _add_param_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("train", help="fit one classifier on every record")
    _add_input_group(p)
    p.add_argument("--classifier", required=True, choices=_EVAL_KINDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model-out", required=True)
    p.add_argument("--features", choices=FEATURE_MODES, default="basic")
    _add_trim_flags(p)
    _add_param_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="predict labels with a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--features", choices=FEATURE_MODES, default="basic")
    _add_trim_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("synth", help="generate synthetic records + manifest")
    p.add_argument("--spec", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("plot", help="static SVG views of records or features")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--record")
    group.add_argument("--features-csv")
    p.add_argument("--out-dir", required=True)
    _add_trim_flags(p)
    p.set_defaults(func=cmd_plot)

    return parser


def _add_input_group(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--features-csv")
    group.add_argument("--manifest")


def _add_trim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--trim-mode", choices=("both-axes", "radial", "none"), default="both-axes"
    )
    p.add_argument("--trim-quantile", type=float, default=0.98)


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mlp-hidden", type=int, default=None)
    p.add_argument("--mlp-lr", type=float, default=0.3)
    p.add_argument("--mlp-momentum", type=float, default=0.2)
    p.add_argument("--mlp-epochs", type=int, default=500)
    p.add_argument("--tree-max-depth", type=int, default=25)
    p.add_argument("--tree-min-leaf", type=int, default=2)


def _fail_config(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_CONFIG


def _fail_data(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_DATA


def _config_of(args: argparse.Namespace) -> dict:
    out = {}
    for key, value in vars(args).items():
        if key == "func":
            continue
        out[key] = "" if value is None else value
    return out


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _policy(args: argparse.Namespace) -> TrimPolicy:
    return TrimPolicy(
        quantile_q=args.trim_quantile, mode=args.trim_mode.replace("-", "_")
    )


def _load_manifest_from(path: str):
    manifest = load_manifest(_read(path))
    base = os.path.dirname(os.path.abspath(path))

    def reader(rel: str) -> str:
        full = rel if os.path.isabs(rel) else os.path.join(base, rel)
        return _read(full)

    return manifest, reader


def _iter_extracted(manifest, reader, policy):
    """Yield (path, label_name, record_id, ShapeFeatures or the exception)."""
    for path, label_name in manifest.entries:
        rid = _record_id_from_path(path)
        try:
            record = parse_record(
                reader(path), record_id=rid, label=manifest.label_for(label_name)
            )
            feats = shape_descriptors(trim_noise(to_point_cloud(record), policy))
        except (EctShapeError, OSError) as exc:
            yield path, label_name, rid, exc
            continue
        yield path, label_name, rid, feats


def cmd_extract(args: argparse.Namespace) -> int:
    try:
        manifest, reader = _load_manifest_from(args.manifest)
        policy = _policy(args)
    except (OSError, EctShapeError, ValueError) as exc:
        return _fail_config(str(exc))
    lines = [FEATURE_CSV_HEADER]
    for path, label_name, rid, result in _iter_extracted(manifest, reader, policy):
        if isinstance(result, Exception):
            if args.strict:
                return _fail_data(f"{path}: {result}")
            print(f"warning: skipping {path}: {result}", file=sys.stderr)
            continue
        lines.append(feature_csv_row(rid, label_name, result))
    try:
        write_artifact(args.out, lines, _config_of(args))
    except OSError as exc:
        return _fail_config(str(exc))
    return EXIT_OK


def _load_table(args: argparse.Namespace) -> FeatureTable:
    """Feature table from --features-csv, or extracted from --manifest.

    The two routes agree bit-for-bit: the CSV stores 17 significant digits,
    which round-trips float64 exactly.
    """
    if args.features_csv:
        return parse_feature_csv(_read(args.features_csv))
    manifest, reader = _load_manifest_from(args.manifest)
    policy = _policy(args)
    ids, labels, rows = [], [], []
    for path, label_name, rid, result in _iter_extracted(manifest, reader, policy):
        if isinstance(result, Exception):
            print(f"warning: skipping {path}: {result}", file=sys.stderr)
            continue
        ids.append(rid)
        labels.append(label_name)
        rows.append(result.as_vector(extended=True))
    values = np.array(rows) if rows else np.empty((0, 10))
    return FeatureTable(
        record_ids=tuple(ids), label_names=tuple(labels), values=values
    )


def _params_for(kind: str, args: argparse.Namespace) -> dict:
    if kind == "tree":
        return {"max_depth": args.tree_max_depth, "min_leaf": args.tree_min_leaf}
    if kind == "mlp":
        params = {
            "lr": args.mlp_lr,
            "momentum": args.mlp_momentum,
            "epochs": args.mlp_epochs,
        }
        if args.mlp_hidden is not None:
            params["hidden"] = args.mlp_hidden
        return params
    return {}


def cmd_evaluate(args: argparse.Namespace) -> int:
    try:
        table = _load_table(args)
        _policy(args)
    except OSError as exc:
        return _fail_config(str(exc))
    except ValueError as exc:
        return _fail_config(str(exc))
    except EctShapeError as exc:
        return _fail_data(str(exc))
    try:
        data = table.to_dataset(args.features)
    except ValueError as exc:
        return _fail_data(f"not stratifiable: {exc}")
    kinds = _EVAL_KINDS if args.classifier == "all" else (args.classifier,)
    os.makedirs(args.out_dir, exist_ok=True)
    config = _config_of(args)
    summary = [
        f"{'classifier':<12} {'accuracy':>9} {'sensitivity':>12}"
        f" {'specificity':>12} {'precision':>10} {'mcc':>7}"
    ]
    for kind in kinds:
        try:
            report = cross_validate(
                data,
                kind,
                _params_for(kind, args),
                k=args.k,
                seed=args.seed,
                class_names=table.class_names,
                per_fold_mean=args.per_fold_mean,
            )
        except EctShapeError as exc:
            return _fail_data(f"{kind}: {exc}")
        try:
            write_artifact(
                os.path.join(args.out_dir, f"report_{kind}.txt"),
                report_text(report).splitlines(),
                config,
                seed=args.seed,
            )
            write_artifact(
                os.path.join(args.out_dir, f"metrics_{kind}.csv"),
                metrics_csv_lines(report),
                config,
                seed=args.seed,
            )
        except OSError as exc:
            return _fail_config(str(exc))
        m = report.macro
        summary.append(
            f"{kind:<12} {m.accuracy:>9.4f} {m.sensitivity:>12.4f}"
            f" {m.specificity:>12.4f} {m.precision:>10.4f} {m.mcc:>7.4f}"
        )
    print("\n".join(summary))
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    try:
        table = _load_table(args)
    except OSError as exc:
        return _fail_config(str(exc))
    except ValueError as exc:
        return _fail_config(str(exc))
    except EctShapeError as exc:
        return _fail_data(str(exc))
    try:
        data = table.to_dataset(args.features)
        trained = train_model(
            args.classifier,
            data,
            params=_params_for(args.classifier, args),
            seed=args.seed,
            class_names=table.class_names,
        )
    except (EctShapeError, ValueError) as exc:
        return _fail_data(str(exc))
    try:
        write_artifact(
            args.model_out,
            save_model(trained).splitlines(),
            _config_of(args),
            seed=args.seed,
        )
    except OSError as exc:
        return _fail_config(str(exc))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        model_text = _read(args.model)
    except OSError as exc:
        return _fail_config(str(exc))
    try:
        trained = load_model(model_text)
    except EctShapeError as exc:
        return _fail_data(str(exc))
    try:
        manifest, reader = _load_manifest_from(args.manifest)
        policy = _policy(args)
    except (OSError, EctShapeError, ValueError) as exc:
        return _fail_config(str(exc))
    expected = feature_names_for_mode(args.features)
    if tuple(trained.feature_names) != expected:
        return _fail_data(
            str(
                DimensionMismatchError(
                    f"model expects features {trained.feature_names},"
                    f" extraction mode {args.features!r} produces {expected}"
                )
            )
        )
    lines = [PREDICTIONS_CSV_HEADER]
    for path, _label_name, rid, result in _iter_extracted(manifest, reader, policy):
        if isinstance(result, Exception):
            print(f"warning: skipping {path}: {result}", file=sys.stderr)
            continue
        vec = result.as_vector(extended=(args.features == "extended"))
        try:
            idx, posterior = predict(trained, vec)
        except EctShapeError as exc:
            return _fail_data(str(exc))
        lines.append(
            f"{rid},{trained.label_name(idx)},{format_float(float(posterior[idx]))}"
        )
    try:
        write_artifact(args.out, lines, _config_of(args))
    except OSError as exc:
        return _fail_config(str(exc))
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    try:
        spec_text = _read(args.spec)
    except OSError as exc:
        return _fail_config(str(exc))
    try:
        spec = parse_synth_spec(spec_text)
        pairs = generate_synthetic(spec, args.seed)
    except BadSpecError as exc:
        return _fail_config(str(exc))
    config = _config_of(args)
    try:
        os.makedirs(args.out_dir, exist_ok=True)
        counters: dict[str, int] = {}
        manifest_lines = []
        for cloud, label in pairs:
            i = counters.get(label.name, 0)
            counters[label.name] = i + 1
            stem = f"{label.name}_{i:02d}"
            record = ImpedanceRecord(
                record_id=stem,
                samples=np.column_stack((cloud.x, cloud.y)),
                label=label,
            )
            write_artifact(
                os.path.join(args.out_dir, f"{stem}.csv"),
                record_to_text(record).splitlines(),
                config,
                seed=args.seed,
            )
            manifest_lines.append(f"{stem}.csv,{label.name}")
        write_artifact(
            os.path.join(args.out_dir, "manifest.csv"),
            manifest_lines,
            config,
            seed=args.seed,
        )
    except OSError as exc:
        return _fail_config(str(exc))
    print(
        f"wrote {len(pairs)} records across {len(spec.classes)} classes"
        f" to {args.out_dir}"
    )
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    try:
        policy = _policy(args)
    except ValueError as exc:
        return _fail_config(str(exc))
    if args.record:
        try:
            text = _read(args.record)
        except OSError as exc:
            return _fail_config(str(exc))
        rid = _record_id_from_path(args.record)
        try:
            record = parse_record(text, record_id=rid)
            cloud = trim_noise(to_point_cloud(record), policy)
            svg = record_svg(cloud, rid)
        except (EctShapeError, ValueError) as exc:
            return _fail_data(str(exc))
        out_name = f"{rid}.svg"
    else:
        try:
            table = parse_feature_csv(_read(args.features_csv))
        except OSError as exc:
            return _fail_config(str(exc))
        except EctShapeError as exc:
            return _fail_data(str(exc))
        if table.values.shape[0] == 0:
            return _fail_config("feature CSV has no data rows")
        svg = features_svg(table)
        out_name = "features.svg"
    try:
        os.makedirs(args.out_dir, exist_ok=True)
        header = "\n".join(svg_header(_config_of(args))) + "\n"
        atomic_write_text(os.path.join(args.out_dir, out_name), header + svg)
    except OSError as exc:
        return _fail_config(str(exc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
