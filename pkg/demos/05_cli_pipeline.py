"""Drive the whole command-line pipeline in a scratch directory.

synth -> extract -> evaluate -> train -> classify -> plot, exactly as a
user would run it from a shell, checking exit codes along the way.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

SPEC = {
    "classes": [
        {"name": "round", "n_points": 48, "axis_lengths": [2.0, 1.6],
         "rotation_deg": 0, "noise_sigma": 0.05, "n_records": 10,
         "center": [1.0, 0.5]},
        {"name": "long", "n_points": 48, "axis_lengths": [5.0, 1.0],
         "rotation_deg": 30, "noise_sigma": 0.05, "n_records": 10,
         "center": [1.0, 0.5]},
        {"name": "mid", "n_points": 48, "axis_lengths": [3.2, 0.9],
         "rotation_deg": 60, "noise_sigma": 0.05, "n_records": 10,
         "center": [1.0, 0.5]},
    ]
}


def run(*args: str) -> str:
    cmd = [sys.executable, "-m", "ectshape.cli", *args]
    print("$ ect-shape " + " ".join(args))
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        sys.exit(f"exit {proc.returncode}: {proc.stderr.strip()}")
    out = proc.stdout.strip()
    if out:
        print("  " + out.replace("\n", "\n  "))
    return out


def main() -> None:
    base = Path(tempfile.mkdtemp(prefix="ectshape-demo-"))
    spec_path = base / "spec.json"
    spec_path.write_text(json.dumps(SPEC, indent=1))

    run("synth", "--spec", str(spec_path), "--out-dir", str(base / "raw"),
        "--seed", "7")
    run("extract", "--manifest", str(base / "raw" / "manifest.csv"),
        "--out", str(base / "features.csv"))
    run("evaluate", "--features-csv", str(base / "features.csv"),
        "--classifier", "all", "--k", "5", "--out-dir", str(base / "eval"))
    run("train", "--features-csv", str(base / "features.csv"),
        "--classifier", "tree", "--model-out", str(base / "tree-model.txt"))
    run("classify", "--model", str(base / "tree-model.txt"),
        "--manifest", str(base / "raw" / "manifest.csv"),
        "--out", str(base / "predictions.csv"))
    run("plot", "--record", str(base / "raw" / "long_00.csv"),
        "--out-dir", str(base / "plots"))

    print()
    print(f"artifacts under {base}:")
    for path in sorted(base.rglob("*")):
        if path.is_file():
            print(f"  {path.relative_to(base)}")


if __name__ == "__main__":
    main()
