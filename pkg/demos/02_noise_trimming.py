"""Show what each trim mode does to a cloud with a noise cluster.

Probe noise piles up where resistance and reactance are both high, so we
plant a small blob in the upper-right corner of an otherwise clean
elliptical trace and extract features under all three trim policies.
"""

import numpy as np

from ectshape.geometry import shape_descriptors
from ectshape.preprocess import PointCloud2D, TrimPolicy, trim_noise
from ectshape.rng import SplitMix64


def noisy_ellipse(rng: SplitMix64) -> PointCloud2D:
    # 120 signal points around an ellipse, 8 noise points far up-right
    ts = np.array([rng.uniform_in(0.0, 2.0 * np.pi) for _ in range(120)])
    x = 4.0 * np.cos(ts) + np.array([0.05 * rng.normal() for _ in ts])
    y = 1.5 * np.sin(ts) + np.array([0.05 * rng.normal() for _ in ts])
    noise = np.array(
        [[9.0 + 0.3 * rng.normal(), 8.0 + 0.3 * rng.normal()] for _ in range(8)]
    )
    return PointCloud2D(points=np.vstack([np.column_stack([x, y]), noise]))


def main() -> None:
    cloud = noisy_ellipse(SplitMix64(11))
    print(f"input cloud: {cloud.n} points (last 8 are planted noise)")
    print()
    print(f"{'policy':<24} {'kept':>5}  {'L':>8}  {'W':>8}  {'alpha':>8}  {'E':>7}")

    policies = [
        ("none", TrimPolicy(mode="none")),
        ("both_axes q=0.98", TrimPolicy(quantile_q=0.98, mode="both_axes")),
        ("both_axes q=0.90", TrimPolicy(quantile_q=0.90, mode="both_axes")),
        ("radial q=0.90", TrimPolicy(quantile_q=0.90, mode="radial")),
    ]
    for label, policy in policies:
        trimmed = trim_noise(cloud, policy)
        f = shape_descriptors(trimmed)
        print(
            f"{label:<24} {trimmed.n:>5}  {f.length:>8.4f}  {f.width:>8.4f}"
            f"  {f.alpha_deg:>8.3f}  {f.elongation:>7.4f}"
        )

    print()
    print("Untrimmed, the hull stretches toward the noise blob and the axis")
    print("tilts with it; q=0.98 is too shallow to clear the whole blob.")
    print("At q=0.90 the corner cut removes exactly the 8 planted points,")
    print("while the radial cut also sacrifices a few genuine extremes.")


if __name__ == "__main__":
    main()
