"""Geometric signature of a planar point cloud.

The signature is built from the cloud's second-moment (covariance)
structure and its convex hull: centroid, principal inertia axes,
orientation angle, oriented extents (length/width of the inertia-aligned
bounding box), hull area and perimeter, and five derived descriptors
(compactness, elongation, rectangularity, eccentricity, convexity).

All operations are pure and deterministic. Angles are reported in
degrees in (-90, 90] because an undirected axis is only defined modulo
180 degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CollinearCloudError,
    DegenerateCloudError,
    DegenerateMomentsError,
    EmptyCloudError,
    ZeroWidthError,
)
from .preprocess import PointCloud2D

# relative minor-axis extent below which a cloud counts as collinear
_ZERO_WIDTH_REL = 1e-12
# absolute moment magnitude below which the axis direction is a tie
_ISOTROPY_TOL = 1e-12

FEATURE_NAMES_BASIC = ("L", "W", "alpha_deg")
FEATURE_NAMES_EXTENDED = (
    "L",
    "W",
    "alpha_deg",
    "area",
    "perimeter",
    "compactness",
    "elongation",
    "rectangularity",
    "eccentricity",
    "convexity",
)


@dataclass(frozen=True)
class CentralMoments2:
    """Second-order central moments and the centroid they are taken about."""

    mu20: float
    mu02: float
    mu11: float
    centroid: tuple[float, float]

    def __post_init__(self) -> None:
        if self.mu20 < 0 or self.mu02 < 0:
            raise ValueError("diagonal moments must be non-negative")
        # Cauchy-Schwarz with a float-rounding allowance
        bound = math.sqrt(self.mu20 * self.mu02) + 1e-12 * (1.0 + self.mu20 + self.mu02)
        if abs(self.mu11) > bound:
            raise ValueError("mu11 exceeds the Cauchy-Schwarz bound")


@dataclass(frozen=True)
class PrincipalAxes:
    """Eigenstructure of the covariance matrix, major axis first.

    alpha_deg is the angle from the +x axis to the major axis, in
    (-90, 90]. minor is major rotated +90 degrees.
    """

    alpha_deg: float
    major: tuple[float, float]
    minor: tuple[float, float]
    lambda_major: float
    lambda_minor: float

    def __post_init__(self) -> None:
        if not (-90.0 < self.alpha_deg <= 90.0):
            raise ValueError("alpha_deg must lie in (-90, 90]")
        if self.lambda_major < self.lambda_minor or self.lambda_minor < 0:
            raise ValueError("eigenvalues must satisfy lambda_major >= lambda_minor >= 0")
        for vec in (self.major, self.minor):
            if abs(math.hypot(*vec) - 1.0) > 1e-12:
                raise ValueError("axis vectors must be unit length")
        dot = self.major[0] * self.minor[0] + self.major[1] * self.minor[1]
        if abs(dot) > 1e-12:
            raise ValueError("axes must be orthogonal")


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon, vertices counter-clockwise."""

    vertices: np.ndarray

    def __post_init__(self) -> None:
        verts = np.asarray(self.vertices, dtype=np.float64)
        if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
            raise ValueError("need at least 3 vertices as an (m, 2) array")
        nxt = np.roll(verts, -1, axis=0)
        nxt2 = np.roll(verts, -2, axis=0)
        cross = (nxt[:, 0] - verts[:, 0]) * (nxt2[:, 1] - nxt[:, 1]) - (
            nxt[:, 1] - verts[:, 1]
        ) * (nxt2[:, 0] - nxt[:, 0])
        if not (cross > 0).all():
            raise ValueError("vertices must make strictly convex CCW turns")
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])


@dataclass(frozen=True)
class ShapeFeatures:
    """The full geometric signature of one impedance shape.

    length/width are the extents of the inertia-aligned bounding box
    (length >= width); area/perimeter come from the convex hull.
    """

    length: float
    width: float
    alpha_deg: float
    area: float
    perimeter: float
    compactness: float
    elongation: float
    rectangularity: float
    eccentricity: float
    convexity: float

    def __post_init__(self) -> None:
        if self.length < self.width:
            raise ValueError("length must be >= width")
        if not (-90.0 < self.alpha_deg <= 90.0):
            raise ValueError("alpha_deg must lie in (-90, 90]")
        if not (0.0 <= self.eccentricity <= 1.0 + 1e-12):
            raise ValueError("eccentricity must lie in [0, 1]")
        if self.compactness > 1.0 + 1e-9:
            raise ValueError("compactness exceeds the isoperimetric bound")

    def as_vector(self, extended: bool = False) -> np.ndarray:
        """Feature vector: (L, W, alpha) or all ten values."""
        basic = (self.length, self.width, self.alpha_deg)
        if not extended:
            return np.array(basic, dtype=np.float64)
        return np.array(
            basic
            + (
                self.area,
                self.perimeter,
                self.compactness,
                self.elongation,
                self.rectangularity,
                self.eccentricity,
                self.convexity,
            ),
            dtype=np.float64,
        )


def centroid(cloud: PointCloud2D) -> tuple[float, float]:
    """Arithmetic mean of the point coordinates."""
    if cloud.n == 0:
        raise EmptyCloudError("cannot take the centroid of an empty cloud")
    g = cloud.points.mean(axis=0)
    return float(g[0]), float(g[1])


def central_moments(cloud: PointCloud2D) -> CentralMoments2:
    """Population (1/n) second moments about the centroid."""
    if cloud.n == 0:
        raise EmptyCloudError("cannot take moments of an empty cloud")
    gx, gy = centroid(cloud)
    dx = cloud.x - gx
    dy = cloud.y - gy
    mu20 = float(np.mean(dx * dx))
    mu02 = float(np.mean(dy * dy))
    mu11 = float(np.mean(dx * dy))
    if mu20 == 0.0 and mu02 == 0.0 and mu11 == 0.0:
        raise DegenerateCloudError("all points identical; moments are zero")
    return CentralMoments2(mu20=mu20, mu02=mu02, mu11=mu11, centroid=(gx, gy))


def normalize_angle_deg(angle: float) -> float:
    """Reduce an axis angle modulo 180 into (-90, 90]."""
    a = math.fmod(angle, 180.0)
    if a <= -90.0:
        a += 180.0
    elif a > 90.0:
        a -= 180.0
    return a


def principal_axes(moments: CentralMoments2) -> PrincipalAxes:
    """Closed-form eigenstructure of [[mu20, mu11], [mu11, mu02]].

    Isotropic clouds (both |mu20 - mu02| and |mu11| below 1e-12) have no
    preferred direction; the angle is 0 by convention.
    """
    mu20, mu02, mu11 = moments.mu20, moments.mu02, moments.mu11
    if mu20 == 0.0 and mu02 == 0.0 and mu11 == 0.0:
        raise DegenerateMomentsError("covariance is the zero matrix")
    mean = 0.5 * (mu20 + mu02)
    half_diff = 0.5 * (mu20 - mu02)
    disc = math.hypot(half_diff, mu11)
    lam_major = mean + disc
    lam_minor = max(0.0, mean - disc)
    if abs(mu20 - mu02) <= _ISOTROPY_TOL and abs(mu11) <= _ISOTROPY_TOL:
        alpha_deg = 0.0
    else:
        alpha_deg = normalize_angle_deg(
            math.degrees(0.5 * math.atan2(2.0 * mu11, mu20 - mu02))
        )
    rad = math.radians(alpha_deg)
    major = (math.cos(rad), math.sin(rad))
    minor = (-major[1], major[0])
    return PrincipalAxes(
        alpha_deg=alpha_deg,
        major=major,
        minor=minor,
        lambda_major=lam_major,
        lambda_minor=lam_minor,
    )


def oriented_extents(cloud: PointCloud2D, axes: PrincipalAxes) -> tuple[float, float]:
    """Min-max extents of the projections onto the principal axes.

    Returns (L, W) with L >= W. A relative minor extent below 1e-12 is
    snapped to exactly 0. When the projection extents disagree with the
    eigenvalue ordering (possible for cross-like or near-isotropic
    clouds) the pair is swapped; callers reporting the angle must then
    rotate it by 90 degrees (shape_descriptors does).
    """
    ext_major, ext_minor = _raw_extents(cloud, axes)
    if ext_major >= ext_minor:
        return ext_major, ext_minor
    return ext_minor, ext_major


def _raw_extents(cloud: PointCloud2D, axes: PrincipalAxes) -> tuple[float, float]:
    if cloud.n == 0:
        raise EmptyCloudError("cannot take extents of an empty cloud")
    proj_major = cloud.x * axes.major[0] + cloud.y * axes.major[1]
    proj_minor = cloud.x * axes.minor[0] + cloud.y * axes.minor[1]
    ext_major = float(proj_major.max() - proj_major.min())
    ext_minor = float(proj_minor.max() - proj_minor.min())
    scale = max(ext_major, ext_minor)
    if ext_minor <= _ZERO_WIDTH_REL * scale:
        ext_minor = 0.0
    if ext_major <= _ZERO_WIDTH_REL * scale:
        ext_major = 0.0
    return ext_major, ext_minor


def convex_hull(cloud: PointCloud2D) -> ConvexPolygon:
    """Smallest convex polygon containing all points (monotone chain).

    Vertices are CCW; collinear boundary points are dropped.
    """
    if cloud.n < 3:
        raise CollinearCloudError("need at least 3 points for a hull")
    pts = np.unique(cloud.points, axis=0)  # lexicographic sort + dedupe
    if pts.shape[0] < 3:
        raise CollinearCloudError("fewer than 3 distinct points")

    def build(seq: np.ndarray) -> list[np.ndarray]:
        chain: list[np.ndarray] = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0.0:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise CollinearCloudError("all points are collinear")
    return ConvexPolygon(vertices=np.array(hull, dtype=np.float64))


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def polygon_area_perimeter(poly: ConvexPolygon) -> tuple[float, float]:
    """Shoelace area (positive for CCW) and edge-length sum."""
    v = poly.vertices
    nxt = np.roll(v, -1, axis=0)
    area = 0.5 * float(np.sum(v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]))
    perimeter = float(np.sum(np.hypot(nxt[:, 0] - v[:, 0], nxt[:, 1] - v[:, 1])))
    return area, perimeter


def contour_perimeter(cloud: PointCloud2D) -> float:
    """Perimeter of the closed polyline through the points in stored order."""
    if cloud.n < 2:
        raise EmptyCloudError("need at least 2 points for a contour")
    nxt = np.roll(cloud.points, -1, axis=0)
    return float(
        np.sum(np.hypot(nxt[:, 0] - cloud.points[:, 0], nxt[:, 1] - cloud.points[:, 1]))
    )


def shape_descriptors(cloud: PointCloud2D) -> ShapeFeatures:
    """Compute the full signature of a cloud.

    Area and perimeter are taken from the convex hull (the input is a
    sampled curve, not a filled image). Convexity compares the hull
    perimeter against the closed acquisition-order polyline.

    Raises ZeroWidthError for (numerically) collinear clouds, where
    elongation is undefined.
    """
    moments = central_moments(cloud)
    axes = principal_axes(moments)
    ext_major, ext_minor = _raw_extents(cloud, axes)
    if ext_major >= ext_minor:
        length, width, alpha_deg = ext_major, ext_minor, axes.alpha_deg
    else:
        # projections disagree with the eigen ordering: report the box
        # aligned with the longer extent
        length, width = ext_minor, ext_major
        alpha_deg = normalize_angle_deg(axes.alpha_deg + 90.0)
    if width == 0.0:
        raise ZeroWidthError("cloud is collinear; elongation undefined")

    hull = convex_hull(cloud)
    area, hull_perimeter = polygon_area_perimeter(hull)
    compactness = 4.0 * math.pi * area / hull_perimeter**2
    elongation = length / width
    rectangularity = area / (length * width)
    eccentricity = math.sqrt(axes.lambda_minor / axes.lambda_major)
    convexity = hull_perimeter / contour_perimeter(cloud)
    return ShapeFeatures(
        length=length,
        width=width,
        alpha_deg=alpha_deg,
        area=area,
        perimeter=hull_perimeter,
        compactness=compactness,
        elongation=elongation,
        rectangularity=rectangularity,
        eccentricity=min(1.0, eccentricity),
        convexity=convexity,
    )
