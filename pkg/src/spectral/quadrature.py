"""Composite Gauss-Legendre wavenumber grids concentrated on the spectral features"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import BarycentricInterpolator
from scipy.special import roots_legendre

from ..exceptions import InvalidParameterError
from ..models.gate_params import GateParams

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 64

# Panel edges around each feature, in units of its width
FEATURE_SCALES = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0)

# A feature is a (center, width) pair: a pole sits at center -/+ i*width/2
Feature = Tuple[float, float]


@dataclass(frozen=True)
class Panel:
    """One quadrature panel; an infinite edge marks a mapped tail panel with the given scale"""

    a: float
    b: float
    order: int
    scale: float = 0.0

    @property
    def is_tail(self) -> bool:
        return math.isinf(self.a) or math.isinf(self.b)

    def reference_coordinate(self, k: np.ndarray) -> np.ndarray:
        """
        Map wavenumbers in the panel onto [-1, 1], where the nodes are the Legendre roots

        Tail panels use the variable t of ``tail_panel``, oriented so that
        the reference coordinate grows with k.
        """
        k = np.asarray(k, dtype=float)
        if not self.is_tail:
            return (2.0 * k - self.a - self.b) / (self.b - self.a)
        if math.isinf(self.b):
            t = self.scale / (self.scale + (k - self.a))
            return 1.0 - 2.0 * t
        t = self.scale / (self.scale + (self.b - k))
        return 2.0 * t - 1.0


@dataclass(frozen=True, eq=False)
class KGrid:
    """Wavenumber nodes with weights for the measure dk (divide by 2 pi for dk/2pi)"""

    nodes: np.ndarray
    weights: np.ndarray
    panels: Tuple[Panel, ...] = ()
    resolution: int = 0
    cutoff: float = 0.0
    features: Tuple[Feature, ...] = ()

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise InvalidParameterError("Grid nodes and weights must be 1-D arrays of equal length")
        if self.nodes.size > 1 and not np.all(np.diff(self.nodes) > 0):
            raise InvalidParameterError("Grid nodes must be strictly increasing")
        if not np.all(self.weights > 0):
            raise InvalidParameterError("Grid weights must be positive")
        if self.panels and sum(p.order for p in self.panels) != self.nodes.size:
            raise InvalidParameterError("Panel orders do not add up to the node count")

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    @property
    def measure(self) -> np.ndarray:
        """Weights of the normalized measure dk/2pi"""
        return self.weights / (2.0 * np.pi)

    @property
    def edges(self) -> np.ndarray:
        """Finite panel boundaries, ascending"""
        bounds = [p.a for p in self.panels] + [self.panels[-1].b] if self.panels else []
        return np.asarray([e for e in bounds if math.isfinite(e)], dtype=float)

    @property
    def tail_scale(self) -> float:
        return max((p.scale for p in self.panels if p.is_tail), default=0.0)

    def integrate(self, values: np.ndarray) -> complex:
        """Integral of ``values`` against dk/2pi"""
        return np.sum(self.measure * values)

    def is_symmetric_about(self, center: float, rtol: float = 1e-9) -> bool:
        reflected = 2.0 * center - self.nodes[::-1]
        scale = max(1.0, float(np.max(np.abs(self.nodes - center))) if self.size else 1.0)
        finite = np.isfinite(self.nodes)
        if not np.all(finite):
            return False
        return bool(
            np.allclose(reflected, self.nodes, rtol=0.0, atol=rtol * scale)
            and np.allclose(self.weights[::-1], self.weights, rtol=rtol, atol=0.0)
        )

    def matches(self, other: "KGrid") -> bool:
        if other is self:
            return True
        return (
            self.size == other.size
            and np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.weights, other.weights)
        )


@lru_cache(maxsize=None)
def _legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(order)
    return np.asarray(x, dtype=float), np.asarray(w, dtype=float)


def gauss_legendre_panel(a: float, b: float, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped onto [a, b]"""
    x, w = _legendre(order)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w


def tail_panel(edge: float, scale: float, order: int, direction: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Semi-infinite panel from ``edge`` outward

    Uses k = edge + direction * scale * (1 - t) / t on t in (0, 1], which makes
    a 1/(k - c)^2 tail with ``scale`` = edge - c exactly flat in t.
    """
    x, w = _legendre(order)
    t = 0.5 * (x + 1.0)
    wt = 0.5 * w
    nodes = edge + direction * scale * (1.0 - t) / t
    weights = scale * wt / t ** 2
    order_idx = np.argsort(nodes)
    return nodes[order_idx], weights[order_idx]


def _feature_edges(features: Sequence[Feature], cutoff: float) -> np.ndarray:
    scales = [s for s in FEATURE_SCALES if s < cutoff] + [cutoff]
    edges = []
    for center, width in features:
        for s in scales:
            edges.append(center - s * width)
            edges.append(center + s * width)
    return _dedupe(np.sort(np.asarray(edges, dtype=float)))


def _dedupe(edges: np.ndarray) -> np.ndarray:
    if edges.size < 2:
        return edges
    span = max(edges[-1] - edges[0], 1e-300)
    keep = np.concatenate([[True], np.diff(edges) > 1e-12 * span])
    return edges[keep]


def _refine(edges: np.ndarray, features: Sequence[Feature]) -> np.ndarray:
    """Split gap panels longer than their distance to the nearest feature"""
    centers = np.array([c for c, _ in features])
    min_width = min(w for _, w in features)
    refined: List[float] = [float(edges[0])]
    stack = [(float(a), float(b)) for a, b in zip(edges[:-1], edges[1:])][::-1]
    while stack:
        a, b = stack.pop()
        inside = np.any((centers >= a) & (centers <= b))
        distance = 0.0 if inside else float(np.min(np.minimum(np.abs(centers - a), np.abs(centers - b))))
        if b - a > 2.0 * max(distance, min_width) and not inside:
            mid = 0.5 * (a + b)
            stack.append((mid, b))
            stack.append((a, mid))
            continue
        refined.append(b)
    return np.asarray(refined)


def panel_order(resolution: int, n_panels: int, min_order: int = 8, max_order: int = 64) -> int:
    return int(min(max(math.ceil(resolution / n_panels), min_order), max_order))


def composite_grid(
    edges: np.ndarray,
    order: int,
    left_scale: float,
    right_scale: float,
    subdivide: int = 1,
    **grid_fields,
) -> KGrid:
    """
    Gauss-Legendre panels between ascending ``edges`` plus a mapped tail on each side

    Args:
        edges: Finite panel boundaries
        order: Nodes per panel
        left_scale: Tail scale below the first edge
        right_scale: Tail scale above the last edge
        subdivide: Split every finite panel into this many equal panels
        **grid_fields: Passed on to KGrid (resolution, cutoff, features)

    Returns:
        KGrid covering the real line
    """
    edges = _dedupe(np.sort(np.asarray(edges, dtype=float)))
    if subdivide > 1 and edges.size > 1:
        fractions = np.arange(subdivide) / subdivide
        starts = edges[:-1, None] + fractions[None, :] * np.diff(edges)[:, None]
        edges = np.concatenate([starts.ravel(), edges[-1:]])

    node_parts, weight_parts, panels = [], [], []
    x, w = tail_panel(edges[0], left_scale, order, -1)
    node_parts.append(x)
    weight_parts.append(w)
    panels.append(Panel(-math.inf, float(edges[0]), order, left_scale))
    for a, b in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre_panel(a, b, order)
        node_parts.append(x)
        weight_parts.append(w)
        panels.append(Panel(float(a), float(b), order))
    x, w = tail_panel(edges[-1], right_scale, order, 1)
    node_parts.append(x)
    weight_parts.append(w)
    panels.append(Panel(float(edges[-1]), math.inf, order, right_scale))
    return KGrid(
        nodes=np.concatenate(node_parts),
        weights=np.concatenate(weight_parts),
        panels=tuple(panels),
        **grid_fields,
    )


def build_feature_grid(
    features: Iterable[Feature],
    resolution: int = 512,
    cutoff: float = 40.0,
    symmetric_about: Optional[float] = None,
    min_order: int = 8,
    max_order: int = 64,
) -> KGrid:
    """
    Build a composite grid resolving every (center, width) feature

    Args:
        features: Spectral features, each a center with its Lorentzian width
        resolution: Target node count, at least 64
        cutoff: Half-width of the resolved window around each feature, in widths
        symmetric_about: If given, the grid is exactly mirror symmetric about this point
        min_order: Smallest Gauss-Legendre order per panel
        max_order: Largest Gauss-Legendre order per panel

    Returns:
        KGrid covering the real line
    """
    features = [(float(c), float(w)) for c, w in features]
    if resolution < MIN_RESOLUTION:
        raise InvalidParameterError(f"Grid resolution must be at least {MIN_RESOLUTION}, got {resolution}")
    if not cutoff >= 1.0 or not math.isfinite(cutoff):
        raise InvalidParameterError(f"Window cutoff must be a finite multiplier >= 1, got {cutoff}")
    if not features:
        raise InvalidParameterError("At least one spectral feature is required")
    for center, width in features:
        if not width > 0 or not math.isfinite(center):
            raise InvalidParameterError(f"Feature ({center}, {width}) needs a finite center and positive width")

    if symmetric_about is not None:
        features = features + [(2.0 * symmetric_about - c, w) for c, w in features]

    edges = _refine(_feature_edges(features, cutoff), features)

    # Tail scale: distance from the outer edge to the feature that defines it
    left_feature = min(features, key=lambda f: f[0] - cutoff * f[1])
    right_feature = max(features, key=lambda f: f[0] + cutoff * f[1])
    left_scale = cutoff * left_feature[1]
    right_scale = cutoff * right_feature[1]
    fields = dict(resolution=resolution, cutoff=cutoff, features=tuple(features))

    if symmetric_about is not None:
        offsets = edges[edges >= symmetric_about] - symmetric_about
        offsets = _dedupe(np.unique(np.concatenate([[0.0], offsets])))
        n_panels = 2 * (offsets.size - 1) + 2
        order = panel_order(resolution, n_panels, min_order, max_order)
        half_nodes, half_weights, half_panels = _assemble_half(offsets, order, max(left_scale, right_scale))
        grid = KGrid(
            nodes=np.concatenate([symmetric_about - half_nodes[::-1], symmetric_about + half_nodes]),
            weights=np.concatenate([half_weights[::-1], half_weights]),
            panels=tuple(
                [Panel(symmetric_about - p.b, symmetric_about - p.a, p.order, p.scale) for p in reversed(half_panels)]
                + [Panel(symmetric_about + p.a, symmetric_about + p.b, p.order, p.scale) for p in half_panels]
            ),
            **fields,
        )
    else:
        order = panel_order(resolution, edges.size + 1, min_order, max_order)
        grid = composite_grid(edges, order, left_scale, right_scale, **fields)

    logger.debug(f"Built grid: {len(grid.panels)} panels of order {order}, {grid.size} nodes")
    return grid


def _assemble_half(offsets: np.ndarray, order: int, tail_scale: float):
    node_parts, weight_parts, panels = [], [], []
    for a, b in zip(offsets[:-1], offsets[1:]):
        x, w = gauss_legendre_panel(a, b, order)
        node_parts.append(x)
        weight_parts.append(w)
        panels.append(Panel(float(a), float(b), order))
    x, w = tail_panel(offsets[-1], tail_scale, order, 1)
    node_parts.append(x)
    weight_parts.append(w)
    panels.append(Panel(float(offsets[-1]), math.inf, order, tail_scale))
    return np.concatenate(node_parts), np.concatenate(weight_parts), panels


@lru_cache(maxsize=None)
def _lagrange_basis(order: int) -> BarycentricInterpolator:
    x, _ = _legendre(order)
    return BarycentricInterpolator(x, np.eye(order))


def interpolation_weights(grid: KGrid, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Lagrange interpolation on each panel's nodes

    A grid function f is approximated at ``points`` by
    ``np.sum(weights * f[index], axis=-1)``.

    Args:
        grid: Grid with uniform panel order
        points: Real wavenumbers, any shape

    Returns:
        (index, weights), both of shape ``points.shape + (order,)``
    """
    if not grid.panels:
        raise InvalidParameterError("Interpolation needs a grid built from panels")
    order = grid.panels[0].order
    if any(p.order != order for p in grid.panels):
        raise InvalidParameterError("Interpolation needs panels of equal order")

    points = np.asarray(points, dtype=float)
    flat = points.ravel()
    inner = np.array([p.b for p in grid.panels[:-1]])
    which = np.searchsorted(inner, flat, side="right")
    reference = np.empty_like(flat)
    for n in np.unique(which):
        mask = which == n
        reference[mask] = grid.panels[n].reference_coordinate(flat[mask])

    index = which[:, None] * order + np.arange(order)[None, :]
    weights = np.asarray(_lagrange_basis(order)(reference)).reshape(flat.size, order)
    shape = points.shape + (order,)
    return index.reshape(shape), weights.reshape(shape)


def gate_features(params: GateParams) -> List[Feature]:
    """Single-photon features: the pulse at k0 and the two atomic lines at omega1"""
    features = [(params.k0, params.gamma), (params.omega1, params.gammaH)]
    if params.gammaV != params.gammaH:
        features.append((params.omega1, params.gammaV))
    return features


def pair_features(params: GateParams) -> List[Feature]:
    """Features of functions of the total wavenumber K = k_H + k_V"""
    return [
        (2.0 * params.k0, 2.0 * params.gamma),
        (2.0 * params.omega1, params.gammaH + params.gammaV),
        (params.k0 + params.omega1, params.gamma + params.gammaV),
        (params.k0 + params.omega1, params.gamma + params.gammaH),
    ]


def build_kgrid(
    params: GateParams,
    resolution: int = 512,
    cutoff: float = 40.0,
    symmetric: bool = False,
) -> KGrid:
    """
    Single-photon grid with panels concentrated on k0 (width gamma) and omega1 (width Gamma)

    Args:
        params: Gate parameters
        resolution: Target node count, at least 64
        cutoff: Window half-width multiplier around each feature
        symmetric: Mirror the grid about k0 so that pulse inversion stays on-grid

    Returns:
        KGrid
    """
    return build_feature_grid(
        gate_features(params),
        resolution=resolution,
        cutoff=cutoff,
        symmetric_about=params.k0 if symmetric else None,
    )


def build_pair_grid(params: GateParams, resolution: int = 512, cutoff: float = 40.0) -> KGrid:
    """Grid over the total wavenumber of a photon pair"""
    return build_feature_grid(pair_features(params), resolution=resolution, cutoff=cutoff)
