"""Evaluation metrics: attribute-level VAES, table RMS, image SSIM, success rate.

All scores are fractions in [0, 1]; the eval harness scales report values by 100.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d
from scipy.optimize import linear_sum_assignment

from .errors import DimensionMismatch, EmptyBatch, SchemaViolation
from .spec import BarProps, ChartSpec
from .table import DataTable

DATA_KEY = "underlying_data"  # pseudo-key owned by RMS, excluded from AttributeMap

# integer-coded attributes where a numeric ramp would be meaningless
_CATEGORICAL_SUFFIXES = (".loc", ".ncol", ".rotation")


@dataclass(frozen=True)
class MetricConfig:
    tau_v: float = 0.4          # VAES numeric tolerance
    tau_t: float = 0.5          # RMS text clip threshold
    theta: float = 0.4          # RMS numeric tolerance
    epsilon: float = 1e-9
    ssim_window: int = 11
    ssim_sigma: float = 1.5
    ssim_k1: float = 0.01
    ssim_k2: float = 0.03
    ssim_l: float = 255.0

    def __post_init__(self):
        for name in ("tau_v", "tau_t", "theta"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise SchemaViolation(name, "threshold must be in (0, 1]")
        if self.ssim_window < 3 or self.ssim_window % 2 == 0:
            raise SchemaViolation("ssim_window", "window must be odd and >= 3")


DEFAULT_CONFIG = MetricConfig()


@dataclass(frozen=True)
class VaesScore:
    precision: float
    recall: float
    f1: float
    s_changed: float
    s_unchanged: float
    s_f: float


@dataclass(frozen=True)
class RmsScore:
    precision: float
    recall: float
    f1: float


def flatten_attributes(spec: ChartSpec) -> dict[str, object]:
    """Leaf path -> value for every field except the data table."""
    g = spec.global_props
    out: dict[str, object] = {
        "chart_title": spec.chart_title,
        "x_axis_title": spec.x_axis_title,
        "y_axis_title": spec.y_axis_title,
        "global_properties.chart_type": g.chart_type,
        "global_properties.x_label_params.fontname": g.x_label_params.fontname,
        "global_properties.x_label_params.fontsize": g.x_label_params.fontsize,
        "global_properties.y_label_params.fontname": g.y_label_params.fontname,
        "global_properties.y_label_params.fontsize": g.y_label_params.fontsize,
        "global_properties.legend_params.loc": g.legend_params.loc,
        "global_properties.legend_params.ncol": g.legend_params.ncol,
        "global_properties.chart_title_params.fontname": g.chart_title_params.fontname,
        "global_properties.chart_title_params.fontsize": g.chart_title_params.fontsize,
        "global_properties.chart_title_params.rotation": g.chart_title_params.rotation,
        "global_properties.grid_params.visible": g.grid_params.visible,
        "global_properties.grid_params.axis": g.grid_params.axis,
        "global_properties.grid_params.linestyle": g.grid_params.linestyle,
    }
    for name, t in (("x_tick_params", g.x_tick_params), ("y_tick_params", g.y_tick_params)):
        base = f"global_properties.{name}."
        out[base + "axis"] = t.axis
        out[base + "which"] = t.which
        out[base + "rotation"] = t.rotation
        out[base + "labelsize"] = t.labelsize
        out[base + "labelfontfamily"] = t.labelfontfamily
    if isinstance(spec.series_props, BarProps):
        arrays = {"bar_properties.hatches": spec.series_props.hatches,
                  "bar_properties.colors": spec.series_props.colors}
    else:
        arrays = {"line_properties.linestyles": spec.series_props.linestyles,
                  "line_properties.markers": spec.series_props.markers,
                  "line_properties.colors": spec.series_props.colors}
    for prefix, values in arrays.items():
        for i, v in enumerate(values):
            out[f"{prefix}[{i}]"] = v
    return out


def attribute_similarity(predicted, gold, cfg: MetricConfig = DEFAULT_CONFIG,
                         categorical: bool = False) -> float:
    """Per-attribute S(e, g): exact match for categories, linear ramp for numbers."""
    p_num = isinstance(predicted, (int, float)) and not isinstance(predicted, bool)
    g_num = isinstance(gold, (int, float)) and not isinstance(gold, bool)
    if categorical or not (p_num and g_num):
        return 1.0 if predicted == gold else 0.0
    denom = cfg.tau_v * max(abs(gold), cfg.epsilon)
    return 1.0 - min(1.0, abs(predicted - gold) / denom)


def _is_categorical(path: str) -> bool:
    return path.endswith(_CATEGORICAL_SUFFIXES)


def minimal_cost_assignment(cost: np.ndarray) -> list[tuple[int, int]]:
    """Exact minimal-cost matching over a rectangular cost matrix."""
    if cost.size == 0:
        return []
    rows, cols = linear_sum_assignment(cost)
    return list(zip(rows.tolist(), cols.tolist()))


def vaes(predicted: ChartSpec, gold: ChartSpec, changed_keys: set[str] | frozenset[str],
         cfg: MetricConfig = DEFAULT_CONFIG) -> VaesScore:
    """Visual-attribute edit score with changed/unchanged grouping."""
    pred_map = flatten_attributes(predicted)
    gold_map = flatten_attributes(gold)
    pred_keys = list(pred_map)
    gold_keys = list(gold_map)

    sim = np.zeros((len(pred_keys), len(gold_keys)))
    gold_pos = {k: j for j, k in enumerate(gold_keys)}
    for i, pk in enumerate(pred_keys):
        j = gold_pos.get(pk)
        if j is not None:
            sim[i, j] = attribute_similarity(pred_map[pk], gold_map[pk], cfg,
                                             categorical=_is_categorical(pk))

    per_gold = [0.0] * len(gold_keys)
    total = 0.0
    for i, j in minimal_cost_assignment(1.0 - sim):
        per_gold[j] = sim[i, j]
        total += sim[i, j]

    precision = total / len(pred_keys) if pred_keys else 0.0
    recall = total / len(gold_keys) if gold_keys else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0

    changed = {k for k in changed_keys if k in gold_pos}
    c_sims = [per_gold[gold_pos[k]] for k in changed]
    u_sims = [per_gold[j] for k, j in gold_pos.items() if k not in changed]
    s_changed = sum(c_sims) / len(c_sims) if c_sims else 1.0
    s_unchanged = sum(u_sims) / len(u_sims) if u_sims else 1.0
    s_f = (2 * s_changed * s_unchanged / (s_changed + s_unchanged)
           if s_changed + s_unchanged else 0.0)
    return VaesScore(precision, recall, f1, s_changed, s_unchanged, s_f)


# ---------------------------------------------------------------------------
# RMS

def _levenshtein_within(a: str, b: str, cutoff: int) -> int:
    """Edit distance, or cutoff+1 as soon as it provably exceeds cutoff."""
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if abs(la - lb) > cutoff:
        return cutoff + 1
    if la > lb:
        a, b, la, lb = b, a, lb, la
    prev = list(range(la + 1))
    cur = [0] * (la + 1)
    for j in range(1, lb + 1):
        cur[0] = j
        best = cur[0]
        bj = b[j - 1]
        for i in range(1, la + 1):
            c = min(prev[i] + 1, cur[i - 1] + 1, prev[i - 1] + (a[i - 1] != bj))
            cur[i] = c
            if c < best:
                best = c
        if best > cutoff:
            return cutoff + 1
        prev, cur = cur, prev
    return prev[la]


def _text_distance(a: str, b: str, tau_t: float) -> float:
    """Normalized Levenshtein, clipped to 1 above tau_t."""
    if a == b:
        return 0.0
    longest = max(len(a), len(b))
    if longest == 0:
        return 0.0
    cutoff = math.floor(tau_t * longest)
    d = _levenshtein_within(a, b, cutoff)
    nl = d / longest
    return 1.0 if nl > tau_t else nl


def table_triples(table: DataTable) -> list[tuple[str, str, float | None]]:
    """(row name, column header, value) per cell; order carries no meaning."""
    out = []
    for s in table.rows:
        for header, v in zip(table.column_headers, s.values):
            out.append((s.name, header, v))
    return out


def _value_distance(vp: float | None, vg: float | None, cfg: MetricConfig) -> float:
    if vp is None and vg is None:
        return 0.0
    if vp is None or vg is None:
        return 1.0
    return min(1.0, abs(vp - vg) / (cfg.theta * max(abs(vg), cfg.epsilon)))


def rms(predicted: DataTable, gold: DataTable, cfg: MetricConfig = DEFAULT_CONFIG) -> RmsScore:
    """Relative mapping similarity between two tables, permutation invariant."""
    pred = table_triples(predicted)
    gld = table_triples(gold)
    n_p, n_g = len(pred), len(gld)
    p_text = [f"{r} | {c}".lower() for r, c, _ in pred]
    g_text = [f"{r} | {c}".lower() for r, c, _ in gld]

    dist = np.ones((n_p, n_g))
    for i, (_, _, vp) in enumerate(pred):
        for j, (_, _, vg) in enumerate(gld):
            nl = _text_distance(p_text[i], g_text[j], cfg.tau_t)
            if nl >= 1.0:
                continue  # distance stays 1
            dv = _value_distance(vp, vg, cfg)
            dist[i, j] = 1.0 - (1.0 - nl) * (1.0 - dv)

    total_sim = 0.0
    for i, j in minimal_cost_assignment(dist):
        total_sim += 1.0 - dist[i, j]
    precision = total_sim / n_p if n_p else 0.0
    recall = total_sim / n_g if n_g else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return RmsScore(precision, recall, f1)


# ---------------------------------------------------------------------------
# SSIM

def _to_gray(img) -> np.ndarray:
    px = getattr(img, "pixels", img)
    if not isinstance(px, np.ndarray):
        raise DimensionMismatch("expected an image array")
    arr = px.astype(np.float64)
    if arr.ndim == 2:
        return arr
    if arr.ndim == 3 and arr.shape[2] == 3:
        return arr[..., 0] * 0.299 + arr[..., 1] * 0.587 + arr[..., 2] * 0.114
    if arr.ndim == 3 and arr.shape[2] == 1:
        return arr[..., 0]
    raise DimensionMismatch(f"unsupported image shape {arr.shape}")


def _gaussian_kernel(window: int, sigma: float) -> np.ndarray:
    x = np.arange(window, dtype=np.float64) - (window - 1) / 2.0
    k = np.exp(-(x ** 2) / (2.0 * sigma ** 2))
    return k / k.sum()


def _windowed_mean(arr: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    tmp = correlate1d(arr, kernel, axis=0, mode="reflect")
    return correlate1d(tmp, kernel, axis=1, mode="reflect")


def ssim(image_a, image_b, cfg: MetricConfig = DEFAULT_CONFIG) -> float:
    """Mean local structural similarity over an 11x11 Gaussian window."""
    a = _to_gray(image_a)
    b = _to_gray(image_b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"image shapes differ: {a.shape} vs {b.shape}")
    if min(a.shape) < cfg.ssim_window:
        raise DimensionMismatch("image smaller than the SSIM window")
    kernel = _gaussian_kernel(cfg.ssim_window, cfg.ssim_sigma)
    c1 = (cfg.ssim_k1 * cfg.ssim_l) ** 2
    c2 = (cfg.ssim_k2 * cfg.ssim_l) ** 2

    mu_a = _windowed_mean(a, kernel)
    mu_b = _windowed_mean(b, kernel)
    var_a = _windowed_mean(a * a, kernel) - mu_a * mu_a
    var_b = _windowed_mean(b * b, kernel) - mu_b * mu_b
    cov = _windowed_mean(a * b, kernel) - mu_a * mu_b

    num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)
    den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    smap = num / den
    half = cfg.ssim_window // 2  # drop padded borders
    interior = smap[half:-half, half:-half]
    return float(interior.mean())


def success_rate(outcomes) -> float:
    """Fraction of successful samples."""
    items = list(outcomes)
    if not items:
        raise EmptyBatch("no samples")
    return sum(bool(x) for x in items) / len(items)
