"""Table and figure reports: model columns next to sieve observations.

Observed values always come from :mod:`quadprimes.sieve_oracle`. Published
reference values are carried for the delta columns only.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from . import __version__
from . import distribution_models as dm
from . import sieve_oracle as so
from .errors import DomainError, RangeTooLargeError

# Reference rows, decimal commas rendered as points.
PUBLISHED_TAB_5_1 = {10: (26, 30), 20: (80, 85), 30: (161, 162), 40: (266, 263)}
PUBLISHED_TAB_5_2 = {
    1: (2.29, 0.86, 3.5),
    10: (4.4, 10.2, 2.05),
    100: (23.1, 37.9, 5.30),
    150: (31.9, 44.8, 6.72),
    300: (55.8, 58.0, 10.4),
    400: (70.8, 64.0, 12.5),
    10**3: (154, 85.0, 23.6),
    10**4: (1151, 151.0, 132.5),
    10**5: (9207, 235.9, 847.7),
    10**6: (76725.4, 339.7, 5886.9),
}
# printed decimals of each table-5.2 cell, used to round before comparing
TAB_5_2_DECIMALS = {
    1: (2, 2, 1),
    10: (1, 1, 2),
    100: (1, 1, 2),
    150: (1, 1, 2),
    300: (1, 1, 1),
    400: (1, 1, 1),
    10**3: (0, 1, 1),
    10**4: (0, 1, 1),
    10**5: (0, 1, 1),
    10**6: (1, 1, 1),
}
PUBLISHED_TAB_5_3 = {
    10: (4, 2.36),
    100: (14, 9.44),
    10**3: (20, 21.23),
    10**4: (36, 37.75),
    10**5: (54, 58.98),
    840_000: (100, 82.81),
}
PUBLISHED_TAB_7_1 = {0: (122, 3.19), 1: (213, 4.47), 2: (502, 7.84), 3: (545, 8.29), 4: (829, 11.09)}
PUBLISHED_TAB_7_2 = {
    1: (1.75, 11.19, 0.49),
    10: (1.03, 2.14, 0.32),
    100: (2.65, 4.01, 1.57),
    10**3: (11.78, 15.68, 8.45),
    10**4: (66.23, 82.32, 51.86),
    10**5: (423.85, 505.23, 349.25),
    10**6: (2943.39, 3411.39, 2510.71),
}
TWIN_SEARCH_LIMIT = 915

FIGURE_DEFAULT_RANGES = {"5.1": (1, 240), "7.1": (1, 915), "8.1": (1, 30), "9.1": (8, 330)}


def fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float):
        return float(f"{value:.6g}")
    return value


@dataclass
class Report:
    name: str
    header: dict[str, Any]
    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)

    def header_line(self) -> str:
        parts = [f"quadprimes {__version__}", f"report={self.name}"]
        parts += [f"{k}={fmt(v)}" for k, v in self.header.items()]
        return "# " + " ".join(parts)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(self.header_line() + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([fmt(row.get(c)) for c in self.columns])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "report": self.name,
            "version": __version__,
            "header": {k: _json_value(v) for k, v in self.header.items()},
            "columns": self.columns,
            "rows": [{c: _json_value(row.get(c)) for c in self.columns} for row in self.rows],
        }
        return json.dumps(payload, indent=2) + "\n"

    def render(self, fmt_name: str) -> str:
        if fmt_name == "csv":
            return self.to_csv()
        if fmt_name == "json":
            return self.to_json()
        raise DomainError(f"unknown format {fmt_name!r}")


@dataclass
class ReportRow:
    """One figure row; observed is always a sieve count."""

    key: int
    observed: int | None
    model_mean: float
    model_lower: float | None
    model_upper: float | None
    a_prime: float
    band: str

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


def _header(params: dm.ModelParams, engine: str = "oracle") -> dict[str, Any]:
    head = params.header()
    head["engine"] = engine
    return head


def _delta(model: float | None, published: float | None) -> float | None:
    if model is None or published is None:
        return None
    return abs(model - published)


def _within_ceiling(hi: int, ceiling: int | None) -> bool:
    limit = so.get_default_ceiling() if ceiling is None else ceiling
    return hi <= limit


def _observed_interval(n: int, ceiling: int | None) -> so.QuadIntervalStats | None:
    _, hi = so.interval_bounds(n)
    if not _within_ceiling(hi + 9, ceiling):
        return None
    return so.interval_stats(n)


# --- tables ------------------------------------------------------------------


def table_5_1(params: dm.ModelParams, ceiling: int | None = None) -> Report:
    rows = []
    for n0, (pub_model, pub_real) in PUBLISHED_TAB_5_1.items():
        model = dm.pi_model_cumulative(n0, basis="lower")
        real = so.pi_oracle((n0 + 1) ** 2)
        rows.append(
            {
                "n0": n0,
                "x": (n0 + 1) ** 2,
                "model": model,
                "published_model": pub_model,
                "delta_model": abs(model - pub_model),
                "model_upper_basis": dm.pi_model_cumulative(n0, basis="upper"),
                "observed": real,
                "published_observed": pub_real,
                "delta_observed": abs(real - pub_real),
            }
        )
    head = _header(params)
    head["rounding"] = "floor-per-interval"
    return Report("table-5.1", head, list(rows[0]), rows)


def table_5_2(params: dm.ModelParams, ceiling: int | None = None) -> Report:
    rows = []
    for n, (pub_mean, pub_spacing, pub_scatter) in PUBLISHED_TAB_5_2.items():
        band = dm.prime_band(n, params)
        spacing = dm.pair_spacing(n, params)
        scatter = dm.scatter_width(n, params)
        obs = _observed_interval(n, ceiling)
        rows.append(
            {
                "n": n,
                "width": dm.interval_width(n),
                "mean": band.mean,
                "published_mean": pub_mean,
                "delta_mean": _delta(band.mean, pub_mean),
                "mean_spacing": dm.mean_spacing(n, params),
                "pair_spacing": spacing,
                "published_spacing": pub_spacing,
                "delta_spacing": _delta(spacing, pub_spacing),
                "scatter": scatter,
                "published_scatter": pub_scatter,
                "delta_scatter": _delta(scatter, pub_scatter),
                "lower": band.lower,
                "upper": band.upper,
                "observed": None if obs is None else obs.prime_count,
            }
        )
    head = _header(params)
    head["spacing"] = "pair"
    return Report("table-5.2", head, list(rows[0]), rows)


def table_5_3(params: dm.ModelParams, ceiling: int | None = None) -> Report:
    rows = []
    for x, (pub_gap, pub_model) in PUBLISHED_TAB_5_3.items():
        model = dm.max_gap_model(x, params)
        gap = lower = upper = None
        if _within_ceiling(x + 1, ceiling):
            gap, lower, upper = so.max_gap_up_to(x)
        rows.append(
            {
                "x": x,
                "model": model,
                "published_model": pub_model,
                "delta_model": _delta(model, pub_model),
                "observed_max_gap": gap,
                "gap_lower_prime": lower,
                "gap_upper_prime": upper,
                "published_gap": pub_gap,
                "delta_gap": None if gap is None else abs(gap - pub_gap),
            }
        )
    head = _header(params)
    head["observed"] = "max-gap-up-to-x"
    return Report("table-5.3", head, list(rows[0]), rows)


def last_interval_with(counts: so.IntervalCounts, k: int) -> int | None:
    """Largest n in the scanned range whose interval holds exactly k twins."""
    hits = counts.ns[counts.twins == k]
    return int(hits[-1]) if len(hits) else None


def table_7_1(params: dm.ModelParams, ceiling: int | None = None, search_limit: int = TWIN_SEARCH_LIMIT) -> Report:
    counts = so.quadratic_interval_counts(search_limit)
    unit = params.with_(a_doubleprime_mode="unit")
    fit = params.with_(a_doubleprime_mode="fit")
    rows = []
    for k, (pub_n, pub_model) in PUBLISHED_TAB_7_1.items():
        n_max = last_interval_with(counts, k)
        model = None if n_max is None else dm.twin_mean(n_max, unit)
        rows.append(
            {
                "twins": k,
                "observed_n_max": n_max,
                "published_n_max": pub_n,
                "model_unit": model,
                "published_model": pub_model,
                "delta_model": _delta(model, pub_model),
                "model_fit": None if n_max is None else dm.twin_mean(n_max, fit),
            }
        )
    head = _header(params)
    head["search_limit"] = search_limit
    return Report("table-7.1", head, list(rows[0]), rows)


def table_7_2(params: dm.ModelParams, ceiling: int | None = None) -> Report:
    rows = []
    for n, (pub_mean, pub_upper, pub_lower) in PUBLISHED_TAB_7_2.items():
        pred = dm.twin_model(n, params)
        obs = _observed_interval(n, ceiling)
        rows.append(
            {
                "n": n,
                "mean": pred.mean,
                "published_mean": pub_mean,
                "delta_mean": _delta(pred.mean, pub_mean),
                "upper": pred.upper,
                "published_upper": pub_upper,
                "delta_upper": _delta(pred.upper, pub_upper),
                "lower": pred.lower,
                "published_lower": pub_lower,
                "delta_lower": _delta(pred.lower, pub_lower),
                "observed": None if obs is None else obs.twin_count,
            }
        )
    return Report("table-7.2", _header(params), list(rows[0]), rows)


TABLES: dict[str, Callable[..., Report]] = {
    "5.1": table_5_1,
    "5.2": table_5_2,
    "5.3": table_5_3,
    "7.1": table_7_1,
    "7.2": table_7_2,
}


def build_table(table_id: str, params: dm.ModelParams, ceiling: int | None = None) -> Report:
    try:
        builder = TABLES[table_id]
    except KeyError:
        raise DomainError(f"unknown table {table_id!r}; choose from {sorted(TABLES)}") from None
    return builder(params, ceiling)


# --- figures -----------------------------------------------------------------

FIGURE_COLUMNS = ["key", "observed", "model_mean", "model_lower", "model_upper", "a_prime", "band"]


def _band_row(key: int, observed: int | None, pred: dm.BandedPrediction, params: dm.ModelParams) -> dict[str, Any]:
    return ReportRow(
        key, observed, pred.mean, pred.lower, pred.upper, params.effective_a_prime, params.band_variant
    ).as_dict()


def figure_5_1(params: dm.ModelParams, lo: int, hi: int) -> Report:
    counts = so.quadratic_interval_counts(hi, lo)
    rows = []
    for n in range(lo, hi + 1):
        row = _band_row(n, counts.at(n)[0], dm.prime_band(n, params), params)
        row["band"] = "linear"
        row["initial_interval_model"] = dm.initial_interval_model(n, params)
        rows.append(row)
    return Report("figure-5.1", _header(params), FIGURE_COLUMNS + ["initial_interval_model"], rows)


def figure_7_1(params: dm.ModelParams, lo: int, hi: int) -> Report:
    counts = so.quadratic_interval_counts(hi, lo)
    rows = [_band_row(n, counts.at(n)[1], dm.twin_model(n, params), params) for n in range(lo, hi + 1)]
    return Report("figure-7.1", _header(params), FIGURE_COLUMNS, rows)


def figure_8_1(params: dm.ModelParams, lo: int, hi: int) -> Report:
    _check_ceiling((hi + 1) ** 4 + 9)
    starts = so.constellations_up_to((hi + 1) ** 4 + 8)
    rows = []
    for n in range(lo, hi + 1):
        lo_x, hi_x = so.interval_bounds(n, "biquadratic")
        inside = int(((starts > lo_x) & (starts <= hi_x)).sum())
        row = ReportRow(n, inside, dm.quad_model(n, params), None, None, params.effective_a_prime, "none").as_dict()
        row["cumulative_observed"] = int((starts + 8 <= n**4).sum())
        rows.append(row)
    return Report("figure-8.1", _header(params), FIGURE_COLUMNS + ["cumulative_observed"], rows)


def figure_9_1(params: dm.ModelParams, lo: int, hi: int) -> Report:
    lo = max(8, lo + lo % 2)
    observed = so.goldbach_counts(hi, lo)
    rows = [_band_row(k, v, dm.goldbach_model(k, params), params) for k, v in observed.items()]
    return Report("figure-9.1", _header(params), FIGURE_COLUMNS, rows)


def _check_ceiling(hi: int) -> None:
    if hi > so.get_default_ceiling():
        raise RangeTooLargeError(f"figure range reaches {hi}, above the ceiling")


FIGURES: dict[str, Callable[..., Report]] = {
    "5.1": figure_5_1,
    "7.1": figure_7_1,
    "8.1": figure_8_1,
    "9.1": figure_9_1,
}


def build_figure(fig_id: str, params: dm.ModelParams, lo: int | None = None, hi: int | None = None) -> Report:
    try:
        builder = FIGURES[fig_id]
    except KeyError:
        raise DomainError(f"unknown figure {fig_id!r}; choose from {sorted(FIGURES)}") from None
    d_lo, d_hi = FIGURE_DEFAULT_RANGES[fig_id]
    lo = d_lo if lo is None else lo
    hi = d_hi if hi is None else hi
    if hi < lo:
        raise DomainError("empty figure range")
    return builder(params, lo, hi)
