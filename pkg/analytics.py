# analytics.py
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd


@dataclass
class LogLogFit:
    slope: float
    intercept: float
    residual: float
    n_points: int

    def predict(self, x: float) -> float:
        return math.exp(self.intercept) * x ** self.slope


def fit_loglog(xs: Sequence[float], ys: Sequence[float]) -> LogLogFit:
    """Least-squares line through (log x, log y); residual is the RMS misfit in log space."""
    pairs = [(float(x), float(y)) for x, y in zip(xs, ys) if x > 0 and y > 0 and math.isfinite(y)]
    if len(pairs) < 2:
        raise ValueError(f"Log-log fit needs two positive points, got {len(pairs)}")
    lx = np.log([x for x, _ in pairs])
    ly = np.log([y for _, y in pairs])
    z = np.polyfit(lx, ly, 1)
    trend = np.poly1d(z)(lx)
    residual = float(np.sqrt(np.mean((ly - trend) ** 2)))
    return LogLogFit(float(z[0]), float(z[1]), residual, len(pairs))


def grows_at_most_linearly(omegas: Sequence[float], log_values: Sequence[float], slack: float = 0.25) -> bool:
    """Secant slopes of log M̂ against ω(0,T) must not increase beyond `slack` (relative to the first)."""
    x = np.asarray(omegas, dtype=float)
    y = np.asarray(log_values, dtype=float)
    order = np.argsort(x)
    x, y = x[order], y[order]
    if len(x) < 3:
        return True
    secants = np.diff(y) / np.maximum(np.diff(x), 1e-300)
    first = secants[0]
    growth = secants[1:] - first
    allowed = slack * max(abs(first), 1.0)
    ok = bool(np.all(growth <= allowed))
    if not ok:
        logging.warning(f"❌ log M̂ secants {secants.tolist()} grow faster than linear")
    return ok


def ratio_stability(ratios: Sequence[float], factor: float = 2.0) -> bool:
    """max/min of the positive ratios stays within `factor`."""
    vals = [r for r in ratios if r > 0 and math.isfinite(r)]
    if not vals:
        return False
    return max(vals) / min(vals) <= factor


def summary_table(rows: List[Dict[str, object]], sort_by: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """Instance rows to a DataFrame, failed instances last."""
    df = pd.DataFrame(rows)
    if df.empty:
        return df
    if sort_by:
        df = df.sort_values(list(sort_by)).reset_index(drop=True)
    if "status" in df.columns:
        df = pd.concat([df[df["status"] != "failed"], df[df["status"] == "failed"]]).reset_index(drop=True)
    return df


def pass_fraction(df: pd.DataFrame, column: str = "pass") -> float:
    if df.empty or column not in df.columns:
        return 0.0
    return float(df[column].eq(True).mean())
