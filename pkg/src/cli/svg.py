"""SVG autocontenido de las ramas de autovalores en el plano complejo."""

import numpy as np
import pandas as pd

_SIZE = 480
_COLORS = ("#1f77b4", "#d62728")


def _to_px(z: np.ndarray, radius: float):
    half = _SIZE / 2.0
    scale = 0.9 * half / radius
    return half + scale * z.real, half - scale * z.imag


def eigenvalue_tracks_svg(curve: pd.DataFrame) -> str:
    """Circunferencia unidad y una polilínea por rama (lambda1, lambda2)."""
    tracks = [curve[name].to_numpy() for name in ("lambda1", "lambda2")]
    radius = max(1.0, float(max(np.max(np.abs(t)) for t in tracks)))
    half = _SIZE / 2.0
    cx, cy = _to_px(np.array([0j]), radius)
    rx = 0.9 * half / radius

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<line x1="0" y1="{cy[0]:.2f}" x2="{_SIZE}" y2="{cy[0]:.2f}" stroke="#bbbbbb"/>',
        f'<line x1="{cx[0]:.2f}" y1="0" x2="{cx[0]:.2f}" y2="{_SIZE}" stroke="#bbbbbb"/>',
        f'<circle class="unit-circle" cx="{cx[0]:.2f}" cy="{cy[0]:.2f}" r="{rx:.2f}" fill="none" stroke="black"/>',
    ]
    for idx, (track, color) in enumerate(zip(tracks, _COLORS), start=1):
        xs, ys = _to_px(track, radius)
        points = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline class="track" id="lambda{idx}" points="{points}" fill="none" stroke="{color}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
