"""Deterministic file emission: commented CSV, sorted JSON, and a small SVG line plot."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .config import RunConfig

FLOAT_FMT = "{:.17g}"


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return FLOAT_FMT.format(x)
    return str(x)


def header_lines(cfg: RunConfig, command: str, extra: Sequence[tuple[str, object]] = ()) -> list[str]:
    lines = [f"# tadpole {command}"]
    lines += [f"# {k} = {v}" for k, v in cfg.header_items()]
    lines += [f"# {k} = {fmt(v)}" for k, v in extra]
    return lines


def write_csv(
    path: Path, cfg: RunConfig, command: str, columns: Sequence[str],
    rows: Iterable[Sequence], extra: Sequence[tuple[str, object]] = (),
) -> Path:
    lines = header_lines(cfg, command, extra)
    lines.append(",".join(columns))
    lines += [",".join(fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item"):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def write_json(path: Path, cfg: RunConfig, command: str, payload: dict) -> Path:
    doc = {"header": {"command": command, **dict(cfg.header_items())}, **payload}
    path.write_text(json.dumps(_clean(doc), indent=2, sort_keys=True) + "\n")
    return path


class SvgPlot:
    """Line plot in a fixed 640x420 frame with linear axes."""

    W, H = 640, 420
    ML, MR, MT, MB = 70, 20, 30, 50

    def __init__(self, xlim: tuple[float, float], ylim: tuple[float, float], title: str, xlabel: str, ylabel: str):
        self.xlim, self.ylim = xlim, ylim
        self.title, self.xlabel, self.ylabel = title, xlabel, ylabel
        self.items: list[str] = []

    def _px(self, x: float, y: float) -> tuple[float, float]:
        (x0, x1), (y0, y1) = self.xlim, self.ylim
        pw, ph = self.W - self.ML - self.MR, self.H - self.MT - self.MB
        return self.ML + (x - x0) / (x1 - x0) * pw, self.MT + (1.0 - (y - y0) / (y1 - y0)) * ph

    def line(self, xs: Sequence[float], ys: Sequence[float], color: str = "#1f4e9c", width: float = 1.5,
             dash: Optional[str] = None) -> None:
        pts = " ".join("{:.2f},{:.2f}".format(*self._px(x, y)) for x, y in zip(xs, ys))
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<polyline fill="none" stroke="{color}" stroke-width="{width}"{d} points="{pts}"/>')

    def hline(self, y: float, label: str, color: str = "#777777") -> None:
        self.line(self.xlim, (y, y), color=color, width=1.0, dash="2,4")
        x, yy = self._px(self.xlim[1], y)
        self.items.append(f'<text x="{x - 4:.2f}" y="{yy - 4:.2f}" font-size="11" text-anchor="end" fill="{color}">{label}</text>')

    def _ticks(self, lo: float, hi: float, n: int = 5) -> list[float]:
        return [lo + (hi - lo) * i / n for i in range(n + 1)]

    def render(self) -> str:
        (x0, x1), (y0, y1) = self.xlim, self.ylim
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.W}" height="{self.H}" viewBox="0 0 {self.W} {self.H}">',
            '<rect width="100%" height="100%" fill="white"/>',
        ]
        ax0, ay0 = self._px(x0, y0)
        ax1, ay1 = self._px(x1, y1)
        out.append(f'<rect x="{ax0:.2f}" y="{ay1:.2f}" width="{ax1 - ax0:.2f}" height="{ay0 - ay1:.2f}" fill="none" stroke="black"/>')
        for t in self._ticks(x0, x1):
            px, _ = self._px(t, y0)
            out.append(f'<text x="{px:.2f}" y="{ay0 + 16:.2f}" font-size="11" text-anchor="middle">{t:.3g}</text>')
        for t in self._ticks(y0, y1):
            _, py = self._px(x0, t)
            out.append(f'<text x="{ax0 - 6:.2f}" y="{py + 4:.2f}" font-size="11" text-anchor="end">{t:.4g}</text>')
        out.append(f'<text x="{(ax0 + ax1) / 2:.2f}" y="{self.H - 12}" font-size="12" text-anchor="middle">{self.xlabel}</text>')
        out.append(f'<text x="16" y="{(ay0 + ay1) / 2:.2f}" font-size="12" text-anchor="middle" '
                   f'transform="rotate(-90 16 {(ay0 + ay1) / 2:.2f})">{self.ylabel}</text>')
        out.append(f'<text x="{(ax0 + ax1) / 2:.2f}" y="18" font-size="13" text-anchor="middle">{self.title}</text>')
        out += self.items
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path: Path, cfg: RunConfig, command: str) -> Path:
        comment = "<!-- " + "; ".join(f"{k}={v}" for k, v in [("command", command), *cfg.header_items()]) + " -->\n"
        path.write_text(comment + self.render())
        return path


def padded(lo: float, hi: float, frac: float = 0.05) -> tuple[float, float]:
    span = hi - lo or 1.0
    return lo - frac * span, hi + frac * span
