import numpy as np
import pytest

from jurymech.heatmap import color_hex, render_heatmap
from jurymech.sweep import Axis, SweepConfig, SweepResult


class TestColorScale:
    def test_endpoints_and_midpoint(self):
        assert color_hex(0.0) == "#FF0000"
        assert color_hex(0.5) == "#FFFFFF"
        assert color_hex(1.0) == "#00FF00"

    def test_quarter_rounds_half_down(self):
        assert color_hex(0.25) == "#FF7F7F"
        assert color_hex(0.75) == "#7FFF7F"

    def test_monotone_channels(self):
        reds = [int(color_hex(v)[1:3], 16) for v in np.linspace(0.5, 1.0, 51)]
        assert all(a >= b for a, b in zip(reds, reds[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            color_hex(-0.01)
        with pytest.raises(ValueError):
            color_hex(1.01)


class TestRender:
    def make_result(self, grid):
        config = SweepConfig(
            axis=Axis.REWARD_THRESHOLD,
            x_min=0.0,
            x_max=5.0,
            x_steps=grid.shape[1],
            rho_steps=grid.shape[0],
            n=10,
            rounds=2,
            samples=1,
        )
        return SweepResult(np.asarray(grid, dtype=float), config, 0.0)

    def test_svg_contents(self, tmp_path):
        grid = np.array([[0.0, 0.5], [1.0, 0.25]])
        path = tmp_path / "map.svg"
        render_heatmap(self.make_result(grid), str(path))
        text = path.read_text(encoding="utf-8")
        assert text.startswith("<svg")
        assert text.rstrip().endswith("</svg>")
        for color in ("#FF0000", "#FFFFFF", "#00FF00", "#FF7F7F"):
            assert f'fill="{color}"' in text
        assert "fraction well-informed" in text
        assert "reward per majority juror" in text
        assert "correctness" in text

    def test_one_rect_per_cell_plus_legend(self, tmp_path):
        grid = np.full((4, 6), 0.5)
        path = tmp_path / "map.svg"
        render_heatmap(self.make_result(grid), str(path))
        text = path.read_text(encoding="utf-8")
        # cells + 100 legend strips + background + 2 frames
        assert text.count("<rect") == 24 + 100 + 3
