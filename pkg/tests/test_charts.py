from __future__ import annotations

import pytest

from influence_forge.charts import render_series_chart


class TestRenderSeriesChart:
    def test_basic_document(self):
        svg = render_series_chart(
            [[0.2, 0.4, 0.6], [0.8, 0.6, 0.4]],
            labels=("alpha", "beta"),
            title="crossing",
        )
        assert svg.startswith("<svg")
        assert svg.endswith("</svg>\n")
        assert svg.count("<polyline") == 2
        assert "alpha" in svg and "beta" in svg and "crossing" in svg
        assert "stroke-dasharray" in svg  # the one-half guide line
        assert "influence centrality" in svg

    def test_single_point_series(self):
        svg = render_series_chart([[0.5]], labels=("only",))
        assert svg.count("<polyline") == 1

    def test_empty_series_rejected(self):
        with pytest.raises(ValueError):
            render_series_chart([], labels=())
        with pytest.raises(ValueError):
            render_series_chart([[]], labels=("x",))

    def test_unequal_lengths_rejected(self):
        with pytest.raises(ValueError):
            render_series_chart([[0.1, 0.2], [0.3]], labels=("a", "b"))

    def test_label_count_must_match(self):
        with pytest.raises(ValueError):
            render_series_chart([[0.1], [0.2]], labels=("a",))
