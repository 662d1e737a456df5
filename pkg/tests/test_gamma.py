from crosscover.gamma import (
    EXACT,
    UPPER_ONLY,
    gamma_interval,
    interval_to_json,
    report_data,
)
from crosscover.rational import rat


class TestGammaInterval:
    def test_d4_small_m_ratio_one(self):
        cache = {}
        for m in (1, 4, 7):
            g = gamma_interval(4, m, cache=cache)
            assert g.exact and g.lower == 1 and g.upper == 1
            assert g.status == EXACT

    def test_d4_axis_range(self):
        cache = {}
        for m in (8, 9, 10, 11):
            g = gamma_interval(4, m, cache=cache)
            assert g.exact
            assert g.lower == rat(3, 4) and g.upper == rat(3, 4)

    def test_d4_plus4(self):
        g = gamma_interval(4, 12)
        assert g.exact
        assert g.lower == rat(5, 7) and g.upper == rat(5, 7)
        assert g.upper_construction == "plus4"

    def test_d4_beyond_scope_upper_only(self):
        g = gamma_interval(4, 13)
        assert not g.exact
        assert g.lower is None
        assert g.upper == rat(5, 7)
        assert g.status == UPPER_ONLY

    def test_d3_flagged_exact(self):
        g = gamma_interval(3, 6)
        assert g.exact
        assert g.lower == rat(2, 3) and g.upper == rat(2, 3)
        assert "octahedron" in g.note

    def test_d3_table_range(self):
        cache = {}
        for m, expected in [(1, rat(1)), (5, rat(1)), (7, rat(2, 3)), (9, rat(2, 3))]:
            g = gamma_interval(3, m, cache=cache)
            assert g.exact and g.upper == expected

    def test_d3_m10_upper_only(self):
        g = gamma_interval(3, 10)
        assert not g.exact
        assert g.upper == rat(2, 3)
        assert g.status == UPPER_ONLY

    def test_json_shape(self):
        data = interval_to_json(gamma_interval(4, 9))
        assert data["lower"] == "3/4" and data["upper"] == "3/4"
        assert data["exact"] is True
        assert data["lower_certificate"]["kind"] == "complete_conflict"


class TestReport:
    def test_d3_only_report(self):
        data = report_data(dims=(3,))
        assert len(data["rows"]) == 10
        exact_ms = [r["m"] for r in data["rows"] if r["exact"]]
        assert exact_ms == list(range(1, 10))  # m = 10 is upper-only
        assert data["hadwiger"] == []  # corollary rows start at d = 4

    def test_d4_report_has_hadwiger_line(self):
        data = report_data(dims=(4,))
        lines = data["hadwiger"]
        assert len(lines) == 1
        line = lines[0]
        assert line["d"] == 4
        assert line["covering_number_at_most"] == 8
        assert line["hypercube_bound"] == 16
        assert line["holds"] is True
