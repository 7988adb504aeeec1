"""
Tests for parameter sweeps and table output.
"""

import json

import numpy as np
import pytest

from coherence_fraction_sdk.errors import OutOfRange, OutputError
from coherence_fraction_sdk.models import ChannelKind, OutputFormat, SweepSides, SweepSpec, SweepTable
from coherence_fraction_sdk.sweeps import (
    CROSS_COLUMNS,
    ERRATA_VALUE_COLUMNS,
    SINGLE_COLUMNS,
    run_errata,
    run_sweep,
    sweep_values,
    write_table,
)


class TestSweepValues:
    """Inclusive parameter grids."""

    def test_inclusive_grid(self):
        assert np.allclose(sweep_values(0.0, 1.0, 0.25), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_stop_reached_despite_rounding(self):
        values = sweep_values(0.0, 1.0, 0.1)
        assert len(values) == 11
        assert values[-1] == 1.0

    def test_single_point(self):
        assert list(sweep_values(0.5, 0.5, 0.1)) == [0.5]

    def test_bad_step(self):
        with pytest.raises(OutOfRange):
            sweep_values(0.0, 1.0, 0.0)

    def test_reversed_range(self):
        with pytest.raises(OutOfRange):
            sweep_values(1.0, 0.0, 0.1)


class TestRunSweep:
    """Two-qubit sweeps."""

    def test_one_sided_leaves_two_sided_empty(self, quick_cfg):
        spec = SweepSpec(kind=ChannelKind.BIT_FLIP, param="p", start=0.5, stop=0.5, step=0.1, sides=SweepSides.ONE_SIDED)
        table = run_sweep(spec, quick_cfg)
        assert table.columns == SINGLE_COLUMNS
        param, one_sided, two_sided, closed_form = table.rows[0]
        assert param == 0.5
        assert one_sided == pytest.approx(1.0, abs=1e-3)
        assert two_sided is None
        assert closed_form == 1.0

    def test_gad_gamma_defaults_to_one(self, quick_cfg):
        spec = SweepSpec(kind=ChannelKind.GAD, param="p", start=0.0, stop=0.0, step=0.1, sides=SweepSides.ONE_SIDED)
        table = run_sweep(spec, quick_cfg)
        assert table.rows[0][3] == pytest.approx(1.0)

    def test_cross_requires_second_channel(self, quick_cfg):
        spec = SweepSpec(kind=ChannelKind.BIT_FLIP, param="p", start=0.0, stop=1.0, step=0.5, sides=SweepSides.CROSS)
        with pytest.raises(OutOfRange):
            run_sweep(spec, quick_cfg)

    def test_cross_sweep(self, quick_cfg):
        spec = SweepSpec(
            kind=ChannelKind.BIT_FLIP,
            param="p",
            start=0.5,
            stop=0.5,
            step=0.1,
            sides=SweepSides.CROSS,
            kind2=ChannelKind.BIT_FLIP,
            param2="p",
            start2=0.25,
            stop2=0.25,
            step2=0.1,
        )
        table = run_sweep(spec, quick_cfg)
        assert table.columns == CROSS_COLUMNS
        assert table.rows[0][:2] == [0.5, 0.25]
        assert table.rows[0][2] == pytest.approx(1.0, abs=1e-3)

    @pytest.mark.slow
    def test_two_sided_depolarizing(self, quick_cfg):
        spec = SweepSpec(kind=ChannelKind.DEPOLARIZING, param="p", start=0.0, stop=1.0, step=0.5)
        table = run_sweep(spec, quick_cfg)
        assert [row[0] for row in table.rows] == [0.0, 0.5, 1.0]
        for param, one_sided, two_sided, closed_form in table.rows:
            assert one_sided == pytest.approx(closed_form, abs=1e-3)
            assert two_sided <= one_sided + 1e-3


class TestWriteTable:
    """CSV and JSON output."""

    TABLE = SweepTable(columns=["param", "ocf_one_sided", "ocf_two_sided", "closed_form"], rows=[[0.0, 1.0, None, 1.0], [0.5, 0.123456789012, None, 0.75]])

    def test_csv(self, tmp_path):
        path = tmp_path / "sweep.csv"
        write_table(self.TABLE, path, OutputFormat.CSV, precision=4)
        assert path.read_text() == "param,ocf_one_sided,ocf_two_sided,closed_form\n0,1,,1\n0.5,0.1235,,0.75\n"

    def test_json(self, tmp_path):
        path = tmp_path / "sweep.json"
        write_table(self.TABLE, path, "json", precision=3)
        data = json.loads(path.read_text())
        assert data["columns"] == self.TABLE.columns
        assert data["rows"][1] == [0.5, 0.123, None, 0.75]

    def test_identical_files_for_identical_tables(self, tmp_path):
        write_table(self.TABLE, tmp_path / "a.csv")
        write_table(self.TABLE, tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_unwritable(self, tmp_path):
        with pytest.raises(OutputError):
            write_table(self.TABLE, tmp_path / "missing" / "sweep.csv")


class TestErrataTables:
    """Printed closed forms against numerics over a grid."""

    def test_depolarizing(self, quick_cfg):
        table = run_errata(ChannelKind.DEPOLARIZING, quick_cfg, points=2)
        assert table.columns == ["p"] + ERRATA_VALUE_COLUMNS
        assert [row[0] for row in table.rows] == [0.0, 1.0]
        for row in table.rows:
            values = dict(zip(table.columns, row))
            assert values["numeric_ocf"] == pytest.approx(values["printed_ocf"], abs=1e-4)

    def test_self_complementary(self, quick_cfg):
        table = run_errata("self_complementary", quick_cfg, points=3)
        assert table.columns[0] == "theta"
        middle = dict(zip(table.columns, table.rows[1]))
        assert middle["theta"] == pytest.approx(np.pi / 2)
        assert middle["printed_decohering"] == pytest.approx(0.0, abs=1e-12)
        assert middle["numeric_decohering"] == pytest.approx(middle["corrected_decohering"], abs=1e-4)
