from io import BytesIO

import openpyxl
from openpyxl.worksheet.worksheet import Worksheet
from src.core.utils.excel_utils import export_to_excel


def _load(raw: bytes) -> Worksheet:
    sheet = openpyxl.load_workbook(BytesIO(raw)).active
    assert isinstance(sheet, Worksheet)
    return sheet


class TestExportToExcel:
    rows = [(0, 0, 1), (1, 0, 2), (2, 1, 1)]

    def _export(self, sheet_name: str = "Dimensions") -> Worksheet:
        return _load(
            export_to_excel(
                sheet_name=sheet_name,
                field_map={
                    "i": lambda row: row[0],
                    "s": lambda row: row[1],
                    "dimension": lambda row: row[2],
                },
                rows=self.rows,
            )
        )

    def test_header_and_rows(self):
        sheet = self._export()
        values = [list(row) for row in sheet.iter_rows(values_only=True)]
        assert values == [["i", "s", "dimension"], [0, 0, 1], [1, 0, 2], [2, 1, 1]]

    def test_header_is_bold_and_frozen(self):
        sheet = self._export()
        assert all(cell.font.bold for cell in sheet[1])
        assert sheet.freeze_panes == "A2"

    def test_long_sheet_name_truncated(self):
        sheet = self._export("Bigraded dimensions of Hilbert schemes")
        assert sheet.title == "Bigraded dimensions of Hilbert schemes"[:31]
        assert len(sheet.title) == 31

    def test_column_width_fits_header(self):
        sheet = self._export()
        assert sheet.column_dimensions["C"].width == len("dimension") + 2
