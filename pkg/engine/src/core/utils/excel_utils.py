from collections.abc import Callable
from io import BytesIO
from typing import Any

import openpyxl
from openpyxl.styles import Font
from openpyxl.utils import get_column_letter
from openpyxl.worksheet.worksheet import Worksheet


def export_to_excel[T](
    sheet_name: str,
    field_map: dict[str, Callable[[T], Any]],
    rows: list[T],
) -> bytes:
    """Build a one-sheet Excel workbook from a list of rows and return it as raw bytes.

    Column headers are the keys of field_map (bold, header row frozen, auto-width up
    to 50 characters). The sheet title has no timestamp.

    Args:
        sheet_name: Sheet title; truncated to Excel's 31-character limit.
        field_map: Ordered mapping of column header → extractor callable.
        rows: Records to export; one worksheet row per record.

    Returns:
        Raw bytes of the saved .xlsx workbook.
    """
    workbook = openpyxl.Workbook()
    sheet = workbook.active
    assert isinstance(sheet, Worksheet)
    sheet.title = sheet_name[:31]

    sheet.append(list(field_map.keys()))
    bold_font = Font(bold=True)
    for cell in sheet[1]:
        cell.font = bold_font
    sheet.freeze_panes = "A2"

    for row in rows:
        sheet.append([extract(row) for extract in field_map.values()])

    for col_idx, column_cells in enumerate(sheet.columns, start=1):
        widest = max(
            (len(str(cell.value)) for cell in column_cells if cell.value is not None), default=0
        )
        sheet.column_dimensions[get_column_letter(col_idx)].width = min(widest + 2, 50)

    buffer = BytesIO()
    workbook.save(buffer)
    return buffer.getvalue()
