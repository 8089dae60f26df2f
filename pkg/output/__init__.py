# Output Package
from .report_writer import ReportWriter, to_jsonable

__all__ = ["ReportWriter", "to_jsonable"]
