"""Monthly metric aggregation."""

from .aggregate import aggregate_monthly, normalize_label
from .monthly_csv import monthly_path, read_monthly_csv, write_monthly_csv
from .months import MonthBucket, MonthlyRow, month_range
from .registry import COMPONENT_IDS, COMPONENTS, ComponentSpec, component
from .summary import summarize_project, write_summary
from .temporal import closure_duration, response_time

__all__ = [
    "COMPONENTS",
    "COMPONENT_IDS",
    "ComponentSpec",
    "MonthBucket",
    "MonthlyRow",
    "aggregate_monthly",
    "closure_duration",
    "component",
    "month_range",
    "monthly_path",
    "normalize_label",
    "read_monthly_csv",
    "response_time",
    "summarize_project",
    "write_monthly_csv",
    "write_summary",
]
