"""Traces, summaries and the experiment report."""
from .generator import ReportGenerator, RunFailure
from .summary import SummaryRow, summarize, summarize_directory
from .traces import RunTrace, TraceRecord, read_trace_file, write_trace_file

__all__ = [
    "ReportGenerator",
    "RunFailure",
    "SummaryRow",
    "summarize",
    "summarize_directory",
    "RunTrace",
    "TraceRecord",
    "read_trace_file",
    "write_trace_file",
]
