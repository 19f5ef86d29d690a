"""Artifact writing"""

from .report_writer import ReportWriter, read_config_line

__all__ = ['ReportWriter', 'read_config_line']
