# coding: utf-8

"""
custom print and log functions
"""

__all__ = ['rprint', 'rlog', 'console']

try:
    from rich.console import Console
    # stderr keeps machine-readable output on stdout clean
    console = Console(stderr=True)
    rprint = console.print
    rlog = console.log
except ImportError:
    console = None
    rprint = print
    rlog = print
