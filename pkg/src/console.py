"""
Shared rich console.
Progress and summaries go to stderr so reports written to stdout stay clean.
"""

from rich.console import Console

console = Console(stderr=True)
