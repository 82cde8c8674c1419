"""
Utils module - Paths and file helpers for ascentlab
"""

from .files import read_json, read_jsonl, write_json, write_jsonl, write_text
from .paths import get_paths

__all__ = [
    "get_paths",
    "read_json",
    "read_jsonl",
    "write_json",
    "write_jsonl",
    "write_text",
]
