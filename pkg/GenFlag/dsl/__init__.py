# dsl/__init__.py

from .document import DocumentKind, SpecDocument
from .parser import load_spec, parse_spec, tokenize
from .printer import format_value, format_vector, print_spec, render_report

__all__ = [
    'DocumentKind',
    'SpecDocument',
    'load_spec',
    'parse_spec',
    'tokenize',
    'format_value',
    'format_vector',
    'print_spec',
    'render_report'
]
