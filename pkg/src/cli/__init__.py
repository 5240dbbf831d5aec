"""Command-line front end."""

from .main import main, create_parser

__all__ = ['main', 'create_parser']
