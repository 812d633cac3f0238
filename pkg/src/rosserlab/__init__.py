"""rosserlab: a workbench for Rosser-style self-reference and slow provability."""

__version__ = "0.1.0"
