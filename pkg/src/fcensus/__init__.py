"""Exact finite-field linear algebra and census toolkit.

Counts matrices over small finite fields that commute with their
entrywise p-th-power image, stratifies them combinatorially, and checks
the exhaustive counts against closed-form predictions.
"""

__version__ = "0.1.0"
