"""Competitive binary search trees on a metered pointer-machine harness.

Structures: static balanced tree, tango tree, hybrid tree, zipper tree,
and the hybrid stack with O(min(k, log n)) worst-case multipop.  The
reference module provides the interleave lower bound they are measured
against.
"""

from .calibration import lg, ll

__all__ = ["lg", "ll"]
