"""Exact increasing-chord paths and trees in straight-line drawings."""
