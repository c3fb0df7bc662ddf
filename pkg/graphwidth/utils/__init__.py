"""Utility functions for exact arithmetic, timing and report digests."""
