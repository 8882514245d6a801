"""Test suite for edge-regularity."""
