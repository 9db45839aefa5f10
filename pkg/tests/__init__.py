"""Tests for turanlab."""
