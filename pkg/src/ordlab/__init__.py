"""Exact order theory for polyhedral cones and semi-order spaces."""
