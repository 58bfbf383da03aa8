"""Exact deformation theory for pairs of DGLA morphisms."""
