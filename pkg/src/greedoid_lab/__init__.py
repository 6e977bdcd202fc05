"""Greedoids, their flat lattices and polymatroid representations, with exhaustive small-case audits."""
