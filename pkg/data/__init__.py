"""Data layer: shipped knowledge bases and the seeded random base generator."""
