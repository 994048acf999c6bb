"""Local invariants of holonomic difference modules on the affine line, in exact arithmetic."""
