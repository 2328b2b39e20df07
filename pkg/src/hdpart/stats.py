"""Scalar statistics on partitions, all derived from the corner set."""

from dataclasses import dataclass

from .core import corners, top_corners


def cohook(idx):
    """Coordinate sum minus rank plus one; always at least 1."""
    if any(i < 1 for i in idx):
        raise ValueError(f"index {idx} must have all coordinates >= 1")
    return sum(idx) - len(idx) + 1


def corner_hook_volume(p):
    """Sum of cohook lengths over the column projections of the corners."""
    return sum(cohook(cell[:-1]) for cell in corners(p))


def top_corner_weight(rho):
    """Sum of cohook lengths over the maximal cells of a lower set."""
    return sum(cohook(cell) for cell in rho.maximal_cells())


def trace(p):
    """Diagonal sum; defined for rank-2 partitions only."""
    if p.rank != 2:
        raise ValueError(f"trace requires rank 2, got rank {p.rank}")
    return sum(p.get((i, i)) for i in range(1, min(p.bounds, default=0) + 1))


def corner_coord_sum(p):
    """Sum of first coordinates over the corners."""
    return sum(cell[0] for cell in corners(p))


def corner_graded_sum(p):
    """Sum over corners of i_1 + 2 i_2 + ... + d i_d."""
    d = p.rank
    return sum(sum((axis + 1) * cell[axis] for axis in range(d)) for cell in corners(p))


@dataclass(frozen=True)
class StatRecord:
    volume: int
    corner_count: int
    top_corner_count: int
    corner_hook_volume: int
    corner_coord_sum: int
    corner_graded_sum: int
    trace: int | None = None

    def to_json_dict(self):
        out = {
            "volume": self.volume,
            "corner_count": self.corner_count,
            "top_corner_count": self.top_corner_count,
            "corner_hook_volume": self.corner_hook_volume,
            "corner_coord_sum": self.corner_coord_sum,
            "corner_graded_sum": self.corner_graded_sum,
        }
        if self.trace is not None:
            out["trace"] = self.trace
        return out


def partition_stats(p):
    """All statistics in one pass over the (cached) corner set."""
    cs = corners(p)
    d = p.rank
    ch = 0
    csum = 0
    gsum = 0
    for cell in cs:
        col = cell[:-1]
        ch += cohook(col)
        csum += cell[0]
        gsum += sum((axis + 1) * cell[axis] for axis in range(d))
    return StatRecord(
        volume=p.total(),
        corner_count=len(cs),
        top_corner_count=len(top_corners(p)),
        corner_hook_volume=ch,
        corner_coord_sum=csum,
        corner_graded_sum=gsum,
        trace=trace(p) if d == 2 else None,
    )
