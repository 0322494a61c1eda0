"""Published reference values for the three density tables, as printed (rounded)."""

from __future__ import annotations

import math
from typing import NamedTuple

SQRT5 = math.sqrt(5.0)


class TableRow(NamedTuple):
    t11: float
    t12: float
    n: int
    radius: float
    density: float


BALL_COVERINGS = (
    TableRow(0.5, 0.1, 3, 0.60839, 8.82040),
    TableRow(0.6, 0.2, 3, 0.76434, 7.31397),
    TableRow(0.7, 0.2, 3, 0.77643, 6.57346),
    TableRow(0.79, 0.2, 3, 0.80393, 6.47048),
    TableRow(0.8, 0.2, 3, 0.80731, 6.47105),
    TableRow(0.9, 0.2, 3, 0.84427, 6.58552),
    TableRow(0.5, 0.1, 4, 0.88821, 13.03880),
    TableRow(0.6, 0.1, 4, 0.93486, 12.68740),
    TableRow(0.7, 0.1, 4, 1.00251, 13.44040),
    TableRow(0.8, 0.2, 4, 1.34052, 14.24860),
    TableRow(0.9, 0.2, 4, 1.37453, 13.67550),
    TableRow(0.4, 0.1, 5, 1.22135, 27.24710),
    TableRow(0.5, 0.1, 5, 1.20960, 21.16430),
    TableRow(0.6, 0.1, 5, 1.22263, 18.22280),
    TableRow(0.7, 0.1, 5, 1.32750, 20.08420),
    TableRow(0.8, 0.1, 5, 1.47274, 24.16320),
)

# golden-ratio row: exact t12 = (sqrt5 - 1)/2
PACKING_OPT_T12 = (SQRT5 - 1) / 2
PACKING_OPT_RADIUS = math.sqrt(10 - 2 * SQRT5) / 4
PACKING_OPT_DENSITY = -(-5 + SQRT5) * math.pi * SQRT5 / (20 * SQRT5 - 20)

CYLINDER_PACKINGS = (
    TableRow(1.6, 1.0, 3, 0.943398, 0.781511),
    TableRow(1.8, 1.1, 3, 1.04945, 0.781491),
    TableRow(2.1, 1.3, 3, 1.23491, 0.784824),
    TableRow(2.3, 1.4, 3, 1.33716, 0.780141),
    TableRow(2.4, 1.5, 3, 1.41510, 0.781511),
    TableRow(2.5, 1.5, 3, 1.43856, 0.775339),
    TableRow(1.0, PACKING_OPT_T12, 3, PACKING_OPT_RADIUS, PACKING_OPT_DENSITY),
)

COVERING_OPT_T12 = (3 - SQRT5) / 2
COVERING_OPT_RADIUS = (6 * SQRT5 - 15) * math.sqrt(2) / (-15 + 5 * SQRT5)
COVERING_OPT_DENSITY = -(36 / 125) * (2 * SQRT5 - 5) ** 2 * math.pi * SQRT5 / (SQRT5 - 3) ** 3

CYLINDER_COVERINGS = (
    TableRow(2.3, 1.0, 3, 1.45018, 1.28465),
    TableRow(2.5, 1.0, 3, 1.50151, 1.26701),
    TableRow(2.6, 1.0, 3, 1.52974, 1.26452),
    TableRow(2.9, 1.1, 3, 1.69444, 1.26452),
    TableRow(3.1, 1.2, 3, 1.82991, 1.26486),
    TableRow(3.2, 1.2, 3, 1.85933, 1.26487),
    TableRow(3.4, 1.3, 3, 1.99449, 1.26447),
    TableRow(1.0, COVERING_OPT_T12, 3, COVERING_OPT_RADIUS, COVERING_OPT_DENSITY),
)

TABLES = {
    "ballcover": BALL_COVERINGS,
    "cylpack": CYLINDER_PACKINGS,
    "cylcover": CYLINDER_COVERINGS,
}

# circumradius of the tetrahedron (0,0,0), (-0.5,0,0), (0,0.5,0), (0,0,0.5)
SAMPLE_TETRAHEDRON = ((0.0, 0.0, 0.0), (-0.5, 0.0, 0.0), (0.0, 0.5, 0.0), (0.0, 0.0, 0.5))
SAMPLE_CIRCUMRADIUS = 0.459231
