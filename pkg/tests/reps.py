"""Hand-built representatives, one per row of the minimal-model table."""
from logcy.model import hirzebruch, make_model, p2


def fp(a):
    return [(1, 0), (0, 1), (-1, a), (0, -1)]


B5 = [(1, 0), (0, 1), (-1, 2), (-1, 1), (0, -1)]

# (model, case, sequence, y_min, d_min, star)
ROWS = [
    (p2((2, 0, 0)), "1", (1,), ("F0", "F2"), (2, 2), False),
    (p2((2, 3, 0)), "1", (1, 2), ("P2",), (9,), True),
    (make_model(B5, (1, 0, 0, 1, 0)), "2.a.i", (1, 2), ("P2",), (1, 4), True),
    (make_model(B5, (1, 0, 1, 0, 0)), "2.a.i", (1, 2, 3), ("P2",), (1, 4), False),
    (make_model(B5, (1, 0, 1, 1, 0)), "2.a.i", (1, 2, 3, 4), ("F0", "F2"), (8,), False),
    (make_model(fp(2), (1, 0, 0, 0)), "2.a.ii", (1, 2), ("P2",), (1, 4), False),
    (make_model(fp(2), (1, 0, 2, 0)), "2.a.ii", (1, 2, 3), ("F0", "F2"), (8,), False),
    (make_model(fp(3), (1, 0, 0, 0)), "2.b.i", (1,), ("F2",), (-2, 4, 0), False),
    (make_model(fp(3), (1, 0, 1, 0)), "2.b.i", (1, 3, 2), ("P2",), (9,), False),
    (make_model(fp(5), (1, 0, 0, 0)), "2.b.ii", (1,), ("F4",), (-4, 6, 0), False),
    (hirzebruch(2, (1, 0, 1, 0)), "2.b.ii", (1, 3), ("F0",), (0, 4), False),
]
