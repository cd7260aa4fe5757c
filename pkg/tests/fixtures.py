"""Hand-checked 4x4 integer fixtures with closed-form generalized inverses.

Expected values were computed independently with the exact rational
row-reduction oracle (ginv.classify.exact_*) and frozen here; entries are
dyadic rationals, so the complex128 literals are exact.
"""

import numpy as np

# Index-2 matrix whose weak CMP and weak MPD inverses coincide while the
# mixed products pinv(A) A X A and A X A pinv(A) differ.
A1 = np.array(
    [[1, 1, 0, 1], [0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0]], dtype=np.complex128
)
A1_INT = [[1, 1, 0, 1], [0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0]]

# A minimal-rank left weak Drazin inverse of A1 (rank 1 = rank(A1^2)).
X1 = np.array(
    [[1, 1, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], dtype=np.complex128
)

A1_PINV = np.array(
    [
        [0.5, 0.5, 0, 0],
        [0.5, 0.5, 0, 0],
        [0, 0, 0, 0],
        [0, -1, 0, 0],
    ],
    dtype=np.complex128,
)

# weak CMP inverse of (A1, X1); also equals the weak MPD inverse here.
Y1 = np.array(
    [
        [0.5, 0.5, 0, 0],
        [0.5, 0.5, 0, 0],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
    ],
    dtype=np.complex128,
)

A1_RANK = 2
A1_INDEX = 2

# Core-EP matrix of index 2 whose mixed products still differ for the
# member X2 below.
A2 = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]], dtype=np.complex128
)
A2_INT = [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]]

X2 = np.array(
    [[1, -1, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], dtype=np.complex128
)

A2_PINV = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0]], dtype=np.complex128
)

# Drazin inverse of A2: single unit entry in the (1, 1) position.
A2_DRAZIN = np.zeros((4, 4), dtype=np.complex128)
A2_DRAZIN[0, 0] = 1.0

A2_RANK = 2
A2_INDEX = 2


def jordan_nilpotent(n: int) -> np.ndarray:
    """Single upper shift block: nilpotent of index exactly n."""
    m = np.zeros((n, n), dtype=np.complex128)
    for i in range(n - 1):
        m[i, i + 1] = 1.0
    return m
