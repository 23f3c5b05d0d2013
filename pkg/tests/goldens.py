"""Reference values shared by the unit and acceptance suites."""

import numpy as np

# Green Machine codewords: rows are inputs 0-3, columns outputs 4-7, radians
CODEWORDS = np.array(
    [
        [0, np.pi / 2, np.pi / 2, np.pi],
        [np.pi / 2, np.pi, 0, np.pi / 2],
        [np.pi / 2, 0, np.pi, np.pi / 2],
        [np.pi, np.pi / 2, np.pi / 2, 0],
    ]
)

DEFAULT_GROUP_INDEX = 4.2015
DESIGN_WAVELENGTH = 1550e-9


def wrapped_distance(a, b):
    """|a - b| measured on the circle."""
    return np.abs(np.angle(np.exp(1j * (np.asarray(a) - np.asarray(b)))))
