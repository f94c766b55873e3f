"""Slepian spatiospectral concentration on the d-dimensional unit ball.

Computes concentration operators for polynomial-degree and radial/spherical
(Fourier-Jacobi) bandlimits, their eigenvalue distributions and Shannon-number
predictions, together with the supporting special functions, quadrature and
bound calculators.  The ``ballslep`` CLI drives the bundled experiments.
"""

from ._accel import BACKEND as accel_backend

__version__ = "0.1.0"

__all__ = ["accel_backend", "__version__"]
