"""Magnetic Steklov spectrum of the unit disk under a constant field.

Subpackages:

* ``numerics``: scaled floats, quadrature, root finding, derivatives.
* ``specfun``: Kummer M, generalized Laguerre, parabolic cylinder D_nu.
* ``disk``: eigenvalue branches lambda_n(b) and the ground-state envelope.
* ``intersect``: branch crossing points z_n and their asymptotics.
* ``models``: the constants alpha, xi0, theta0 and the limit functions.
* ``cli``: command-line sweeps, tables, and the verification suite.
"""

__version__ = "0.1.0"

from . import cli, disk, intersect, models, numerics, specfun, verify

__all__ = ["cli", "disk", "intersect", "models", "numerics", "specfun", "verify"]
