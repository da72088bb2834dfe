"""globalfields: exact arithmetic across the number-field / function-field bridge.

Subpackages cover arbitrary-precision scalars and integer relations
(:mod:`~globalfields.exactnum`), finite fields and F_q[T]
(:mod:`~globalfields.ffpoly`), twisted polynomial rings
(:mod:`~globalfields.ore`), Carlitz/Drinfeld torsion
(:mod:`~globalfields.drinfeld`), imaginary-quadratic class field data and
the exponential-generator harness (:mod:`~globalfields.cmfields`), and
plane-curve blow-up resolution (:mod:`~globalfields.blowup`).
"""

__version__ = "0.1.0"
