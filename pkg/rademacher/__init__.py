"""r-color partition numbers p_r(n), 1 <= r <= 24, from Poincare-series coefficients.

The package evaluates the Kloosterman-Bessel series for the Fourier
coefficients of weight 2 + r/2 Poincare series, reads p_r(n) off them through
the weight-2 duality with eta^{-r}, and certifies every analytic integer
against an exact recurrence.  Layout:

* :mod:`.exact`, :mod:`.modular`, :mod:`.kloosterman`, :mod:`.special`,
  :mod:`.poincare`, :mod:`.partitions` - the numerics, bottom up;
* :mod:`.precision` - the numerical policy threaded through all of them;
* :mod:`.config`, :mod:`.db`, :mod:`.models`, :mod:`.repo`, :mod:`.records`,
  :mod:`.main` and :mod:`.commands` - the command line and its optional store.

Run ``python -m rademacher.main --help`` for the command line.
"""
