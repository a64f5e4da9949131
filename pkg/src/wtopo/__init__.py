"""Exact computations in weighted directed algebraic topology.

Modules:

* :mod:`wtopo.weights`  extended rational weights ``[0, inf]``
* :mod:`wtopo.dmetric`  finite generalized metric spaces
* :mod:`wtopo.paths`    piecewise-linear paths, span and length
* :mod:`wtopo.wcat`     finite weighted categories, functors, spectra, pushouts
* :mod:`wtopo.fundcat`  fundamental weighted categories of planes with holes
* :mod:`wtopo.wspace`   chain models of spaces with weighted paths
* :mod:`wtopo.rotation` irrational rotation spaces for quadratic irrationals
* :mod:`wtopo.cli`      the ``wtopo`` command line tool
"""
from .weights import INF, ext, fmt

__all__ = ["INF", "ext", "fmt"]
__version__ = "0.1.0"
