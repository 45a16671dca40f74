"""Ranked-majority painting games on positively edge-weighted digraphs.

The package provides the referee (:mod:`~majority_paint.engine`), winning
Painter strategies (:mod:`~majority_paint.painter`), Lister adversaries
(:mod:`~majority_paint.lister`), kernel selection
(:mod:`~majority_paint.kernel`), the spectral reduction
(:mod:`~majority_paint.spectral`) and exhaustive oracles
(:mod:`~majority_paint.oracle`), all over the graph types of
:mod:`~majority_paint.graph`.  ``mpaint`` is the command-line entry point.
"""

__version__ = "0.1.0"
