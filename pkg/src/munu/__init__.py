"""munu: a workbench for fixed points on finite lattices and for
structural and nominal subtype checking.

The package is organised as three core modules plus a service layer:

* ``munu.lattice``    finite posets/lattices, monotone endofunctions,
                      least/greatest fixed points, induction/coinduction,
                      implication and negation by bound scans
* ``munu.structural`` equi-recursive structural types, coinductive
                      subtyping, a finite-depth denotational oracle
* ``munu.nominal``    class tables with interval-argument generics,
                      coinductive nominal subtyping, universe sweeps
* ``munu.service``    FastAPI app wrapping the core; the ``munu`` CLI is
                      a thin client over it
"""

__version__ = "0.1.0"
