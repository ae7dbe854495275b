"""GIT stability for quiver representations and linear systems.

Subpackages/modules:

* :mod:`quiverstab.exactalg` -- exact linear algebra, subspaces, binary forms
* :mod:`quiverstab.quiver` -- marked quivers, reductions, invariants
* :mod:`quiverstab.systems` -- classical, Lomadze and Helmke systems
* :mod:`quiverstab.stability` -- chambers, deciders, King-criterion oracle
* :mod:`quiverstab.chow` -- Chow ring presentations and ranks
* :mod:`quiverstab.cli` -- command-line front end
"""

__version__ = "0.1.0"
