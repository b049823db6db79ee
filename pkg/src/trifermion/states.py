"""Named example states."""

from __future__ import annotations

from math import sqrt

from .exterior import FermionState, wedge

_R3 = 1 / sqrt(3)

# Same single particle density matrix, different tripartite entanglement.
PSI = FermionState.from_dict({(1, 3, 5): sqrt(2) * _R3, (2, 4, 6): _R3})
PHI = FermionState.from_dict({(1, 2, 3): _R3, (3, 4, 5): _R3, (1, 5, 6): _R3})

# (1/2)(e1 + e3) ^ e4 ^ (e5 - e6)
OMEGA = wedge([[1, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, -1]]) * 0.5


def k_family(k: complex) -> FermionState:
    """Unnormalized e1^e2^e3 + e1^e2b^e3b + e1b^e2^e3b + k e1b^e2b^e3, with T_123 = 16k."""
    return FermionState.from_dict({(1, 2, 3): 1, (1, 5, 6): 1, (4, 2, 6): 1, (4, 5, 3): k})


NAMED = {"psi": PSI, "phi": PHI, "omega": OMEGA}
