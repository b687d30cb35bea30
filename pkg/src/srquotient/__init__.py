"""Quotient posets, Tutte data and face rings of translative group actions.

The subpackages are layered bottom-up::

    intlat        exact integer lattices (Smith form, kernels, indices)
    poset         finite posets, Moebius functions, f/h/chi polynomials
    homology      simplicial homology and Cohen-Macaulay checks
    arrangement   central toric / (p,q) arrangements and their layer posets
    gsemimatroid  quotient semimatroid data, Tutte polynomial, delta index
    facering      Stanley face-ring ideals and Hilbert functions
    action        finite group actions, quotients, decoupling, shellings
"""

__version__ = "0.1.0"
