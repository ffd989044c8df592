"""Computation modules: tensor space, minimal polynomials, blocks, Joseph polynomials, residues, q-Selberg."""
