"""Pythagorean pairs, harmonically weighted Dirichlet spaces and H(b) certificates."""
