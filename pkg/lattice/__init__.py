# Lattice dynamics package
