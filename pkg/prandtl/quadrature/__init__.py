# Quadrature package: Jacobi systems, Gauss rules and weighted Lagrange bases
