# Solver package: assembly, solve, convergence studies
