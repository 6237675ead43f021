# Prandtl-type integro-differential equation solver
