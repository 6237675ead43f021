# Logging package
