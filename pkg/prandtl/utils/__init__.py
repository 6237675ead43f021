# Utils package: dense linear algebra
